#pragma once

#include "initdeg/field.hpp"

#include <cstddef>
#include <vector>

namespace initdeg {

/// Dense row-major matrix of exact field elements, immutable once built.
struct Matrix {
    int rows = 0;
    int cols = 0;
    FieldSpec field;
    std::vector<FieldElement> entries; // rows * cols

    Matrix() = default;
    Matrix(int rows, int cols, const FieldSpec& field)
        : rows(rows), cols(cols), field(field),
          entries(static_cast<std::size_t>(rows) * cols, FieldElement::zero(field)) {}

    const FieldElement& at(int r, int c) const {
        return entries[static_cast<std::size_t>(r) * cols + c];
    }
    FieldElement& at(int r, int c) {
        return entries[static_cast<std::size_t>(r) * cols + c];
    }
};

} // namespace initdeg
