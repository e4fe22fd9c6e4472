#pragma once

#include "initdeg/field.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace initdeg {

/// Point of P^N stored normalized: the first nonzero coordinate equals 1,
/// so equality of points is equality of coordinate vectors.
class ProjectivePoint {
public:
    explicit ProjectivePoint(std::vector<FieldElement> coords);

    const std::vector<FieldElement>& coords() const { return coords_; }
    /// Index of the leading coordinate (the one normalized to 1).
    int pivot() const { return pivot_; }
    int dim() const { return static_cast<int>(coords_.size()) - 1; }

    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

private:
    std::vector<FieldElement> coords_;
    int pivot_ = 0;
};

/// Finite set of distinct points of P^N over one field, with a free-form
/// provenance label (generator name, seed, arrangement...).
struct PointConfiguration {
    int dim = 2;
    FieldSpec field;
    std::vector<ProjectivePoint> points;
    std::string label;

    PointConfiguration(int dim, FieldSpec field, std::vector<ProjectivePoint> points,
                       std::string label);

    std::uint64_t size() const { return points.size(); }

    nlohmann::json to_json() const;
    /// `origin` names the source (file path) for diagnostics. Accepts either
    /// a bare configuration object or any report carrying a "config" member.
    static PointConfiguration from_json(const nlohmann::json& j, const std::string& origin);
    static PointConfiguration load(const std::string& path);
    void save(const std::string& path) const;

    /// FNV-1a over dim, field and normalized coordinate strings (label
    /// excluded): identifies the point set itself.
    std::uint64_t content_hash() const;
};

/// d hyperplanes of P^N as coefficient vectors, stored normalized like
/// points. General position means every N-subset meets in a single point
/// and no point lies on more than N of the hyperplanes.
struct HyperplaneArrangement {
    int dim = 2;
    FieldSpec field;
    std::vector<std::vector<FieldElement>> hyperplanes;

    nlohmann::json to_json() const;
    static HyperplaneArrangement from_json(const nlohmann::json& j, const std::string& origin);
    static HyperplaneArrangement load(const std::string& path);
};

/// s distinct pseudorandom points, deterministic in (N, s, field, seed).
/// Rational and eisenstein coordinates are integers drawn uniformly from
/// [-10^6, 10^6] (eisenstein: both components); prime-field coordinates are
/// uniform residues. Colliding points are resampled. Degeneracies such as
/// collinearity are intentionally not rejected.
PointConfiguration random_configuration(int N, int s, const FieldSpec& field,
                                        std::uint64_t seed);

bool validate_general_position(const HyperplaneArrangement& arr);

/// Unique intersection point of N hyperplanes picked by `subset` (indices
/// into arr.hyperplanes); requires the subset to have full rank N.
ProjectivePoint intersection_point(const HyperplaneArrangement& arr,
                                   const std::vector<int>& subset);

/// All binomial(d, N) intersection points of d random general hyperplanes.
/// Resamples the arrangement until general position holds (bounded retries).
PointConfiguration star_configuration(int N, int d, const FieldSpec& field,
                                      std::uint64_t seed);

/// Star configuration from a fixed arrangement (regression inputs).
PointConfiguration star_from_arrangement(const HyperplaneArrangement& arr,
                                         const std::string& label);

/// The twelve points (1:0:0), (0:1:0), (0:0:1), (1:1:1) and the eight
/// e-variants with e a primitive cube root of unity; together with nine
/// lines they form a 12_3 9_4 incidence. Requires a field with a cube root
/// of unity (eisenstein, or prime with p = 1 mod 3).
PointConfiguration fermat12_configuration(const FieldSpec& field);

/// The nine lines of the incidence: x-y, y-z, z-x and their e, e^2 twists.
std::vector<std::vector<FieldElement>> fermat12_lines(const FieldSpec& field);

/// Number of points of P^N(F_p) for prime specs; nullopt for the infinite
/// fields.
std::optional<Int> projective_point_count(const FieldSpec& field, int N);

} // namespace initdeg
