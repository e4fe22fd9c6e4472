#pragma once

#include "initdeg/config.hpp"
#include "initdeg/matrix.hpp"

#include <iosfwd>
#include <vector>

namespace initdeg {

/// Exponent vector of a monomial in the N+1 homogeneous variables.
struct MultiIndex {
    std::vector<int> exponents;

    int degree() const {
        int d = 0;
        for (int e : exponents) d += e;
        return d;
    }
    int nvars() const { return static_cast<int>(exponents.size()); }

    std::string to_string() const;
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// All monomials of degree d in N+1 variables in the fixed basis order:
/// lexicographic descending with x0 > x1 > ... > xN (so x0^d comes first).
/// Across degrees the order is graded: lower degree first. Certificates are
/// coefficient vectors in this order.
std::vector<MultiIndex> monomial_basis(int N, int d);

/// Monomials of every degree 0..max_deg in `nvars` variables, graded order.
std::vector<MultiIndex> monomials_up_to(int nvars, int max_deg);

/// Coefficient of the divided-power (Hasse) derivative:
/// D^beta x^alpha = C(alpha, beta) x^(alpha-beta) with
/// C(alpha, beta) = prod_j binom(alpha_j, beta_j); zero when beta_j > alpha_j.
/// Computed over Z, so conditions stay correct in every characteristic.
Int hasse_coefficient(const MultiIndex& alpha, const MultiIndex& beta);

/// s * binom(N+m-1, N): number of independent order-m vanishing conditions.
Int count_conditions(int N, int m, std::uint64_t s);

/// Least d with binom(d+N, N) > s * binom(N+m-1, N): at this degree the
/// monomial count strictly exceeds the condition count, so a nonzero form
/// through the fat points exists unconditionally. Upper bound for alpha(mZ).
int expected_alpha_bound(int N, int m, std::uint64_t s);

/// Size guards for matrix construction; override per call when needed.
struct CapLimits {
    int max_degree = 64;
    int max_multiplicity = 16;
};

struct ConditionRow {
    int point_index = 0;
    /// Derivative multi-index over all N+1 variables with beta[pivot] = 0
    /// and |beta| <= m-1, where pivot is the point's leading coordinate.
    MultiIndex beta;
};

/// The degree-d graded piece of "vanishing to order >= m at every point of
/// Z" as a dense linear system: kernel vectors are exactly the coefficient
/// vectors of degree-d members of the m-th symbolic power.
///
/// Row construction: each point is moved to (1:0:...:0) by the invertible
/// change of coordinates whose matrix columns are the point itself followed
/// by the standard basis vectors of the non-pivot coordinates; the
/// conditions are the vanishing of all Taylor coefficients of total degree
/// < m of the transformed form in that affine chart. Written out, the row
/// for (point P, beta) has entry C(alpha, beta) * P^(alpha-beta) at
/// monomial alpha, giving exactly binom(N+m-1, N) rows per point.
struct ConditionMatrix {
    Matrix mat;
    int N = 0, m = 0, d = 0;
    std::uint64_t s = 0;
    std::vector<ConditionRow> rows;
    std::vector<MultiIndex> cols;

    /// Debug/oracle dump: header "N m d s rows cols", then one matrix row
    /// per line as space-separated scalar strings in basis order.
    void dump(std::ostream& os) const;
};

ConditionMatrix build_matrix(const PointConfiguration& Z, int m, int d,
                             const CapLimits& caps = {});

/// Direct order-of-vanishing check, independent of the chart-based row
/// construction: expands every Hasse derivative D^beta f over all N+1
/// variables with |beta| <= m-1 and evaluates it at each point.
bool vanishes_to_order(const std::vector<FieldElement>& coeffs, int d,
                       const PointConfiguration& Z, int m);

} // namespace initdeg
