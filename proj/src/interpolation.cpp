#include "initdeg/interpolation.hpp"

#include "initdeg/errors.hpp"

#include <ostream>
#include <sstream>

namespace initdeg {

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (i) os << ",";
        os << exponents[i];
    }
    os << ")";
    return os.str();
}

namespace {

void enumerate_degree(int nvars, int d, std::vector<int>& prefix,
                      std::vector<MultiIndex>& out) {
    if (static_cast<int>(prefix.size()) == nvars - 1) {
        prefix.push_back(d);
        out.push_back(MultiIndex{prefix});
        prefix.pop_back();
        return;
    }
    for (int e = d; e >= 0; --e) {
        prefix.push_back(e);
        enumerate_degree(nvars, d - e, prefix, out);
        prefix.pop_back();
    }
}

std::vector<MultiIndex> monomials_of_degree(int nvars, int d) {
    std::vector<MultiIndex> out;
    std::vector<int> prefix;
    enumerate_degree(nvars, d, prefix, out);
    return out;
}

} // namespace

std::vector<MultiIndex> monomial_basis(int N, int d) {
    if (N < 1 || d < 0) throw MathError("monomial_basis: need N >= 1, d >= 0");
    return monomials_of_degree(N + 1, d);
}

std::vector<MultiIndex> monomials_up_to(int nvars, int max_deg) {
    std::vector<MultiIndex> out;
    for (int t = 0; t <= max_deg; ++t) {
        auto part = monomials_of_degree(nvars, t);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Int hasse_coefficient(const MultiIndex& alpha, const MultiIndex& beta) {
    if (alpha.exponents.size() != beta.exponents.size()) {
        throw MathError("hasse_coefficient: multi-index lengths differ");
    }
    Int c = 1;
    for (std::size_t j = 0; j < alpha.exponents.size(); ++j) {
        if (beta.exponents[j] > alpha.exponents[j]) return 0;
        c *= binomial(static_cast<std::uint64_t>(alpha.exponents[j]),
                      static_cast<std::uint64_t>(beta.exponents[j]));
    }
    return c;
}

Int count_conditions(int N, int m, std::uint64_t s) {
    if (N < 1 || m < 1 || s < 1) {
        throw MathError("count_conditions: need N, m, s >= 1");
    }
    return Int(s) * binomial(static_cast<std::uint64_t>(N + m - 1),
                             static_cast<std::uint64_t>(N));
}

int expected_alpha_bound(int N, int m, std::uint64_t s) {
    const Int conditions = count_conditions(N, m, s);
    for (int d = m;; ++d) {
        if (binomial(static_cast<std::uint64_t>(d + N),
                     static_cast<std::uint64_t>(N)) > conditions) {
            return d;
        }
    }
}

void ConditionMatrix::dump(std::ostream& os) const {
    os << N << " " << m << " " << d << " " << s << " " << mat.rows << " "
       << mat.cols << "\n";
    for (int r = 0; r < mat.rows; ++r) {
        for (int c = 0; c < mat.cols; ++c) {
            if (c) os << " ";
            os << mat.at(r, c).to_string();
        }
        os << "\n";
    }
}

ConditionMatrix build_matrix(const PointConfiguration& Z, int m, int d,
                             const CapLimits& caps) {
    if (m < 1) throw MathError("build_matrix: m must be >= 1");
    if (d < 0) throw MathError("build_matrix: d must be >= 0");
    if (d > caps.max_degree) {
        throw ResourceLimitError("build_matrix: degree " + std::to_string(d) +
                                 " exceeds cap max_degree=" + std::to_string(caps.max_degree));
    }
    if (m > caps.max_multiplicity) {
        throw ResourceLimitError("build_matrix: multiplicity " + std::to_string(m) +
                                 " exceeds cap max_multiplicity=" +
                                 std::to_string(caps.max_multiplicity));
    }
    const int N = Z.dim;
    ConditionMatrix cm;
    cm.N = N;
    cm.m = m;
    cm.d = d;
    cm.s = Z.size();
    cm.cols = monomial_basis(N, d);
    const auto gammas = monomials_up_to(N, m - 1); // over the N non-pivot slots
    const int rows_per_point = static_cast<int>(gammas.size());
    const int nrows = static_cast<int>(Z.size()) * rows_per_point;
    const int ncols = static_cast<int>(cm.cols.size());
    cm.mat = Matrix(nrows, ncols, Z.field);
    cm.rows.reserve(nrows);

    const FieldElement one = FieldElement::one(Z.field);
    for (int pi = 0; pi < static_cast<int>(Z.size()); ++pi) {
        const ProjectivePoint& P = Z.points[pi];
        const int pivot = P.pivot();
        // precompute coordinate powers P_j^t for t <= d
        std::vector<std::vector<FieldElement>> powers(N + 1);
        for (int j = 0; j <= N; ++j) {
            powers[j].reserve(d + 1);
            powers[j].push_back(one);
            for (int t = 1; t <= d; ++t) {
                powers[j].push_back(powers[j][t - 1] * P.coords()[j]);
            }
        }
        for (const auto& gamma : gammas) {
            // embed gamma into a beta over all N+1 variables, beta[pivot]=0
            MultiIndex beta;
            beta.exponents.assign(N + 1, 0);
            for (int j = 0, g = 0; j <= N; ++j) {
                if (j == pivot) continue;
                beta.exponents[j] = gamma.exponents[g++];
            }
            const int r = static_cast<int>(cm.rows.size());
            for (int c = 0; c < ncols; ++c) {
                const MultiIndex& alpha = cm.cols[c];
                Int coeff = hasse_coefficient(alpha, beta);
                if (coeff == 0) continue;
                FieldElement v = FieldElement::from_integer(Z.field, coeff);
                for (int j = 0; j <= N; ++j) {
                    const int e = alpha.exponents[j] - beta.exponents[j];
                    if (e > 0) {
                        if (P.coords()[j].is_zero()) {
                            v = FieldElement::zero(Z.field);
                            break;
                        }
                        v = v * powers[j][e];
                    }
                }
                cm.mat.at(r, c) = std::move(v);
            }
            cm.rows.push_back(ConditionRow{pi, std::move(beta)});
        }
    }
    return cm;
}

bool vanishes_to_order(const std::vector<FieldElement>& coeffs, int d,
                       const PointConfiguration& Z, int m) {
    const int N = Z.dim;
    const auto basis = monomial_basis(N, d);
    if (coeffs.size() != basis.size()) {
        throw MathError("vanishes_to_order: coefficient count does not match degree");
    }
    const auto betas = monomials_up_to(N + 1, m - 1); // all variables, redundant set
    for (const auto& P : Z.points) {
        for (const auto& beta : betas) {
            // D^beta f (P) = sum_alpha c_alpha C(alpha,beta) P^(alpha-beta)
            FieldElement acc = FieldElement::zero(Z.field);
            for (std::size_t c = 0; c < basis.size(); ++c) {
                if (coeffs[c].is_zero()) continue;
                const Int hc = hasse_coefficient(basis[c], beta);
                if (hc == 0) continue;
                FieldElement term = coeffs[c] * FieldElement::from_integer(Z.field, hc);
                bool zero = false;
                for (int j = 0; j <= N; ++j) {
                    const int e = basis[c].exponents[j] - beta.exponents[j];
                    if (e > 0) {
                        if (P.coords()[j].is_zero()) {
                            zero = true;
                            break;
                        }
                        term = term * P.coords()[j].pow(static_cast<std::uint64_t>(e));
                    }
                }
                if (zero) continue;
                acc = acc + term;
            }
            if (!acc.is_zero()) return false;
        }
    }
    return true;
}

} // namespace initdeg
