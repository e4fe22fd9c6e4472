#pragma once

#include "initdeg/matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace initdeg {

/// How a rank was obtained: exact elimination in the configuration field,
/// or agreement of reductions mod a list of primes.
struct Provenance {
    bool modular = false;
    std::vector<std::uint64_t> primes;

    static Provenance exact() { return {}; }
    static Provenance consensus(std::vector<std::uint64_t> ps) {
        return {true, std::move(ps)};
    }

    std::string to_string() const;
    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct RankResult {
    int rank = 0;
    int kernel_dim = 0;
    /// One kernel vector when kernel_dim > 0: free variable = the first
    /// non-pivot column of the documented elimination order, back
    /// substituted and scaled so the leading nonzero coefficient is 1.
    std::optional<std::vector<FieldElement>> certificate;
    FieldSpec field;
    Provenance provenance;
};

/// Exact rank and kernel. Rational and eisenstein matrices are cleared of
/// denominators row-wise and eliminated fraction-free (Bareiss) over Z and
/// Z[w]; prime-field matrices use ordinary elimination. Pivot rule: first
/// column with a nonzero candidate, row of largest absolute value / norm
/// within the column, smallest index on ties. Any produced certificate is
/// re-verified by an independent dot-product pass.
RankResult rank_kernel(const Matrix& m, bool want_certificate = true);

/// Independent check that v is a nonzero kernel vector of m.
bool verify_kernel_vector(const Matrix& m, const std::vector<FieldElement>& v);

// -- integer-entry matrices (rational configurations cleared of denominators)

struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<Int> e;
    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c) {}
    Int& at(int r, int c) { return e[static_cast<std::size_t>(r) * cols + c]; }
    const Int& at(int r, int c) const { return e[static_cast<std::size_t>(r) * cols + c]; }
};

/// Element of Z[w].
struct EisInt {
    Int a, b;
    bool is_zero() const { return a == 0 && b == 0; }
};

struct EisIntMatrix {
    int rows = 0, cols = 0;
    std::vector<EisInt> e;
    EisIntMatrix() = default;
    EisIntMatrix(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c) {}
    EisInt& at(int r, int c) { return e[static_cast<std::size_t>(r) * cols + c]; }
    const EisInt& at(int r, int c) const { return e[static_cast<std::size_t>(r) * cols + c]; }
};

struct ModMatrix {
    int rows = 0, cols = 0;
    std::uint64_t p = 0;
    std::vector<std::uint64_t> e;
    ModMatrix() = default;
    ModMatrix(int r, int c, std::uint64_t p)
        : rows(r), cols(c), p(p), e(static_cast<std::size_t>(r) * c, 0) {}
    std::uint64_t& at(int r, int c) { return e[static_cast<std::size_t>(r) * cols + c]; }
    std::uint64_t at(int r, int c) const { return e[static_cast<std::size_t>(r) * cols + c]; }
};

/// Multiply each row by the lcm of its denominators (kernel unchanged).
IntMatrix clear_denominators(const Matrix& m);
EisIntMatrix clear_denominators_eis(const Matrix& m);

ModMatrix reduce_mod(const IntMatrix& m, std::uint64_t p);
/// w maps to the deterministic cube root of unity mod p; needs p = 1 mod 3.
ModMatrix reduce_mod(const EisIntMatrix& m, std::uint64_t p);

/// Rank mod each prime. On agreement the consensus rank is returned with
/// modular-consensus provenance (certificate over F_{primes[0]}); reduction
/// can only lower rank, so it is a certified lower bound that equals the
/// characteristic-0 rank with high probability. Disagreement yields an
/// empty result (so callers fall back to exact elimination, never silently).
struct MultiPrimeRank {
    std::optional<RankResult> result;
    std::vector<std::pair<std::uint64_t, int>> per_prime;
    bool consensus() const { return result.has_value(); }
};

MultiPrimeRank multi_prime_rank(const IntMatrix& m,
                                const std::vector<std::uint64_t>& primes,
                                bool want_certificate = true);
MultiPrimeRank multi_prime_rank(const EisIntMatrix& m,
                                const std::vector<std::uint64_t>& primes,
                                bool want_certificate = true);

/// Exact fraction-free ranks, exposed for the consensus-vs-exact oracles.
int bareiss_rank(const IntMatrix& m);
int bareiss_rank(const EisIntMatrix& m);
int gauss_rank(const ModMatrix& m);

} // namespace initdeg
