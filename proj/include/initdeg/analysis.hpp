#pragma once

#include "initdeg/interpolation.hpp"
#include "initdeg/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace initdeg {

struct AlphaOptions {
    /// Force characteristic-0 (or native prime field) elimination. When
    /// false, rational and eisenstein configurations use multi-prime
    /// consensus with exact fallback on consensus failure.
    bool exact = false;
    std::vector<std::uint64_t> primes = default_consensus_primes();
    CapLimits caps{};
};

/// Kernel vector of the degree-alpha condition matrix, i.e. the coefficient
/// vector of a form computing alpha. Coefficients live in the field the
/// rank was computed over (the first consensus prime for modular runs).
struct KernelCertificate {
    int degree = 0;
    std::string monomial_order = "graded-lex";
    FieldSpec field;
    std::vector<FieldElement> coefficients;
};

struct AlphaValue {
    int m = 0;
    int alpha = 0;
    Provenance provenance;
    std::optional<KernelCertificate> certificate;
    int rank_at_alpha = 0;
    int kernel_dim_at_alpha = 0;
    /// Full-rank witness: at degree alpha-1 the matrix has this rank, equal
    /// to its column count, so no smaller degree works.
    int rank_below = 0;
    int cols_below = 0;
};

struct AlphaTable {
    PointConfiguration config;
    std::vector<AlphaValue> values; // index m-1
    std::vector<std::string> warnings;

    int m_max() const { return static_cast<int>(values.size()); }
    const AlphaValue& at(int m) const { return values.at(m - 1); }
};

/// Least degree of a nonzero form vanishing to order >= m at every point:
/// binary search on d over [m, expected_alpha_bound] (kernel-nonemptiness
/// is upward closed in d; the upper endpoint is forced by the dimension
/// count). The result is self-certifying: a verified kernel certificate at
/// alpha plus a full-rank witness at alpha-1.
AlphaValue alpha(const PointConfiguration& Z, int m, const AlphaOptions& opts = {});

/// alpha() with a caller-supplied search window (used by alpha_table to
/// exploit monotone-step and subadditivity priors). Wrong hints are caught
/// by the certificate/witness validation and trigger a full-range retry.
AlphaValue alpha_in_range(const PointConfiguration& Z, int m, int lo, int hi,
                          const AlphaOptions& opts);

/// alpha for m = 1..m_max with table invariants enforced: alpha >= m and
/// subadditivity everywhere; the +1 monotone step is enforced over the
/// characteristic-0 fields, demoted to a warning over prime fields. A
/// modular-consensus table that fails any invariant is recomputed exactly.
AlphaTable alpha_table(const PointConfiguration& Z, int m_max,
                       const AlphaOptions& opts = {});

struct DemaillyVerdict {
    /// Monotonicity of the input table is re-checked first; a broken table
    /// is flagged before any ratio is interpreted.
    bool table_monotone = true;
    std::optional<std::pair<int, int>> monotonicity_failure; // (m, m+1)
    bool violation = false;
    std::optional<std::pair<int, int>> violating_pair; // (m, k)
    std::vector<std::pair<int, int>> equalities;       // (m, k) with exact equality
    std::string summary(int m_max) const;
};

/// Searches all pairs (m, k) for alpha(kZ)/k < (alpha(mZ)+N-1)/(m+N-1).
/// A violation would disprove the Demailly conjecture; absence is finite
/// evidence only. Equality pairs are reported because the inequality is
/// sharp on star and fermat12 configurations.
DemaillyVerdict demailly_check(const AlphaTable& t);

struct EvVerdict {
    bool ok = true;
    std::optional<std::pair<int, int>> failing_pair; // (m, k), m <= k
};

/// Esnault-Viehweg: (alpha(mZ)+1)/(m+N-1) <= alpha(kZ)/k for m <= k, N >= 2.
/// This is a theorem, so a failure indicates an engine bug.
EvVerdict ev_check(const AlphaTable& t);

struct MainTheoremVerdict {
    Int k;
    bool degree_bound_ok = true;   // alpha(mZ) <= k(m+N-1)-N+1
    bool demailly_ratio_ok = true; // (alpha(mZ)+N-1)/(m+N-1) <= k
    bool floor_bound_ok = true;    // alpha(jZ) >= j*k for every computed j
    std::vector<int> floor_failures;
};

/// Checks the very-general-points bounds with k = floor(s^(1/N)); requires
/// s >= (m+1)^N. The first two checks hold for any point set of that size
/// (dimension count); the floor bound holds with high probability over the
/// random sample and failures are reported with the seed, not fatal.
MainTheoremVerdict main_theorem_check(int N, int m, std::uint64_t s, const AlphaTable& t);

struct ElsVerdict {
    int r = 0;
    bool ok = true;
};

/// alpha(N*r*Z) >= r*alpha(Z); needs N*r <= m_max.
ElsVerdict els_degree_check(const AlphaTable& t, int r);

/// Largest k with k^N <= s, exact integer arithmetic.
Int floor_root(const Int& s, int N);

struct BoundsReport {
    Rat waldschmidt_upper;       // min_m alpha(m)/m
    Rat els_lower;               // alpha(1)/N
    Rat ev_lower;                // max_m (alpha(m)+1)/(m+N-1)
    std::vector<Rat> demailly_ratios; // (alpha(m)+N-1)/(m+N-1) per m
    Int floor_root_value;        // floor(s^(1/N))
    DemaillyVerdict demailly;
    EvVerdict ev;
    bool chain_ok = true;        // els_lower <= ev_lower <= waldschmidt_upper
};

/// All quantities exact rationals; the chain els <= ev <= waldschmidt is a
/// theorem for N >= 2 and its failure throws InvariantError.
BoundsReport bounds_report(const AlphaTable& t);

} // namespace initdeg
