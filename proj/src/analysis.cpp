#include "initdeg/analysis.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace initdeg {

namespace {

struct DegreeProbe {
    int rank = 0;
    int cols = 0;
    Provenance provenance;
    std::optional<std::vector<FieldElement>> certificate;
    FieldSpec cert_field;
    bool kernel_nonempty() const { return rank < cols; }
};

// One rank query at degree d, honoring the consensus/exact mode. Consensus
// failures and unusable primes (denominator hits a modulus) fall back to
// exact elimination rather than failing.
DegreeProbe probe_degree(const PointConfiguration& Z, int m, int d,
                         const AlphaOptions& opts, bool want_certificate) {
    const ConditionMatrix cm = build_matrix(Z, m, d, opts.caps);
    DegreeProbe out;
    out.cols = cm.mat.cols;
    const bool try_consensus = !opts.exact && Z.field.kind != FieldKind::prime;
    if (try_consensus) {
        try {
            MultiPrimeRank mp;
            if (Z.field.kind == FieldKind::rational) {
                mp = multi_prime_rank(clear_denominators(cm.mat), opts.primes,
                                      want_certificate);
            } else {
                mp = multi_prime_rank(clear_denominators_eis(cm.mat), opts.primes,
                                      want_certificate);
            }
            if (mp.consensus()) {
                out.rank = mp.result->rank;
                out.provenance = mp.result->provenance;
                out.certificate = std::move(mp.result->certificate);
                out.cert_field = mp.result->field;
                return out;
            }
            // consensus failure: fall through to exact, never silent
        } catch (const MathError&) {
            // a prime was unusable for this matrix; use the exact path
        }
    }
    RankResult rr = rank_kernel(cm.mat, want_certificate);
    out.rank = rr.rank;
    out.provenance = rr.provenance;
    out.certificate = std::move(rr.certificate);
    out.cert_field = Z.field;
    return out;
}

// Reduce a configuration mod p so modular certificates can be re-verified
// by direct evaluation in F_p.
PointConfiguration reduce_config(const PointConfiguration& Z, std::uint64_t p) {
    const FieldSpec f = FieldSpec::prime(p);
    std::vector<ProjectivePoint> pts;
    pts.reserve(Z.points.size());
    for (const auto& pt : Z.points) {
        std::vector<FieldElement> coords;
        coords.reserve(pt.coords().size());
        for (const auto& c : pt.coords()) {
            coords.push_back(FieldElement(ModularResidue{reduce_mod_p(c, p), p}));
        }
        pts.emplace_back(std::move(coords));
    }
    return PointConfiguration(Z.dim, f, std::move(pts), Z.label + " mod " + std::to_string(p));
}

// Certificate round-trip: the form must vanish to order >= m at every point,
// checked by direct Hasse-derivative evaluation (independent of the row
// construction). Modular certificates are checked against the reduced
// configuration. Returns false when the context cannot be reduced.
bool recheck_certificate(const PointConfiguration& Z, int m, const AlphaValue& v) {
    if (!v.certificate) return false;
    const auto& cert = *v.certificate;
    if (!v.provenance.modular) {
        return vanishes_to_order(cert.coefficients, cert.degree, Z, m);
    }
    const std::uint64_t p = cert.field.p;
    try {
        const PointConfiguration zp = reduce_config(Z, p);
        return vanishes_to_order(cert.coefficients, cert.degree, zp, m);
    } catch (const MathError&) {
        return false;
    }
}

struct SearchOutcome {
    AlphaValue value;
    bool valid = true;
};

SearchOutcome alpha_search(const PointConfiguration& Z, int m, int lo, int hi,
                           const AlphaOptions& opts) {
    std::map<int, DegreeProbe> probes;
    auto kernel_nonempty = [&](int d) -> bool {
        auto it = probes.find(d);
        if (it == probes.end()) {
            it = probes.emplace(d, probe_degree(Z, m, d, opts, false)).first;
        }
        return it->second.kernel_nonempty();
    };
    int a = lo, b = hi;
    while (a < b) {
        const int mid = a + (b - a) / 2;
        if (kernel_nonempty(mid)) {
            b = mid;
        } else {
            a = mid + 1;
        }
    }
    const int found = a;

    AlphaValue v;
    v.m = m;
    v.alpha = found;
    // certificate at the found degree
    DegreeProbe cert_probe = probe_degree(Z, m, found, opts, true);
    v.rank_at_alpha = cert_probe.rank;
    v.kernel_dim_at_alpha = cert_probe.cols - cert_probe.rank;
    v.provenance = cert_probe.provenance;
    if (cert_probe.certificate) {
        KernelCertificate kc;
        kc.degree = found;
        kc.field = cert_probe.cert_field;
        kc.coefficients = std::move(*cert_probe.certificate);
        v.certificate = std::move(kc);
    }
    // full-rank witness one degree below
    DegreeProbe witness = probe_degree(Z, m, found - 1, opts, false);
    v.rank_below = witness.rank;
    v.cols_below = witness.cols;

    SearchOutcome out;
    out.value = std::move(v);
    out.valid = cert_probe.rank < cert_probe.cols && witness.rank == witness.cols &&
                out.value.certificate.has_value() &&
                recheck_certificate(Z, m, out.value);
    return out;
}

} // namespace

AlphaValue alpha_in_range(const PointConfiguration& Z, int m, int lo, int hi,
                          const AlphaOptions& opts) {
    if (m < 1) throw MathError("alpha: m must be >= 1");
    const int full_lo = m;
    const int full_hi = expected_alpha_bound(Z.dim, m, Z.size());
    lo = std::max(lo, full_lo);
    hi = std::min(hi, full_hi);
    if (lo > hi) {
        lo = full_lo;
        hi = full_hi;
    }
    SearchOutcome out = alpha_search(Z, m, lo, hi, opts);
    if (!out.valid && (lo != full_lo || hi != full_hi)) {
        // hinted window was wrong (possible over small characteristic):
        // redo with the unconditional window
        out = alpha_search(Z, m, full_lo, full_hi, opts);
    }
    if (!out.valid && !opts.exact && Z.field.kind != FieldKind::prime) {
        AlphaOptions exact_opts = opts;
        exact_opts.exact = true;
        out = alpha_search(Z, m, full_lo, full_hi, exact_opts);
    }
    if (!out.valid) {
        throw InvariantError(
            "alpha: certificate/witness validation failed at m=" + std::to_string(m) +
            " (degree " + std::to_string(out.value.alpha) + ")");
    }
    if (out.value.alpha < m) {
        throw InvariantError("alpha: found alpha < m, which is impossible");
    }
    return std::move(out.value);
}

AlphaValue alpha(const PointConfiguration& Z, int m, const AlphaOptions& opts) {
    return alpha_in_range(Z, m, m, expected_alpha_bound(Z.dim, m, Z.size()), opts);
}

namespace {

// check table invariants; returns a description of the first failure
std::optional<std::string> table_invariant_failure(const AlphaTable& t,
                                                   bool enforce_monotone_step) {
    for (int m = 1; m <= t.m_max(); ++m) {
        if (t.at(m).alpha < m) {
            return "alpha(" + std::to_string(m) + "Z) < m";
        }
    }
    if (enforce_monotone_step) {
        for (int m = 1; m < t.m_max(); ++m) {
            if (t.at(m + 1).alpha < t.at(m).alpha + 1) {
                return "monotone step failed: alpha(" + std::to_string(m + 1) +
                       "Z) < alpha(" + std::to_string(m) + "Z) + 1";
            }
        }
    }
    for (int m = 2; m <= t.m_max(); ++m) {
        for (int a = 1; a <= m / 2; ++a) {
            const int b = m - a;
            if (t.at(m).alpha > t.at(a).alpha + t.at(b).alpha) {
                return "subadditivity failed: alpha(" + std::to_string(m) +
                       "Z) > alpha(" + std::to_string(a) + "Z) + alpha(" +
                       std::to_string(b) + "Z)";
            }
        }
    }
    return std::nullopt;
}

AlphaTable compute_table(const PointConfiguration& Z, int m_max,
                         const AlphaOptions& opts) {
    AlphaTable t{Z, {}, {}};
    const bool char0 = Z.field.kind != FieldKind::prime;
    for (int m = 1; m <= m_max; ++m) {
        int lo = m;
        int hi = expected_alpha_bound(Z.dim, m, Z.size());
        if (m > 1) {
            const int prev = t.at(m - 1).alpha;
            lo = std::max(lo, char0 ? prev + 1 : prev);
            for (int a = 1; a <= m / 2; ++a) {
                hi = std::min(hi, t.at(a).alpha + t.at(m - a).alpha);
            }
        }
        t.values.push_back(alpha_in_range(Z, m, lo, hi, opts));
    }
    return t;
}

} // namespace

AlphaTable alpha_table(const PointConfiguration& Z, int m_max, const AlphaOptions& opts) {
    if (m_max < 1) throw MathError("alpha_table: m_max must be >= 1");
    AlphaTable t = compute_table(Z, m_max, opts);
    const bool prime_field = Z.field.kind == FieldKind::prime;
    auto failure = table_invariant_failure(t, !prime_field);
    if (failure && !opts.exact && !prime_field) {
        // modular consensus produced an inconsistent table: recompute exactly
        AlphaOptions exact_opts = opts;
        exact_opts.exact = true;
        t = compute_table(Z, m_max, exact_opts);
        t.warnings.push_back("consensus table failed invariant (" + *failure +
                             "); recomputed with exact elimination");
        failure = table_invariant_failure(t, true);
    }
    if (failure) {
        if (prime_field) {
            // the +1 step is only proved in characteristic 0; alpha >= m and
            // subadditivity stay hard errors
            auto hard = table_invariant_failure(t, false);
            if (hard) throw InvariantError("alpha_table: " + *hard);
            t.warnings.push_back("table invariant not enforced over " +
                                 Z.field.describe() + ": " + *failure);
        } else {
            throw InvariantError("alpha_table: " + *failure);
        }
    }
    return t;
}

std::string DemaillyVerdict::summary(int m_max) const {
    std::ostringstream os;
    if (!table_monotone) {
        os << "table monotonicity violated at m=" << monotonicity_failure->first << "; ";
    }
    if (violation) {
        os << "VIOLATION at (m=" << violating_pair->first << ", k=" << violating_pair->second
           << ")";
    } else {
        os << "no violation up to m_max=" << m_max;
    }
    if (!equalities.empty()) {
        os << "; equalities at";
        for (const auto& [m, k] : equalities) os << " (m=" << m << ",k=" << k << ")";
    }
    return os.str();
}

DemaillyVerdict demailly_check(const AlphaTable& t) {
    DemaillyVerdict v;
    const int N = t.config.dim;
    for (int m = 1; m < t.m_max(); ++m) {
        if (t.at(m + 1).alpha < t.at(m).alpha + 1) {
            v.table_monotone = false;
            v.monotonicity_failure = {m, m + 1};
            break;
        }
    }
    for (int m = 1; m <= t.m_max(); ++m) {
        const Rat ratio = Rat(t.at(m).alpha + N - 1, m + N - 1);
        for (int k = 1; k <= t.m_max(); ++k) {
            const Rat lhs = Rat(t.at(k).alpha, k);
            if (lhs < ratio && !v.violation) {
                v.violation = true;
                v.violating_pair = {m, k};
            }
            if (lhs == ratio) v.equalities.emplace_back(m, k);
        }
    }
    return v;
}

EvVerdict ev_check(const AlphaTable& t) {
    EvVerdict v;
    const int N = t.config.dim;
    if (N < 2) throw MathError("ev_check: needs N >= 2");
    for (int m = 1; m <= t.m_max(); ++m) {
        const Rat lhs = Rat(t.at(m).alpha + 1, m + N - 1);
        for (int k = m; k <= t.m_max(); ++k) {
            if (lhs > Rat(t.at(k).alpha, k)) {
                v.ok = false;
                v.failing_pair = {m, k};
                return v;
            }
        }
    }
    return v;
}

MainTheoremVerdict main_theorem_check(int N, int m, std::uint64_t s, const AlphaTable& t) {
    if (int_pow(Int(m + 1), static_cast<std::uint64_t>(N)) > Int(s)) {
        throw MathError("main_theorem_check: requires s >= (m+1)^N");
    }
    if (m > t.m_max()) throw MathError("main_theorem_check: table too short");
    MainTheoremVerdict v;
    v.k = floor_root(Int(s), N);
    const Int bound = v.k * (m + N - 1) - N + 1;
    v.degree_bound_ok = Int(t.at(m).alpha) <= bound;
    v.demailly_ratio_ok = Rat(t.at(m).alpha + N - 1, m + N - 1) <= Rat(v.k);
    for (int j = 1; j <= t.m_max(); ++j) {
        if (Int(t.at(j).alpha) < Int(j) * v.k) {
            v.floor_bound_ok = false;
            v.floor_failures.push_back(j);
        }
    }
    return v;
}

ElsVerdict els_degree_check(const AlphaTable& t, int r) {
    const int N = t.config.dim;
    if (r < 1 || N * r > t.m_max()) {
        throw MathError("els_degree_check: need 1 <= r and N*r <= m_max");
    }
    ElsVerdict v;
    v.r = r;
    v.ok = t.at(N * r).alpha >= r * t.at(1).alpha;
    return v;
}

Int floor_root(const Int& s, int N) {
    if (s < 1 || N < 1) throw MathError("floor_root: need s >= 1, N >= 1");
    return floor_nth_root(s, N);
}

BoundsReport bounds_report(const AlphaTable& t) {
    if (t.m_max() < 1) throw MathError("bounds_report: empty table");
    const int N = t.config.dim;
    BoundsReport r;
    r.waldschmidt_upper = Rat(t.at(1).alpha, 1);
    r.els_lower = Rat(t.at(1).alpha, N);
    r.ev_lower = Rat(0);
    for (int m = 1; m <= t.m_max(); ++m) {
        const Rat over_m = Rat(t.at(m).alpha, m);
        if (over_m < r.waldschmidt_upper) r.waldschmidt_upper = over_m;
        const Rat ev = Rat(t.at(m).alpha + 1, m + N - 1);
        if (ev > r.ev_lower) r.ev_lower = ev;
        r.demailly_ratios.push_back(Rat(t.at(m).alpha + N - 1, m + N - 1));
    }
    r.floor_root_value = floor_root(Int(t.config.size()), N);
    r.demailly = demailly_check(t);
    r.ev = ev_check(t);
    r.chain_ok = r.els_lower <= r.ev_lower && r.ev_lower <= r.waldschmidt_upper;
    if (N >= 2 && !r.chain_ok) {
        throw InvariantError("bounds_report: chain els <= ev <= waldschmidt violated");
    }
    return r;
}

} // namespace initdeg
