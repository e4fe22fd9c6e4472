#include "initdeg/lemma.hpp"

#include "initdeg/errors.hpp"

namespace initdeg {

Int u_value(long N, long m, long k, long i) {
    const Int q = m + N - 1;
    const Int kq = k * q;
    return (kq + 1 - i) * (kq + 2 - N + i) - (q - i) * (m + i) * Int(k + 1) * (k + 1);
}

Int dk_value(long N, long m, long k, long i) {
    return u_value(N, m, k + 1, i) - u_value(N, m, k, i);
}

Int uk_value(long N, long m, long i) { return u_value(N, m, m + 1, i); }

Int dn_value(long N, long m, long i) {
    return uk_value(N + 1, m, i) - uk_value(N, m, i);
}

Int discriminant(long m, long i) {
    const Int M(m), I(i);
    return Int(4) - 16 * M * M - 12 * I * I * M * M - 16 * M - 8 * I * M -
           36 * I * I * M - 20 * I - 15 * I * I;
}

Int dk_at_min_k_printed(long N, long m, long i) {
    const Int Nn(N), M(m), I(i);
    return 2 * Nn * M * M - 4 * M * M + 2 * M * Nn * Nn - 4 * M * Nn -
           2 * I * M * Nn + 2 * I * I * M + 2 * I * M + 4 * M + 2 * Nn * Nn -
           2 * Nn + 5 * I - 5 * I * Nn + 5 * I * I;
}

Int dn_printed_x2(long N, long m, long i) {
    // printed: m^3 + ((N-1)/2 - i) m^2 + (2N-4i-2) m + (3 (N-1)/2 m^2 - 3i + 1);
    // doubled to stay in Z
    const Int Nn(N), M(m), I(i);
    return 2 * M * M * M + (Nn - 1 - 2 * I) * M * M + (4 * Nn - 8 * I - 4) * M +
           (3 * (Nn - 1) * M * M - 6 * I + 2);
}

Int uk3_closed_form(long m, long i) {
    return Int(m + 3) * (m + 1) * (i - 1) * (i - 1);
}

namespace {

// both sides of the factor-product inequality
// (kq+1)(kq)...(kq+2-N) >= q(q-1)...m * (k+1)^N
Int product_lhs(long N, long m, long k) {
    const Int q = m + N - 1;
    const Int kq = k * q;
    Int out = 1;
    for (long j = 0; j < N; ++j) out *= kq + 1 - j;
    return out;
}

Int product_rhs(long N, long m, long k) {
    Int out = 1;
    for (long t = m; t <= m + N - 1; ++t) out *= t;
    return out * int_pow(Int(k + 1), static_cast<std::uint64_t>(N));
}

} // namespace

nlohmann::json LemmaReport::to_json() const {
    nlohmann::json j;
    j["domain"] = {{"n_max", domain.n_max},
                   {"m_max", domain.m_max},
                   {"k_span", domain.k_span}};
    nlohmann::json counts;
    std::uint64_t total = 0;
    for (const auto& [name, count] : checks) {
        counts[name] = count;
        total += count;
    }
    j["checks"] = counts;
    j["total_checks"] = total;
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& f : failures) {
        fails.push_back({{"check", f.check},
                         {"N", f.N},
                         {"m", f.m},
                         {"k", f.k},
                         {"i", f.i},
                         {"detail", f.detail}});
    }
    j["failures"] = fails;
    j["failure_count"] = failures.size();
    if (total > 0) {
        j["uk3_spot_check_m1_i1"] = {
            {"u_direct", uk3_spot_check_m1_i1.u_direct.str()},
            {"closed_form", uk3_spot_check_m1_i1.closed_form.str()},
            {"agree", uk3_spot_check_m1_i1.agree},
            {"note", "second factor of u at (N,m,k,i)=(3,1,2,1) is kq+2-N+i = 6; "
                     "a hand evaluation using 7 yields the spurious value 6 "
                     "instead of 0"}};
        j["delta_box"] = {{"m_max", delta_m_max}, {"i_max", delta_i_max}};
    }
    return j;
}

LemmaReport verify_lemma(const LemmaDomain& domain) {
    LemmaReport rep;
    rep.domain = domain;
    auto& failures = rep.failures;
    auto record = [&](const std::string& check, long N, long m, long k, long i,
                      bool ok, const std::string& detail) {
        ++rep.checks[check];
        if (!ok) failures.push_back(LemmaFailure{check, N, m, k, i, detail});
    };

    if (domain.n_max < 3 || domain.m_max < 1 || domain.k_span < 1) {
        return rep; // empty domain: nothing to verify
    }
    const long box = static_cast<long>(domain.n_max - 2) * domain.m_max * domain.k_span;
    if (box > 2000000L) {
        throw ResourceLimitError("verify_lemma: box of " + std::to_string(box) +
                                 " (N,m,k) cells exceeds the 2e6 guard");
    }

    for (long N = 3; N <= domain.n_max; ++N) {
        const long i_max = (N - 1) / 2;
        for (long m = 1; m <= domain.m_max; ++m) {
            const long q = m + N - 1;
            for (long i = 0; i <= i_max; ++i) {
                // (d) and the printed-polynomial cross-checks, k-independent parts
                const Int dn = dn_value(N, m, i);
                record("dn_nonneg", N, m, 0, i, dn >= 0, "dN = " + dn.str());
                record("dn_matches_printed", N, m, 0, i,
                       2 * dn == dn_printed_x2(N, m, i),
                       "2*dN = " + Int(2 * dn).str() + " vs printed " +
                           dn_printed_x2(N, m, i).str());
            }
            for (long k = m + 1; k <= m + domain.k_span; ++k) {
                // (a) the binomial inequality itself
                {
                    const Int lhs = binomial(static_cast<std::uint64_t>(k * q + 1),
                                             static_cast<std::uint64_t>(N));
                    const Int rhs =
                        binomial(static_cast<std::uint64_t>(q),
                                 static_cast<std::uint64_t>(N)) *
                        int_pow(Int(k + 1), static_cast<std::uint64_t>(N));
                    record("lemma_binomial", N, m, k, 0, lhs >= rhs,
                           lhs.str() + " < " + rhs.str());
                }
                // (b) the factor-product form
                const Int plhs = product_lhs(N, m, k);
                const Int prhs = product_rhs(N, m, k);
                record("product_form", N, m, k, 0, plhs >= prhs,
                       plhs.str() + " < " + prhs.str());
                // (c) grouped pairs, and the reconstruction identity tying the
                // grouping back to the full product (odd N leaves the middle
                // factor unpaired; it contributes once, with a single k+1)
                Int group_lhs = 1, group_rhs = 1;
                for (long i = 0; i <= i_max; ++i) {
                    const Int kq(k * q);
                    const Int pair_lhs = (kq + 1 - i) * (kq + 2 - N + i);
                    const Int pair_rhs = Int(q - i) * (m + i) * (k + 1) * (k + 1);
                    record("pair_inequality", N, m, k, i, pair_lhs >= pair_rhs,
                           pair_lhs.str() + " < " + pair_rhs.str());
                    record("pair_matches_u", N, m, k, i,
                           pair_lhs - pair_rhs == u_value(N, m, k, i),
                           "u mismatch");
                    const bool middle = (N % 2 == 1) && i == i_max;
                    if (middle) {
                        const Int mid_lhs = kq + 1 - i;
                        const Int mid_rhs = Int(q - i) * (k + 1);
                        record("middle_factor", N, m, k, i, mid_lhs >= mid_rhs,
                               mid_lhs.str() + " < " + mid_rhs.str());
                        group_lhs *= mid_lhs;
                        group_rhs *= mid_rhs;
                    } else {
                        group_lhs *= pair_lhs;
                        group_rhs *= pair_rhs;
                    }
                }
                record("pair_reconstruction", N, m, k, 0,
                       group_lhs == plhs && group_rhs == prhs,
                       "grouped factors do not reproduce the product form");
                // (d) dk >= 0 and its printed expansion at k = m+1
                for (long i = 0; i <= i_max; ++i) {
                    const Int dk = dk_value(N, m, k, i);
                    record("dk_nonneg", N, m, k, i, dk >= 0, "dk = " + dk.str());
                }
            }
            for (long i = 0; i <= i_max; ++i) {
                const Int dk_min = dk_value(N, m, m + 1, i);
                record("dk_matches_printed", N, m, m + 1, i,
                       dk_min == dk_at_min_k_printed(N, m, i),
                       "dk = " + dk_min.str() + " vs printed " +
                           dk_at_min_k_printed(N, m, i).str());
            }
        }
    }

    // (e) closed form for uk at N = 3, across the m box with both admissible i
    if (domain.n_max >= 3) {
        for (long m = 1; m <= domain.m_max; ++m) {
            for (long i = 0; i <= 1; ++i) {
                const Int direct = uk_value(3, m, i);
                const Int closed = uk3_closed_form(m, i);
                record("uk3_closed_form", 3, m, m + 1, i, direct == closed,
                       "direct " + direct.str() + " vs closed " + closed.str());
            }
        }
    }
    // the spot value that is easy to get wrong by hand: record it explicitly
    rep.uk3_spot_check_m1_i1.u_direct = u_value(3, 1, 2, 1);
    rep.uk3_spot_check_m1_i1.closed_form = uk3_closed_form(1, 1);
    rep.uk3_spot_check_m1_i1.agree =
        rep.uk3_spot_check_m1_i1.u_direct == rep.uk3_spot_check_m1_i1.closed_form;
    if (!rep.uk3_spot_check_m1_i1.agree) {
        failures.push_back(LemmaFailure{"uk3_spot_check", 3, 1, 2, 1,
                                        "direct and closed form disagree at (m,i)=(1,1)"});
    }

    // (f) discriminant negativity sweep
    for (long m = 1; m <= rep.delta_m_max; ++m) {
        for (long i = 0; i <= rep.delta_i_max; ++i) {
            const Int delta = discriminant(m, i);
            record("delta_negative", 0, m, 0, i, delta < 0, "delta = " + delta.str());
        }
    }
    return rep;
}

} // namespace initdeg
