// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include "initdeg/analysis.hpp"
#include "initdeg/lemma.hpp"
#include "initdeg/report.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

using namespace initdeg;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    std::string name;
    bool ok = true;
    std::vector<std::string> notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
};

struct Harness {
    std::vector<Criterion> criteria;
    // every table computed anywhere in the run, for the invariant and oracle
    // criteria
    struct TableRecord {
        std::string label;
        PointConfiguration config;
        AlphaTable table;
        AlphaOptions opts;
    };
    std::vector<TableRecord> tables;

    Criterion& begin(const std::string& name) {
        criteria.push_back(Criterion{name});
        return criteria.back();
    }

    void remember(const std::string& label, const PointConfiguration& cfg,
                  const AlphaTable& t, const AlphaOptions& opts) {
        tables.push_back(TableRecord{label, cfg, t, opts});
    }

    int finish() {
        bool all_ok = true;
        for (const auto& c : criteria) {
            std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << "\n";
            for (const auto& n : c.notes) std::cout << "     - " << n << "\n";
            all_ok = all_ok && c.ok;
        }
        std::cout << (all_ok ? "acceptance: all criteria passed"
                             : "acceptance: FAILURES present")
                  << "\n";
        return all_ok ? 0 : 1;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PointConfiguration reduce_config_mod(const PointConfiguration& Z, std::uint64_t p) {
    std::vector<ProjectivePoint> pts;
    for (const auto& pt : Z.points) {
        std::vector<FieldElement> coords;
        for (const auto& c : pt.coords()) {
            coords.push_back(FieldElement(ModularResidue{reduce_mod_p(c, p), p}));
        }
        pts.emplace_back(std::move(coords));
    }
    return PointConfiguration(Z.dim, FieldSpec::prime(p), std::move(pts),
                              Z.label + " mod " + std::to_string(p));
}

// independent oracle for criterion 6: scan upward from d = m
int linear_scan_alpha(const PointConfiguration& Z, int m, const AlphaOptions& opts) {
    for (int d = m;; ++d) {
        const ConditionMatrix cm = build_matrix(Z, m, d, opts.caps);
        int rank;
        if (opts.exact || Z.field.kind == FieldKind::prime) {
            rank = rank_kernel(cm.mat, false).rank;
        } else {
            MultiPrimeRank mp;
            if (Z.field.kind == FieldKind::rational) {
                mp = multi_prime_rank(clear_denominators(cm.mat), opts.primes, false);
            } else {
                mp = multi_prime_rank(clear_denominators_eis(cm.mat), opts.primes, false);
            }
            if (!mp.consensus()) {
                rank = rank_kernel(cm.mat, false).rank;
            } else {
                rank = mp.result->rank;
            }
        }
        if (rank < cm.mat.cols) return d;
    }
}

long star_closed_form(int N, int d, int m) {
    // alpha((1+kN)Z) = (k+1)d - N + 1
    const long k = (m - 1) / N;
    return (k + 1) * static_cast<long>(d) - N + 1;
}

const std::string kCli = INITDEG_CLI_PATH;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_cli(const std::string& args, const fs::path& out, const fs::path& err) {
    const std::string cmd = kCli + " " + args + " > " + out.string() + " 2> " + err.string();
    return WEXITSTATUS(std::system(cmd.c_str()));
}

} // namespace

int main() {
    Harness h;
    const auto t_start = std::chrono::steady_clock::now();

    // ---------------------------------------------------------- criterion 1
    {
        auto& c = h.begin("criterion 1: fermat12 regression (eisenstein, m <= 6)");
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto Z = fermat12_configuration(FieldSpec::eisenstein());
            const AlphaOptions opts;
            const AlphaTable t = alpha_table(Z, 6, opts);
            h.remember("fermat12/eisenstein", Z, t, opts);
            const int expected[6] = {0, 8, 9, 0, 17, 18}; // m = 2,3,5,6 pinned
            for (int m = 2; m <= 6; ++m) {
                if (m == 4) continue;
                c.require(t.at(m).alpha == expected[m - 1],
                          "alpha(" + std::to_string(m) + "Z) = " +
                              std::to_string(t.at(m).alpha) + ", expected " +
                              std::to_string(expected[m - 1]));
            }
            const BoundsReport b = bounds_report(t);
            c.require(b.waldschmidt_upper == Rat(3), "waldschmidt_upper != 3");
            c.require(b.ev_lower == Rat(3), "ev_lower != 3");
            bool eq_m2 = false, eq_m5 = false;
            for (const auto& [m, k] : b.demailly.equalities) {
                if (m == 2 && k != 2) eq_m2 = true;
                if (m == 5 && k != 5) eq_m5 = true;
            }
            c.require(eq_m2, "no demailly equality at m=2");
            c.require(eq_m5, "no demailly equality at m=5");
            c.require(!b.demailly.violation, "unexpected demailly violation");
            for (int r = 1; 2 * r <= 6; ++r) {
                c.require(els_degree_check(t, r).ok,
                          "degree consequence alpha(2rZ) >= r*alpha(Z) failed at r=" +
                              std::to_string(r));
            }
            // the same table through fraction-free elimination over Z[w]
            AlphaOptions exact_opts;
            exact_opts.exact = true;
            const AlphaTable tx = alpha_table(Z, 6, exact_opts);
            h.remember("fermat12/eisenstein exact", Z, tx, exact_opts);
            for (int m = 1; m <= 6; ++m) {
                c.require(tx.at(m).alpha == t.at(m).alpha,
                          "exact and consensus tables disagree at m=" + std::to_string(m));
                c.require(!tx.at(m).provenance.modular, "exact table not exact");
            }
            const double el = seconds_since(t0);
            c.notes.push_back("table (m=1..6): " + std::to_string(t.at(1).alpha) + "," +
                              std::to_string(t.at(2).alpha) + "," +
                              std::to_string(t.at(3).alpha) + "," +
                              std::to_string(t.at(4).alpha) + "," +
                              std::to_string(t.at(5).alpha) + "," +
                              std::to_string(t.at(6).alpha) +
                              " (consensus and exact Z[w] agree)  [" +
                              std::to_string(el) + " s]");
            c.require(el < 120.0, "runtime exceeded 2 minutes");
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
    }

    // ---------------------------------------------------------- criterion 2
    {
        auto& c = h.begin("criterion 2: star-configuration closed form");
        try {
            const AlphaOptions opts;
            struct Cell {
                int N;
                std::vector<int> ds;
                std::vector<int> ms;
            };
            const std::vector<Cell> cells = {{2, {3, 4, 5}, {1, 3, 5}},
                                             {3, {4, 5}, {1, 4}}};
            for (const auto& cell : cells) {
                for (int d : cell.ds) {
                    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                        const auto Z =
                            star_configuration(cell.N, d, FieldSpec::rational(), seed);
                        const int m_max = *std::max_element(cell.ms.begin(), cell.ms.end());
                        const AlphaTable t = alpha_table(Z, m_max, opts);
                        h.remember("star N=" + std::to_string(cell.N) +
                                       " d=" + std::to_string(d) +
                                       " seed=" + std::to_string(seed),
                                   Z, t, opts);
                        for (int m : cell.ms) {
                            const long want = star_closed_form(cell.N, d, m);
                            c.require(t.at(m).alpha == want,
                                      "star(N=" + std::to_string(cell.N) +
                                          ",d=" + std::to_string(d) +
                                          ",seed=" + std::to_string(seed) + "): alpha(" +
                                          std::to_string(m) + ") = " +
                                          std::to_string(t.at(m).alpha) + ", expected " +
                                          std::to_string(want));
                        }
                    }
                }
            }
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
    }

    // ---------------------------------------------------------- criterion 3
    {
        auto& c = h.begin("criterion 3: combinatorial lemma sweep");
        try {
            const auto t0 = std::chrono::steady_clock::now();
            const LemmaReport rep = verify_lemma(LemmaDomain{10, 10, 10});
            c.require(rep.failures.empty(),
                      "sweep reported " + std::to_string(rep.failures.size()) + " failures");
            for (const char* kind :
                 {"lemma_binomial", "product_form", "pair_inequality", "dk_nonneg",
                  "dn_nonneg", "delta_negative", "uk3_closed_form"}) {
                c.require(rep.checks.count(kind) && rep.checks.at(kind) > 0,
                          std::string("check family missing: ") + kind);
            }
            c.require(rep.delta_m_max == 50 && rep.delta_i_max == 50,
                      "delta box is not m,i <= 50");
            // the closed-form spot value at (m,i) = (1,1) must be surfaced
            // explicitly, with both sides evaluated on the real formulas
            c.require(rep.uk3_spot_check_m1_i1.u_direct == 0,
                      "direct u(3,1,2,1) is not 0");
            c.require(rep.uk3_spot_check_m1_i1.closed_form == 0,
                      "closed form at (1,1) is not 0");
            c.require(rep.uk3_spot_check_m1_i1.agree, "spot check sides disagree");
            c.require(rep.to_json().contains("uk3_spot_check_m1_i1"),
                      "report does not surface the spot check");
            c.notes.push_back(
                "documented finding: direct evaluation of the pair-gap function at "
                "(N,m,k,i)=(3,1,2,1) gives 0 and equals the closed form "
                "(m+3)(m+1)(i-1)^2 = 0; the second factor there is kq+2-N+i = 6 "
                "(a hand evaluation with 7 gives the spurious 6). [" +
                std::to_string(seconds_since(t0)) + " s]");
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
    }

    // ---------------------------------------------------------- criterion 4
    {
        auto& c = h.begin("criterion 4: main-theorem desk check (20 seeds per cell)");
        const auto t0 = std::chrono::steady_clock::now();
        try {
            struct Cell {
                int N, m;
                std::uint64_t s;
            };
            const std::vector<Cell> cells = {
                {2, 2, 9}, {2, 2, 12}, {2, 2, 16}, {3, 1, 8}, {3, 1, 27}};
            const AlphaOptions opts;
            for (const auto& cell : cells) {
                int floor_ok_count = 0;
                std::vector<std::uint64_t> floor_exceptions;
                for (std::uint64_t seed = 0; seed < 20; ++seed) {
                    const std::uint64_t trial_seed = mix_seed(1000 + cell.N, seed);
                    const auto Z = random_configuration(cell.N, static_cast<int>(cell.s),
                                                        FieldSpec::rational(), trial_seed);
                    const AlphaTable t = alpha_table(Z, cell.m, opts);
                    h.remember("desk N=" + std::to_string(cell.N) +
                                   " s=" + std::to_string(cell.s) +
                                   " seed=" + std::to_string(trial_seed),
                               Z, t, opts);
                    const MainTheoremVerdict v =
                        main_theorem_check(cell.N, cell.m, cell.s, t);
                    c.require(v.degree_bound_ok,
                              "degree bound failed at N=" + std::to_string(cell.N) +
                                  " s=" + std::to_string(cell.s) +
                                  " seed=" + std::to_string(trial_seed));
                    c.require(v.demailly_ratio_ok,
                              "demailly ratio > k at N=" + std::to_string(cell.N) +
                                  " s=" + std::to_string(cell.s) +
                                  " seed=" + std::to_string(trial_seed));
                    if (v.floor_bound_ok) {
                        ++floor_ok_count;
                    } else {
                        floor_exceptions.push_back(trial_seed);
                    }
                }
                c.require(floor_ok_count >= 19,
                          "floor bound alpha(jZ) >= j*k held only " +
                              std::to_string(floor_ok_count) + "/20 at N=" +
                              std::to_string(cell.N) + " s=" + std::to_string(cell.s));
                if (!floor_exceptions.empty()) {
                    std::string s = "floor exceptions (seed-reproducible) at N=" +
                                    std::to_string(cell.N) + " s=" +
                                    std::to_string(cell.s) + ": seeds";
                    for (auto sd : floor_exceptions) s += " " + std::to_string(sd);
                    c.notes.push_back(s);
                }
            }
            const double el = seconds_since(t0);
            c.notes.push_back("5 cells x 20 seeds  [" + std::to_string(el) + " s]");
            c.require(el < 900.0, "runtime exceeded 15 minutes");
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
    }

    // ---------------------------------------------------------- criterion 5
    {
        auto& c = h.begin("criterion 5: theorem-backed invariants on every table");
        try {
            int checked = 0;
            for (const auto& rec : h.tables) {
                const AlphaTable& t = rec.table;
                const int N = rec.config.dim;
                const BoundsReport b = bounds_report(t);
                c.require(b.chain_ok, rec.label + ": bound chain violated");
                const EvVerdict ev = ev_check(t);
                c.require(ev.ok, rec.label + ": EV pairwise inequality failed");
                // characteristic-0 tables: monotone step and subadditivity
                if (rec.config.field.kind != FieldKind::prime) {
                    for (int m = 2; m <= t.m_max(); ++m) {
                        c.require(t.at(m).alpha >= t.at(m - 1).alpha + 1,
                                  rec.label + ": monotone step failed at m=" +
                                      std::to_string(m));
                        for (int a = 1; a < m; ++a) {
                            c.require(t.at(m).alpha <=
                                          t.at(a).alpha + t.at(m - a).alpha,
                                      rec.label + ": subadditivity failed at m=" +
                                          std::to_string(m));
                        }
                    }
                }
                // pairwise EV re-stated directly (eq (7) family)
                for (int m = 1; m <= t.m_max(); ++m) {
                    for (int k = m; k <= t.m_max(); ++k) {
                        c.require(Rat(t.at(m).alpha + 1, m + N - 1) <=
                                      Rat(t.at(k).alpha, k),
                                  rec.label + ": EV pair (m,k)=(" + std::to_string(m) +
                                      "," + std::to_string(k) + ") failed");
                    }
                }
                ++checked;
            }
            c.notes.push_back(std::to_string(checked) + " tables checked");
            c.require(checked >= 100, "expected at least 100 tables in the registry");
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
    }

    // ---------------------------------------------------------- criterion 6
    {
        auto& c = h.begin("criterion 6: oracle equivalence");
        try {
            // binary search vs linear scan on every (table, m) from criteria 1-4
            int compared = 0;
            for (const auto& rec : h.tables) {
                for (int m = 1; m <= rec.table.m_max(); ++m) {
                    const int scan = linear_scan_alpha(rec.config, m, rec.opts);
                    c.require(scan == rec.table.at(m).alpha,
                              rec.label + ": linear scan alpha(" + std::to_string(m) +
                                  ") = " + std::to_string(scan) + " != " +
                                  std::to_string(rec.table.at(m).alpha));
                    ++compared;
                }
            }
            c.notes.push_back(std::to_string(compared) + " (config, m) cases scanned");

            // modular consensus vs exact Bareiss on 200 random integer matrices
            SplitMix64 rng(2024);
            int consensus_checked = 0;
            for (int iter = 0; iter < 200; ++iter) {
                const int rows = 1 + static_cast<int>(rng.bounded(40));
                const int cols = 1 + static_cast<int>(rng.bounded(40));
                IntMatrix m(rows, cols);
                for (auto& v : m.e) v = Int(rng.in_range(-10000, 10000));
                if (rows >= 2 && rng.bounded(3) == 0) {
                    const int src = static_cast<int>(rng.bounded(rows));
                    const int dst = static_cast<int>(rng.bounded(rows));
                    for (int cc = 0; cc < cols; ++cc) m.at(dst, cc) = m.at(src, cc);
                }
                const MultiPrimeRank mp = multi_prime_rank(m, default_consensus_primes());
                c.require(mp.consensus(), "consensus failure on random matrix");
                if (mp.consensus()) {
                    c.require(mp.result->rank == bareiss_rank(m),
                              "consensus rank != Bareiss rank on matrix " +
                                  std::to_string(iter));
                    ++consensus_checked;
                }
            }
            c.notes.push_back(std::to_string(consensus_checked) +
                              " random matrices: consensus rank == Bareiss rank");

            // certificates re-verified by direct order-of-vanishing evaluation
            int certs = 0;
            for (const auto& rec : h.tables) {
                for (int m = 1; m <= rec.table.m_max(); ++m) {
                    const AlphaValue& v = rec.table.at(m);
                    c.require(v.certificate.has_value(),
                              rec.label + ": missing certificate at m=" + std::to_string(m));
                    if (!v.certificate) continue;
                    bool ok;
                    if (v.provenance.modular) {
                        const auto zp =
                            reduce_config_mod(rec.config, v.certificate->field.p);
                        ok = vanishes_to_order(v.certificate->coefficients,
                                               v.certificate->degree, zp, m);
                    } else {
                        ok = vanishes_to_order(v.certificate->coefficients,
                                               v.certificate->degree, rec.config, m);
                    }
                    c.require(ok, rec.label + ": certificate failed direct evaluation at m=" +
                                      std::to_string(m));
                    ++certs;
                }
            }
            c.notes.push_back(std::to_string(certs) + " certificates re-verified (100%)");
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
    }

    // ---------------------------------------------------------- criterion 7
    {
        auto& c = h.begin("criterion 7: CLI determinism (byte-identical reruns)");
        try {
            const fs::path dir = fs::temp_directory_path() / "initdeg_acceptance";
            fs::create_directories(dir);
            // a configuration file for the table command
            const auto star = star_configuration(2, 4, FieldSpec::rational(), 11);
            const auto cfg_path = dir / "cfg.json";
            star.save(cfg_path.string());
            const std::vector<std::pair<std::string, std::string>> cases = {
                {"fermat12", "fermat12 --m-max 4 --format json"},
                {"star", "star --dim 2 --d 4 --m-max 3 --seed 3 --format csv"},
                {"scan", "scan --dim 2 --points 9 --m-max 2 --trials 5 --seed 7 --format json"},
                {"lemma", "lemma --n-max 6 --m-max 5 --k-span 5"},
                {"table", "table --input " + cfg_path.string() + " --m-max 3 --format text"},
                {"bounds", "bounds --input " + cfg_path.string() + " --m-max 2 --format csv"},
            };
            for (const auto& [tag, args] : cases) {
                const fs::path o1 = dir / (tag + ".1"), o2 = dir / (tag + ".2");
                const fs::path e1 = dir / (tag + ".e1"), e2 = dir / (tag + ".e2");
                const int c1 = run_cli(args, o1, e1);
                const int c2 = run_cli(args, o2, e2);
                c.require(c1 == c2, tag + ": exit codes differ");
                c.require(c1 == 0, tag + ": exited " + std::to_string(c1));
                c.require(slurp(o1) == slurp(o2), tag + ": reports differ between reruns");
                c.require(!slurp(o1).empty(), tag + ": empty report");
            }
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
    }

    std::cout << "total acceptance runtime: " << seconds_since(t_start) << " s\n";
    return h.finish();
}
