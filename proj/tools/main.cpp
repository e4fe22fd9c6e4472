#include "initdeg/analysis.hpp"
#include "initdeg/lemma.hpp"
#include "initdeg/report.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <iostream>
#include <thread>

namespace {

using namespace initdeg;
using nlohmann::json;

constexpr std::uint64_t kMinCliPrime = 1ull << 20;

struct CommonFlags {
    std::string field_text = "rational";
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string output;
    std::string input;
    std::string primes_text;
    bool exact = false;
    bool certificate = false;
    int decimals = -1; // <0: off
};

FieldSpec parse_cli_field(const std::string& text) {
    FieldSpec f;
    try {
        f = FieldSpec::parse(text);
    } catch (const MathError& e) {
        throw UsageError(e.what());
    }
    if (f.kind == FieldKind::prime && f.p <= kMinCliPrime) {
        throw UsageError("--field prime:" + std::to_string(f.p) +
                         ": CLI runs require p > 2^20 (use a larger prime)");
    }
    return f;
}

std::vector<std::uint64_t> parse_primes(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string part = text.substr(pos, comma - pos);
        try {
            out.push_back(std::stoull(part));
        } catch (const std::exception&) {
            throw UsageError("--primes: invalid entry '" + part + "'");
        }
        pos = comma + 1;
    }
    if (out.size() < 2) throw UsageError("--primes: need at least 2 primes");
    for (auto p : out) {
        if (!is_prime_u64(p)) {
            throw UsageError("--primes: " + std::to_string(p) + " is not prime");
        }
    }
    return out;
}

AlphaOptions make_options(const CommonFlags& flags, const FieldSpec& field) {
    AlphaOptions opts;
    opts.exact = flags.exact;
    if (!flags.primes_text.empty()) opts.primes = parse_primes(flags.primes_text);
    if (field.kind == FieldKind::eisenstein && !flags.exact) {
        for (auto p : opts.primes) {
            if (p % 3 != 1) {
                throw UsageError("--primes: eisenstein consensus needs every prime "
                                 "= 1 mod 3; " + std::to_string(p) + " is not");
            }
        }
    }
    return opts;
}

std::optional<int> decimals_of(const CommonFlags& flags) {
    if (flags.decimals < 0) return std::nullopt;
    return flags.decimals;
}

void emit(const json& report, const CommonFlags& flags) {
    emit_output(flags.output,
                render_report(report, parse_format(flags.format), decimals_of(flags)));
}

// single-m report for the alpha command (no bounds block)
json alpha_report(const PointConfiguration& cfg, const AlphaValue& v,
                  const CommonFlags& flags) {
    json j;
    j["version"] = version_tag();
    j["command"] = "alpha";
    j["config_label"] = cfg.label;
    j["config_hash"] = format_hash(cfg.content_hash());
    j["field"] = cfg.field.describe();
    j["dim"] = cfg.dim;
    j["points"] = cfg.size();
    json row;
    row["m"] = v.m;
    row["alpha"] = v.alpha;
    row["alpha_over_m"] = Rat(v.alpha, v.m).str();
    row["demailly_ratio"] = Rat(v.alpha + cfg.dim - 1, v.m + cfg.dim - 1).str();
    row["provenance"] = v.provenance.to_string();
    row["rank"] = v.rank_at_alpha;
    row["kernel_dim"] = v.kernel_dim_at_alpha;
    row["witness"] = {{"degree", v.alpha - 1},
                      {"rank", v.rank_below},
                      {"cols", v.cols_below}};
    row["status"] = "COMPUTED";
    if (flags.certificate && v.certificate) {
        json cert;
        cert["degree"] = v.certificate->degree;
        cert["monomial_order"] = v.certificate->monomial_order;
        cert["field"] = v.certificate->field.describe();
        json coeffs = json::array();
        for (const auto& c : v.certificate->coefficients) coeffs.push_back(c.to_string());
        cert["coefficients"] = coeffs;
        row["certificate"] = cert;
    }
    j["rows"] = json::array({row});
    j["status"] = "COMPUTED";
    return j;
}

int run_fixture_table(const std::string& command, const PointConfiguration& cfg,
                      int m_max, const CommonFlags& flags,
                      const std::vector<std::optional<long>>& expected,
                      bool embed_config) {
    const AlphaOptions opts = make_options(flags, cfg.field);
    const AlphaTable t = alpha_table(cfg, m_max, opts);
    const BoundsReport b = bounds_report(t);
    FixtureReportOptions ro;
    ro.command = command;
    ro.embed_config = embed_config;
    ro.include_certificates = flags.certificate;
    ro.expected = expected;
    const json rep = fixture_report(t, b, ro);
    emit(rep, flags);
    return rep["status"].get<std::string>() == "MISMATCH" ? 2 : 0;
}

int cmd_alpha(const CommonFlags& flags, int m) {
    if (flags.input.empty()) throw UsageError("alpha: --input FILE is required");
    const PointConfiguration cfg = PointConfiguration::load(flags.input);
    const AlphaOptions opts = make_options(flags, cfg.field);
    const AlphaValue v = alpha(cfg, m, opts);
    emit(alpha_report(cfg, v, flags), flags);
    return 0;
}

int cmd_table(const std::string& command, const CommonFlags& flags, int m_max) {
    if (flags.input.empty()) throw UsageError(command + ": --input FILE is required");
    const PointConfiguration cfg = PointConfiguration::load(flags.input);
    return run_fixture_table(command, cfg, m_max, flags, {}, false);
}

int cmd_star(const CommonFlags& flags, int dim, int d, int m_max) {
    PointConfiguration cfg = [&] {
        if (!flags.input.empty()) {
            // fixed arrangement file overrides randomness (regression inputs)
            const HyperplaneArrangement arr = HyperplaneArrangement::load(flags.input);
            return star_from_arrangement(arr, "star(file=" + flags.input + ")");
        }
        const FieldSpec field = parse_cli_field(flags.field_text);
        return star_configuration(dim, d, field, flags.seed);
    }();
    const int N = cfg.dim;
    // closed form alpha((1+kN)Z) = (k+1)d - N + 1 at m = 1 + kN
    const long dd = flags.input.empty()
                        ? d
                        : [&] {
                              // recover d from the point count: s = binom(d, N)
                              long guess = N;
                              while (binomial(static_cast<std::uint64_t>(guess),
                                              static_cast<std::uint64_t>(N)) < Int(cfg.size()))
                                  ++guess;
                              if (binomial(static_cast<std::uint64_t>(guess),
                                           static_cast<std::uint64_t>(N)) != Int(cfg.size())) {
                                  throw UsageError("star: arrangement point count is not "
                                                   "binom(d, N) for any d");
                              }
                              return guess;
                          }();
    std::vector<std::optional<long>> expected(m_max);
    for (int m = 1; m <= m_max; ++m) {
        if ((m - 1) % N == 0) {
            const long k = (m - 1) / N;
            expected[m - 1] = (k + 1) * dd - N + 1;
        }
    }
    return run_fixture_table("star", cfg, m_max, flags, expected, true);
}

int cmd_fermat12(const CommonFlags& flags, int m_max) {
    FieldSpec field = parse_cli_field(flags.field_text);
    if (!field.has_cube_root_of_unity()) {
        throw UsageError("fermat12: field " + field.describe() +
                         " has no cube root of unity (use eisenstein or prime with "
                         "p = 1 mod 3)");
    }
    const PointConfiguration cfg = fermat12_configuration(field);
    std::vector<std::optional<long>> expected(m_max);
    for (int m = 1; m <= m_max; ++m) {
        if (m % 3 == 0) expected[m - 1] = 3L * m;      // alpha(3kZ) = 9k
        if (m % 3 == 2) expected[m - 1] = 3L * m + 2;  // alpha((3k+2)Z) = 9k+8
    }
    return run_fixture_table("fermat12", cfg, m_max, flags, expected, true);
}

struct TrialOutcome {
    json record;
    bool violation = false;
    bool engine_failure = false;
    bool floor_exception = false;
    bool ev_failure = false;
};

TrialOutcome run_trial(int index, int dim, int points, int m_max,
                       const FieldSpec& field, std::uint64_t base_seed,
                       const AlphaOptions& opts) {
    TrialOutcome out;
    const std::uint64_t trial_seed = mix_seed(base_seed, static_cast<std::uint64_t>(index));
    json rec;
    rec["trial"] = index;
    rec["seed"] = trial_seed;
    try {
        const PointConfiguration cfg =
            random_configuration(dim, points, field, trial_seed);
        AlphaTable t = alpha_table(cfg, m_max, opts);
        DemaillyVerdict dem = demailly_check(t);
        if (dem.violation && !opts.exact && field.kind != FieldKind::prime) {
            // newsworthy only if it survives exact recomputation
            AlphaOptions exact_opts = opts;
            exact_opts.exact = true;
            t = alpha_table(cfg, m_max, exact_opts);
            dem = demailly_check(t);
            rec["exact_recheck"] = true;
        }
        const EvVerdict ev = ev_check(t);
        rec["config_label"] = cfg.label;
        rec["config_hash"] = format_hash(cfg.content_hash());
        json alphas = json::array();
        json provs = json::array();
        for (int m = 1; m <= t.m_max(); ++m) {
            alphas.push_back(t.at(m).alpha);
            provs.push_back(t.at(m).provenance.to_string());
        }
        rec["alphas"] = alphas;
        rec["provenances"] = provs;
        rec["demailly"] = demailly_to_json(dem, m_max);
        rec["ev_ok"] = ev.ok;
        out.ev_failure = !ev.ok;
        json mt;
        mt["applicable"] = false;
        json per_m = json::array();
        bool db = true, rr = true, fl = true;
        for (int mm = 1; mm <= m_max; ++mm) {
            if (int_pow(Int(mm + 1), static_cast<std::uint64_t>(dim)) > Int(points)) {
                continue; // main-theorem checks need s >= (m+1)^N
            }
            const MainTheoremVerdict v =
                main_theorem_check(dim, mm, static_cast<std::uint64_t>(points), t);
            json vm = main_theorem_to_json(v);
            vm["m"] = mm;
            per_m.push_back(vm);
            mt["applicable"] = true;
            db = db && v.degree_bound_ok;
            rr = rr && v.demailly_ratio_ok;
            fl = fl && v.floor_bound_ok;
        }
        if (mt["applicable"].get<bool>()) {
            mt["k"] = per_m.back()["k"];
            mt["degree_bound_ok"] = db;
            mt["demailly_ratio_ok"] = rr;
            mt["floor_bound_ok"] = fl;
            mt["per_m"] = per_m;
            if (!db || !rr) out.engine_failure = true;
            if (!fl) out.floor_exception = true;
        }
        rec["main_theorem"] = mt;
        json els = json::array();
        for (int r = 1; r * dim <= m_max; ++r) {
            const ElsVerdict v = els_degree_check(t, r);
            els.push_back({{"r", v.r}, {"ok", v.ok}});
            if (!v.ok) out.engine_failure = true;
        }
        rec["els"] = els;
        rec["warnings"] = t.warnings;
        out.violation = dem.violation;
        if (out.violation) rec["config"] = cfg.to_json(); // full reproduction data
        rec["violation"] = out.violation;
        if (!ev.ok) out.engine_failure = true;
    } catch (const std::exception& e) {
        rec["error"] = e.what();
        rec["violation"] = false;
        rec["ev_ok"] = false;
        rec["alphas"] = json::array();
        rec["main_theorem"] = {{"applicable", false}};
        out.engine_failure = true;
    }
    out.record = std::move(rec);
    return out;
}

int cmd_scan(const CommonFlags& flags, int dim, int points, int m_max, int trials,
             int jobs) {
    if (trials < 1) throw UsageError("scan: --trials must be >= 1");
    if (jobs < 1) throw UsageError("scan: --jobs must be >= 1");
    const FieldSpec field = parse_cli_field(flags.field_text);
    const AlphaOptions opts = make_options(flags, field);

    std::vector<TrialOutcome> outcomes(trials);
    std::atomic<int> next{0};
    auto worker = [&] {
        while (true) {
            const int idx = next.fetch_add(1);
            if (idx >= trials) break;
            outcomes[idx] = run_trial(idx, dim, points, m_max, field, flags.seed, opts);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < std::min(jobs, trials); ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    json rep;
    rep["version"] = version_tag();
    rep["command"] = "scan";
    rep["params"] = {{"dim", dim},
                     {"points", points},
                     {"m_max", m_max},
                     {"trials", trials},
                     {"seed", flags.seed},
                     {"field", field.describe()},
                     {"exact", flags.exact},
                     {"jobs", jobs},
                     {"primes", opts.primes}};
    json recs = json::array();
    int violations = 0, engine_failures = 0, floor_exceptions = 0, ev_failures = 0;
    for (const auto& o : outcomes) {
        recs.push_back(o.record);
        violations += o.violation ? 1 : 0;
        engine_failures += o.engine_failure ? 1 : 0;
        floor_exceptions += o.floor_exception ? 1 : 0;
        ev_failures += o.ev_failure ? 1 : 0;
    }
    rep["trials"] = std::move(recs);
    rep["aggregate"] = {{"trials", trials},
                        {"violations", violations},
                        {"engine_failures", engine_failures},
                        {"floor_exceptions", floor_exceptions},
                        {"ev_failures", ev_failures}};
    const int exit_code = violations > 0 ? 3 : (engine_failures > 0 ? 2 : 0);
    rep["exit_code"] = exit_code;
    emit(rep, flags);
    return exit_code;
}

int cmd_lemma(const CommonFlags& flags, int n_max, int m_max, int k_span,
              const std::string& report_path) {
    LemmaDomain dom{n_max, m_max, k_span};
    const LemmaReport rep = verify_lemma(dom);
    if (!report_path.empty()) {
        json j = rep.to_json();
        j["version"] = version_tag();
        j["command"] = "lemma";
        emit_output(report_path, j.dump(2) + "\n");
    }
    emit_output(flags.output, render_lemma_text(rep));
    return rep.failures.empty() ? 0 : 2;
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_field = true) {
    if (with_field) {
        cmd->add_option("--field", flags.field_text,
                        "scalar field: rational, eisenstein or prime:P (CLI needs p > 2^20)");
    }
    cmd->add_option("--seed", flags.seed, "seed for every pseudorandom choice");
    cmd->add_option("--format", flags.format, "report format: json, csv or text");
    cmd->add_option("--output", flags.output, "write the report here instead of stdout");
    cmd->add_option("--primes", flags.primes_text,
                    "comma-separated primes for modular consensus");
    cmd->add_flag("--exact", flags.exact, "force exact characteristic-0 elimination");
    cmd->add_flag("--certificate", flags.certificate, "include kernel vectors in reports");
    cmd->add_option("--decimals", flags.decimals,
                    "also render ratios as N-digit decimals (text format)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact initial degrees of fat point ideals, Waldschmidt bounds "
                 "and conjecture scans"};
    app.set_version_flag("--version", version_tag());
    app.require_subcommand(1);

    CommonFlags flags;
    int m = 1, m_max = 1, dim = 2, d = 3, points = 4, trials = 1, jobs = 1;
    int n_max = 10, k_span = 10;
    std::string lemma_report;

    auto* c_alpha = app.add_subcommand("alpha", "least degree with a form of multiplicity m");
    add_common(c_alpha, flags, false);
    c_alpha->add_option("--input", flags.input, "configuration JSON file")->required();
    c_alpha->add_option("--m", m, "multiplicity")->required();

    auto* c_table = app.add_subcommand("table", "alpha(mZ) for m = 1..m_max, with bounds");
    add_common(c_table, flags, false);
    c_table->add_option("--input", flags.input, "configuration JSON file")->required();
    c_table->add_option("--m-max", m_max, "largest multiplicity")->required();

    auto* c_bounds = app.add_subcommand("bounds", "Waldschmidt/Chudnovsky bound report");
    add_common(c_bounds, flags, false);
    c_bounds->add_option("--input", flags.input, "configuration JSON file")->required();
    c_bounds->add_option("--m-max", m_max, "largest multiplicity")->required();

    auto* c_star = app.add_subcommand("star", "star configuration vs its closed form");
    add_common(c_star, flags);
    auto* star_dim = c_star->add_option("--dim", dim, "ambient projective dimension N");
    auto* star_d = c_star->add_option("--d", d, "number of general hyperplanes");
    c_star->add_option("--m-max", m_max, "largest multiplicity")->required();
    c_star->add_option("--input", flags.input,
                       "hyperplane arrangement JSON (overrides random sampling)")
        ->excludes(star_dim)
        ->excludes(star_d);

    auto* c_fermat = app.add_subcommand("fermat12", "the 12-point configuration vs its "
                                                    "closed forms");
    add_common(c_fermat, flags);
    c_fermat->add_option("--m-max", m_max, "largest multiplicity")->required();

    auto* c_scan = app.add_subcommand("scan", "seeded batch conjecture scan");
    add_common(c_scan, flags);
    c_scan->add_option("--dim", dim, "ambient projective dimension N")->required();
    c_scan->add_option("--points", points, "number of random points s")->required();
    c_scan->add_option("--m-max", m_max, "largest multiplicity")->required();
    c_scan->add_option("--trials", trials, "number of seeded trials")->required();
    c_scan->add_option("--jobs", jobs, "concurrent trials");

    auto* c_lemma = app.add_subcommand("lemma", "exhaustive combinatorial inequality sweep");
    c_lemma->add_option("--n-max", n_max, "largest N (box starts at 3)");
    c_lemma->add_option("--m-max", m_max, "largest m (box starts at 1)");
    c_lemma->add_option("--k-span", k_span, "k ranges over [m+1, m+k_span]");
    c_lemma->add_option("--report", lemma_report, "write the JSON report here");
    c_lemma->add_option("--output", flags.output, "write the text summary here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        // validate shared numeric flags before any computation
        if (m < 1) throw UsageError("--m must be >= 1");
        if (m_max < 1 && !app.got_subcommand(c_lemma)) {
            throw UsageError("--m-max must be >= 1");
        }
        if (dim < 2) throw UsageError("--dim must be >= 2");
        if (app.got_subcommand(c_star) && flags.input.empty() && d < dim) {
            throw UsageError("star: need --d >= --dim general hyperplanes");
        }
        if (app.got_subcommand(c_scan) && points < 1) {
            throw UsageError("--points must be >= 1");
        }

        if (app.got_subcommand(c_alpha)) return cmd_alpha(flags, m);
        if (app.got_subcommand(c_table)) return cmd_table("table", flags, m_max);
        if (app.got_subcommand(c_bounds)) return cmd_table("bounds", flags, m_max);
        if (app.got_subcommand(c_star)) return cmd_star(flags, dim, d, m_max);
        if (app.got_subcommand(c_fermat)) {
            // defaults to the cyclotomic ground field
            if (c_fermat->count("--field") == 0) flags.field_text = "eisenstein";
            return cmd_fermat12(flags, m_max);
        }
        if (app.got_subcommand(c_scan))
            return cmd_scan(flags, dim, points, m_max, trials, jobs);
        if (app.got_subcommand(c_lemma))
            return cmd_lemma(flags, n_max, m_max, k_span, lemma_report);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
