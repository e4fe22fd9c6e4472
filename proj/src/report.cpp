#include "initdeg/report.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace initdeg {

using nlohmann::json;

ReportFormat parse_format(const std::string& text) {
    if (text == "json") return ReportFormat::json;
    if (text == "csv") return ReportFormat::csv;
    if (text == "text") return ReportFormat::text;
    throw UsageError("format: expected json, csv or text, got '" + text + "'");
}

std::string format_hash(std::uint64_t h) {
    std::ostringstream os;
    os << "0x" << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string rational_decimal(const Rat& r, int digits) {
    if (digits < 0) digits = 0;
    const bool neg = r < 0;
    const Rat a = neg ? Rat(-r) : r;
    const Int scale = int_pow(Int(10), static_cast<std::uint64_t>(digits));
    const Int scaled = (numerator(a) * scale) / denominator(a); // truncates
    const Int whole = scaled / scale;
    std::string out = (neg && scaled != 0 ? "-" : "") + whole.str();
    if (digits > 0) {
        std::string frac = Int(scaled % scale).str();
        out += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
    }
    return out;
}

json demailly_to_json(const DemaillyVerdict& v, int m_max) {
    json j;
    j["table_monotone"] = v.table_monotone;
    if (v.monotonicity_failure) {
        j["monotonicity_failure"] = {v.monotonicity_failure->first,
                                     v.monotonicity_failure->second};
    }
    j["violation"] = v.violation;
    if (v.violating_pair) {
        j["violating_pair"] = {v.violating_pair->first, v.violating_pair->second};
    }
    json eqs = json::array();
    for (const auto& [m, k] : v.equalities) eqs.push_back({m, k});
    j["equalities"] = eqs;
    j["verdict"] = v.summary(m_max);
    return j;
}

json ev_to_json(const EvVerdict& v) {
    json j;
    j["ok"] = v.ok;
    if (v.failing_pair) j["failing_pair"] = {v.failing_pair->first, v.failing_pair->second};
    return j;
}

json main_theorem_to_json(const MainTheoremVerdict& v) {
    json j;
    j["k"] = v.k.str();
    j["degree_bound_ok"] = v.degree_bound_ok;
    j["demailly_ratio_ok"] = v.demailly_ratio_ok;
    j["floor_bound_ok"] = v.floor_bound_ok;
    j["floor_failures"] = v.floor_failures;
    return j;
}

json bounds_to_json(const BoundsReport& b, int m_max) {
    json j;
    j["waldschmidt_upper"] = b.waldschmidt_upper.str();
    j["els_lower"] = b.els_lower.str();
    j["ev_lower"] = b.ev_lower.str();
    j["floor_root"] = b.floor_root_value.str();
    j["demailly"] = demailly_to_json(b.demailly, m_max);
    j["ev"] = ev_to_json(b.ev);
    j["chain_ok"] = b.chain_ok;
    return j;
}

json fixture_report(const AlphaTable& t, const BoundsReport& b,
                    const FixtureReportOptions& opts) {
    const int N = t.config.dim;
    json j;
    j["version"] = version_tag();
    j["command"] = opts.command;
    j["config_label"] = t.config.label;
    j["config_hash"] = format_hash(t.config.content_hash());
    j["field"] = t.config.field.describe();
    j["dim"] = N;
    j["points"] = t.config.size();
    if (opts.embed_config) j["config"] = t.config.to_json();
    json rows = json::array();
    bool any_mismatch = false;
    bool any_expected = false;
    for (int m = 1; m <= t.m_max(); ++m) {
        const AlphaValue& v = t.at(m);
        json row;
        row["m"] = m;
        row["alpha"] = v.alpha;
        row["alpha_over_m"] = Rat(v.alpha, m).str();
        row["demailly_ratio"] = Rat(v.alpha + N - 1, m + N - 1).str();
        row["provenance"] = v.provenance.to_string();
        row["rank"] = v.rank_at_alpha;
        row["kernel_dim"] = v.kernel_dim_at_alpha;
        row["witness"] = {{"degree", v.alpha - 1},
                          {"rank", v.rank_below},
                          {"cols", v.cols_below}};
        if (static_cast<std::size_t>(m - 1) < opts.expected.size() &&
            opts.expected[m - 1]) {
            const long want = *opts.expected[m - 1];
            row["expected"] = want;
            const bool match = v.alpha == want;
            row["status"] = match ? "MATCH" : "MISMATCH";
            any_expected = true;
            if (!match) any_mismatch = true;
        } else {
            row["status"] = "COMPUTED";
        }
        if (opts.include_certificates && v.certificate) {
            json cert;
            cert["degree"] = v.certificate->degree;
            cert["monomial_order"] = v.certificate->monomial_order;
            cert["field"] = v.certificate->field.describe();
            json coeffs = json::array();
            for (const auto& c : v.certificate->coefficients) {
                coeffs.push_back(c.to_string());
            }
            cert["coefficients"] = coeffs;
            row["certificate"] = cert;
        }
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["bounds"] = bounds_to_json(b, t.m_max());
    j["warnings"] = t.warnings;
    j["status"] = !any_expected ? "COMPUTED" : (any_mismatch ? "MISMATCH" : "MATCH");
    return j;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

std::string render_fixture_csv(const json& r) {
    std::ostringstream os;
    const bool expected = !r["rows"].empty() && r["rows"][0].contains("status") &&
                          r["status"].get<std::string>() != "COMPUTED";
    os << "m,alpha,alpha/m,demailly_ratio,provenance";
    if (expected) os << ",expected,status";
    os << "\n";
    for (const auto& row : r["rows"]) {
        os << row["m"].get<int>() << "," << row["alpha"].get<int>() << ","
           << row["alpha_over_m"].get<std::string>() << ","
           << row["demailly_ratio"].get<std::string>() << ","
           << csv_escape(row["provenance"].get<std::string>());
        if (expected) {
            if (row.contains("expected")) {
                os << "," << row["expected"].get<long>() << ","
                   << row["status"].get<std::string>();
            } else {
                os << ",," << row["status"].get<std::string>();
            }
        }
        os << "\n";
    }
    os << "\nkey,value\n";
    if (r.contains("bounds")) {
        const auto& b = r["bounds"];
        os << "waldschmidt_upper," << b["waldschmidt_upper"].get<std::string>() << "\n";
        os << "els_lower," << b["els_lower"].get<std::string>() << "\n";
        os << "ev_lower," << b["ev_lower"].get<std::string>() << "\n";
        os << "floor_root," << b["floor_root"].get<std::string>() << "\n";
        os << "demailly," << csv_escape(b["demailly"]["verdict"].get<std::string>()) << "\n";
        os << "ev," << (b["ev"]["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
        os << "chain," << (b["chain_ok"].get<bool>() ? "ok" : "FAILED") << "\n";
    }
    os << "status," << r["status"].get<std::string>() << "\n";
    return os.str();
}

std::string render_fixture_text(const json& r, std::optional<int> decimals) {
    std::ostringstream os;
    os << r["command"].get<std::string>() << " report (" << r["version"].get<std::string>()
       << ")\n";
    os << "config: " << r["config_label"].get<std::string>() << "\n";
    os << "hash:   " << r["config_hash"].get<std::string>() << "\n";
    os << "field:  " << r["field"].get<std::string>() << ", dim " << r["dim"].get<int>()
       << ", " << r["points"].get<std::uint64_t>() << " points\n\n";
    auto dec = [&](const std::string& exact) -> std::string {
        if (!decimals) return exact;
        return exact + " (" + rational_decimal(Rat(exact), *decimals) + ")";
    };
    os << std::left << std::setw(4) << "m" << std::setw(7) << "alpha" << std::setw(16)
       << "alpha/m" << std::setw(20) << "demailly_ratio" << std::setw(10) << "status"
       << "provenance\n";
    for (const auto& row : r["rows"]) {
        os << std::left << std::setw(4) << row["m"].get<int>() << std::setw(7)
           << row["alpha"].get<int>() << std::setw(16)
           << dec(row["alpha_over_m"].get<std::string>()) << std::setw(20)
           << dec(row["demailly_ratio"].get<std::string>()) << std::setw(10)
           << row["status"].get<std::string>() << row["provenance"].get<std::string>()
           << "\n";
    }
    if (r.contains("bounds")) {
        const auto& b = r["bounds"];
        os << "\nbounds:\n";
        os << "  els_lower          " << dec(b["els_lower"].get<std::string>()) << "\n";
        os << "  ev_lower           " << dec(b["ev_lower"].get<std::string>()) << "\n";
        os << "  waldschmidt_upper  " << dec(b["waldschmidt_upper"].get<std::string>())
           << "\n";
        os << "  floor_root         " << b["floor_root"].get<std::string>() << "\n";
        os << "  demailly: " << b["demailly"]["verdict"].get<std::string>() << "\n";
        os << "  ev: " << (b["ev"]["ok"].get<bool>() ? "ok" : "FAILED (engine bug)")
           << "\n";
        os << "  chain els <= ev <= waldschmidt: "
           << (b["chain_ok"].get<bool>() ? "ok" : "FAILED") << "\n";
    }
    if (r.contains("warnings")) {
        for (const auto& w : r["warnings"]) {
            os << "warning: " << w.get<std::string>() << "\n";
        }
    }
    os << "status: " << r["status"].get<std::string>() << "\n";
    return os.str();
}

std::string render_scan_csv(const json& r) {
    std::ostringstream os;
    const int m_max = r["params"]["m_max"].get<int>();
    os << "trial,seed";
    for (int m = 1; m <= m_max; ++m) os << ",alpha_" << m;
    os << ",ev_ok,degree_bound_ok,ratio_ok,floor_ok,violation\n";
    for (const auto& t : r["trials"]) {
        os << t["trial"].get<int>() << "," << t["seed"].get<std::uint64_t>();
        for (const auto& a : t["alphas"]) os << "," << a.get<int>();
        const auto& mt = t["main_theorem"];
        os << "," << (t["ev_ok"].get<bool>() ? 1 : 0);
        if (mt["applicable"].get<bool>()) {
            os << "," << (mt["degree_bound_ok"].get<bool>() ? 1 : 0) << ","
               << (mt["demailly_ratio_ok"].get<bool>() ? 1 : 0) << ","
               << (mt["floor_bound_ok"].get<bool>() ? 1 : 0);
        } else {
            os << ",,,";
        }
        os << "," << (t["violation"].get<bool>() ? 1 : 0) << "\n";
    }
    os << "\nkey,value\n";
    for (const auto& [key, value] : r["aggregate"].items()) {
        os << key << "," << value.dump() << "\n";
    }
    return os.str();
}

std::string render_scan_text(const json& r) {
    std::ostringstream os;
    const auto& p = r["params"];
    os << "scan report (" << r["version"].get<std::string>() << ")\n";
    os << "dim " << p["dim"].get<int>() << ", points " << p["points"].get<int>()
       << ", m_max " << p["m_max"].get<int>() << ", trials " << p["trials"].get<int>()
       << ", seed " << p["seed"].get<std::uint64_t>() << ", field "
       << p["field"].get<std::string>() << "\n\n";
    for (const auto& t : r["trials"]) {
        os << "trial " << std::setw(3) << t["trial"].get<int>() << " seed "
           << t["seed"].get<std::uint64_t>() << " alphas [";
        bool first = true;
        for (const auto& a : t["alphas"]) {
            if (!first) os << ",";
            os << a.get<int>();
            first = false;
        }
        os << "]";
        if (t["violation"].get<bool>()) os << " DEMAILLY-VIOLATION";
        if (!t["ev_ok"].get<bool>()) os << " EV-FAILURE";
        const auto& mt = t["main_theorem"];
        if (mt["applicable"].get<bool>()) {
            if (!mt["degree_bound_ok"].get<bool>()) os << " DEGREE-BOUND-FAILURE";
            if (!mt["demailly_ratio_ok"].get<bool>()) os << " RATIO-FAILURE";
            if (!mt["floor_bound_ok"].get<bool>()) os << " floor-exception";
        }
        os << "\n";
    }
    os << "\naggregate:\n";
    for (const auto& [key, value] : r["aggregate"].items()) {
        os << "  " << key << " = " << value.dump() << "\n";
    }
    return os.str();
}

} // namespace

std::string render_report(const json& report, ReportFormat fmt,
                          std::optional<int> decimals) {
    if (fmt == ReportFormat::json) return report.dump(2) + "\n";
    const std::string cmd = report.value("command", std::string{});
    if (cmd == "scan") {
        return fmt == ReportFormat::csv ? render_scan_csv(report)
                                        : render_scan_text(report);
    }
    return fmt == ReportFormat::csv ? render_fixture_csv(report)
                                    : render_fixture_text(report, decimals);
}

std::string render_lemma_text(const LemmaReport& rep) {
    std::ostringstream os;
    os << "lemma sweep (" << version_tag() << ")\n";
    os << "box: N in [3," << rep.domain.n_max << "], m in [1," << rep.domain.m_max
       << "], k in [m+1,m+" << rep.domain.k_span << "], i in [0,(N-1)/2]\n";
    std::uint64_t total = 0;
    for (const auto& [name, count] : rep.checks) {
        os << "  " << std::left << std::setw(26) << name << count << "\n";
        total += count;
    }
    os << "total checks: " << total << "\n";
    if (total > 0) {
        os << "uk3 closed form at (m,i)=(1,1): direct "
           << rep.uk3_spot_check_m1_i1.u_direct.str() << ", closed "
           << rep.uk3_spot_check_m1_i1.closed_form.str()
           << (rep.uk3_spot_check_m1_i1.agree ? " (agree" : " (DISAGREE")
           << "; the second factor there is kq+2-N+i = 6, not 7)\n";
    }
    if (rep.failures.empty()) {
        os << "failures: none\n";
    } else {
        os << "failures: " << rep.failures.size() << "\n";
        for (const auto& f : rep.failures) {
            os << "  " << f.check << " at (N=" << f.N << ",m=" << f.m << ",k=" << f.k
               << ",i=" << f.i << "): " << f.detail << "\n";
        }
    }
    return os.str();
}

void emit_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError(path + ": cannot open for writing");
    out << content;
}

} // namespace initdeg
