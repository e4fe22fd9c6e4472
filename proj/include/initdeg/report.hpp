#pragma once

#include "initdeg/analysis.hpp"
#include "initdeg/lemma.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace initdeg {

enum class ReportFormat { json, csv, text };

ReportFormat parse_format(const std::string& text);

std::string format_hash(std::uint64_t h);

/// Truncated decimal rendering of an exact rational (cosmetic only; every
/// comparison in the engine is exact).
std::string rational_decimal(const Rat& r, int digits);

nlohmann::json demailly_to_json(const DemaillyVerdict& v, int m_max);
nlohmann::json ev_to_json(const EvVerdict& v);
nlohmann::json main_theorem_to_json(const MainTheoremVerdict& v);
nlohmann::json bounds_to_json(const BoundsReport& b, int m_max);

struct FixtureReportOptions {
    std::string command;
    bool embed_config = false;
    bool include_certificates = false;
    /// Closed-form expectations per m (index m-1); rows with an expectation
    /// are marked MATCH/MISMATCH, others COMPUTED.
    std::vector<std::optional<long>> expected;
};

/// Table + bounds report for the fixture commands (alpha, table, bounds,
/// star, fermat12). Deterministic: no timestamps, exact scalars as strings.
nlohmann::json fixture_report(const AlphaTable& t, const BoundsReport& b,
                              const FixtureReportOptions& opts);

/// Render a report built by this module. CSV keeps the fixed column order
/// m, alpha, alpha/m, demailly_ratio, provenance (then expected/status when
/// present) followed by a key,value summary block. `decimals` adds
/// parenthesized decimal renderings to the text format only.
std::string render_report(const nlohmann::json& report, ReportFormat fmt,
                          std::optional<int> decimals);

std::string render_lemma_text(const LemmaReport& rep);

/// Write to the path, or to stdout when the path is empty.
void emit_output(const std::string& path, const std::string& content);

} // namespace initdeg
