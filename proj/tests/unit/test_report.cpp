#include "initdeg/report.hpp"

#include <algorithm>

#include <doctest.h>

using namespace initdeg;

TEST_CASE("decimal rendering truncates exactly, no floating point") {
    CHECK(rational_decimal(Rat(3, 2), 3) == "1.500");
    CHECK(rational_decimal(Rat(-3, 2), 2) == "-1.50");
    CHECK(rational_decimal(Rat(1, 3), 6) == "0.333333");
    CHECK(rational_decimal(Rat(17, 5), 0) == "3");
    CHECK(rational_decimal(Rat(0), 4) == "0.0000");
    // a value a double cannot represent: (10^18+1)/10^18
    const Rat r(Int("1000000000000000001"), Int("1000000000000000000"));
    CHECK(rational_decimal(r, 18) == "1.000000000000000001");
}

TEST_CASE("hash formatting is stable") {
    CHECK(format_hash(0) == "0x0000000000000000");
    CHECK(format_hash(0xdeadbeefull) == "0x00000000deadbeef");
}

TEST_CASE("format parsing") {
    CHECK(parse_format("json") == ReportFormat::json);
    CHECK(parse_format("csv") == ReportFormat::csv);
    CHECK(parse_format("text") == ReportFormat::text);
    CHECK_THROWS_AS(parse_format("yaml"), UsageError);
}

TEST_CASE("fixture report renders identically across calls") {
    const auto Z = star_configuration(2, 3, FieldSpec::rational(), 5);
    const AlphaTable t = alpha_table(Z, 2);
    const BoundsReport b = bounds_report(t);
    FixtureReportOptions opts;
    opts.command = "table";
    const auto j1 = fixture_report(t, b, opts);
    const auto j2 = fixture_report(t, b, opts);
    CHECK(j1.dump() == j2.dump());
    for (const ReportFormat f :
         {ReportFormat::json, ReportFormat::csv, ReportFormat::text}) {
        CHECK(render_report(j1, f, std::nullopt) == render_report(j2, f, std::nullopt));
        CHECK_FALSE(render_report(j1, f, std::nullopt).empty());
    }
    // CSV keeps the fixed column header and one row per m
    const std::string csv = render_report(j1, ReportFormat::csv, std::nullopt);
    CHECK(csv.rfind("m,alpha,alpha/m,demailly_ratio,provenance", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') >= t.m_max() + 1);
}
