#include "initdeg/config.hpp"

#include "initdeg/linalg.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace initdeg {

using nlohmann::json;

ProjectivePoint::ProjectivePoint(std::vector<FieldElement> coords)
    : coords_(std::move(coords)) {
    if (coords_.size() < 2) {
        throw MathError("ProjectivePoint: need at least 2 coordinates");
    }
    int pivot = -1;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!coords_[i].is_zero()) {
            pivot = static_cast<int>(i);
            break;
        }
    }
    if (pivot < 0) throw MathError("ProjectivePoint: all coordinates zero");
    pivot_ = pivot;
    const FieldElement lead = coords_[pivot];
    if (!lead.is_one()) {
        for (auto& c : coords_) c = c / lead;
    }
}

PointConfiguration::PointConfiguration(int dim, FieldSpec field,
                                       std::vector<ProjectivePoint> pts,
                                       std::string label)
    : dim(dim), field(field), points(std::move(pts)), label(std::move(label)) {
    if (dim < 2) throw MathError("PointConfiguration: dim must be >= 2");
    if (points.empty()) throw MathError("PointConfiguration: need at least one point");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].dim() != dim) {
            throw MathError("PointConfiguration: point " + std::to_string(i) +
                            " has wrong dimension");
        }
        for (const auto& c : points[i].coords()) {
            if (c.kind() != field.kind ||
                (field.kind == FieldKind::prime && c.residue().p != field.p)) {
                throw MathError("PointConfiguration: point " + std::to_string(i) +
                                " lies in a different field");
            }
        }
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i] == points[j]) {
                throw MathError("PointConfiguration: points " + std::to_string(i) +
                                " and " + std::to_string(j) + " coincide");
            }
        }
    }
}

namespace {

json field_to_json(const FieldSpec& f) {
    json j;
    switch (f.kind) {
    case FieldKind::rational: j["kind"] = "rational"; break;
    case FieldKind::eisenstein: j["kind"] = "eisenstein"; break;
    case FieldKind::prime:
        j["kind"] = "prime";
        j["p"] = f.p;
        break;
    }
    return j;
}

FieldSpec field_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw UsageError(where + ": field must be an object with a \"kind\" string");
    }
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "rational") return FieldSpec::rational();
    if (kind == "eisenstein") return FieldSpec::eisenstein();
    if (kind == "prime") {
        if (!j.contains("p") || !j["p"].is_number_unsigned()) {
            throw UsageError(where + ": prime field needs an unsigned \"p\"");
        }
        try {
            return FieldSpec::prime(j["p"].get<std::uint64_t>());
        } catch (const MathError& e) {
            throw UsageError(where + ": " + e.what());
        }
    }
    throw UsageError(where + ": unknown field kind '" + kind + "'");
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte; recover the line for the message
        std::ifstream again(path);
        std::string text((std::istreambuf_iterator<char>(again)),
                         std::istreambuf_iterator<char>());
        std::size_t line = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') ++line;
        }
        throw UsageError(path + ":" + std::to_string(line) + ": " + e.what());
    }
}

std::vector<FieldElement> parse_coord_row(const json& row, const FieldSpec& field,
                                          const std::string& where) {
    if (!row.is_array() || row.size() < 2) {
        throw UsageError(where + ": expected an array of at least 2 coordinate strings");
    }
    std::vector<FieldElement> coords;
    coords.reserve(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
        if (!row[c].is_string()) {
            throw UsageError(where + "[" + std::to_string(c) + "]: coordinate must be a string");
        }
        try {
            coords.push_back(FieldElement::parse(field, row[c].get<std::string>()));
        } catch (const Error& e) {
            throw UsageError(where + "[" + std::to_string(c) + "]: " + e.what());
        }
    }
    return coords;
}

} // namespace

json PointConfiguration::to_json() const {
    json j;
    j["dim"] = dim;
    j["field"] = field_to_json(field);
    json pts = json::array();
    for (const auto& pt : points) {
        json row = json::array();
        for (const auto& c : pt.coords()) row.push_back(c.to_string());
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    j["label"] = label;
    return j;
}

PointConfiguration PointConfiguration::from_json(const json& root, const std::string& origin) {
    const std::string where = origin.empty() ? "config" : origin;
    const json& j = (root.is_object() && root.contains("config")) ? root["config"] : root;
    if (!j.is_object()) throw UsageError(where + ": expected a JSON object");
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
        throw UsageError(where + ": missing integer \"dim\"");
    }
    const int dim = j["dim"].get<int>();
    if (!j.contains("field")) throw UsageError(where + ": missing \"field\"");
    const FieldSpec field = field_from_json(j["field"], where + ": field");
    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty()) {
        throw UsageError(where + ": missing nonempty \"points\" array");
    }
    std::vector<ProjectivePoint> pts;
    for (std::size_t i = 0; i < j["points"].size(); ++i) {
        const std::string pw = where + ": points[" + std::to_string(i) + "]";
        auto coords = parse_coord_row(j["points"][i], field, pw);
        if (static_cast<int>(coords.size()) != dim + 1) {
            throw UsageError(pw + ": expected " + std::to_string(dim + 1) + " coordinates");
        }
        try {
            pts.emplace_back(std::move(coords));
        } catch (const Error& e) {
            throw UsageError(pw + ": " + e.what());
        }
    }
    std::string label = j.value("label", std::string{});
    try {
        return PointConfiguration(dim, field, std::move(pts), std::move(label));
    } catch (const Error& e) {
        throw UsageError(where + ": " + e.what());
    }
}

PointConfiguration PointConfiguration::load(const std::string& path) {
    return from_json(load_json_file(path), path);
}

void PointConfiguration::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw UsageError(path + ": cannot open for writing");
    out << to_json().dump(2) << "\n";
}

std::uint64_t PointConfiguration::content_hash() const {
    std::ostringstream os;
    os << dim << "|" << field.describe();
    for (const auto& pt : points) {
        for (const auto& c : pt.coords()) os << "|" << c.to_string();
        os << ";";
    }
    return fnv1a64(os.str());
}

json HyperplaneArrangement::to_json() const {
    json j;
    j["dim"] = dim;
    j["field"] = field_to_json(field);
    json hs = json::array();
    for (const auto& h : hyperplanes) {
        json row = json::array();
        for (const auto& c : h) row.push_back(c.to_string());
        hs.push_back(std::move(row));
    }
    j["hyperplanes"] = std::move(hs);
    return j;
}

HyperplaneArrangement HyperplaneArrangement::from_json(const json& j, const std::string& origin) {
    const std::string where = origin.empty() ? "arrangement" : origin;
    if (!j.is_object()) throw UsageError(where + ": expected a JSON object");
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
        throw UsageError(where + ": missing integer \"dim\"");
    }
    HyperplaneArrangement arr;
    arr.dim = j["dim"].get<int>();
    if (arr.dim < 2) throw UsageError(where + ": dim must be >= 2");
    if (!j.contains("field")) throw UsageError(where + ": missing \"field\"");
    arr.field = field_from_json(j["field"], where + ": field");
    if (!j.contains("hyperplanes") || !j["hyperplanes"].is_array()) {
        throw UsageError(where + ": missing \"hyperplanes\" array");
    }
    for (std::size_t i = 0; i < j["hyperplanes"].size(); ++i) {
        const std::string hw = where + ": hyperplanes[" + std::to_string(i) + "]";
        auto coeffs = parse_coord_row(j["hyperplanes"][i], arr.field, hw);
        if (static_cast<int>(coeffs.size()) != arr.dim + 1) {
            throw UsageError(hw + ": expected " + std::to_string(arr.dim + 1) + " coefficients");
        }
        bool all_zero = std::all_of(coeffs.begin(), coeffs.end(),
                                    [](const FieldElement& c) { return c.is_zero(); });
        if (all_zero) throw UsageError(hw + ": zero coefficient vector");
        arr.hyperplanes.push_back(std::move(coeffs));
    }
    return arr;
}

HyperplaneArrangement HyperplaneArrangement::load(const std::string& path) {
    return from_json(load_json_file(path), path);
}

namespace {

FieldElement random_coordinate(const FieldSpec& field, SplitMix64& rng) {
    constexpr std::int64_t kBox = 1000000;
    switch (field.kind) {
    case FieldKind::rational:
        return FieldElement(Rat(rng.in_range(-kBox, kBox)));
    case FieldKind::eisenstein: {
        Rat a(rng.in_range(-kBox, kBox));
        Rat b(rng.in_range(-kBox, kBox));
        return FieldElement(Eisenstein{std::move(a), std::move(b)});
    }
    case FieldKind::prime:
        return FieldElement(ModularResidue{rng.bounded(field.p), field.p});
    }
    throw Error("FieldSpec: corrupt kind");
}

ProjectivePoint random_point(int N, const FieldSpec& field, SplitMix64& rng) {
    while (true) {
        std::vector<FieldElement> coords;
        coords.reserve(N + 1);
        for (int i = 0; i <= N; ++i) coords.push_back(random_coordinate(field, rng));
        bool all_zero = std::all_of(coords.begin(), coords.end(),
                                    [](const FieldElement& c) { return c.is_zero(); });
        if (all_zero) continue;
        return ProjectivePoint(std::move(coords));
    }
}

} // namespace

std::optional<Int> projective_point_count(const FieldSpec& field, int N) {
    if (field.kind != FieldKind::prime) return std::nullopt;
    // (p^(N+1) - 1) / (p - 1)
    Int p(field.p);
    return (int_pow(p, static_cast<std::uint64_t>(N) + 1) - 1) / (p - 1);
}

PointConfiguration random_configuration(int N, int s, const FieldSpec& field,
                                        std::uint64_t seed) {
    if (N < 2) throw MathError("random_configuration: N must be >= 2");
    if (s < 1) throw MathError("random_configuration: s must be >= 1");
    if (auto total = projective_point_count(field, N)) {
        if (*total < s) {
            throw MathError("random_configuration: field too small, P^" +
                            std::to_string(N) + "(F_" + std::to_string(field.p) +
                            ") has only " + total->str() + " points");
        }
    }
    SplitMix64 rng(seed);
    std::vector<ProjectivePoint> pts;
    pts.reserve(s);
    // collisions are resampled; the retry cap only guards tiny prime fields
    long attempts_left = 10000 + 1000L * s;
    while (static_cast<int>(pts.size()) < s) {
        if (--attempts_left < 0) {
            throw MathError("random_configuration: exceeded resampling budget");
        }
        ProjectivePoint cand = random_point(N, field, rng);
        if (std::find(pts.begin(), pts.end(), cand) != pts.end()) continue;
        pts.push_back(std::move(cand));
    }
    std::string label = "random(N=" + std::to_string(N) + ",s=" + std::to_string(s) +
                        ",field=" + field.describe() + ",seed=" + std::to_string(seed) + ")";
    return PointConfiguration(N, field, std::move(pts), std::move(label));
}

bool validate_general_position(const HyperplaneArrangement& arr) {
    const int N = arr.dim;
    const int d = static_cast<int>(arr.hyperplanes.size());
    if (d < N) return false;
    std::vector<ProjectivePoint> intersections;
    std::vector<int> subset(N);
    // iterate over all N-subsets
    for (int i = 0; i < N; ++i) subset[i] = i;
    while (true) {
        Matrix m(N, N + 1, arr.field);
        for (int r = 0; r < N; ++r) {
            for (int c = 0; c <= N; ++c) m.at(r, c) = arr.hyperplanes[subset[r]][c];
        }
        RankResult rk = rank_kernel(m, true);
        if (rk.rank != N) return false; // no unique intersection point
        intersections.emplace_back(*rk.certificate);
        // next subset
        int i = N - 1;
        while (i >= 0 && subset[i] == d - N + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < N; ++j) subset[j] = subset[j - 1] + 1;
    }
    // no intersection point may lie on N+1 of the hyperplanes
    for (const auto& pt : intersections) {
        int on = 0;
        for (const auto& h : arr.hyperplanes) {
            FieldElement v = FieldElement::zero(arr.field);
            for (int c = 0; c <= N; ++c) v = v + h[c] * pt.coords()[c];
            if (v.is_zero()) ++on;
        }
        if (on > N) return false;
    }
    return true;
}

ProjectivePoint intersection_point(const HyperplaneArrangement& arr,
                                   const std::vector<int>& subset) {
    const int N = arr.dim;
    if (static_cast<int>(subset.size()) != N) {
        throw MathError("intersection_point: need exactly N hyperplanes");
    }
    Matrix m(N, N + 1, arr.field);
    for (int r = 0; r < N; ++r) {
        for (int c = 0; c <= N; ++c) m.at(r, c) = arr.hyperplanes[subset[r]][c];
    }
    RankResult rk = rank_kernel(m, true);
    if (rk.rank != N || !rk.certificate) {
        throw MathError("intersection_point: hyperplanes do not meet in a single point");
    }
    return ProjectivePoint(*rk.certificate);
}

PointConfiguration star_from_arrangement(const HyperplaneArrangement& arr,
                                         const std::string& label) {
    if (!validate_general_position(arr)) {
        throw MathError("star_from_arrangement: hyperplanes not in general position");
    }
    const int N = arr.dim;
    const int d = static_cast<int>(arr.hyperplanes.size());
    std::vector<ProjectivePoint> pts;
    std::vector<int> subset(N);
    for (int i = 0; i < N; ++i) subset[i] = i;
    while (true) {
        pts.push_back(intersection_point(arr, subset));
        int i = N - 1;
        while (i >= 0 && subset[i] == d - N + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < N; ++j) subset[j] = subset[j - 1] + 1;
    }
    return PointConfiguration(N, arr.field, std::move(pts), label);
}

PointConfiguration star_configuration(int N, int d, const FieldSpec& field,
                                      std::uint64_t seed) {
    if (N < 2) throw MathError("star_configuration: N must be >= 2");
    if (d < N) throw MathError("star_configuration: need d >= N hyperplanes");
    constexpr int kMaxAttempts = 32;
    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        HyperplaneArrangement arr;
        arr.dim = N;
        arr.field = field;
        for (int i = 0; i < d; ++i) {
            // reuse point sampling: a nonzero normalized coefficient vector
            arr.hyperplanes.push_back(random_point(N, field, rng).coords());
        }
        if (!validate_general_position(arr)) continue;
        std::ostringstream label;
        label << "star(N=" << N << ",d=" << d << ",field=" << field.describe()
              << ",seed=" << seed << ",attempt=" << attempt << ",hyperplanes=[";
        for (int i = 0; i < d; ++i) {
            if (i) label << ";";
            for (int c = 0; c <= N; ++c) {
                if (c) label << ",";
                label << arr.hyperplanes[i][c].to_string();
            }
        }
        label << "])";
        return star_from_arrangement(arr, label.str());
    }
    throw MathError("star_configuration: no general-position arrangement found after " +
                    std::to_string(kMaxAttempts) + " attempts (field too small?)");
}

PointConfiguration fermat12_configuration(const FieldSpec& field) {
    const FieldElement e = cube_root_of_unity(field); // throws when unavailable
    const FieldElement e2 = e * e;
    const FieldElement zero = FieldElement::zero(field);
    const FieldElement one = FieldElement::one(field);
    auto P = [&](FieldElement a, FieldElement b, FieldElement c) {
        return ProjectivePoint({std::move(a), std::move(b), std::move(c)});
    };
    std::vector<ProjectivePoint> pts = {
        P(one, zero, zero), P(zero, one, zero), P(zero, zero, one),
        P(one, one, one),   P(one, e, e2),      P(one, e2, e),
        P(e, one, one),     P(one, e, one),     P(one, one, e),
        P(e2, one, one),    P(one, e2, one),    P(one, one, e2),
    };
    return PointConfiguration(2, field, std::move(pts),
                              "fermat12(field=" + field.describe() + ")");
}

std::vector<std::vector<FieldElement>> fermat12_lines(const FieldSpec& field) {
    const FieldElement e = cube_root_of_unity(field);
    const FieldElement e2 = e * e;
    const FieldElement zero = FieldElement::zero(field);
    const FieldElement one = FieldElement::one(field);
    auto L = [&](FieldElement a, FieldElement b, FieldElement c) {
        return std::vector<FieldElement>{std::move(a), std::move(b), std::move(c)};
    };
    return {
        L(one, -one, zero), L(zero, one, -one), L(-one, zero, one),
        L(one, -e, zero),   L(zero, one, -e),   L(-e, zero, one),
        L(one, -e2, zero),  L(zero, one, -e2),  L(-e2, zero, one),
    };
}

} // namespace initdeg
