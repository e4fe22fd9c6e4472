#include "initdeg/analysis.hpp"
#include "initdeg/lemma.hpp"
#include "initdeg/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace initdeg;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
    case nlohmann::json::value_t::null: return py::none();
    case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer: return py::int_(j.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
        return py::int_(j.get<unsigned long long>());
    case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
    case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
        py::list out;
        for (const auto& v : j) out.append(json_to_py(v));
        return out;
    }
    case nlohmann::json::value_t::object: {
        py::dict out;
        for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
        return out;
    }
    default: return py::none();
    }
}

FieldSpec field_from_text(const std::string& text) { return FieldSpec::parse(text); }

AlphaOptions options_from(bool exact, const std::optional<std::vector<std::uint64_t>>& primes) {
    AlphaOptions opts;
    opts.exact = exact;
    if (primes) opts.primes = *primes;
    return opts;
}

py::dict alpha_value_to_py(const AlphaValue& v, bool with_certificate) {
    py::dict d;
    d["m"] = v.m;
    d["alpha"] = v.alpha;
    d["provenance"] = v.provenance.to_string();
    d["rank"] = v.rank_at_alpha;
    d["kernel_dim"] = v.kernel_dim_at_alpha;
    d["witness_rank"] = v.rank_below;
    d["witness_cols"] = v.cols_below;
    if (with_certificate && v.certificate) {
        py::dict cert;
        cert["degree"] = v.certificate->degree;
        cert["monomial_order"] = v.certificate->monomial_order;
        cert["field"] = v.certificate->field.describe();
        py::list coeffs;
        for (const auto& c : v.certificate->coefficients) coeffs.append(c.to_string());
        cert["coefficients"] = coeffs;
        d["certificate"] = cert;
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact initial degrees of fat point ideals in projective space, "
              "Waldschmidt-constant bounds, and the supporting combinatorial sweeps.";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);
    py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

    py::class_<PointConfiguration>(m, "PointConfiguration")
        .def_property_readonly("dim", [](const PointConfiguration& c) { return c.dim; })
        .def_property_readonly("size",
                               [](const PointConfiguration& c) { return c.size(); })
        .def_property_readonly("label",
                               [](const PointConfiguration& c) { return c.label; })
        .def_property_readonly("field",
                               [](const PointConfiguration& c) {
                                   return c.field.describe();
                               })
        .def_property_readonly("points",
                               [](const PointConfiguration& c) {
                                   py::list pts;
                                   for (const auto& p : c.points) {
                                       py::list row;
                                       for (const auto& x : p.coords()) {
                                           row.append(x.to_string());
                                       }
                                       pts.append(row);
                                   }
                                   return pts;
                               })
        .def("content_hash",
             [](const PointConfiguration& c) { return format_hash(c.content_hash()); })
        .def("to_dict", [](const PointConfiguration& c) { return json_to_py(c.to_json()); })
        .def("save", [](const PointConfiguration& c, const std::string& path) {
            c.save(path);
        })
        .def_static("load", &PointConfiguration::load)
        .def("__repr__", [](const PointConfiguration& c) {
            return "<PointConfiguration " + c.label + ">";
        });

    m.def(
        "random_configuration",
        [](int dim, int points, const std::string& field, std::uint64_t seed) {
            return random_configuration(dim, points, field_from_text(field), seed);
        },
        py::arg("dim"), py::arg("points"), py::arg("field") = "rational",
        py::arg("seed") = 0,
        "s distinct seeded pseudorandom points of P^N (a very-generality surrogate)");

    m.def(
        "star_configuration",
        [](int dim, int d, const std::string& field, std::uint64_t seed) {
            return star_configuration(dim, d, field_from_text(field), seed);
        },
        py::arg("dim"), py::arg("d"), py::arg("field") = "rational", py::arg("seed") = 0,
        "all binomial(d, N) intersection points of d general hyperplanes");

    m.def(
        "fermat12_configuration",
        [](const std::string& field) {
            return fermat12_configuration(field_from_text(field));
        },
        py::arg("field") = "eisenstein",
        "the 12-point 12_3 9_4 configuration over a field with a cube root of unity");

    m.def(
        "alpha",
        [](const PointConfiguration& cfg, int m, bool exact,
           const std::optional<std::vector<std::uint64_t>>& primes, bool certificate) {
            return alpha_value_to_py(alpha(cfg, m, options_from(exact, primes)),
                                     certificate);
        },
        py::arg("config"), py::arg("m"), py::arg("exact") = false,
        py::arg("primes") = py::none(), py::arg("certificate") = false,
        "least degree of a nonzero form vanishing to order >= m at every point");

    m.def(
        "alpha_table",
        [](const PointConfiguration& cfg, int m_max, bool exact,
           const std::optional<std::vector<std::uint64_t>>& primes, bool certificate) {
            const AlphaTable t = alpha_table(cfg, m_max, options_from(exact, primes));
            py::list rows;
            for (int m = 1; m <= t.m_max(); ++m) {
                rows.append(alpha_value_to_py(t.at(m), certificate));
            }
            py::dict out;
            out["rows"] = rows;
            out["warnings"] = t.warnings;
            return out;
        },
        py::arg("config"), py::arg("m_max"), py::arg("exact") = false,
        py::arg("primes") = py::none(), py::arg("certificate") = false);

    m.def(
        "bounds_report",
        [](const PointConfiguration& cfg, int m_max, bool exact,
           const std::optional<std::vector<std::uint64_t>>& primes) {
            const AlphaTable t = alpha_table(cfg, m_max, options_from(exact, primes));
            const BoundsReport b = bounds_report(t);
            py::dict out = json_to_py(bounds_to_json(b, t.m_max())).cast<py::dict>();
            py::list alphas;
            for (int m = 1; m <= t.m_max(); ++m) alphas.append(t.at(m).alpha);
            out["alphas"] = alphas;
            return out;
        },
        py::arg("config"), py::arg("m_max"), py::arg("exact") = false,
        py::arg("primes") = py::none(),
        "exact Waldschmidt/Chudnovsky bound chain and conjecture verdicts");

    m.def(
        "expected_alpha_bound",
        [](int N, int m, std::uint64_t s) { return expected_alpha_bound(N, m, s); },
        py::arg("dim"), py::arg("m"), py::arg("points"),
        "least d where the monomial count exceeds the condition count");

    m.def(
        "count_conditions",
        [](int N, int m, std::uint64_t s) { return count_conditions(N, m, s).str(); },
        py::arg("dim"), py::arg("m"), py::arg("points"));

    m.def(
        "floor_root",
        [](std::uint64_t s, int N) {
            return floor_root(Int(s), N).convert_to<std::uint64_t>();
        },
        py::arg("s"), py::arg("N"), "largest k with k^N <= s, exact");

    m.def(
        "verify_lemma",
        [](int n_max, int m_max, int k_span) {
            return json_to_py(verify_lemma(LemmaDomain{n_max, m_max, k_span}).to_json());
        },
        py::arg("n_max") = 10, py::arg("m_max") = 10, py::arg("k_span") = 10,
        "exhaustive exact sweep of the combinatorial inequality box");

    m.def("default_consensus_primes", [] { return default_consensus_primes(); });

    m.def("version", [] { return std::string(version_tag()); });

#ifdef INITDEG_VERSION
    m.attr("__version__") = INITDEG_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
