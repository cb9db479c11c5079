#include "archlab/error.hpp"
#include "archlab/fixtures.hpp"
#include "archlab/io.hpp"
#include "archlab/measures.hpp"
#include "archlab/oracle.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pybind11::literals;
using archlab::CyclicGraph;

namespace {

py::object fraction(const archlab::Rational& value) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(value.numerator(), value.denominator());
}

py::dict measures_dict(const archlab::MeasureReport& r) {
    py::dict d;
    d["orientation"] = r.orientation == archlab::Orientation::Positive   ? "positive"
                       : r.orientation == archlab::Orientation::Negative ? "negative"
                                                                         : "bidirectional";
    d["minimal_period"] = r.minimal_period;
    d["recurrent_depth"] = fraction(r.recurrent_depth);
    d["feedforward_depth"] = fraction(r.feedforward_depth);
    d["skip_coefficient"] = fraction(r.skip_coefficient);
    d["skip_reciprocal"] = fraction(r.skip_reciprocal);
    d["mild_assumption_dr"] = r.mild_assumption_dr;
    d["mild_assumption_s"] = r.mild_assumption_s;
    return d;
}

CyclicGraph fixture(const std::string& family, std::int64_t k, int variant, std::int64_t dr, std::int64_t df) {
    const auto parsed = archlab::parse_family(family);
    if (!parsed) throw archlab::Error(archlab::ErrorCode::InvalidFixtureParams, "unknown family '" + family + "'");
    return archlab::generate(archlab::FixtureSpec{*parsed, k, variant, dr, df});
}

py::dict convergence_dict(const CyclicGraph& g, std::optional<std::int64_t> n_max) {
    const archlab::MeasureReport r = archlab::measure(g);
    const auto c = archlab::convergence(g, r, n_max.value_or(archlab::default_horizon(g)));
    return py::dict("slope_longest"_a = fraction(c.slope_longest), "slope_shortest"_a = fraction(c.slope_shortest),
                    "longest_verified"_a = c.longest_verified, "shortest_verified"_a = c.shortest_verified,
                    "df_max"_a = fraction(c.df_max), "period_q"_a = c.period_q,
                    "bound_violations"_a = c.bound_violations, "bound_attained"_a = c.bound_attained);
}

} // namespace

PYBIND11_MODULE(_archlab, m) {
    m.doc() = "Recurrent depth, feedforward depth and skip coefficient of cyclic RNN graphs";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
    error.call_once_and_store_result([&]() { return py::exception<archlab::Error>(m, "ArchlabError"); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const archlab::Error& e) {
            const py::tuple args = py::make_tuple(std::string(e.code_name()), e.what());
            PyErr_SetObject(error.get_stored().ptr(), args.ptr());
        }
    });

    py::class_<CyclicGraph>(m, "Graph")
        .def_static("parse", [](const std::string& text) { return archlab::parse(text); }, "text"_a)
        .def_property_readonly("period", &CyclicGraph::period)
        .def_property_readonly("node_count", &CyclicGraph::node_count)
        .def_property_readonly("edge_count", &CyclicGraph::edge_count)
        .def("to_text", [](const CyclicGraph& g) { return archlab::serialize(g); })
        .def("to_json", [](const CyclicGraph& g) { return archlab::serialize_json(g); })
        .def("to_dot", [](const CyclicGraph& g) {
            const archlab::MeasureReport r = archlab::measure(g);
            return archlab::export_dot(g, nullptr, &r);
        })
        .def("__eq__", [](const CyclicGraph& a, const CyclicGraph& b) { return a == b; })
        .def("__repr__", [](const CyclicGraph& g) {
            return "<Graph period=" + std::to_string(g.period()) + " nodes=" + std::to_string(g.node_count()) +
                   " edges=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("measure", [](const CyclicGraph& g) { return measures_dict(archlab::measure(g)); }, "graph"_a);
    m.def("fixture", &fixture, "family"_a, "k"_a = 0, "variant"_a = 0, "dr"_a = 0, "df"_a = 0);
    m.def("convergence", &convergence_dict, "graph"_a, "n_max"_a = py::none());
}
