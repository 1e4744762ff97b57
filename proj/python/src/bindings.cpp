#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "volent/coxeter.hpp"
#include "volent/error.hpp"
#include "volent/graphs.hpp"
#include "volent/hypgeom.hpp"
#include "volent/measures.hpp"
#include "volent/orbits.hpp"
#include "volent/symbolic.hpp"

namespace py = pybind11;
using namespace volent;

namespace {

py::dict diagnostics(const EntropyEstimate& e) {
    py::dict d;
    for (const auto& [k, v] : e.diagnostics) {
        // Repeated keys (e.g. several bracket widenings) keep the last value.
        d[py::str(k)] = v;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_volent, m) {
    m.doc() = "volent core bindings";
    m.attr("__version__") = VOLENT_VERSION;

    py::register_exception<Error>(m, "VolentError", PyExc_ValueError);

    py::class_<hypgeom::HPoint>(m, "HPoint")
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_property_readonly("x", &hypgeom::HPoint::x)
        .def_property_readonly("y", &hypgeom::HPoint::y)
        .def("__repr__", [](const hypgeom::HPoint& p) {
            return "HPoint(" + std::to_string(p.x()) + ", " + std::to_string(p.y()) + ")";
        });
    m.def("dist", &hypgeom::dist, py::arg("a"), py::arg("b"));

    py::class_<hypgeom::CoxeterPolygon>(m, "CoxeterPolygon")
        .def_readonly("p", &hypgeom::CoxeterPolygon::p)
        .def_readonly("m", &hypgeom::CoxeterPolygon::m)
        .def_readonly("q", &hypgeom::CoxeterPolygon::q)
        .def_readonly("vertices", &hypgeom::CoxeterPolygon::vertices)
        .def_readonly("area", &hypgeom::CoxeterPolygon::area)
        .def_readonly("edge_length", &hypgeom::CoxeterPolygon::edge_length)
        .def_readonly("inradius", &hypgeom::CoxeterPolygon::inradius)
        .def_readonly("circumradius", &hypgeom::CoxeterPolygon::circumradius)
        .def_readonly("diameter", &hypgeom::CoxeterPolygon::diameter)
        .def_readonly("min_wall_gap", &hypgeom::CoxeterPolygon::min_wall_gap)
        .def("center", &hypgeom::CoxeterPolygon::center);
    m.def("regular_polygon", &hypgeom::regular_polygon, py::arg("p"), py::arg("m"), py::arg("q"));

    py::class_<EntropyEstimate>(m, "EntropyEstimate")
        .def_readonly("value", &EntropyEstimate::value)
        .def_readonly("err", &EntropyEstimate::err)
        .def_property_readonly("method", [](const EntropyEstimate& e) { return std::string(to_string(e.method)); })
        .def_property_readonly("diagnostics", &diagnostics)
        .def("__repr__", [](const EntropyEstimate& e) {
            return "EntropyEstimate(" + std::to_string(e.value) + " +- " + std::to_string(e.err) + ", " +
                   std::string(to_string(e.method)) + ")";
        });

    m.def(
        "enumerate_chambers",
        [](const hypgeom::CoxeterPolygon& P, int depth) {
            py::list out;
            for (const auto& c : coxeter::enumerate_chambers(P, depth))
                out.append(py::make_tuple(c.depth, c.center, std::vector<int>(c.word.begin(), c.word.end())));
            return out;
        },
        py::arg("poly"), py::arg("max_depth"), "List of (depth, center, word).");
    py::class_<coxeter::GrowthTable>(m, "GrowthTable")
        .def_property_readonly("rows",
                               [](const coxeter::GrowthTable& t) {
                                   py::list out;
                                   for (const auto& r : t.rows)
                                       out.append(py::make_tuple(r.radius, r.weighted_volume, r.chamber_count));
                                   return out;
                               })
        .def_readonly("frontier_distance", &coxeter::GrowthTable::frontier_distance)
        .def_readonly("max_depth", &coxeter::GrowthTable::max_depth);
    m.def("weighted_ball_growth", &coxeter::weighted_ball_growth, py::arg("poly"), py::arg("radii"),
          py::arg("max_depth"), py::arg("cap") = 5'000'000, py::call_guard<py::gil_scoped_release>());
    m.def("growth_slope", &coxeter::growth_slope, py::arg("table"), py::arg("window"));

    py::class_<symbolic::WallCrossing>(m, "WallCrossing")
        .def_readonly("t", &symbolic::WallCrossing::t)
        .def_readonly("edge_label", &symbolic::WallCrossing::edge_label)
        .def_readonly("thickness_q", &symbolic::WallCrossing::thickness_q)
        .def_readonly("u", &symbolic::WallCrossing::u)
        .def_readonly("theta", &symbolic::WallCrossing::theta);
    m.def(
        "cutting_sequence",
        [](const hypgeom::HPoint& base, double angle, std::pair<double, double> span,
           const hypgeom::CoxeterPolygon& P) {
            return symbolic::cutting_sequence(symbolic::TangentVector{base, angle}, span, P).crossings;
        },
        py::arg("base"), py::arg("angle"), py::arg("t_span"), py::arg("poly"));

    py::class_<symbolic::UlamModel>(m, "UlamModel")
        .def_property_readonly("states", [](const symbolic::UlamModel& u) { return u.states.size(); })
        .def_property_readonly("transitions", [](const symbolic::UlamModel& u) { return u.transitions.size(); })
        .def_readonly("discarded", &symbolic::UlamModel::discarded)
        .def_readonly("resampled", &symbolic::UlamModel::resampled)
        .def("to_json", [](const symbolic::UlamModel& u) { return symbolic::to_json(u); });
    m.def(
        "build_cross_section",
        [](const hypgeom::CoxeterPolygon& P, int n_u, int n_theta, int k, std::uint64_t seed, bool reversed) {
            return symbolic::build_cross_section(P, {n_u, n_theta, k}, seed, reversed);
        },
        py::arg("poly"), py::arg("n_u") = 32, py::arg("n_theta") = 32, py::arg("k") = 3, py::arg("seed") = 12345,
        py::arg("reversed") = false, py::call_guard<py::gil_scoped_release>());
    m.def("pressure_log_radius", &symbolic::pressure_log_radius, py::arg("model"), py::arg("h"));
    m.def(
        "solve_entropy",
        [](const symbolic::UlamModel& model, std::optional<std::pair<double, double>> bracket, double tol,
           bool refine) {
            py::gil_scoped_release nogil;
            return symbolic::solve_entropy(model, {bracket, tol, refine});
        },
        py::arg("model"), py::arg("bracket") = py::none(), py::arg("tol") = 1e-4, py::arg("refine") = true);

    py::class_<measures::SantaloResult>(m, "SantaloResult")
        .def_readonly("closed_form", &measures::SantaloResult::closed_form)
        .def_readonly("monte_carlo", &measures::SantaloResult::monte_carlo)
        .def_readonly("mc_stderr", &measures::SantaloResult::mc_stderr)
        .def_readonly("c_constant_used", &measures::SantaloResult::c_constant_used)
        .def_readonly("samples", &measures::SantaloResult::samples)
        .def_readonly("seed", &measures::SantaloResult::seed);
    m.def("santalo_closed_form", &measures::santalo_closed_form, py::arg("poly"));
    m.def("santalo_monte_carlo", &measures::santalo_monte_carlo, py::arg("poly"), py::arg("samples") = 1'000'000,
          py::arg("seed") = 12345, py::call_guard<py::gil_scoped_release>());
    py::class_<measures::BoundReport>(m, "BoundReport")
        .def_readonly("paper_literal_bound", &measures::BoundReport::paper_literal_bound)
        .def_readonly("derived_constant_bound", &measures::BoundReport::derived_constant_bound)
        .def_readonly("entropy_estimates", &measures::BoundReport::entropy_estimates)
        .def_readonly("strictness_margin", &measures::BoundReport::strictness_margin)
        .def_property_readonly("verdict",
                               [](const measures::BoundReport& b) { return std::string(to_string(b.verdict)); });
    m.def("lower_bound_2d", &measures::lower_bound_2d, py::arg("poly"));
    auto faces = [](const std::vector<std::pair<double, int>>& f) {
        std::vector<measures::Face> out;
        for (auto [v, q] : f) out.push_back({v, q});
        return out;
    };
    m.def(
        "lower_bound_plugin",
        [faces](int n, double vol, const std::vector<std::pair<double, int>>& f, bool euclidean) {
            return measures::lower_bound_plugin(n, vol, faces(f), euclidean);
        },
        py::arg("n"), py::arg("vol_P"), py::arg("faces"), py::arg("euclidean"));
    m.def(
        "lower_bound_plugin_derived",
        [faces](int n, double vol, const std::vector<std::pair<double, int>>& f, bool euclidean) {
            return measures::lower_bound_plugin_derived(n, vol, faces(f), euclidean);
        },
        py::arg("n"), py::arg("vol_P"), py::arg("faces"), py::arg("euclidean"));
    m.def("strictness_report", &measures::strictness_report, py::arg("poly"), py::arg("estimates"));

    py::class_<graphs::MetricGraph>(m, "MetricGraph")
        .def(py::init([](int n, const std::vector<std::tuple<int, int, double>>& edges) {
                 std::vector<graphs::MetricGraph::Edge> e;
                 for (auto [u, v, l] : edges) e.push_back({u, v, l});
                 return graphs::MetricGraph(n, e);
             }),
             py::arg("vertices"), py::arg("edges"))
        .def_property_readonly("vertices", &graphs::MetricGraph::vertices)
        .def_property_readonly("edges", [](const graphs::MetricGraph& g) {
            std::vector<std::tuple<int, int, double>> out;
            for (const auto& e : g.undirected_edges()) out.emplace_back(e.u, e.v, e.length);
            return out;
        });
    m.def("nb_spectral_radius", &graphs::nb_spectral_radius, py::arg("graph"), py::arg("h"));
    m.def("graph_entropy", &graphs::graph_entropy, py::arg("graph"), py::arg("tol") = 1e-10);
    m.def("scale_lengths", &graphs::scale_lengths, py::arg("graph"), py::arg("alpha"));
    m.def("graph_from_json", &graphs::graph_from_json, py::arg("text"));
    m.def("graph_to_json", &graphs::graph_to_json, py::arg("graph"));

    py::class_<orbits::OrbitRow>(m, "OrbitRow")
        .def_readonly("k", &orbits::OrbitRow::k)
        .def_readonly("trace", &orbits::OrbitRow::trace)
        .def_readonly("length", &orbits::OrbitRow::length)
        .def_readonly("length_formula", &orbits::OrbitRow::length_formula)
        .def_readonly("deviation", &orbits::OrbitRow::deviation);
    py::class_<orbits::OrbitFamily>(m, "OrbitFamily")
        .def_readonly("rows", &orbits::OrbitFamily::rows)
        .def_readonly("degenerate", &orbits::OrbitFamily::degenerate)
        .def_readonly("monotone_from", &orbits::OrbitFamily::monotone_from)
        .def_readonly("asymptote_intercept", &orbits::OrbitFamily::asymptote_intercept);
    m.def("geodesic_lengths", &orbits::geodesic_lengths, py::arg("lam"), py::arg("B"), py::arg("k_max"));
    m.def(
        "affine_deviation",
        [](const orbits::OrbitFamily& f) {
            auto a = orbits::affine_deviation(f);
            return py::make_tuple(a.second_differences, a.max_abs);
        },
        py::arg("family"), "Returns (second_differences, max_abs).");
}
