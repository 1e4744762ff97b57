#include "volent/graphs.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "volent/error.hpp"
#include "volent/perron.hpp"

namespace volent::graphs {

MetricGraph::MetricGraph(int vertices, const std::vector<Edge>& edges) : n_(vertices) {
    if (vertices < 1) throw Error(ErrorCode::InvalidArgument, "graph needs at least one vertex");
    std::vector<int> degree(vertices, 0);
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= vertices || e.v < 0 || e.v >= vertices) {
            std::ostringstream os;
            os << "edge (" << e.u << ", " << e.v << ") references a missing vertex";
            throw Error(ErrorCode::InvalidArgument, os.str());
        }
        if (!(e.length > 0) || !std::isfinite(e.length))
            throw Error(ErrorCode::InvalidArgument, "edge lengths must be positive and finite");
        degree[e.u]++;
        degree[e.v]++;
        directed_.push_back(DirectedEdge{e.u, e.v, e.length});
        directed_.push_back(DirectedEdge{e.v, e.u, e.length});
    }
    for (int v = 0; v < vertices; ++v) {
        if (degree[v] < 2) {
            std::ostringstream os;
            os << "vertex " << v << " has degree " << degree[v] << "; terminal vertices are not allowed";
            throw Error(ErrorCode::InvalidArgument, os.str());
        }
    }
}

std::vector<MetricGraph::Edge> MetricGraph::undirected_edges() const {
    std::vector<Edge> out;
    for (std::size_t k = 0; k < directed_.size(); k += 2)
        out.push_back(Edge{directed_[k].src, directed_[k].dst, directed_[k].length});
    return out;
}

namespace {

perron::SparseMatrix nb_matrix(const MetricGraph& g, double h) {
    const auto& de = g.directed_edges();
    std::vector<std::vector<std::size_t>> out_of(g.vertices());
    for (std::size_t f = 0; f < de.size(); ++f) out_of[de[f].src].push_back(f);
    perron::SparseMatrix a;
    a.n = de.size();
    a.row_start.push_back(0);
    for (std::size_t e = 0; e < de.size(); ++e) {
        for (std::size_t f : out_of[de[e].dst]) {
            if (f == MetricGraph::reversal(e)) continue;
            a.col.push_back(f);
            a.val.push_back(std::exp(-h * de[f].length));
        }
        a.row_start.push_back(a.col.size());
    }
    return a;
}

}  // namespace

double nb_spectral_radius(const MetricGraph& g, double h) {
    auto a = nb_matrix(g, h);
    if (!perron::strongly_connected(a))
        throw Error(ErrorCode::NotStronglyConnected, "non-backtracking edge graph is not strongly connected");
    return perron::spectral_radius(a, 1e-14).radius;
}

EntropyEstimate graph_entropy(const MetricGraph& g, double tol) {
    EntropyEstimate est;
    est.method = Method::GraphSpectral;
    auto a0 = nb_matrix(g, 0.0);
    bool all_single = true;
    for (std::size_t e = 0; e < a0.n; ++e) all_single &= (a0.row_start[e + 1] - a0.row_start[e] == 1);
    if (all_single) {
        // Every geodesic is forced: the graph is a cycle and balls grow linearly.
        est.value = 0;
        est.err = 0;
        est.note("flag", "Degenerate");
        return est;
    }
    if (!perron::strongly_connected(a0))
        throw Error(ErrorCode::NotStronglyConnected, "non-backtracking edge graph is not strongly connected");

    auto log_rho = [&](double h) { return std::log(perron::spectral_radius(nb_matrix(g, h), 1e-14).radius); };
    double lo = 0, hi = 1;
    int widen = 0;
    while (log_rho(hi) > 0) {
        lo = hi;
        hi *= 2;
        if (++widen > 60) throw Error(ErrorCode::BracketFailed, "no root found for the graph entropy");
    }
    int iters = 0;
    while (hi - lo > tol && iters < 200) {
        double mid = 0.5 * (lo + hi);
        (log_rho(mid) > 0 ? lo : hi) = mid;
        ++iters;
    }
    est.value = 0.5 * (lo + hi);
    est.err = tol;
    est.note("directed_edges", static_cast<double>(a0.n));
    est.note("bisection_steps", static_cast<double>(iters));
    return est;
}

MetricGraph scale_lengths(const MetricGraph& g, double alpha) {
    if (!(alpha > 0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
    auto edges = g.undirected_edges();
    const double s = std::sqrt(alpha);
    for (auto& e : edges) e.length *= s;
    return MetricGraph(g.vertices(), edges);
}

MetricGraph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    auto fail = [](const std::string& m) { throw Error(ErrorCode::InvalidArgument, "graph file: " + m); };
    if (!j.is_object()) fail("top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "vertices" && it.key() != "edges") fail("unknown key '" + it.key() + "'");
    if (!j.contains("vertices") || !j["vertices"].is_number_integer()) fail("'vertices' must be an integer");
    if (!j.contains("edges") || !j["edges"].is_array()) fail("'edges' must be an array");
    std::vector<MetricGraph::Edge> edges;
    std::size_t k = 0;
    for (const auto& e : j["edges"]) {
        std::string where = "edges[" + std::to_string(k++) + "]";
        if (!e.is_object()) fail(where + " must be an object");
        for (auto it = e.begin(); it != e.end(); ++it)
            if (it.key() != "src" && it.key() != "dst" && it.key() != "len")
                fail("unknown key '" + where + "." + it.key() + "'");
        if (!e.contains("src") || !e["src"].is_number_integer()) fail(where + ".src must be an integer");
        if (!e.contains("dst") || !e["dst"].is_number_integer()) fail(where + ".dst must be an integer");
        if (!e.contains("len") || !e["len"].is_number()) fail(where + ".len must be a number");
        edges.push_back(MetricGraph::Edge{e["src"].get<int>(), e["dst"].get<int>(), e["len"].get<double>()});
    }
    return MetricGraph(j["vertices"].get<int>(), edges);
}

std::string graph_to_json(const MetricGraph& g) {
    nlohmann::json j;
    j["vertices"] = g.vertices();
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.undirected_edges()) j["edges"].push_back({{"src", e.u}, {"dst", e.v}, {"len", e.length}});
    return j.dump(2);
}

}  // namespace volent::graphs
