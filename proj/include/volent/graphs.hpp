#pragma once

#include <string>
#include <vector>

#include "volent/estimate.hpp"

namespace volent::graphs {

struct DirectedEdge {
    int src;
    int dst;
    double length;
};

// Undirected edge k is stored as directed edges 2k (src -> dst) and
// 2k+1 (dst -> src), so reversal(e) = e ^ 1. Loops are allowed.
class MetricGraph {
public:
    struct Edge {
        int u, v;
        double length;
    };

    MetricGraph(int vertices, const std::vector<Edge>& edges);

    int vertices() const { return n_; }
    const std::vector<DirectedEdge>& directed_edges() const { return directed_; }
    std::vector<Edge> undirected_edges() const;
    static std::size_t reversal(std::size_t e) { return e ^ 1u; }

private:
    int n_;
    std::vector<DirectedEdge> directed_;
};

// Spectral radius of the non-backtracking matrix A(h) with entries
// exp(-h len(f)) for allowed transitions e -> f.
double nb_spectral_radius(const MetricGraph& g, double h);

// Diagnostics carry "flag" = "Degenerate" for a single cycle.
EntropyEstimate graph_entropy(const MetricGraph& g, double tol = 1e-10);

MetricGraph scale_lengths(const MetricGraph& g, double alpha);

// {"vertices": n, "edges": [{"src": i, "dst": j, "len": x}, ...]}
MetricGraph graph_from_json(const std::string& text);
std::string graph_to_json(const MetricGraph& g);

}  // namespace volent::graphs
