#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "volent/error.hpp"
#include "volent/graphs.hpp"

using namespace volent;
using namespace volent::graphs;

namespace {

MetricGraph theta_graph() { return MetricGraph(2, {{0, 1, 1.0}, {0, 1, 1.0}, {0, 1, 1.0}}); }

MetricGraph k43() {
    std::vector<MetricGraph::Edge> e;
    for (int a = 0; a < 4; ++a)
        for (int b = 4; b < 7; ++b) e.push_back({a, b, 1.0});
    return MetricGraph(7, e);
}

// Vertices of the universal cover within combinatorial distance n of a
// lift of `root`, by counting non-backtracking walks (unit lengths).
std::vector<double> ball_counts(const MetricGraph& g, int root, int n_max) {
    const auto& de = g.directed_edges();
    std::vector<double> cur(de.size(), 0), next(de.size());
    for (std::size_t e = 0; e < de.size(); ++e)
        if (de[e].src == root) cur[e] = 1;
    std::vector<double> balls{1.0};
    double total = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        total += std::accumulate(cur.begin(), cur.end(), 0.0);
        balls.push_back(total);
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t e = 0; e < de.size(); ++e)
            for (std::size_t f = 0; f < de.size(); ++f)
                if (de[f].src == de[e].dst && f != MetricGraph::reversal(e)) next[f] += cur[e];
        std::swap(cur, next);
    }
    return balls;
}

double growth_rate(const std::vector<double>& balls, int a, int b) {
    return (std::log(balls[b]) - std::log(balls[a])) / (b - a);
}

MetricGraph random_graph(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> len(0.5, 2.0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<MetricGraph::Edge> e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, len(rng)});
    for (int k = 0; k < n / 2 + 1; ++k) e.push_back({pick(rng), pick(rng), len(rng)});
    return MetricGraph(n, e);
}

bool graph_json_equal(const MetricGraph& a, const MetricGraph& b) { return graph_to_json(a) == graph_to_json(b); }

}  // namespace

TEST_CASE("regular tree quotients") {
    const double tol = 1e-10;
    auto t3 = graph_entropy(theta_graph(), tol);
    auto oracle3 = growth_rate(ball_counts(theta_graph(), 0, 60), 40, 60);
    CHECK(std::abs(oracle3 - std::log(2.0)) < 1e-9);
    CHECK(std::abs(t3.value - oracle3) < 1e-8);
    CHECK(t3.method == Method::GraphSpectral);

    // Rose with two loops: 4-regular tree, h = ln 3.
    MetricGraph rose(1, {{0, 0, 1.0}, {0, 0, 1.0}});
    auto oracle4 = growth_rate(ball_counts(rose, 0, 40), 30, 40);
    CHECK(std::abs(graph_entropy(rose, tol).value - oracle4) < 1e-8);
    CHECK(std::abs(oracle4 - std::log(3.0)) < 1e-9);
}

TEST_CASE("biregular tree quotient") {
    auto g = k43();
    auto b = ball_counts(g, 0, 60);
    double oracle = growth_rate(b, 40, 60);  // even radii
    CHECK(std::abs(oracle - std::log(6.0) / 2) < 1e-9);
    CHECK(std::abs(graph_entropy(g, 1e-10).value - oracle) < 1e-8);
}

TEST_CASE("cycles are degenerate") {
    for (int n : {1, 2, 5}) {
        std::vector<MetricGraph::Edge> e;
        for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 0.7});
        auto est = graph_entropy(MetricGraph(n, e));
        CHECK(est.value == 0.0);
        CHECK(est.lookup("flag") == "Degenerate");
    }
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(MetricGraph(2, {{0, 1, 1.0}}), Error);  // terminal vertices
    CHECK_THROWS_AS(MetricGraph(2, {{0, 1, 1.0}, {0, 1, -1.0}}), Error);
    CHECK_THROWS_AS(MetricGraph(2, {{0, 3, 1.0}, {0, 1, 1.0}}), Error);
    // Two disjoint theta graphs.
    MetricGraph two(4, {{0, 1, 1}, {0, 1, 1}, {0, 1, 1}, {2, 3, 1}, {2, 3, 1}, {2, 3, 1}});
    try {
        graph_entropy(two);
        FAIL("expected NotStronglyConnected");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotStronglyConnected);
    }
}

TEST_CASE("homogeneity under length scaling") {
    const double tol = 1e-10;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        auto g = random_graph(rng, 6);
        double h = graph_entropy(g, tol).value;
        CHECK(std::abs(graph_entropy(scale_lengths(g, 4), tol).value - h / 2) <= 2 * tol);
        CHECK(std::abs(graph_entropy(scale_lengths(g, 0.25), tol).value - 2 * h) <= 2 * tol);
        auto same = scale_lengths(g, 1.0);
        CHECK(graph_json_equal(same, g));
    }
    CHECK_THROWS_AS(scale_lengths(theta_graph(), 0.0), Error);
}

TEST_CASE("subdivision and relabeling invariance") {
    const double tol = 1e-10;
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 5; ++trial) {
        auto g = random_graph(rng, 5);
        double h = graph_entropy(g, tol).value;
        auto edges = g.undirected_edges();
        auto e0 = edges[0];
        edges[0] = {e0.u, g.vertices(), e0.length / 2};
        edges.push_back({g.vertices(), e0.v, e0.length / 2});
        CHECK(std::abs(graph_entropy(MetricGraph(g.vertices() + 1, edges), tol).value - h) <= 2 * tol);

        std::vector<int> perm(g.vertices());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto re = g.undirected_edges();
        for (auto& e : re) e = {perm[e.u], perm[e.v], e.length};
        std::shuffle(re.begin(), re.end(), rng);
        CHECK(std::abs(graph_entropy(MetricGraph(g.vertices(), re), tol).value - h) <= 2 * tol);
    }
}

TEST_CASE("spectral radius is decreasing and log-convex in h") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        auto g = random_graph(rng, 6);
        std::vector<double> lr;
        for (double h = 0; h <= 2.0; h += 0.25) lr.push_back(std::log(nb_spectral_radius(g, h)));
        for (std::size_t i = 1; i < lr.size(); ++i) CHECK(lr[i] < lr[i - 1]);
        for (std::size_t i = 1; i + 1 < lr.size(); ++i) CHECK(lr[i + 1] - 2 * lr[i] + lr[i - 1] >= -1e-12);
    }
}

TEST_CASE("graph JSON") {
    auto g = graph_from_json(R"({"vertices": 2, "edges": [{"src":0,"dst":1,"len":1},{"src":0,"dst":1,"len":1},{"src":0,"dst":1,"len":1}]})");
    CHECK(std::abs(graph_entropy(g).value - std::log(2.0)) < 1e-9);
    CHECK(graph_json_equal(graph_from_json(graph_to_json(g)), g));
    try {
        graph_from_json("{\"vertices\": 2,\n \"edges\": [}");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
    }
    CHECK_THROWS_WITH(graph_from_json(R"({"vertices": 1, "edges": [], "color": 1})"), doctest::Contains("color"));
    CHECK_THROWS_WITH(graph_from_json(R"({"vertices": 1, "edges": [{"src":0,"dst":0,"len":1,"w":2}]})"),
                      doctest::Contains("edges[0].w"));
}
