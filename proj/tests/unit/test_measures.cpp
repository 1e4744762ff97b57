#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "volent/error.hpp"
#include "volent/graphs.hpp"
#include "volent/measures.hpp"

using namespace volent;
using namespace volent::measures;
using hypgeom::regular_polygon;

TEST_CASE("Santalo closed form") {
    auto P1 = regular_polygon(5, 2, std::vector<int>(5, 1));
    CHECK(santalo_closed_form(P1) == 0.0);
    auto P2 = regular_polygon(5, 2, std::vector<int>(5, 2));
    double expect = 2 * 5 * std::log(2.0) * P2.edge_length;
    CHECK(santalo_closed_form(P2) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(std::abs(santalo_closed_form(P2) - 7.357) < 0.01);
    auto P3 = regular_polygon(5, 2, {4, 2, 2, 2, 2});
    CHECK(santalo_closed_form(P3) - santalo_closed_form(P2) ==
          doctest::Approx(2 * P2.edge_length * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("Santalo Monte Carlo") {
    auto P1 = regular_polygon(5, 2, std::vector<int>(5, 1));
    auto r1 = santalo_monte_carlo(P1, 20000, 1);
    CHECK(r1.monte_carlo == 0.0);
    CHECK(std::isnan(r1.c_constant_used));
    CHECK_THROWS_AS(santalo_monte_carlo(P1, 100, 1), Error);

    auto P2 = regular_polygon(5, 2, std::vector<int>(5, 2));
    auto r = santalo_monte_carlo(P2, 200000, 2);
    CHECK(r.samples == 200000);
    CHECK(r.seed == 2);
    CHECK(std::abs(r.monte_carlo - r.closed_form) <= 4 * r.mc_stderr);
    CHECK(std::abs(r.c_constant_used - 2.0) <= 3 * 2 * r.mc_stderr / r.closed_form);

    auto again = santalo_monte_carlo(P2, 200000, 2);
    CHECK(again.monte_carlo == r.monte_carlo);
    CHECK(again.mc_stderr == r.mc_stderr);
}

TEST_CASE("Monte Carlo does not depend on the thread count") {
    auto P = regular_polygon(6, 2, std::vector<int>(6, 3));
    setenv("VOLENT_THREADS", "1", 1);
    auto a = santalo_monte_carlo(P, 100000, 9);
    setenv("VOLENT_THREADS", "4", 1);
    auto b = santalo_monte_carlo(P, 100000, 9);
    unsetenv("VOLENT_THREADS");
    CHECK(a.monte_carlo == b.monte_carlo);
    CHECK(a.mc_stderr == b.mc_stderr);
}

TEST_CASE("Monte Carlo is additive over edges") {
    std::vector<int> q{2, 3, 1, 5, 2};
    auto full = santalo_monte_carlo(regular_polygon(5, 2, q), 50000, 4);
    double sum = 0;
    for (int i = 0; i < 5; ++i) {
        std::vector<int> one(5, 1);
        one[i] = q[i];
        sum += santalo_monte_carlo(regular_polygon(5, 2, one), 50000, 4).monte_carlo;
    }
    CHECK(sum == doctest::Approx(full.monte_carlo).epsilon(1e-12));
}

TEST_CASE("Monte Carlo confidence intervals cover the closed form") {
    auto P = regular_polygon(5, 2, std::vector<int>(5, 2));
    int covered = 0;
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        auto r = santalo_monte_carlo(P, 50000, seed);
        covered += std::abs(r.monte_carlo - r.closed_form) <= 1.96 * r.mc_stderr;
    }
    CHECK(covered >= 17);
}

TEST_CASE("measured flux constant does not depend on p or q") {
    for (auto [p, q] : {std::pair{5, 2}, {6, 2}, {7, 3}}) {
        auto r = santalo_monte_carlo(regular_polygon(p, 2, std::vector<int>(p, q)), 100000, 31);
        double sigma_c = r.mc_stderr / (r.closed_form / 2);
        CHECK(std::abs(r.c_constant_used - 2.0) <= 4 * sigma_c);
    }
}

TEST_CASE("Lower bounds") {
    auto b1 = lower_bound_2d(regular_polygon(5, 2, std::vector<int>(5, 1)));
    CHECK(b1.paper_literal_bound == 1.0);
    CHECK(b1.derived_constant_bound == 1.0);
    auto P2 = regular_polygon(5, 2, std::vector<int>(5, 2));
    auto b2 = lower_bound_2d(P2);
    double s = 5 * std::log(2.0) * P2.edge_length;
    CHECK(b2.paper_literal_bound == doctest::Approx(1 + s / (std::numbers::pi / 2)));
    CHECK(std::abs(b2.paper_literal_bound - 3.342) < 1e-3);
    CHECK(std::abs(b2.derived_constant_bound - 1.745) < 1e-3);
    double prev = b2.derived_constant_bound;
    std::vector<int> q(5, 2);
    for (int i = 0; i < 5; ++i) {
        q[i] = 3;
        auto b = lower_bound_2d(regular_polygon(5, 2, q));
        CHECK(b.derived_constant_bound > prev);
        prev = b.derived_constant_bound;
    }
}

TEST_CASE("plug-in bound") {
    CHECK(lower_bound_plugin(3, 1.7, {{0.4, 1}, {0.9, 1}}, false) == 2.0);
    auto P2 = regular_polygon(5, 2, std::vector<int>(5, 2));
    std::vector<Face> faces;
    for (const auto& e : P2.edges) faces.push_back({e.length, 2});
    CHECK(lower_bound_plugin(2, P2.area, faces, false) == doctest::Approx(lower_bound_2d(P2).paper_literal_bound));
    CHECK(lower_bound_plugin_derived(2, P2.area, faces, false) ==
          doctest::Approx(lower_bound_2d(P2).derived_constant_bound));

    std::vector<Face> ends{{1.0, 2}, {1.0, 2}};
    double literal = lower_bound_plugin(1, 1.0, ends, true);
    CHECK(literal == doctest::Approx(2 * std::log(2.0)));
    graphs::MetricGraph theta(2, {{0, 1, 1.0}, {0, 1, 1.0}, {0, 1, 1.0}});
    double h = graphs::graph_entropy(theta).value;
    CHECK(literal / h == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(lower_bound_plugin_derived(1, 1.0, ends, true) == doctest::Approx(h).epsilon(1e-8));
    CHECK(derived_constant(2) == doctest::Approx(1 / std::numbers::pi));
    CHECK_THROWS_AS(lower_bound_plugin(2, 0.0, ends, false), Error);
}

TEST_CASE("strictness report") {
    auto P1 = regular_polygon(5, 2, std::vector<int>(5, 1));
    EntropyEstimate a{1.0004, 0.01, Method::UlamPressure, {}};
    EntropyEstimate b{0.995, 0.1, Method::BallGrowth, {}};
    auto r1 = strictness_report(P1, {a, b});
    CHECK(r1.verdict == Verdict::Equality);
    CHECK(r1.strictness_margin == doctest::Approx(std::max(a.value - a.err, b.value - b.err) - 1.0));

    auto P2 = regular_polygon(5, 2, std::vector<int>(5, 2));
    EntropyEstimate low{1.5, 0.01, Method::UlamPressure, {}};
    CHECK(strictness_report(P2, {low}).verdict == Verdict::Fail);
    EntropyEstimate high{1.9, 0.01, Method::UlamPressure, {}};
    auto r2 = strictness_report(P2, {high});
    CHECK(r2.verdict == Verdict::Pass);
    CHECK(r2.strictness_margin > 0);
    CHECK(r2.entropy_estimates.size() == 1);
    // A loose estimate does not hide a tight one.
    EntropyEstimate loose{1.76, 0.42, Method::BallGrowth, {}};
    CHECK(strictness_report(P2, {high, loose}).verdict == Verdict::Pass);
    CHECK(strictness_report(P2, {loose}).verdict == Verdict::Equality);
    CHECK(strictness_report(P2, {high, low}).verdict == Verdict::Fail);
    CHECK(to_string(Verdict::Pass) == "PASS");
    CHECK_THROWS_AS(strictness_report(P2, {}), Error);
}
