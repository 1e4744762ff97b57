#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "volent/error.hpp"
#include "volent/orbits.hpp"

using namespace volent;
using namespace volent::orbits;

TEST_CASE("identity B is affine and flagged degenerate") {
    auto fam = geodesic_lengths(2.0, {1, 0, 0, 1}, 20);
    CHECK(fam.degenerate);
    for (const auto& r : fam.rows) {
        CHECK(r.length == doctest::Approx(2 * r.k * std::log(2.0)).epsilon(1e-12));
        CHECK(std::abs(r.deviation) < 1e-12);
    }
    auto ad = affine_deviation(fam);
    CHECK(ad.second_differences.size() == 19);
    CHECK(ad.max_abs < 1e-12);
}

TEST_CASE("generic B") {
    auto fam = geodesic_lengths(2.0, {1, 1, 1, 2}, 30);
    CHECK_FALSE(fam.degenerate);
    CHECK(fam.rows[1].length == doctest::Approx(std::acosh(4.625)).epsilon(1e-14));
    for (const auto& r : fam.rows)
        CHECK(std::abs(r.length - r.length_formula) <= 1e-9 * (1 + r.length));
    auto ad = affine_deviation(fam);
    CHECK(ad.max_abs > 1e-9);
    // Deviation from the asymptote tends to 0.
    for (int k = 6; k <= 30; ++k) {
        CHECK(fam.rows[k].deviation > 0);
        CHECK(fam.rows[k].deviation < fam.rows[k - 1].deviation);
    }
    CHECK(fam.rows[30].deviation < 1e-15);
    CHECK(fam.monotone_from == 0);
}

TEST_CASE("nonsymmetric B uses the row norms") {
    // (A^k B)(A^k B)^t has diagonal λ^{2k}(a²+b²), λ^{-2k}(c²+d²).
    Mat2 B{2, 3, 1, 2};
    auto fam = geodesic_lengths(3.0, B, 12);
    for (const auto& r : fam.rows) {
        double direct = std::acosh((std::pow(9.0, r.k) * 13 + std::pow(9.0, -r.k) * 5) / 2);
        CHECK(r.length == doctest::Approx(direct).epsilon(1e-12));
        CHECK(std::abs(r.length - r.length_formula) <= 1e-9 * (1 + r.length));
    }
    CHECK(fam.asymptote_intercept == doctest::Approx(std::log(13.0)));
}

TEST_CASE("synthetic affine sequence") {
    std::vector<double> l;
    for (int k = 0; k < 12; ++k) l.push_back(0.75 * k + 0.3);
    auto ad = affine_deviation(l);
    for (double d : ad.second_differences) CHECK(std::abs(d) < 1e-12);
    CHECK_THROWS_AS(affine_deviation(std::vector<double>{1.0, 2.0}), Error);
}

TEST_CASE("trace invariant under simultaneous orthogonal conjugation") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi);
    auto mul = [](const Mat2& x, const Mat2& y) {
        return Mat2{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                    x[2] * y[1] + x[3] * y[3]};
    };
    const double lambda = 1.7;
    Mat2 A{lambda, 0, 0, 1 / lambda}, B{1, 1, 1, 2};
    for (int t = 0; t < 20; ++t) {
        double a = ang(rng);
        Mat2 R{std::cos(a), -std::sin(a), std::sin(a), std::cos(a)}, Rt{R[0], R[2], R[1], R[3]};
        Mat2 A2 = mul(mul(R, A), Rt), B2 = mul(mul(R, B), Rt);
        Mat2 g{1, 0, 0, 1}, g2{1, 0, 0, 1};
        for (int k = 0; k < 6; ++k) {
            Mat2 m = mul(g, B), m2 = mul(g2, B2);
            double tr = m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3];
            double tr2 = m2[0] * m2[0] + m2[1] * m2[1] + m2[2] * m2[2] + m2[3] * m2[3];
            CHECK(tr2 == doctest::Approx(tr).epsilon(1e-10));
            g = mul(g, A);
            g2 = mul(g2, A2);
        }
    }
}

TEST_CASE("orbit input errors and outputs") {
    CHECK_THROWS_AS(geodesic_lengths(1.0, {1, 0, 0, 1}, 3), Error);
    CHECK_THROWS_AS(geodesic_lengths(2.0, {1, 1, 1, 1}, 3), Error);
    auto fam = geodesic_lengths(2.0, {1, 1, 1, 2}, 10);
    auto csv = orbits_csv(fam);
    CHECK(csv.rfind("k,trace,length,length_formula,deviation,second_difference\n", 0) == 0);
    auto svg = orbits_svg(fam);
    CHECK(svg.find("<svg") != std::string::npos);
}
