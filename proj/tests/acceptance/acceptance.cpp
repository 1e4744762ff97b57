// Acceptance criteria. One PASS/FAIL line per criterion; exit status 1 if
// any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "volent/coxeter.hpp"
#include "volent/error.hpp"
#include "volent/graphs.hpp"
#include "volent/hypgeom.hpp"
#include "volent/measures.hpp"
#include "volent/orbits.hpp"
#include "volent/symbolic.hpp"

using namespace volent;
using hypgeom::regular_polygon;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void verdict(int id, bool ok, const std::string& summary) {
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", summary.c_str());
    std::fflush(stdout);
    failures += !ok;
}

std::string fmt(const char* f, auto... args) {
    char buf[1024];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<double> radii(double lo, double hi, double step) {
    std::vector<double> r;
    for (double x = lo; x <= hi + 1e-12; x += step) r.push_back(x);
    return r;
}

const symbolic::UlamGrid kGrid{32, 32, 3};
constexpr std::uint64_t kSeed = 12345;
constexpr int kDepth = 14;

// Pentagon q ≡ 1 collapses to the hyperbolic plane: h = 1.
void criterion1() {
    auto P = regular_polygon(5, 2, std::vector<int>(5, 1));
    auto t0 = Clock::now();
    auto u = symbolic::solve_entropy(symbolic::build_cross_section(P, kGrid, kSeed));
    double tu = seconds_since(t0);
    t0 = Clock::now();
    auto g = coxeter::growth_slope(coxeter::weighted_ball_growth(P, radii(4, 8, 0.25), kDepth), {4, 8});
    double tg = seconds_since(t0);
    bool ok = std::abs(u.value - 1.0) <= 0.05 && std::abs(g.value - 1.0) <= 0.15 && tu < 60 && tg < 60;
    verdict(1, ok,
            fmt("ulam h=%.6f+-%.6f (%.1fs), growth slope=%.6f+-%.6f (%.1fs); need |h-1|<=0.05, |slope-1|<=0.15",
                u.value, u.err, tu, g.value, g.err, tg));
}

// Pentagon q = 2: estimators agree and both clear the derived bound.
void criterion2() {
    auto P = regular_polygon(5, 2, std::vector<int>(5, 2));
    auto t0 = Clock::now();
    auto u = symbolic::solve_entropy(symbolic::build_cross_section(P, kGrid, kSeed));
    auto g = coxeter::growth_slope(coxeter::weighted_ball_growth(P, radii(4, 8, 0.25), kDepth), {4, 8});
    double t = seconds_since(t0);
    double bound = measures::lower_bound_2d(P).derived_constant_bound;
    double rel = std::abs(u.value - g.value) / u.value;
    bool agree = rel <= 0.05;
    bool u_clear = u.value - bound > u.err;
    bool g_clear = g.value - bound > g.err;
    verdict(2, agree && u_clear && g_clear && t < 300,
            fmt("ulam=%.6f+-%.6f growth=%.6f+-%.6f (systematic %s) rel.diff=%.4f (<=0.05: %s); derived bound=%.6f; "
                "ulam margin-err=%.4f (%s), growth margin-err=%.4f (%s); %.1fs",
                u.value, u.err, g.value, g.err, g.lookup("systematic").c_str(), rel, agree ? "yes" : "no", bound,
                u.value - bound - u.err, u_clear ? "clear" : "not clear", g.value - bound - g.err,
                g_clear ? "clear" : "not clear", t));
}

// Santalo Monte Carlo against the closed form; flux constant 2.
void criterion3() {
    bool ok = true;
    std::string s;
    for (auto [p, q] : {std::pair{5, 2}, {6, 2}, {5, 3}}) {
        auto P = regular_polygon(p, 2, std::vector<int>(p, q));
        auto t0 = Clock::now();
        auto r = measures::santalo_monte_carlo(P, 1'000'000, kSeed);
        double t = seconds_since(t0);
        double z = (r.monte_carlo - r.closed_form) / r.mc_stderr;
        double sigma_c = 2.0 * r.mc_stderr / r.closed_form;
        double zc = (r.c_constant_used - 2.0) / sigma_c;
        bool case_ok = std::abs(z) <= 4 && std::abs(zc) <= 3 && t < 60;
        ok &= case_ok;
        s += fmt("(%d,%d): mc=%.5f cf=%.5f z=%.2f c=%.5f zc=%.2f %.1fs; ", p, q, r.monte_carlo, r.closed_form, z,
                 r.c_constant_used, zc, t);
    }
    verdict(3, ok, s);
}

// Non-backtracking path counts on a unit-length graph: ln of the growth
// of the number of reduced paths, which is the growth of balls in the
// universal cover tree.
double ball_counting_oracle(const graphs::MetricGraph& g, int n, int period) {
    const auto& de = g.directed_edges();
    std::vector<double> count(de.size(), 1.0), next(de.size());
    std::vector<double> totals;
    for (int step = 0; step <= n + period; ++step) {
        double tot = 0;
        for (double c : count) tot += c;
        totals.push_back(tot);
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t e = 0; e < de.size(); ++e)
            for (std::size_t f = 0; f < de.size(); ++f)
                if (de[e].dst == de[f].src && f != graphs::MetricGraph::reversal(e)) next[f] += count[e];
        count.swap(next);
    }
    return std::log(totals[n + period] / totals[n]) / period;
}

void criterion4() {
    auto t0 = Clock::now();
    const double tol = 1e-10;
    graphs::MetricGraph theta(2, {{0, 1, 1.0}, {0, 1, 1.0}, {0, 1, 1.0}});
    std::vector<graphs::MetricGraph::Edge> k43;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 3; ++b) k43.push_back({a, 4 + b, 1.0});
    graphs::MetricGraph bi(7, k43);
    double h3 = graphs::graph_entropy(theta, tol).value;
    double h34 = graphs::graph_entropy(bi, tol).value;
    double o3 = ball_counting_oracle(theta, 40, 1);
    double o34 = ball_counting_oracle(bi, 40, 2);
    bool ok = std::abs(h3 - std::log(2.0)) <= 1e-8 && std::abs(o3 - std::log(2.0)) <= 1e-8 &&
              std::abs(h34 - std::log(6.0) / 2) <= 1e-8 && std::abs(o34 - std::log(6.0) / 2) <= 1e-8;
    double worst_scale = 0;
    for (auto* g : {&theta, &bi}) {
        double h = graphs::graph_entropy(*g, tol).value;
        for (double alpha : {0.25, 4.0}) {
            double hs = graphs::graph_entropy(graphs::scale_lengths(*g, alpha), tol).value;
            worst_scale = std::max(worst_scale, std::abs(hs - h / std::sqrt(alpha)));
        }
    }
    ok &= worst_scale <= 2 * tol;
    double t = seconds_since(t0);
    ok &= t < 1.0;
    verdict(4, ok,
            fmt("3-regular h=%.12f oracle=%.12f ln2=%.12f; (3,4) h=%.12f oracle=%.12f ln6/2=%.12f; "
                "max scaling error=%.2e (<=%.0e); %.3fs",
                h3, o3, std::log(2.0), h34, o34, std::log(6.0) / 2, worst_scale, 2 * tol, t));
}

symbolic::TangentVector random_vector_in(const hypgeom::CoxeterPolygon& P, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0, 1), ang(-pi, pi);
    for (;;) {
        // Uniform in the hyperbolic disk of radius R around the center, then rejection.
        double r = std::acosh(1 + u01(rng) * (std::cosh(P.circumradius) - 1));
        double phi = ang(rng);
        // Point at distance r from i in direction phi.
        hypgeom::Vec3 X{std::cosh(r), std::sinh(r) * std::cos(phi), std::sinh(r) * std::sin(phi)};
        if (!P.contains(X)) continue;
        return {hypgeom::to_upper(X), ang(rng)};
    }
}

// Sandwich ∫_{-a}^{T+a} f <= ln Π <= ∫_{-a-1}^{T+a+1} f with a = 0, plus
// boundedness of S_T(ln q/l) - S_T f.
void criterion5() {
    auto t0 = Clock::now();
    auto P = regular_polygon(5, 2, std::vector<int>(5, 2));
    std::mt19937_64 rng(kSeed);
    const double g = std::min(P.min_wall_gap, P.edge_length);
    // Crossings within one unit of either end, counted generously.
    const double C = std::log(2.0) * (2 * (2.0 / g + 2.0) + 2);
    int trials = 0, lower_ok = 0, upper_ok = 0, corrected_ok = 0, vertex_hits = 0;
    std::string maxima;
    bool bounded = true;
    double worst_lower = 0;
    for (double T : {10.0, 20.0, 40.0}) {
        double max_gap = 0;
        for (int i = 0; i < 100;) {
            auto v = random_vector_in(P, rng);
            std::optional<symbolic::CuttingSequence> found;
            try {
                found = symbolic::cutting_sequence(v, {-3.0, T + 3.0}, P);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::VertexHit) throw;
                ++vertex_hits;
                continue;
            }
            const auto& cs = *found;
            ++i;
            ++trials;
            double lnprod = symbolic::log_thickness_product(cs, 0, T);
            double lo = symbolic::integrate_f(cs, 0, T);
            double hi = symbolic::integrate_f(cs, -1, T + 1);
            double lo_corrected = symbolic::integrate_f(cs, 1, T - 1);
            lower_ok += lo <= lnprod + 1e-12;
            upper_ok += lnprod <= hi + 1e-12;
            corrected_ok += lo_corrected <= lnprod + 1e-12;
            worst_lower = std::max(worst_lower, lo - lnprod);
            max_gap = std::max(max_gap, std::abs(symbolic::integrate_lq(cs, 0, T) - symbolic::integrate_f(cs, 0, T)));
        }
        bounded &= max_gap <= C;
        maxima += fmt("T=%g:%.3f ", T, max_gap);
    }
    double t = seconds_since(t0);
    bool ok = lower_ok == trials && upper_ok == trials && bounded && t < 120;
    verdict(5, ok,
            fmt("literal (a=0) lower holds %d/%d (worst excess %.4f), upper holds %d/%d; corrected lower "
                "int_1^{T-1} f <= ln prod holds %d/%d; max|S_T(ln q/l)-S_T f| %s(C=%.3f); vertex resamples %d; %.1fs",
                lower_ok, trials, worst_lower, upper_ok, trials, corrected_ok, trials, maxima.c_str(), C, vertex_hits,
                t));
}

void criterion6() {
    auto t0 = Clock::now();
    auto fam = orbits::geodesic_lengths(2.0, {1, 1, 1, 2}, 30);
    auto ad = orbits::affine_deviation(fam);
    double worst_rel = 0;
    for (const auto& r : fam.rows)
        worst_rel = std::max(worst_rel, std::abs(r.length - r.length_formula) / std::max(1.0, r.length));
    // Second differences for k = 1..9 are entries 0..8 (k ≤ 10 within the window k-1, k, k+1).
    double max_abs_k10 = 0, min_abs_k10 = INFINITY;
    for (int i = 0; i < 9; ++i) {
        max_abs_k10 = std::max(max_abs_k10, std::abs(ad.second_differences[i]));
        min_abs_k10 = std::min(min_abs_k10, std::abs(ad.second_differences[i]));
    }
    // Asymptote with intercept ln(a² + c²); B symmetric so it equals ln(a² + b²).
    const double intercept = std::log(1.0 * 1.0 + 1.0 * 1.0);
    bool mono = true;
    for (int k = 6; k <= 30; ++k) {
        double d = fam.rows[k].length - (2 * k * std::log(2.0) + intercept);
        double dp = fam.rows[k - 1].length - (2 * (k - 1) * std::log(2.0) + intercept);
        // Direct differences lose precision once they reach rounding; use the
        // cancellation-free deviation there.
        if (std::abs(dp) < 1e-12) d = fam.rows[k].deviation, dp = fam.rows[k - 1].deviation;
        mono &= d < dp && d >= 0;
    }
    const double last = fam.rows[30].deviation;
    double t = seconds_since(t0);
    bool ok = worst_rel <= 1e-9 && max_abs_k10 > 1e-9 && mono && last < 1e-15 && t < 1;
    verdict(6, ok,
            fmt("two-path max rel gap=%.2e (<=1e-9); second differences k<=10: max|.|=%.3e, min|.|=%.3e (max>1e-9); "
                "deviation from asymptote monotone for k>=5: %s, at k=30 %.2e; %.3fs",
                worst_rel, max_abs_k10, min_abs_k10, mono ? "yes" : "no", last, t));
}

void criterion7() {
    auto t0 = Clock::now();
    std::vector<int> q(5, 2);
    symbolic::SolveOptions no_refine;
    no_refine.refine = false;
    auto solve = [&](const std::vector<int>& qq) {
        return symbolic::solve_entropy(symbolic::build_cross_section(regular_polygon(5, 2, qq), kGrid, kSeed), no_refine)
            .value;
    };
    double prev = solve(q);
    std::string chain = fmt("%.5f", prev);
    bool increasing = true;
    for (int i = 0; i < 5; ++i) {
        q[i] = 3;
        double h = solve(q);
        increasing &= h > prev;
        chain += fmt(" < %.5f", h);
        prev = h;
    }
    auto P2 = regular_polygon(5, 2, std::vector<int>(5, 2));
    std::vector<double> deltas;
    for (int n : {8, 16, 32}) {
        auto e = symbolic::solve_entropy(symbolic::build_cross_section(P2, {n, n, 3}, kSeed));
        deltas.push_back(std::stod(e.lookup("refine_delta")));
    }
    bool decreasing = deltas[1] < deltas[0] && deltas[2] < deltas[1];
    double t = seconds_since(t0);
    verdict(7, increasing && decreasing && t < 600,
            fmt("q_i raised 2->3 one edge at a time: %s (%s); refinement deltas N=8,16,32: %.5f %.5f %.5f (%s); %.1fs",
                chain.c_str(), increasing ? "strictly increasing" : "NOT increasing", deltas[0], deltas[1], deltas[2],
                decreasing ? "decreasing" : "NOT decreasing", t));
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                      criterion5, criterion6, criterion7};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            verdict(static_cast<int>(i + 1), false, std::string("threw: ") + e.what());
        }
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures ? 1 : 0;
}
