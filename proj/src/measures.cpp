#include "volent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "volent/error.hpp"
#include "volent/flow.hpp"
#include "volent/parallel.hpp"
#include "volent/rng.hpp"
#include "volent/symbolic.hpp"

namespace volent::measures {

using std::numbers::pi;

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Equality: return "EQUALITY";
        case Verdict::Fail: return "FAIL";
    }
    return "?";
}

double santalo_closed_form(const CoxeterPolygon& poly) {
    double s = 0;
    for (int i = 0; i < poly.p; ++i) s += std::log(static_cast<double>(poly.q[i])) * poly.edges[i].length;
    return 2.0 * s;
}

namespace {

constexpr std::uint64_t chunk_size = 1 << 14;

struct ChunkSum {
    double sum = 0, sum_sq = 0;
    std::uint64_t n = 0, resampled = 0;
};

// Uniform point in P: radius from the area law of the circumscribed disk,
// then rejection.
flow::Frame sample_inside(const CoxeterPolygon& P, std::mt19937_64& gen) {
    const double c1 = std::cosh(P.circumradius) - 1.0;
    for (;;) {
        double r = std::acosh(1.0 + uniform01(gen) * c1);
        double phi = 2 * pi * uniform01(gen);
        double psi = 2 * pi * uniform01(gen);
        hypgeom::Vec3 x{std::cosh(r), std::sinh(r) * std::cos(phi), std::sinh(r) * std::sin(phi)};
        if (!P.contains(x)) continue;
        // Orthonormal tangent frame at x: radial and angular directions.
        hypgeom::Vec3 er{std::sinh(r), std::cosh(r) * std::cos(phi), std::cosh(r) * std::sin(phi)};
        hypgeom::Vec3 ea{0.0, -std::sin(phi), std::cos(phi)};
        hypgeom::Vec3 v;
        for (int i = 0; i < 3; ++i) v[i] = std::cos(psi) * er[i] + std::sin(psi) * ea[i];
        return flow::Frame{x, v};
    }
}

}  // namespace

SantaloResult santalo_monte_carlo(const CoxeterPolygon& P, std::uint64_t samples, std::uint64_t seed) {
    if (samples < 10000) throw Error(ErrorCode::InvalidArgument, "santalo_monte_carlo needs at least 10^4 samples");
    const std::uint64_t chunks = (samples + chunk_size - 1) / chunk_size;
    std::vector<ChunkSum> sums(chunks);

    parallel_for(chunks, [&](std::size_t c) {
        auto gen = substream(seed, c);
        const std::uint64_t n = std::min(chunk_size, samples - c * chunk_size);
        ChunkSum& s = sums[c];
        while (s.n < n) {
            flow::Frame f = sample_inside(P, gen);
            try {
                auto lq = symbolic::lq_value(f, P);
                double val = std::log(static_cast<double>(lq.q)) / lq.l;
                s.sum += val;
                s.sum_sq += val * val;
                ++s.n;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::VertexHit) throw;
                ++s.resampled;
            }
        }
    });

    double sum = 0, sum_sq = 0;
    std::uint64_t resampled = 0;
    for (const auto& s : sums) {
        sum += s.sum;
        sum_sq += s.sum_sq;
        resampled += s.resampled;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq / n - mean * mean) * n / (n - 1));
    const double mass = 2 * pi * P.area;

    SantaloResult r;
    r.closed_form = santalo_closed_form(P);
    r.monte_carlo = mean * mass;
    r.mc_stderr = std::sqrt(var / n) * mass;
    double base = r.closed_form / 2.0;
    r.c_constant_used = base > 0 ? r.monte_carlo / base : std::numeric_limits<double>::quiet_NaN();
    r.samples = samples;
    r.seed = seed;
    r.resampled = resampled;
    return r;
}

BoundReport lower_bound_2d(const CoxeterPolygon& poly) {
    double s = 0;
    for (int i = 0; i < poly.p; ++i) s += std::log(static_cast<double>(poly.q[i])) * poly.edges[i].length;
    BoundReport b;
    b.paper_literal_bound = 1.0 + s / poly.area;
    b.derived_constant_bound = 1.0 + s / (pi * poly.area);
    return b;
}

double lower_bound_plugin(int n, double vol_P, const std::vector<Face>& faces, bool euclidean) {
    if (n < 1 || !(vol_P > 0)) throw Error(ErrorCode::InvalidArgument, "need n >= 1 and vol_P > 0");
    double s = 0;
    for (const auto& f : faces) {
        if (!(f.volume > 0) || f.q < 1) throw Error(ErrorCode::InvalidArgument, "faces need vol_F > 0 and q >= 1");
        s += std::log(static_cast<double>(f.q)) * f.volume;
    }
    return (euclidean ? 0.0 : n - 1.0) + s / vol_P;
}

double derived_constant(int n) {
    // Vol(B^{n-1}) / Vol(S^{n-1}) = Γ(n/2) / (2 sqrt(π) Γ((n+1)/2))
    return std::tgamma(0.5 * n) / (2.0 * std::sqrt(pi) * std::tgamma(0.5 * (n + 1)));
}

double lower_bound_plugin_derived(int n, double vol_P, const std::vector<Face>& faces, bool euclidean) {
    double base = euclidean ? 0.0 : n - 1.0;
    return base + derived_constant(n) * (lower_bound_plugin(n, vol_P, faces, euclidean) - base);
}

BoundReport strictness_report(const CoxeterPolygon& poly, const std::vector<EntropyEstimate>& estimates) {
    if (estimates.empty()) throw Error(ErrorCode::InvalidArgument, "strictness_report needs at least one estimate");
    BoundReport b = lower_bound_2d(poly);
    b.entropy_estimates = estimates;
    b.strictness_margin = -std::numeric_limits<double>::infinity();
    bool below = false;
    for (const auto& e : estimates) {
        b.strictness_margin = std::max(b.strictness_margin, e.value - e.err - b.derived_constant_bound);
        below |= e.value + e.err < b.derived_constant_bound;
    }
    b.verdict = below ? Verdict::Fail : (b.strictness_margin > 0 ? Verdict::Pass : Verdict::Equality);
    return b;
}

}  // namespace volent::measures
