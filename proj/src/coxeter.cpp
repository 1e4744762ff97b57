#include "volent/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "volent/constants.hpp"
#include "volent/error.hpp"
#include "volent/parallel.hpp"
#include "volent/svg.hpp"

namespace volent::coxeter {

using hypgeom::CoxeterPolygon;
using hypgeom::HIsometry;
using hypgeom::HPoint;

namespace {

struct CellKey {
    std::int64_t a, b;
    bool operator==(const CellKey& o) const { return a == o.a && b == o.b; }
};

struct CellHash {
    std::size_t operator()(const CellKey& k) const {
        std::uint64_t h = static_cast<std::uint64_t>(k.a) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(k.b) + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// Normal coordinates of z around the base center i: r (cos φ, sin φ).
std::pair<double, double> normal_coords(const HPoint& z) {
    auto X = hypgeom::to_hyperboloid(z);
    double s = std::hypot(X[1], X[2]);
    if (s == 0) return {0, 0};
    double f = std::asinh(s) / s;
    return {X[1] * f, X[2] * f};
}

struct Candidate {
    HIsometry g;
    HPoint center;
    double u, v;
};

class CenterIndex {
public:
    explicit CenterIndex(double threshold) : threshold_(threshold) {}

    // Index of an existing chamber within threshold, or npos.
    std::size_t find(const Candidate& c, const std::vector<Chamber>& all) const {
        const double qa = c.u / tol::dedup_quantum, qb = c.v / tol::dedup_quantum;
        const std::int64_t ka = static_cast<std::int64_t>(std::floor(qa));
        const std::int64_t kb = static_cast<std::int64_t>(std::floor(qb));
        const double fa = qa - std::floor(qa), fb = qb - std::floor(qb);
        const int da_lo = fa < 0.25 ? -1 : 0, da_hi = fa > 0.75 ? 1 : 0;
        const int db_lo = fb < 0.25 ? -1 : 0, db_hi = fb > 0.75 ? 1 : 0;
        for (int da = da_lo; da <= da_hi; ++da) {
            for (int db = db_lo; db <= db_hi; ++db) {
                auto it = map_.find(CellKey{ka + da, kb + db});
                if (it == map_.end()) continue;
                if (hypgeom::dist(all[it->second].center, c.center) < threshold_) return it->second;
            }
        }
        return npos;
    }

    void insert(const Candidate& c, std::size_t idx) {
        CellKey k{static_cast<std::int64_t>(std::floor(c.u / tol::dedup_quantum)),
                  static_cast<std::int64_t>(std::floor(c.v / tol::dedup_quantum))};
        map_.emplace(k, idx);
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    double threshold_;
    std::unordered_map<CellKey, std::size_t, CellHash> map_;
};

}  // namespace

std::vector<Chamber> enumerate_chambers(const CoxeterPolygon& poly, int max_depth, const EnumerateOptions& opts) {
    if (max_depth < 0) throw Error(ErrorCode::InvalidArgument, "max_depth must be >= 0");
    const HPoint base = poly.center();
    std::vector<Chamber> all;
    all.push_back(Chamber{HIsometry(), {}, base, 0});
    CenterIndex index(0.5 * poly.inradius);
    index.insert(Candidate{HIsometry(), base, 0, 0}, 0);

    std::size_t level_begin = 0, level_end = 1;
    for (int depth = 1; depth <= max_depth && level_begin < level_end; ++depth) {
        const std::size_t width = level_end - level_begin;
        const std::size_t p = static_cast<std::size_t>(poly.p);
        // Children of each parent are computed independently, then merged
        // in (parent, generator) order so the result does not depend on
        // scheduling.
        std::vector<std::vector<std::pair<int, Candidate>>> kids(width);
        parallel_for(width, [&](std::size_t k) {
            const Chamber& parent = all[level_begin + k];
            if (hypgeom::dist(base, parent.center) > opts.prune_radius) return;
            for (std::size_t j = 0; j < p; ++j) {
                if (!parent.word.empty() && parent.word.back() == j) continue;
                HIsometry g = parent.g.compose(poly.reflections[j]);
                HPoint c = g.apply(base);
                auto [u, v] = normal_coords(c);
                kids[k].push_back({static_cast<int>(j), Candidate{g, c, u, v}});
            }
        });
        for (std::size_t k = 0; k < width; ++k) {
            for (auto& [j, cand] : kids[k]) {
                if (index.find(cand, all) != CenterIndex::npos) continue;
                if (all.size() >= opts.cap) {
                    std::ostringstream os;
                    os << "chamber count exceeds cap " << opts.cap << " at depth " << depth;
                    throw Error(ErrorCode::ResourceLimit, os.str());
                }
                std::vector<std::uint8_t> word = all[level_begin + k].word;
                word.push_back(static_cast<std::uint8_t>(j));
                index.insert(cand, all.size());
                all.push_back(Chamber{cand.g, std::move(word), cand.center, depth});
            }
        }
        level_begin = level_end;
        level_end = all.size();
    }
    return all;
}

double retraction_multiplicity(const Chamber& chamber, const CoxeterPolygon& poly) {
    double m = 1.0;
    for (auto s : chamber.word) m *= poly.q.at(s);
    return m;
}

GrowthTable weighted_ball_growth(const CoxeterPolygon& poly, const std::vector<double>& radii, int max_depth,
                                 std::size_t cap) {
    if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "radii must be nonempty");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1])) throw Error(ErrorCode::InvalidArgument, "radii must be increasing");
    const double r_max = radii.back();

    EnumerateOptions opts;
    opts.cap = cap;
    opts.prune_radius = r_max + poly.diameter + poly.circumradius + poly.inradius;
    auto chambers = enumerate_chambers(poly, max_depth, opts);

    GrowthTable t;
    t.polygon_diameter = poly.diameter;
    t.polygon_area = poly.area;
    t.max_depth = max_depth;
    t.frontier_distance = std::numeric_limits<double>::infinity();
    const HPoint base = poly.center();
    std::vector<std::pair<double, double>> dm;  // (distance, multiplicity)
    dm.reserve(chambers.size());
    for (const auto& c : chambers) {
        double d = hypgeom::dist(base, c.center);
        if (c.depth == max_depth) t.frontier_distance = std::min(t.frontier_distance, d);
        dm.emplace_back(d, retraction_multiplicity(c, poly));
    }
    if (!(t.frontier_distance > r_max + poly.diameter)) {
        std::ostringstream os;
        os << "BFS frontier at depth " << max_depth << " reaches distance " << t.frontier_distance
           << ", need > " << r_max + poly.diameter;
        throw Error(ErrorCode::FrontierTooClose, os.str());
    }
    std::sort(dm.begin(), dm.end());
    std::size_t k = 0, count = 0;
    double mass = 0;
    for (double r : radii) {
        while (k < dm.size() && dm[k].first <= r) {
            mass += dm[k].second;
            ++count;
            ++k;
        }
        t.rows.push_back(GrowthRow{r, mass * poly.area, count});
    }
    return t;
}

EntropyEstimate growth_slope(const GrowthTable& table, std::pair<double, double> window) {
    auto [r0, r1] = window;
    const double slack = 1e-12 * std::max(1.0, std::abs(r1));
    std::vector<double> xs, ys;
    for (const auto& row : table.rows) {
        if (row.radius < r0 - slack || row.radius > r1 + slack) continue;
        if (!(row.weighted_volume > 0)) continue;
        xs.push_back(row.radius);
        ys.push_back(std::log(row.weighted_volume));
    }
    if (xs.size() < 4 || !(r1 > r0)) {
        std::ostringstream os;
        os << "window [" << r0 << ", " << r1 << "] holds " << xs.size() << " rows, need >= 4";
        throw Error(ErrorCode::WindowTooNarrow, os.str());
    }
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    double ssr = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double e = ys[i] - (my + slope * (xs[i] - mx));
        ssr += e * e;
    }
    const double se = std::sqrt(ssr / (n - 2) / sxx);
    const double systematic = table.polygon_diameter / (r1 - r0);

    EntropyEstimate est;
    est.method = Method::BallGrowth;
    est.value = slope;
    est.err = se + systematic;
    est.note("window_min", r0);
    est.note("window_max", r1);
    est.note("rows", n);
    est.note("slope_stderr", se);
    est.note("systematic", systematic);
    est.note("max_depth", static_cast<double>(table.max_depth));
    est.note("frontier_distance", table.frontier_distance);
    return est;
}

std::string tessellation_svg(const CoxeterPolygon& poly, const std::vector<Chamber>& chambers, int size_px) {
    svg::Document doc(size_px, size_px);
    const double half = 0.5 * size_px, rad = 0.48 * size_px;
    doc.circle(half, half, rad, "none", "#333", 1.0);
    const int samples = 12;
    for (const auto& c : chambers) {
        std::vector<std::pair<double, double>> pts;
        for (int e = 0; e < poly.p; ++e) {
            for (int s = 0; s < samples; ++s) {
                double t = poly.edge_length * s / samples;
                hypgeom::Vec3 X;
                for (int i = 0; i < 3; ++i)
                    X[i] = poly.hvertices[e][i] * std::cosh(t) + poly.edge_dirs[e][i] * std::sinh(t);
                auto Y = hypgeom::to_hyperboloid(c.g.apply(hypgeom::to_upper(X)));
                double u = Y[2] / (1.0 + Y[0]), v = Y[1] / (1.0 + Y[0]);
                pts.emplace_back(half + rad * u, half - rad * v);
            }
        }
        const char* fill = c.depth == 0 ? "#f4c542" : (c.depth % 2 ? "#dde8f3" : "#ffffff");
        doc.polygon(pts, fill, "#1f4e79", c.depth == 0 ? 1.2 : 0.4);
    }
    return doc.str();
}

}  // namespace volent::coxeter
