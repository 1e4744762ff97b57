#include "volent/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "volent/constants.hpp"
#include "volent/error.hpp"
#include "volent/flow.hpp"
#include "volent/parallel.hpp"
#include "volent/perron.hpp"
#include "volent/rng.hpp"

namespace volent::symbolic {

using std::numbers::pi;

namespace {

struct Start {
    flow::Frame fwd, bwd;
    hypgeom::HIsometry g_fwd, g_bwd;
    int skip_fwd = -1, skip_bwd = -1;
    std::optional<WallCrossing> at_zero;
    std::optional<hypgeom::HIsometry> entered_at_zero;
};

flow::Frame reversed(const flow::Frame& f) {
    return flow::Frame{f.x, {-f.v[0], -f.v[1], -f.v[2]}};
}

// Fold the vector into P and set up forward and backward rays. A base
// point on a wall counts as a crossing at time 0.
Start prepare(const flow::Frame& global, const CoxeterPolygon& P) {
    auto folded = flow::fold(P, global);
    Start s;
    s.fwd = folded.f;
    s.bwd = reversed(folded.f);
    s.g_fwd = s.g_bwd = folded.g;
    const int j = folded.wall;
    if (j < 0) return s;
    s.skip_fwd = s.skip_bwd = j;
    double b = hypgeom::mink(P.normals[j], folded.f.v);
    if (std::abs(b) <= 1e-14) return s;  // runs inside the wall
    if (b < 0) {
        s.fwd = flow::reflect(P, folded.f, j);
        s.g_fwd = folded.g.compose(P.reflections[j]);
    } else {
        s.bwd = flow::reflect(P, s.bwd, j);
        s.g_bwd = folded.g.compose(P.reflections[j]);
    }
    double u = flow::section_u(P, s.fwd.x, j);
    if (u < tol::vertex || u > P.edge_length - tol::vertex)
        throw Error(ErrorCode::VertexHit, "base point is a polygon vertex");
    s.at_zero = WallCrossing{0.0, j, P.q[j], u, flow::section_angle(P, s.fwd, j)};
    s.entered_at_zero = s.g_fwd;
    return s;
}

double tent_primitive(double x) {
    if (x <= -1) return 0;
    if (x <= 0) return 0.5 * (x + 1) * (x + 1);
    if (x <= 1) return 1 - 0.5 * (1 - x) * (1 - x);
    return 1;
}

}  // namespace

CuttingSequence cutting_sequence(const TangentVector& v, std::pair<double, double> t_span, const CoxeterPolygon& P) {
    auto [t0, t1] = t_span;
    if (!(t1 > t0)) throw Error(ErrorCode::InvalidArgument, "t_span requires t1 > t0");
    Start s = prepare(flow::from_upper(v.base, v.angle), P);
    CuttingSequence cs{{}, hypgeom::HGeodesic::through(v.base, v.angle), {}};

    std::vector<WallCrossing> back;
    std::vector<hypgeom::HIsometry> back_g;
    if (t0 < 0) {
        flow::Frame f = s.bwd;
        hypgeom::HIsometry g = s.g_bwd;
        int skip = s.skip_bwd;
        double t = 0;
        for (;;) {
            auto st = flow::step(P, f, skip);
            t += st.exit.t;
            if (t > -t0) break;
            int e = st.exit.edge;
            back.push_back(WallCrossing{-t, e, P.q[e], st.exit.u, pi - st.exit.theta});
            back_g.push_back(g);  // forward in time, this chamber is the one entered
            g = g.compose(P.reflections[e]);
            f = st.next;
            skip = e;
        }
    }
    for (std::size_t i = back.size(); i-- > 0;) {
        if (back[i].t > t1) continue;
        cs.crossings.push_back(back[i]);
        cs.entered.push_back(back_g[i]);
    }
    if (s.at_zero && t0 <= 0 && 0 <= t1) {
        cs.crossings.push_back(*s.at_zero);
        cs.entered.push_back(*s.entered_at_zero);
    }
    if (t1 > 0) {
        flow::Frame f = s.fwd;
        hypgeom::HIsometry g = s.g_fwd;
        int skip = s.skip_fwd;
        double t = 0;
        for (;;) {
            auto st = flow::step(P, f, skip);
            t += st.exit.t;
            if (t > t1) break;
            int e = st.exit.edge;
            g = g.compose(P.reflections[e]);
            if (t >= t0) {
                cs.crossings.push_back(WallCrossing{t, e, P.q[e], st.exit.u, st.exit.theta});
                cs.entered.push_back(g);
            }
            f = st.next;
            skip = e;
        }
    }
    return cs;
}

CuttingSequence cutting_sequence(const hypgeom::HGeodesic& geodesic, std::pair<double, double> t_span,
                                 const CoxeterPolygon& poly) {
    auto cs = cutting_sequence(TangentVector{geodesic.base(), geodesic.angle()}, t_span, poly);
    cs.geodesic = geodesic;
    return cs;
}

double f_value(const TangentVector& v, const CoxeterPolygon& poly) {
    auto cs = cutting_sequence(v, {-1.0, 1.0}, poly);
    double f = 0;
    for (const auto& c : cs.crossings) {
        if (c.t == 0.0) continue;  // walls through the base point are excluded
        f += std::log(static_cast<double>(c.thickness_q)) * std::max(0.0, 1.0 - std::abs(c.t));
    }
    return f;
}

LQ lq_value(const TangentVector& v, const CoxeterPolygon& P) {
    return lq_value(flow::from_upper(v.base, v.angle), P);
}

LQ lq_value(const flow::Frame& f, const CoxeterPolygon& P) {
    Start s = prepare(f, P);
    double t_plus = flow::next_exit(P, s.fwd, s.skip_fwd).t;
    if (s.at_zero) return LQ{t_plus, s.at_zero->thickness_q};
    auto back = flow::next_exit(P, s.bwd, s.skip_bwd);
    return LQ{t_plus + back.t, P.q[back.edge]};
}

double integrate_f(const CuttingSequence& cs, double a, double b) {
    double s = 0;
    for (const auto& c : cs.crossings) {
        double w = tent_primitive(b - c.t) - tent_primitive(a - c.t);
        if (w != 0) s += std::log(static_cast<double>(c.thickness_q)) * w;
    }
    return s;
}

double integrate_lq(const CuttingSequence& cs, double a, double b) {
    const auto& c = cs.crossings;
    if (c.empty() || c.front().t > a || c.back().t <= b)
        throw Error(ErrorCode::InvalidArgument, "cutting sequence does not bracket the integration window");
    double s = 0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
        double lo = std::max(a, c[i].t), hi = std::min(b, c[i + 1].t);
        if (hi <= lo) continue;
        s += (hi - lo) * std::log(static_cast<double>(c[i].thickness_q)) / (c[i + 1].t - c[i].t);
    }
    return s;
}

double log_thickness_product(const CuttingSequence& cs, double a, double b) {
    double s = 0;
    for (const auto& c : cs.crossings)
        if (c.t >= a && c.t <= b) s += std::log(static_cast<double>(c.thickness_q));
    return s;
}

UlamModel build_cross_section(const CoxeterPolygon& P, UlamGrid grid, std::uint64_t seed, bool reversed_flow) {
    if (grid.n_u < 4 || grid.n_theta < 4 || grid.k < 1)
        throw Error(ErrorCode::InvalidArgument, "grid requires N_u, N_theta >= 4 and K >= 1");
    const std::size_t nu = grid.n_u, nt = grid.n_theta, K = grid.k;
    const std::size_t cells = static_cast<std::size_t>(P.p) * nu * nt;
    const double du = P.edge_length / nu, dth = pi / nt;
    constexpr int max_retries = 8;

    struct Acc {
        double mass = 0, mass_L = 0;
        int q = 0;
    };
    struct CellOut {
        std::map<std::size_t, Acc> out;
        std::size_t resampled = 0, discarded = 0;
    };
    std::vector<CellOut> res(cells);

    parallel_for(cells, [&](std::size_t cell) {
        const int j = static_cast<int>(cell / (nu * nt));
        const std::size_t iu = (cell / nt) % nu, it = cell % nt;
        auto gen = substream(seed, cell);
        CellOut& co = res[cell];
        struct Hit {
            std::size_t target;
            double L;
            int q;
        };
        std::vector<Hit> hits;
        for (std::size_t a = 0; a < K; ++a) {
            for (std::size_t b = 0; b < K; ++b) {
                bool ok = false;
                for (int r = 0; r < max_retries && !ok; ++r) {
                    double u = (iu + (a + uniform01(gen)) / K) * du;
                    double th = (it + (b + uniform01(gen)) / K) * dth;
                    if (reversed_flow) th = pi - th;
                    try {
                        auto e = flow::next_exit(P, flow::section_frame(P, j, u, th), j);
                        double th_out = reversed_flow ? pi - e.theta : e.theta;
                        std::size_t ju = std::min(nu - 1, static_cast<std::size_t>(e.u / du));
                        std::size_t jt = std::min(nt - 1, static_cast<std::size_t>(std::max(0.0, th_out) / dth));
                        std::size_t target = (static_cast<std::size_t>(e.edge) * nu + ju) * nt + jt;
                        hits.push_back(Hit{target, e.t, P.q[e.edge]});
                        ok = true;
                    } catch (const Error& err) {
                        if (err.code() != ErrorCode::VertexHit) throw;
                        ++co.resampled;
                    }
                }
                if (!ok) ++co.discarded;
            }
        }
        const double w = hits.empty() ? 0.0 : 1.0 / static_cast<double>(hits.size());
        for (const auto& h : hits) {
            auto& acc = co.out[h.target];
            acc.mass += w;
            acc.mass_L += w * h.L;
            acc.q = h.q;
        }
    });

    // Drop cells without incoming mass until none are left.
    std::vector<std::size_t> indeg(cells, 0);
    std::vector<char> alive(cells, 1);
    for (std::size_t c = 0; c < cells; ++c) {
        if (res[c].out.empty()) alive[c] = 0;
        for (const auto& [t, acc] : res[c].out) indeg[t]++;
    }
    std::vector<std::size_t> queue;
    for (std::size_t c = 0; c < cells; ++c)
        if (indeg[c] == 0 || !alive[c]) queue.push_back(c);
    std::vector<char> queued(cells, 0);
    for (auto c : queue) queued[c] = 1;
    while (!queue.empty()) {
        std::size_t c = queue.back();
        queue.pop_back();
        alive[c] = 0;
        for (const auto& [t, acc] : res[c].out) {
            if (--indeg[t] == 0 && !queued[t]) {
                queued[t] = 1;
                queue.push_back(t);
            }
        }
    }

    UlamModel m;
    m.p = P.p;
    m.m = P.m;
    m.q = P.q;
    m.grid = grid;
    m.seed = seed;
    m.reversed = reversed_flow;
    m.diameter = P.diameter;
    std::vector<std::size_t> remap(cells, static_cast<std::size_t>(-1));
    for (std::size_t c = 0; c < cells; ++c) {
        m.resampled += res[c].resampled;
        m.discarded += res[c].discarded;
        if (!alive[c]) {
            ++m.dropped_cells;
            continue;
        }
        remap[c] = m.states.size();
        m.states.push_back(UlamState{static_cast<int>(c / (nu * nt)), static_cast<int>((c / nt) % nu),
                                     static_cast<int>(c % nt)});
    }
    m.row_start.push_back(0);
    for (std::size_t c = 0; c < cells; ++c) {
        if (!alive[c]) continue;
        for (const auto& [t, acc] : res[c].out) {
            if (!alive[t]) continue;
            m.transitions.push_back(UlamTransition{remap[t], acc.mass, acc.mass_L / acc.mass, acc.q});
        }
        m.row_start.push_back(m.transitions.size());
    }
    return m;
}

namespace {

perron::SparseMatrix pressure_matrix(const UlamModel& model, double h) {
    perron::SparseMatrix a;
    a.n = model.states.size();
    a.row_start = model.row_start;
    a.col.reserve(model.transitions.size());
    a.val.reserve(model.transitions.size());
    for (const auto& t : model.transitions) {
        a.col.push_back(t.target);
        a.val.push_back(t.mass * t.q_weight * std::exp((1.0 - h) * t.mean_L));
    }
    return a;
}

}  // namespace

double pressure_log_radius(const UlamModel& model, double h) {
    if (model.states.empty()) throw Error(ErrorCode::NotIrreducible, "model has no states");
    auto a = pressure_matrix(model, h);
    std::size_t comps = 0;
    perron::scc_labels(a, &comps);
    if (comps != 1) {
        std::ostringstream os;
        os << "transition graph has " << comps << " strongly connected components";
        throw Error(ErrorCode::NotIrreducible, os.str());
    }
    return std::log(perron::spectral_radius(a, tol::power_iteration).radius);
}

EntropyEstimate solve_entropy(const UlamModel& model, const SolveOptions& opts) {
    EntropyEstimate est;
    est.method = Method::UlamPressure;
    std::ostringstream gridstr;
    gridstr << model.grid.n_u << "x" << model.grid.n_theta << " K=" << model.grid.k;
    est.note("grid", gridstr.str());
    est.note("states", static_cast<double>(model.states.size()));
    est.note("transitions", static_cast<double>(model.transitions.size()));
    est.note("resampled", static_cast<double>(model.resampled));
    est.note("discarded", static_cast<double>(model.discarded));

    int evals = 0;
    auto P = [&](double h) {
        ++evals;
        return pressure_log_radius(model, h);
    };

    double lo = 0.5, hi = 1.5;
    if (opts.bracket) {
        std::tie(lo, hi) = *opts.bracket;
    } else {
        est.note("bracket", "default [0.5, 1.5]");
    }
    if (!(hi > lo) || lo < 0) throw Error(ErrorCode::BracketFailed, "bracket must satisfy 0 <= h_lo < h_hi");
    double plo = P(lo);
    while (!(plo > 0)) {
        if (lo <= 1e-9) throw Error(ErrorCode::BracketFailed, "pressure is not positive near h = 0");
        lo *= 0.5;
        std::ostringstream os;
        os << "h_lo -> " << lo;
        est.note("widen", os.str());
        plo = P(lo);
    }
    double phi = P(hi);
    while (!(phi < 0)) {
        if (hi >= 50) {
            std::ostringstream os;
            os << "pressure still " << phi << " at h = 50";
            throw Error(ErrorCode::BracketFailed, os.str());
        }
        hi = std::min(50.0, 2 * hi);
        std::ostringstream os;
        os << "h_hi -> " << hi;
        est.note("widen", os.str());
        phi = P(hi);
    }

    // A single sign change over 8 interior points.
    int changes = 0;
    double prev = plo;
    for (int i = 1; i <= 8; ++i) {
        double v = P(lo + (hi - lo) * i / 9.0);
        if ((v < 0) != (prev < 0)) ++changes;
        prev = v;
    }
    if ((phi < 0) != (prev < 0)) ++changes;
    if (changes != 1) throw Error(ErrorCode::BracketFailed, "pressure changes sign more than once in the bracket");

    std::ostringstream br;
    br << "[" << lo << ", " << hi << "]";
    est.note("bracket_used", br.str());
    int iters = 0;
    while (hi - lo >= opts.tol) {
        double mid = 0.5 * (lo + hi);
        (P(mid) > 0 ? lo : hi) = mid;
        ++iters;
    }
    est.value = 0.5 * (lo + hi);
    est.err = opts.tol;
    est.note("bisection_steps", static_cast<double>(iters));
    est.note("pressure_evaluations", static_cast<double>(evals));

    if (opts.refine) {
        auto poly = hypgeom::regular_polygon(model.p, model.m, model.q);
        UlamGrid g2{2 * model.grid.n_u, 2 * model.grid.n_theta, model.grid.k};
        auto fine = build_cross_section(poly, g2, model.seed, model.reversed);
        SolveOptions o2;
        o2.bracket = std::pair{std::max(0.0, est.value - 0.5), est.value + 0.5};
        o2.tol = opts.tol;
        o2.refine = false;
        auto e2 = solve_entropy(fine, o2);
        double delta = std::abs(e2.value - est.value);
        est.err += delta;
        est.note("refined_value", e2.value);
        est.note("refine_delta", delta);
    }
    return est;
}

std::vector<std::pair<double, double>> pressure_curve(const UlamModel& model, const std::vector<double>& hs) {
    std::vector<std::pair<double, double>> out;
    for (double h : hs) out.emplace_back(h, pressure_log_radius(model, h));
    return out;
}

std::string pressure_curve_csv(const std::vector<std::pair<double, double>>& curve) {
    std::ostringstream os;
    os.precision(17);
    os << "h,pressure_log_radius\n";
    for (auto [h, p] : curve) os << h << ',' << p << '\n';
    return os.str();
}

std::string to_json(const UlamModel& m) {
    nlohmann::json j;
    j["format"] = "volent.ulam";
    j["version"] = UlamModel::format_version;
    j["polygon"] = {{"p", m.p}, {"m", m.m}, {"q", m.q}};
    j["grid"] = {{"n_u", m.grid.n_u}, {"n_theta", m.grid.n_theta}, {"k", m.grid.k}};
    j["seed"] = m.seed;
    j["reversed"] = m.reversed;
    j["diameter"] = m.diameter;
    j["diagnostics"] = {{"resampled", m.resampled}, {"discarded", m.discarded}, {"dropped_cells", m.dropped_cells}};
    auto& st = j["states"] = nlohmann::json::array();
    for (const auto& s : m.states) st.push_back({s.edge, s.iu, s.itheta});
    auto& tr = j["transitions"] = nlohmann::json::array();
    for (std::size_t i = 0; i + 1 < m.row_start.size(); ++i)
        for (std::size_t k = m.row_start[i]; k < m.row_start[i + 1]; ++k) {
            const auto& t = m.transitions[k];
            tr.push_back({i, t.target, t.mass, t.mean_L, t.q_weight});
        }
    return j.dump();
}

UlamModel model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    try {
        if (j.at("format") != "volent.ulam") throw Error(ErrorCode::ParseError, "not a volent.ulam document");
        int version = j.at("version").get<int>();
        if (version != UlamModel::format_version) {
            std::ostringstream os;
            os << "unsupported UlamModel version " << version;
            throw Error(ErrorCode::ParseError, os.str());
        }
        UlamModel m;
        m.p = j.at("polygon").at("p");
        m.m = j.at("polygon").at("m");
        m.q = j.at("polygon").at("q").get<std::vector<int>>();
        m.grid = UlamGrid{j.at("grid").at("n_u"), j.at("grid").at("n_theta"), j.at("grid").at("k")};
        m.seed = j.at("seed").get<std::uint64_t>();
        m.reversed = j.at("reversed");
        m.diameter = j.at("diameter");
        m.resampled = j.at("diagnostics").at("resampled");
        m.discarded = j.at("diagnostics").at("discarded");
        m.dropped_cells = j.at("diagnostics").at("dropped_cells");
        for (const auto& s : j.at("states")) m.states.push_back(UlamState{s.at(0), s.at(1), s.at(2)});
        m.row_start.assign(1, 0);
        std::size_t row = 0;
        for (const auto& t : j.at("transitions")) {
            std::size_t src = t.at(0);
            if (src < row || src >= m.states.size()) throw Error(ErrorCode::ParseError, "transitions out of order");
            while (row < src) {
                m.row_start.push_back(m.transitions.size());
                ++row;
            }
            std::size_t target = t.at(1);
            if (target >= m.states.size()) throw Error(ErrorCode::ParseError, "transition target out of range");
            m.transitions.push_back(UlamTransition{target, t.at(2), t.at(3), t.at(4)});
        }
        while (m.row_start.size() < m.states.size() + 1) m.row_start.push_back(m.transitions.size());
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed UlamModel: ") + e.what());
    }
}

}  // namespace volent::symbolic
