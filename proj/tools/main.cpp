// volent: command-line front end.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "config.hpp"
#include "volent/coxeter.hpp"
#include "volent/error.hpp"
#include "volent/graphs.hpp"
#include "volent/hypgeom.hpp"
#include "volent/measures.hpp"
#include "volent/orbits.hpp"
#include "volent/svg.hpp"
#include "volent/symbolic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace volent;
using cli::ExperimentConfig;

namespace {

int exit_code(const Error& e) { return is_input_error(e.code()) ? 2 : 1; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
    out << text;
}

json estimate_json(const EntropyEstimate& e) {
    json d = json::array();
    for (const auto& [k, v] : e.diagnostics) d.push_back({k, v});
    return {{"value", e.value}, {"err", e.err}, {"method", std::string(to_string(e.method))}, {"diagnostics", d}};
}

json polygon_json(const hypgeom::CoxeterPolygon& P) {
    return {{"p", P.p},
            {"m", P.m},
            {"q", P.q},
            {"area", P.area},
            {"edge_length", P.edge_length},
            {"inradius", P.inradius},
            {"circumradius", P.circumradius},
            {"diameter", P.diameter},
            {"min_wall_gap", P.min_wall_gap}};
}

json santalo_json(const measures::SantaloResult& r) {
    return {{"closed_form", r.closed_form},
            {"monte_carlo", r.monte_carlo},
            {"mc_stderr", r.mc_stderr},
            {"c_constant_used", std::isfinite(r.c_constant_used) ? json(r.c_constant_used) : json(nullptr)},
            {"samples", r.samples},
            {"seed", r.seed},
            {"resampled", r.resampled}};
}

json bounds_json(const measures::BoundReport& b, bool with_verdict) {
    json j = {{"paper_literal_bound", b.paper_literal_bound}, {"derived_constant_bound", b.derived_constant_bound}};
    if (with_verdict) {
        json est = json::array();
        for (const auto& e : b.entropy_estimates) est.push_back(estimate_json(e));
        j["entropy_estimates"] = est;
        j["strictness_margin"] = b.strictness_margin;
        j["verdict"] = std::string(to_string(b.verdict));
    }
    return j;
}

hypgeom::CoxeterPolygon make_polygon(const ExperimentConfig& c) {
    return hypgeom::regular_polygon(c.polygon.p, c.polygon.m, c.thickness());
}

std::vector<double> radii_of(const ExperimentConfig& c) {
    std::vector<double> r;
    auto [lo, hi] = c.growth.window;
    int n = static_cast<int>(std::floor((hi - lo) / c.growth.step + 1e-9));
    for (int i = 0; i <= n; ++i) r.push_back(lo + i * c.growth.step);
    if (r.back() < hi - 1e-12) r.push_back(hi);
    return r;
}

symbolic::SolveOptions solve_options(const ExperimentConfig& c) {
    symbolic::SolveOptions o;
    o.bracket = c.pressure.bracket;
    o.tol = c.pressure.tol;
    o.refine = c.pressure.refine;
    return o;
}

struct PressureOut {
    EntropyEstimate estimate;
    std::vector<std::pair<double, double>> curve;
};

PressureOut run_pressure(const hypgeom::CoxeterPolygon& P, const ExperimentConfig& c) {
    auto model = symbolic::build_cross_section(P, {c.pressure.n_u, c.pressure.n_theta, c.pressure.samples}, c.seed);
    PressureOut out{symbolic::solve_entropy(model, solve_options(c)), {}};
    std::vector<double> hs;
    for (int i = 0; i <= 40; ++i) hs.push_back(0.5 + 0.05 * i);
    out.curve = symbolic::pressure_curve(model, hs);
    return out;
}

struct GrowthOut {
    coxeter::GrowthTable table;
    EntropyEstimate estimate;
};

GrowthOut run_growth(const hypgeom::CoxeterPolygon& P, const ExperimentConfig& c) {
    auto table = coxeter::weighted_ball_growth(P, radii_of(c), c.growth.max_depth);
    return GrowthOut{table, coxeter::growth_slope(table, c.growth.window)};
}

json growth_json(const GrowthOut& g) {
    json rows = json::array();
    for (const auto& r : g.table.rows) rows.push_back({r.radius, r.weighted_volume, r.chamber_count});
    return {{"estimate", estimate_json(g.estimate)},
            {"frontier_distance", g.table.frontier_distance},
            {"max_depth", g.table.max_depth},
            {"rows", rows}};
}

json graph_section(const std::string& path, double tol) {
    auto g = graphs::graph_from_json(read_file(path));
    auto e = graphs::graph_entropy(g, tol);
    json j = estimate_json(e);
    j["vertices"] = g.vertices();
    j["edges"] = g.undirected_edges().size();
    return j;
}

json orbits_section(const ExperimentConfig::Orbits& o, const fs::path& dir) {
    auto fam = orbits::geodesic_lengths(o.lambda, o.B, o.k_max);
    auto ad = orbits::affine_deviation(fam);
    write_file(dir / "orbits.csv", orbits::orbits_csv(fam));
    write_file(dir / "orbits.svg", orbits::orbits_svg(fam));
    double max_rel = 0;
    for (const auto& r : fam.rows)
        max_rel = std::max(max_rel, std::abs(r.length - r.length_formula) / std::max(1.0, r.length));
    return {{"lambda", o.lambda},
            {"B", o.B},
            {"k_max", o.k_max},
            {"degenerate", fam.degenerate},
            {"monotone_from", fam.monotone_from},
            {"asymptote_intercept", fam.asymptote_intercept},
            {"max_second_difference", ad.max_abs},
            {"max_two_path_relative_gap", max_rel},
            {"final_deviation", fam.rows.back().deviation},
            {"note",
             "ln M(g_k) is affine in k for large k; the lengths above are not, which is what rules out a "
             "linear length spectrum."}};
}

std::string curves_csv(const PressureOut* p, const GrowthOut* g) {
    std::ostringstream os;
    os.precision(17);
    os << "curve,x,y\n";
    if (p)
        for (auto [h, v] : p->curve) os << "pressure_log_radius," << h << ',' << v << '\n';
    if (g)
        for (const auto& r : g->table.rows)
            os << "ln_weighted_volume," << r.radius << ',' << std::log(r.weighted_volume) << '\n';
    return os.str();
}

std::string convergence_svg(const PressureOut* p, const GrowthOut* g, const measures::BoundReport& b) {
    std::vector<svg::Series> series;
    if (g && !g->table.rows.empty()) {
        svg::Series s{"ln V(r)", {}, "#1f77b4", false};
        for (const auto& r : g->table.rows) s.points.emplace_back(r.radius, std::log(r.weighted_volume));
        series.push_back(s);
        const auto& r0 = g->table.rows.front();
        const auto& r1 = g->table.rows.back();
        double y0 = std::log(r0.weighted_volume);
        auto ray = [&](const std::string& label, double slope, const std::string& color, bool dashed) {
            series.push_back({label, {{r0.radius, y0}, {r1.radius, y0 + slope * (r1.radius - r0.radius)}}, color,
                              dashed});
        };
        if (p) ray("Ulam h", p->estimate.value, "#d62728", false);
        ray("derived bound", b.derived_constant_bound, "#2ca02c", true);
        ray("literal bound", b.paper_literal_bound, "#7f7f7f", true);
    } else if (p) {
        svg::Series s{"pressure", {}, "#d62728", false};
        for (auto xy : p->curve) s.points.push_back(xy);
        series.push_back(s);
        return svg::line_chart("pressure", "h", "ln rho(B(h))", series);
    }
    return svg::line_chart("ball growth and entropy estimates", "radius r", "ln V(r)", series);
}

using Clock = std::chrono::steady_clock;

template <class F>
auto timed(json& timings, const std::string& key, F&& f) {
    auto t0 = Clock::now();
    struct Guard {
        json& t;
        std::string k;
        Clock::time_point t0;
        ~Guard() { t[k] = std::chrono::duration<double>(Clock::now() - t0).count(); }
    } guard{timings, key, t0};
    return f();
}

// Runs one section; records a failure in `errors` and keeps going.
template <class F>
void section(json& report, json& errors, json& timings, int& worst, const std::string& name, F&& f) {
    try {
        report[name] = timed(timings, name, f);
    } catch (const Error& e) {
        errors[name] = e.what();
        worst = std::max(worst, exit_code(e));
    }
}

json render_entropy(const ExperimentConfig& c, int& rc) {
    const fs::path dir = c.output_dir;
    json report, errors = json::object(), timings = json::object();
    report["tool"] = "volent";
    report["version"] = VOLENT_VERSION;
    report["config"] = cli::to_json(c);
    report["seed"] = c.seed;
    int worst = 0;

    std::optional<hypgeom::CoxeterPolygon> P;
    section(report, errors, timings, worst, "polygon", [&] {
        P = make_polygon(c);
        return polygon_json(*P);
    });
    std::optional<PressureOut> pres;
    std::optional<GrowthOut> grow;
    std::optional<measures::BoundReport> bounds;
    if (P) {
        section(report, errors, timings, worst, "pressure", [&] {
            pres = run_pressure(*P, c);
            return estimate_json(pres->estimate);
        });
        section(report, errors, timings, worst, "growth", [&] {
            grow = run_growth(*P, c);
            return growth_json(*grow);
        });
        section(report, errors, timings, worst, "santalo",
                [&] { return santalo_json(measures::santalo_monte_carlo(*P, c.santalo.samples, c.santalo_seed())); });
        section(report, errors, timings, worst, "bounds", [&] {
            bounds = measures::lower_bound_2d(*P);
            return bounds_json(*bounds, false);
        });
        std::vector<EntropyEstimate> est;
        if (pres) est.push_back(pres->estimate);
        if (grow) est.push_back(grow->estimate);
        if (!est.empty())
            section(report, errors, timings, worst, "strictness",
                    [&] { return bounds_json(measures::strictness_report(*P, est), true); });
    }
    if (c.graph) section(report, errors, timings, worst, "graph", [&] { return graph_section(*c.graph, 1e-10); });
    if (c.orbits) section(report, errors, timings, worst, "orbits", [&] { return orbits_section(*c.orbits, dir); });
    report["errors"] = errors;

    write_file(dir / "report.json", report.dump(2) + "\n");
    write_file(dir / "timings.json", timings.dump(2) + "\n");
    write_file(dir / "curves.csv", curves_csv(pres ? &*pres : nullptr, grow ? &*grow : nullptr));
    if (bounds) write_file(dir / "convergence.svg", convergence_svg(pres ? &*pres : nullptr, grow ? &*grow : nullptr, *bounds));
    rc = worst;
    return report;
}

void print_table(const json& r, std::ostream& os) {
    auto num = [](const json& v) {
        if (!v.is_number()) return std::string("-");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", v.get<double>());
        return std::string(buf);
    };
    os << "volent " << r.value("version", "?") << "  seed " << r.value("seed", json(0)).dump() << "\n";
    if (r.contains("polygon")) {
        const auto& p = r["polygon"];
        os << "polygon   p=" << p["p"] << " m=" << p["m"] << " q=" << p["q"].dump() << " area=" << num(p["area"])
           << " edge=" << num(p["edge_length"]) << "\n";
    }
    os << "estimate               value        err\n";
    auto row = [&](const std::string& name, const json& e) {
        os << name << std::string(name.size() < 22 ? 22 - name.size() : 1, ' ') << ' ' << num(e["value"]) << "   "
           << num(e["err"]) << "\n";
    };
    if (r.contains("pressure")) row("ulam pressure", r["pressure"]);
    if (r.contains("growth")) row("ball growth", r["growth"]["estimate"]);
    if (r.contains("graph")) row("graph spectral", r["graph"]);
    if (r.contains("santalo")) {
        const auto& s = r["santalo"];
        os << "santalo   closed=" << num(s["closed_form"]) << " mc=" << num(s["monte_carlo"]) << " +- "
           << num(s["mc_stderr"]) << " c=" << num(s["c_constant_used"]) << "\n";
    }
    if (r.contains("bounds"))
        os << "bounds    literal=" << num(r["bounds"]["paper_literal_bound"])
           << " derived=" << num(r["bounds"]["derived_constant_bound"]) << "\n";
    if (r.contains("strictness"))
        os << "verdict   " << r["strictness"]["verdict"].get<std::string>()
           << "  margin=" << num(r["strictness"]["strictness_margin"]) << "\n";
    if (r.contains("orbits"))
        os << "orbits    max |second difference|=" << num(r["orbits"]["max_second_difference"]) << "\n";
    if (r.contains("errors"))
        for (const auto& [k, v] : r["errors"].items()) os << "error     " << k << ": " << v.get<std::string>() << "\n";
}

// Flags shared by the subcommands. Only flags actually given override
// the defaults; a --config file then overrides both.
struct Flags {
    std::optional<int> p, m, nu, ntheta, samples, max_depth, k_max;
    std::optional<std::string> q, bracket, window, B, graph, output_dir, config;
    std::optional<double> tol, step, lambda;
    std::optional<std::uint64_t> seed, santalo_samples, santalo_seed;
    bool no_refine = false;
};

std::vector<double> parse_list(const std::string& s, const std::string& flag) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "--" + flag + ": cannot parse '" + item + "'");
        }
    }
    return v;
}

void add_polygon_flags(CLI::App* a, Flags& f) {
    a->add_option("--p", f.p, "number of edges");
    a->add_option("--m", f.m, "interior angles pi/m");
    a->add_option("--q", f.q, "thickness: one value or a comma list, one per edge");
}

void add_common_flags(CLI::App* a, Flags& f) {
    add_polygon_flags(a, f);
    a->add_option("--nu", f.nu, "Ulam grid cells along each edge");
    a->add_option("--ntheta", f.ntheta, "Ulam grid cells in angle");
    a->add_option("--K", f.samples, "Ulam samples per cell and axis");
    a->add_option("--tol", f.tol, "bisection tolerance");
    a->add_option("--bracket", f.bracket, "lo,hi for the pressure root");
    a->add_flag("--no-refine", f.no_refine, "skip the grid-refinement error term");
    a->add_option("--max-depth", f.max_depth, "chamber enumeration depth");
    a->add_option("--window", f.window, "r_min,r_max for the growth slope");
    a->add_option("--step", f.step, "radius step");
    a->add_option("--samples", f.santalo_samples, "Santalo Monte Carlo samples");
    a->add_option("--santalo-seed", f.santalo_seed, "Santalo seed (defaults to --seed)");
    a->add_option("--graph", f.graph, "metric graph JSON file");
    a->add_option("--lambda", f.lambda, "orbit family lambda");
    a->add_option("--B", f.B, "orbit family B as a,b,c,d");
    a->add_option("--k-max", f.k_max, "orbit family k_max");
    a->add_option("--seed", f.seed, "experiment seed");
    a->add_option("--output-dir", f.output_dir, "output directory (default $VOLENT_OUTPUT_DIR or .)");
    a->add_option("--config", f.config, "JSON experiment config; its keys override flags");
}

ExperimentConfig build_config(const Flags& f) {
    ExperimentConfig c;
    if (const char* env = std::getenv("VOLENT_OUTPUT_DIR"); env && *env) c.output_dir = env;
    if (f.p) c.polygon.p = *f.p;
    if (f.m) c.polygon.m = *f.m;
    if (f.q) {
        c.polygon.q.clear();
        for (double x : parse_list(*f.q, "q")) {
            if (x != std::floor(x)) throw Error(ErrorCode::InvalidArgument, "--q: thickness must be an integer");
            c.polygon.q.push_back(static_cast<int>(x));
        }
    }
    if (f.nu) c.pressure.n_u = *f.nu;
    if (f.ntheta) c.pressure.n_theta = *f.ntheta;
    if (f.samples) c.pressure.samples = *f.samples;
    if (f.tol) c.pressure.tol = *f.tol;
    if (f.bracket) {
        auto v = parse_list(*f.bracket, "bracket");
        if (v.size() != 2) throw Error(ErrorCode::InvalidArgument, "--bracket expects lo,hi");
        c.pressure.bracket = std::pair{v[0], v[1]};
    }
    if (f.no_refine) c.pressure.refine = false;
    if (f.max_depth) c.growth.max_depth = *f.max_depth;
    if (f.window) {
        auto v = parse_list(*f.window, "window");
        if (v.size() != 2) throw Error(ErrorCode::InvalidArgument, "--window expects lo,hi");
        c.growth.window = {v[0], v[1]};
    }
    if (f.step) c.growth.step = *f.step;
    if (f.santalo_samples) c.santalo.samples = *f.santalo_samples;
    if (f.santalo_seed) c.santalo.seed = *f.santalo_seed;
    if (f.graph) c.graph = *f.graph;
    if (f.lambda || f.B || f.k_max) {
        ExperimentConfig::Orbits o;
        if (f.lambda) o.lambda = *f.lambda;
        if (f.B) {
            auto v = parse_list(*f.B, "B");
            if (v.size() != 4) throw Error(ErrorCode::InvalidArgument, "--B expects a,b,c,d");
            std::copy(v.begin(), v.end(), o.B.begin());
        }
        if (f.k_max) o.k_max = *f.k_max;
        c.orbits = o;
    }
    if (f.seed) c.seed = *f.seed;
    if (f.output_dir) c.output_dir = *f.output_dir;
    if (f.config) {
        auto before = c.graph;
        cli::apply_json_text(c, read_file(*f.config));
        // A relative graph path in a config file is relative to that file.
        if (c.graph && c.graph != before && fs::path(*c.graph).is_relative())
            c.graph = (fs::path(*f.config).parent_path() / *c.graph).lexically_normal().string();
    }
    cli::validate(c);
    return c;
}

int run(int argc, char** argv) {
    CLI::App app{"volent: volume entropy of hyperbolic buildings and metric graphs"};
    app.set_version_flag("--version", VOLENT_VERSION);
    app.require_subcommand(1);
    Flags f;

    auto* polygon = app.add_subcommand("polygon", "print polygon geometry");
    add_polygon_flags(polygon, f);
    std::string svg_path;
    int svg_depth = 3;
    polygon->add_option("--svg", svg_path, "write the tessellation to this SVG file");
    polygon->add_option("--svg-depth", svg_depth, "tessellation depth for --svg");

    auto* entropy = app.add_subcommand("entropy", "full experiment: report.json, curves.csv, convergence.svg");
    add_common_flags(entropy, f);
    auto* santalo = app.add_subcommand("santalo", "Santalo integral, closed form and Monte Carlo");
    add_common_flags(santalo, f);
    auto* pressure = app.add_subcommand("pressure", "entropy from the Ulam pressure");
    add_common_flags(pressure, f);
    std::string curve_path;
    pressure->add_option("--curve", curve_path, "write the pressure curve CSV here");
    auto* growth = app.add_subcommand("growth", "entropy from weighted ball growth");
    add_common_flags(growth, f);

    auto* graph = app.add_subcommand("graph", "entropy of a metric graph");
    std::string graph_path;
    double graph_tol = 1e-10;
    graph->add_option("file", graph_path, "graph JSON file")->required();
    graph->add_option("--tol", graph_tol, "bisection tolerance");

    auto* orbit = app.add_subcommand("orbits", "closed geodesic lengths of g_k = A^k B");
    add_common_flags(orbit, f);

    auto* report = app.add_subcommand("report", "render a report.json as a table");
    std::string report_path;
    report->add_option("file", report_path, "report.json (default: output dir)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (*polygon) {
        auto c = build_config(f);
        auto P = make_polygon(c);
        std::printf("p %d\nm %d\narea %.10g\nedge_length %.10g\ninradius %.10g\ncircumradius %.10g\n"
                    "diameter %.10g\nmin_wall_gap %.10g\n",
                    P.p, P.m, P.area, P.edge_length, P.inradius, P.circumradius, P.diameter, P.min_wall_gap);
        if (!svg_path.empty())
            write_file(svg_path, coxeter::tessellation_svg(P, coxeter::enumerate_chambers(P, svg_depth)));
        return 0;
    }
    if (*entropy) {
        auto c = build_config(f);
        int rc = 0;
        auto r = render_entropy(c, rc);
        print_table(r, std::cout);
        return rc;
    }
    if (*santalo) {
        auto c = build_config(f);
        auto P = make_polygon(c);
        json j = {{"polygon", polygon_json(P)},
                  {"santalo", santalo_json(measures::santalo_monte_carlo(P, c.santalo.samples, c.santalo_seed()))},
                  {"bounds", bounds_json(measures::lower_bound_2d(P), false)}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (*pressure) {
        auto c = build_config(f);
        auto out = run_pressure(make_polygon(c), c);
        if (!curve_path.empty()) write_file(curve_path, symbolic::pressure_curve_csv(out.curve));
        std::cout << json{{"seed", c.seed}, {"pressure", estimate_json(out.estimate)}}.dump(2) << "\n";
        return 0;
    }
    if (*growth) {
        auto c = build_config(f);
        std::cout << json{{"growth", growth_json(run_growth(make_polygon(c), c))}}.dump(2) << "\n";
        return 0;
    }
    if (*graph) {
        std::cout << json{{"graph", graph_section(graph_path, graph_tol)}}.dump(2) << "\n";
        return 0;
    }
    if (*orbit) {
        auto c = build_config(f);
        auto o = c.orbits.value_or(ExperimentConfig::Orbits{});
        std::cout << json{{"orbits", orbits_section(o, c.output_dir)}}.dump(2) << "\n";
        return 0;
    }
    if (*report) {
        std::string path = report_path;
        if (path.empty()) {
            const char* env = std::getenv("VOLENT_OUTPUT_DIR");
            path = (fs::path(env && *env ? env : ".") / "report.json").string();
        }
        json r;
        try {
            r = json::parse(read_file(path));
        } catch (const json::parse_error& e) {
            throw Error(ErrorCode::ParseError, e.what());
        }
        print_table(r, std::cout);
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "volent: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "volent: " << e.what() << "\n";
        return 2;
    }
}
