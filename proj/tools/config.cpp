#include "config.hpp"

#include <set>

#include "volent/error.hpp"

namespace volent::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::InvalidArgument, "config key '" + path + "': " + what);
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    if (!j.is_object()) bad(path.empty() ? "<root>" : path, "expected an object");
    for (const auto& [k, v] : j.items()) {
        if (!allowed.count(k)) bad(path.empty() ? k : path + "." + k, "unknown key");
    }
}

std::string join(const std::string& path, const std::string& k) { return path.empty() ? k : path + "." + k; }

int get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) bad(path, "expected an integer");
    return j.get<int>();
}

std::uint64_t get_u64(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        bad(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

double get_double(const json& j, const std::string& path) {
    if (!j.is_number()) bad(path, "expected a number");
    return j.get<double>();
}

std::pair<double, double> get_pair(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) bad(path, "expected [lo, hi]");
    return {get_double(j[0], path + "[0]"), get_double(j[1], path + "[1]")};
}

}  // namespace

std::vector<int> ExperimentConfig::thickness() const {
    if (polygon.q.empty()) return std::vector<int>(polygon.p > 0 ? polygon.p : 0, 1);
    if (polygon.q.size() == 1) return std::vector<int>(polygon.p > 0 ? polygon.p : 0, polygon.q[0]);
    return polygon.q;
}

void apply_json(ExperimentConfig& cfg, const json& j) {
    check_keys(j, "", {"polygon", "pressure", "growth", "santalo", "graph", "orbits", "seed", "output_dir"});
    if (j.contains("polygon")) {
        const auto& s = j["polygon"];
        check_keys(s, "polygon", {"p", "m", "q"});
        if (s.contains("p")) cfg.polygon.p = get_int(s["p"], "polygon.p");
        if (s.contains("m")) cfg.polygon.m = get_int(s["m"], "polygon.m");
        if (s.contains("q")) {
            const auto& q = s["q"];
            cfg.polygon.q.clear();
            if (q.is_number_integer()) {
                cfg.polygon.q.push_back(q.get<int>());
            } else if (q.is_array()) {
                for (std::size_t i = 0; i < q.size(); ++i)
                    cfg.polygon.q.push_back(get_int(q[i], "polygon.q[" + std::to_string(i) + "]"));
            } else {
                bad("polygon.q", "expected an integer or a list of integers");
            }
        }
    }
    if (j.contains("pressure")) {
        const auto& s = j["pressure"];
        check_keys(s, "pressure", {"grid", "samples", "tol", "bracket", "refine"});
        if (s.contains("grid")) {
            const auto& g = s["grid"];
            if (g.is_number_integer()) {
                cfg.pressure.n_u = cfg.pressure.n_theta = g.get<int>();
            } else if (g.is_array() && g.size() == 2) {
                cfg.pressure.n_u = get_int(g[0], "pressure.grid[0]");
                cfg.pressure.n_theta = get_int(g[1], "pressure.grid[1]");
            } else {
                bad("pressure.grid", "expected N or [N_u, N_theta]");
            }
        }
        if (s.contains("samples")) cfg.pressure.samples = get_int(s["samples"], "pressure.samples");
        if (s.contains("tol")) cfg.pressure.tol = get_double(s["tol"], "pressure.tol");
        if (s.contains("bracket")) {
            if (s["bracket"].is_null())
                cfg.pressure.bracket.reset();
            else
                cfg.pressure.bracket = get_pair(s["bracket"], "pressure.bracket");
        }
        if (s.contains("refine")) {
            if (!s["refine"].is_boolean()) bad("pressure.refine", "expected a boolean");
            cfg.pressure.refine = s["refine"].get<bool>();
        }
    }
    if (j.contains("growth")) {
        const auto& s = j["growth"];
        check_keys(s, "growth", {"max_depth", "window", "step"});
        if (s.contains("max_depth")) cfg.growth.max_depth = get_int(s["max_depth"], "growth.max_depth");
        if (s.contains("window")) cfg.growth.window = get_pair(s["window"], "growth.window");
        if (s.contains("step")) cfg.growth.step = get_double(s["step"], "growth.step");
    }
    if (j.contains("santalo")) {
        const auto& s = j["santalo"];
        check_keys(s, "santalo", {"samples", "seed"});
        if (s.contains("samples")) cfg.santalo.samples = get_u64(s["samples"], "santalo.samples");
        if (s.contains("seed")) cfg.santalo.seed = get_u64(s["seed"], "santalo.seed");
    }
    if (j.contains("graph")) {
        if (j["graph"].is_null())
            cfg.graph.reset();
        else if (j["graph"].is_string())
            cfg.graph = j["graph"].get<std::string>();
        else
            bad("graph", "expected a file path");
    }
    if (j.contains("orbits")) {
        const auto& s = j["orbits"];
        if (s.is_null()) {
            cfg.orbits.reset();
        } else {
            check_keys(s, "orbits", {"lambda", "B", "k_max"});
            ExperimentConfig::Orbits o = cfg.orbits.value_or(ExperimentConfig::Orbits{});
            if (s.contains("lambda")) o.lambda = get_double(s["lambda"], "orbits.lambda");
            if (s.contains("B")) {
                const auto& b = s["B"];
                if (b.is_array() && b.size() == 2 && b[0].is_array() && b[1].is_array() && b[0].size() == 2 &&
                    b[1].size() == 2) {
                    for (int r = 0; r < 2; ++r)
                        for (int c = 0; c < 2; ++c)
                            o.B[2 * r + c] = get_double(b[r][c], "orbits.B[" + std::to_string(r) + "][" +
                                                                     std::to_string(c) + "]");
                } else if (b.is_array() && b.size() == 4) {
                    for (int i = 0; i < 4; ++i) o.B[i] = get_double(b[i], "orbits.B[" + std::to_string(i) + "]");
                } else {
                    bad("orbits.B", "expected [[a, b], [c, d]] or [a, b, c, d]");
                }
            }
            if (s.contains("k_max")) o.k_max = get_int(s["k_max"], "orbits.k_max");
            cfg.orbits = o;
        }
    }
    if (j.contains("seed")) cfg.seed = get_u64(j["seed"], "seed");
    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) bad("output_dir", "expected a path");
        cfg.output_dir = j["output_dir"].get<std::string>();
    }
}

void apply_json_text(ExperimentConfig& cfg, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    apply_json(cfg, j);
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["polygon"] = {{"p", c.polygon.p}, {"m", c.polygon.m}, {"q", c.thickness()}};
    j["pressure"] = {{"grid", {c.pressure.n_u, c.pressure.n_theta}},
                     {"samples", c.pressure.samples},
                     {"tol", c.pressure.tol},
                     {"bracket", c.pressure.bracket ? json{c.pressure.bracket->first, c.pressure.bracket->second}
                                                    : json(nullptr)},
                     {"refine", c.pressure.refine}};
    j["growth"] = {{"max_depth", c.growth.max_depth},
                   {"window", {c.growth.window.first, c.growth.window.second}},
                   {"step", c.growth.step}};
    j["santalo"] = {{"samples", c.santalo.samples}, {"seed", c.santalo_seed()}};
    j["graph"] = c.graph ? json(*c.graph) : json(nullptr);
    if (c.orbits)
        j["orbits"] = {{"lambda", c.orbits->lambda},
                       {"B", {{c.orbits->B[0], c.orbits->B[1]}, {c.orbits->B[2], c.orbits->B[3]}}},
                       {"k_max", c.orbits->k_max}};
    else
        j["orbits"] = nullptr;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    return j;
}

void validate(const ExperimentConfig& c) {
    auto q = c.thickness();
    if (c.polygon.q.size() > 1 && static_cast<int>(c.polygon.q.size()) != c.polygon.p)
        bad("polygon.q", "needs one entry per edge (" + std::to_string(c.polygon.p) + ")");
    if (c.pressure.n_u < 4 || c.pressure.n_theta < 4) bad("pressure.grid", "entries must be >= 4");
    if (c.pressure.samples < 1) bad("pressure.samples", "must be >= 1");
    if (!(c.pressure.tol > 0)) bad("pressure.tol", "must be positive");
    if (c.pressure.bracket && !(c.pressure.bracket->first < c.pressure.bracket->second))
        bad("pressure.bracket", "needs lo < hi");
    if (c.growth.max_depth < 1) bad("growth.max_depth", "must be >= 1");
    if (!(c.growth.window.first >= 0 && c.growth.window.first < c.growth.window.second))
        bad("growth.window", "needs 0 <= lo < hi");
    if (!(c.growth.step > 0)) bad("growth.step", "must be positive");
    if (c.santalo.samples < 10000) bad("santalo.samples", "must be >= 10000");
    if (c.orbits && c.orbits->k_max < 2) bad("orbits.k_max", "must be >= 2");
}

}  // namespace volent::cli
