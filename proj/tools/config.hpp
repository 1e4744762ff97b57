#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace volent::cli {

struct ExperimentConfig {
    struct Polygon {
        int p = 5;
        int m = 2;
        std::vector<int> q;  // empty means all 1
    } polygon;
    struct Pressure {
        int n_u = 32;
        int n_theta = 32;
        int samples = 3;  // K, per axis per cell
        double tol = 1e-4;
        std::optional<std::pair<double, double>> bracket;
        bool refine = true;
    } pressure;
    struct Growth {
        int max_depth = 14;
        std::pair<double, double> window{4.0, 8.0};
        double step = 0.25;
    } growth;
    struct Santalo {
        std::uint64_t samples = 1'000'000;
        std::optional<std::uint64_t> seed;  // defaults to the top-level seed
    } santalo;
    std::optional<std::string> graph;
    struct Orbits {
        double lambda = 2.0;
        std::array<double, 4> B{1, 1, 1, 2};
        int k_max = 30;
    };
    std::optional<Orbits> orbits;
    std::uint64_t seed = 12345;
    std::string output_dir = ".";

    std::vector<int> thickness() const;
    std::uint64_t santalo_seed() const { return santalo.seed.value_or(seed); }
};

// Overlay the keys present in `j` onto `cfg`. Throws Error(InvalidArgument)
// naming the full key path for unknown keys or ill-typed values.
void apply_json(ExperimentConfig& cfg, const nlohmann::json& j);
// Parse text and overlay. ParseError carries line and column.
void apply_json_text(ExperimentConfig& cfg, const std::string& text);

// Fully populated echo of the configuration.
nlohmann::json to_json(const ExperimentConfig& cfg);

void validate(const ExperimentConfig& cfg);

}  // namespace volent::cli
