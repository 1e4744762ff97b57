#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "volent/estimate.hpp"
#include "volent/hypgeom.hpp"

namespace volent::coxeter {

struct Chamber {
    hypgeom::HIsometry g;
    std::vector<std::uint8_t> word;  // generator indices, g = s_{w0} s_{w1} ...
    hypgeom::HPoint center;
    int depth;
};

struct EnumerateOptions {
    std::size_t cap = 5'000'000;
    // Chambers whose center lies farther than this from the base center
    // are not expanded. Depths of the kept chambers stay exact as long as
    // the radius exceeds the region of interest by diameter + circumradius.
    double prune_radius = std::numeric_limits<double>::infinity();
};

std::vector<Chamber> enumerate_chambers(const hypgeom::CoxeterPolygon& poly, int max_depth,
                                        const EnumerateOptions& opts = {});

double retraction_multiplicity(const Chamber& chamber, const hypgeom::CoxeterPolygon& poly);

struct GrowthRow {
    double radius;
    double weighted_volume;
    std::size_t chamber_count;
};

struct GrowthTable {
    std::vector<GrowthRow> rows;
    double polygon_diameter = 0;
    double polygon_area = 0;
    double frontier_distance = 0;  // min center distance among depth == max_depth chambers
    int max_depth = 0;
};

GrowthTable weighted_ball_growth(const hypgeom::CoxeterPolygon& poly, const std::vector<double>& radii,
                                 int max_depth, std::size_t cap = 5'000'000);

EntropyEstimate growth_slope(const GrowthTable& table, std::pair<double, double> window);

// Tessellation drawn in the Poincaré disk.
std::string tessellation_svg(const hypgeom::CoxeterPolygon& poly, const std::vector<Chamber>& chambers,
                             int size_px = 800);

}  // namespace volent::coxeter
