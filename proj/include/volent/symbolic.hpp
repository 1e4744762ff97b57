#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "volent/estimate.hpp"
#include "volent/flow.hpp"
#include "volent/hypgeom.hpp"

namespace volent::symbolic {

using hypgeom::CoxeterPolygon;

struct WallCrossing {
    double t;
    int edge_label;
    int thickness_q;
    double u;
    double theta;
};

struct CuttingSequence {
    std::vector<WallCrossing> crossings;
    hypgeom::HGeodesic geodesic;
    // Chamber of the tessellation entered at each crossing.
    std::vector<hypgeom::HIsometry> entered;
};

// Unit tangent vector given by a base point and the Euclidean angle of
// the velocity in the half-plane.
struct TangentVector {
    hypgeom::HPoint base;
    double angle;
};

// Time 0 is the geodesic's basepoint, positive times follow its marked
// direction.
CuttingSequence cutting_sequence(const hypgeom::HGeodesic& geodesic, std::pair<double, double> t_span,
                                 const CoxeterPolygon& poly);
CuttingSequence cutting_sequence(const TangentVector& v, std::pair<double, double> t_span,
                                 const CoxeterPolygon& poly);

double f_value(const TangentVector& v, const CoxeterPolygon& poly);

struct LQ {
    double l;
    int q;
};
LQ lq_value(const TangentVector& v, const CoxeterPolygon& poly);
LQ lq_value(const flow::Frame& v, const CoxeterPolygon& poly);

// Exact integral of t -> f(φ_t v) over [a, b]. The sequence must cover
// [a - 1, b + 1].
double integrate_f(const CuttingSequence& cs, double a, double b);
// Exact integral of t -> (ln q / l)(φ_t v) over [a, b]. The sequence must
// contain a crossing at or before a and one after b.
double integrate_lq(const CuttingSequence& cs, double a, double b);
// Sum of ln q over crossings with t in [a, b].
double log_thickness_product(const CuttingSequence& cs, double a, double b);

struct UlamState {
    int edge;
    int iu;
    int itheta;
};

struct UlamTransition {
    std::size_t target;
    double mass;
    double mean_L;
    int q_weight;
};

struct UlamGrid {
    int n_u = 32;
    int n_theta = 32;
    int k = 3;
};

struct UlamModel {
    static constexpr int format_version = 1;
    int p = 0, m = 0;
    std::vector<int> q;
    UlamGrid grid;
    std::uint64_t seed = 0;
    bool reversed = false;
    std::vector<UlamState> states;
    std::vector<std::size_t> row_start;  // CSR over states
    std::vector<UlamTransition> transitions;
    std::size_t resampled = 0;
    std::size_t discarded = 0;
    std::size_t dropped_cells = 0;
    double diameter = 0;
};

// With reversed = true every sample is flowed backwards in time, which
// discretizes the inverse return map.
UlamModel build_cross_section(const CoxeterPolygon& poly, UlamGrid grid, std::uint64_t seed, bool reversed = false);

// ln of the spectral radius of B(h)_ij = mass_ij q_j exp((1 - h) L_ij).
// The (1 - h) rather than -h accounts for the unstable Jacobian e^{L}
// that the cell masses of a smooth reference measure carry; q ≡ 1 gives
// a stochastic matrix at h = 1.
double pressure_log_radius(const UlamModel& model, double h);

struct SolveOptions {
    std::optional<std::pair<double, double>> bracket;
    double tol = 1e-4;
    bool refine = true;  // re-solve at twice the grid for the error term
};

EntropyEstimate solve_entropy(const UlamModel& model, const SolveOptions& opts = {});

std::vector<std::pair<double, double>> pressure_curve(const UlamModel& model, const std::vector<double>& hs);
std::string pressure_curve_csv(const std::vector<std::pair<double, double>>& curve);

std::string to_json(const UlamModel& model);
UlamModel model_from_json(const std::string& text);

}  // namespace volent::symbolic
