#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "volent/estimate.hpp"
#include "volent/hypgeom.hpp"

namespace volent::measures {

using hypgeom::CoxeterPolygon;

struct SantaloResult {
    double closed_form = 0;
    double monte_carlo = 0;
    double mc_stderr = 0;
    double c_constant_used = 0;  // NaN when every q_i = 1
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t resampled = 0;  // vertex hits and rejected draws are not counted here
};

// 2 Σ ln(q_i) ℓ_i
double santalo_closed_form(const CoxeterPolygon& poly);

// Base point uniform in P, direction uniform; mean of ln q / l times the
// Liouville mass 2π area. Chunks use independent substreams so the result
// does not depend on the thread count.
SantaloResult santalo_monte_carlo(const CoxeterPolygon& poly, std::uint64_t samples, std::uint64_t seed);

enum class Verdict { Pass, Equality, Fail };
std::string_view to_string(Verdict v);

struct BoundReport {
    double paper_literal_bound = 0;
    double derived_constant_bound = 0;
    std::vector<EntropyEstimate> entropy_estimates;
    double strictness_margin = 0;
    Verdict verdict = Verdict::Equality;
};

BoundReport lower_bound_2d(const CoxeterPolygon& poly);

struct Face {
    double volume;
    int q;
};

// (n - 1 if hyperbolic) + Σ ln(q) vol_F / vol_P
double lower_bound_plugin(int n, double vol_P, const std::vector<Face>& faces, bool euclidean);

// Same with the variational constant Vol(B^{n-1}) / Vol(S^{n-1}) in front of the sum.
double derived_constant(int n);
double lower_bound_plugin_derived(int n, double vol_P, const std::vector<Face>& faces, bool euclidean);

// strictness_margin = max over estimates of value - err - derived bound.
// FAIL: some estimate lies below the bound by more than its err.
// PASS: otherwise, when the margin is positive (the tightest estimate
// separates from the bound).
// EQUALITY: otherwise.
BoundReport strictness_report(const CoxeterPolygon& poly, const std::vector<EntropyEstimate>& estimates);

}  // namespace volent::measures
