#pragma once

#include <array>
#include <string>
#include <vector>

namespace volent::orbits {

using Mat2 = std::array<double, 4>;  // a, b, c, d

struct OrbitRow {
    int k;
    double trace;           // tr (A^k B)(A^k B)^t from the matrix product
    double length;          // arccosh(trace / 2)
    double length_formula;  // closed form in λ and the entries of B
    // length - (2k ln λ + ln(a² + b²)), evaluated without cancellation
    double deviation;
};

struct OrbitFamily {
    double lambda = 2;
    Mat2 B{1, 0, 0, 1};
    int k_min = 0, k_max = 0;
    std::vector<OrbitRow> rows;
    bool degenerate = false;  // (a²+b²)(c²+d²) = 1
    int monotone_from = 0;    // first k after which lengths strictly increase
    double asymptote_intercept = 0;  // ln(a² + b²)
};

// A = diag(λ, 1/λ), g_k = A^k B for k = 0..k_max.
OrbitFamily geodesic_lengths(double lambda, const Mat2& B, int k_max);

struct AffineDeviation {
    std::vector<double> second_differences;  // Δ²l(k) for k = k_min+1 .. k_max-1
    double max_abs = 0;
};

AffineDeviation affine_deviation(const OrbitFamily& family);
AffineDeviation affine_deviation(const std::vector<double>& lengths);

std::string orbits_csv(const OrbitFamily& family);
std::string orbits_svg(const OrbitFamily& family);

}  // namespace volent::orbits
