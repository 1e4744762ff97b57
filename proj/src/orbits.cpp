#include "volent/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "volent/error.hpp"
#include "volent/svg.hpp"

namespace volent::orbits {

namespace {

Mat2 mul(const Mat2& x, const Mat2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}

}  // namespace

OrbitFamily geodesic_lengths(double lambda, const Mat2& B, int k_max) {
    if (!(lambda > 1)) throw Error(ErrorCode::InvalidArgument, "lambda must exceed 1");
    if (k_max < 0) throw Error(ErrorCode::InvalidArgument, "k_max must be >= 0");
    const double det = B[0] * B[3] - B[1] * B[2];
    if (std::abs(det - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "det B = " << det << ", expected 1";
        throw Error(ErrorCode::InvalidArgument, os.str());
    }
    OrbitFamily fam;
    fam.lambda = lambda;
    fam.B = B;
    fam.k_min = 0;
    fam.k_max = k_max;
    const double top = B[0] * B[0] + B[1] * B[1];     // first row of B
    const double bottom = B[2] * B[2] + B[3] * B[3];  // second row of B
    fam.degenerate = std::abs(top * bottom - 1.0) <= 1e-12;
    fam.asymptote_intercept = std::log(top);

    Mat2 Ak{1, 0, 0, 1};
    const Mat2 A{lambda, 0, 0, 1.0 / lambda};
    for (int k = 0; k <= k_max; ++k) {
        Mat2 g = mul(Ak, B);
        double tr = g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3];
        if (tr / 2 < 1.0 - 1e-12) {
            std::ostringstream os;
            os << "g_" << k << " is not hyperbolic: tr/2 = " << tr / 2;
            throw Error(ErrorCode::NotHyperbolic, os.str());
        }
        double len = std::acosh(std::max(1.0, tr / 2));
        // (A^k B)(A^k B)^t has diagonal λ^{2k}(a²+b²) and λ^{-2k}(c²+d²).
        double l2k = std::pow(lambda, 2.0 * k);
        double closed = std::acosh(std::max(1.0, (l2k * top + bottom / l2k) / 2));

        // With X = μ A + B'/μ, μ = λ^{2k}: arccosh(X/2) = ln(μ A) + ln(1+s) + ln((1+sqrt(1-e))/2)
        // where s = B'/(A μ²) and e = 4/X².
        double mu = l2k;
        double s = bottom / (top * mu * mu);
        double X = mu * top * (1 + s);
        double e = 4.0 / (X * X);
        double dev = std::log1p(s) + std::log1p(-e / (2.0 * (1.0 + std::sqrt(std::max(0.0, 1.0 - e)))));
        fam.rows.push_back(OrbitRow{k, tr, len, closed, dev});
        Ak = mul(Ak, A);
    }
    int k0 = fam.k_max;
    for (int k = fam.k_max; k > 0; --k) {
        if (fam.rows[k].length > fam.rows[k - 1].length) k0 = k - 1;
        else break;
    }
    fam.monotone_from = k0;
    return fam;
}

AffineDeviation affine_deviation(const std::vector<double>& l) {
    if (l.size() < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 lengths");
    AffineDeviation out;
    for (std::size_t k = 1; k + 1 < l.size(); ++k) {
        double d = l[k + 1] - 2 * l[k] + l[k - 1];
        out.second_differences.push_back(d);
        out.max_abs = std::max(out.max_abs, std::abs(d));
    }
    return out;
}

AffineDeviation affine_deviation(const OrbitFamily& family) {
    // The asymptote is affine in k, so Δ²l = Δ²(deviation) exactly; this
    // avoids losing digits when l is large.
    std::vector<double> dev;
    for (const auto& r : family.rows) dev.push_back(r.deviation);
    return affine_deviation(dev);
}

std::string orbits_csv(const OrbitFamily& family) {
    auto ad = affine_deviation(family);
    std::ostringstream os;
    os.precision(17);
    os << "k,trace,length,length_formula,deviation,second_difference\n";
    for (std::size_t i = 0; i < family.rows.size(); ++i) {
        const auto& r = family.rows[i];
        os << r.k << ',' << r.trace << ',' << r.length << ',' << r.length_formula << ',' << r.deviation << ',';
        if (i >= 1 && i + 1 < family.rows.size()) os << ad.second_differences[i - 1];
        os << '\n';
    }
    return os.str();
}

std::string orbits_svg(const OrbitFamily& family) {
    svg::Series len{"l(g_k)", {}, "#1f4e79", false};
    svg::Series asym{"2k ln λ + ln(a²+b²)", {}, "#c0392b", true};
    for (const auto& r : family.rows) {
        len.points.emplace_back(r.k, r.length);
        asym.points.emplace_back(r.k, 2.0 * r.k * std::log(family.lambda) + family.asymptote_intercept);
    }
    return svg::line_chart("Closed geodesics g_k = A^k B", "k", "length", {len, asym});
}

}  // namespace volent::orbits
