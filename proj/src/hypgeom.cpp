#include "volent/hypgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "volent/constants.hpp"
#include "volent/error.hpp"

namespace volent::hypgeom {

namespace {

using std::numbers::pi;

[[noreturn]] void invalid(const std::string& msg) {
    throw Error(ErrorCode::InvalidArgument, msg);
}

Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// Minkowski cross product: J (a x b) is orthogonal to a and b.
Vec3 mcross(const Vec3& a, const Vec3& b) {
    Vec3 c{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    return {-c[0], c[1], c[2]};
}

double hdist(const Vec3& a, const Vec3& b) {
    // 2 asinh(|a-b|_M / 2) is accurate for nearby points.
    Vec3 d = sub(a, b);
    double n2 = std::max(0.0, mink(d, d));
    return 2.0 * std::asinh(0.5 * std::sqrt(n2));
}

Vec3 along(const Vec3& x, const Vec3& e, double s) {
    return add(scale(x, std::cosh(s)), scale(e, std::sinh(s)));
}

// Minimum over s in [0, len] of a convex function.
template <class F>
double ternary_min(F&& f, double len) {
    double lo = 0, hi = len;
    for (int it = 0; it < 80; ++it) {
        double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
        if (f(a) < f(b)) hi = b; else lo = a;
    }
    return f(0.5 * (lo + hi));
}

}  // namespace

HPoint::HPoint(double x, double y) : x_(x), y_(y) {
    if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        std::ostringstream os;
        os << "HPoint requires y > 0, got (" << x << ", " << y << ")";
        invalid(os.str());
    }
}

HIsometry::HIsometry() : m_{1, 0, 0, 1}, orient_(Orientation::Preserving) {}

HIsometry::HIsometry(const Matrix& m) {
    double det = m[0] * m[3] - m[1] * m[2];
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) invalid("singular isometry matrix");
    double s = 1.0 / std::sqrt(std::abs(det));
    for (int i = 0; i < 4; ++i) m_[i] = m[i] * s;
    orient_ = det > 0 ? Orientation::Preserving : Orientation::Reversing;
}

HPoint HIsometry::apply(const HPoint& p) const {
    std::complex<double> z = p.z();
    if (orient_ == Orientation::Reversing) z = std::conj(z);
    auto w = (m_[0] * z + m_[1]) / (m_[2] * z + m_[3]);
    // Im w = |det| Im z / |cz+d|^2 computed directly keeps y positive.
    double denom = std::norm(m_[2] * z + m_[3]);
    return HPoint(w.real(), z.imag() * (orient_ == Orientation::Reversing ? -1.0 : 1.0) / denom);
}

HIsometry HIsometry::compose(const HIsometry& h) const {
    const auto& a = m_;
    const auto& b = h.m_;
    // Long products have entries too large for det to be recomputed
    // reliably; both factors have |det| = 1 already.
    Orientation o = orient_ == h.orient_ ? Orientation::Preserving : Orientation::Reversing;
    return HIsometry(Matrix{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]},
                     o);
}

HIsometry HIsometry::inverse() const {
    // The inverse of z -> M conj(z) is z -> M^-1 conj(z) as M is real.
    double det = orient_ == Orientation::Preserving ? 1.0 : -1.0;
    return HIsometry(Matrix{m_[3] * det, -m_[1] * det, -m_[2] * det, m_[0] * det}, orient_);
}

double BoundaryPoint::value() const {
    if (inf_) invalid("boundary point at infinity has no real value");
    return x_;
}

HGeodesic::HGeodesic(BoundaryPoint from, BoundaryPoint to, HPoint base, int direction)
    : from_(from), to_(to), base_(base), dir_(direction >= 0 ? 1 : -1) {
    if (from_ == to_) invalid("geodesic endpoints must be distinct");
    double x = base_.x(), y = base_.y();
    double miss;
    if (from_.is_infinity() || to_.is_infinity()) {
        double a = from_.is_infinity() ? to_.value() : from_.value();
        miss = std::abs(x - a) / y;
    } else {
        double c = 0.5 * (from_.value() + to_.value());
        double r = 0.5 * std::abs(to_.value() - from_.value());
        miss = std::abs(std::hypot(x - c, y) - r) / y;
    }
    if (miss > tol::predicate) {
        std::ostringstream os;
        os << "basepoint is off the geodesic by " << miss;
        invalid(os.str());
    }
}

HGeodesic HGeodesic::through(const HPoint& z, double alpha) {
    double ca = std::cos(alpha), sa = std::sin(alpha);
    if (std::abs(ca) < 1e-15) {
        auto foot = BoundaryPoint::real(z.x());
        return sa > 0 ? HGeodesic(foot, BoundaryPoint::infinity(), z)
                      : HGeodesic(BoundaryPoint::infinity(), foot, z);
    }
    double c = z.x() + z.y() * sa / ca;
    double r = z.y() / std::abs(ca);
    auto lo = BoundaryPoint::real(c - r), hi = BoundaryPoint::real(c + r);
    return ca > 0 ? HGeodesic(lo, hi, z) : HGeodesic(hi, lo, z);
}

HGeodesic HGeodesic::between(const HPoint& a, const HPoint& b) {
    double dx = b.x() - a.x();
    double scale_ = std::max({1.0, std::abs(a.x()), std::abs(b.x())});
    if (std::abs(dx) <= 1e-14 * scale_) {
        auto foot = BoundaryPoint::real(0.5 * (a.x() + b.x()));
        return b.y() > a.y() ? HGeodesic(foot, BoundaryPoint::infinity(), a)
                             : HGeodesic(BoundaryPoint::infinity(), foot, a);
    }
    double c = (std::norm(b.z()) - std::norm(a.z())) / (2.0 * dx);
    double r = std::hypot(a.x() - c, a.y());
    auto lo = BoundaryPoint::real(c - r), hi = BoundaryPoint::real(c + r);
    return dx > 0 ? HGeodesic(lo, hi, a) : HGeodesic(hi, lo, a);
}

double HGeodesic::angle() const {
    double x = base_.x(), y = base_.y();
    double alpha;
    if (to_.is_infinity()) {
        alpha = pi / 2;
    } else if (from_.is_infinity()) {
        alpha = -pi / 2;
    } else {
        double c = 0.5 * (from_.value() + to_.value());
        double s = to_.value() > from_.value() ? 1.0 : -1.0;
        alpha = std::atan2(-(x - c) * s, y * s);
    }
    return dir_ > 0 ? alpha : alpha + pi;
}

double dist(const HPoint& a, const HPoint& b) {
    double d = std::abs(a.z() - b.z());
    return 2.0 * std::asinh(d / (2.0 * std::sqrt(a.y() * b.y())));
}

HIsometry reflect(const HGeodesic& edge) {
    if (edge.is_vertical()) {
        double a = edge.from().is_infinity() ? edge.to().value() : edge.from().value();
        return HIsometry({-1.0, 2.0 * a, 0.0, 1.0});
    }
    double c = 0.5 * (edge.from().value() + edge.to().value());
    double r = 0.5 * std::abs(edge.to().value() - edge.from().value());
    return HIsometry({c / r, (r * r - c * c) / r, 1.0 / r, -c / r});
}

double mink(const Vec3& a, const Vec3& b) {
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 to_hyperboloid(const HPoint& z) {
    double x = z.x(), y = z.y();
    double r2 = x * x + y * y;
    return {(r2 + 1.0) / (2.0 * y), (r2 - 1.0) / (2.0 * y), x / y};
}

HPoint to_upper(const Vec3& X) {
    // X0 - X1 = 1/y; use X0 + X1 = (x^2+y^2)/y to avoid cancellation
    // when X1 is close to X0.
    double s = X[0] + X[1];
    double dmin = X[0] - X[1];
    double y;
    if (X[1] > 0) {
        // 1/y = X0 - X1 = (1 + X2^2) / (X0 + X1), since -X0^2+X1^2+X2^2 = -1.
        y = s / (1.0 + X[2] * X[2]);
    } else {
        y = 1.0 / dmin;
    }
    return HPoint(X[2] * y, y);
}

Vec3 tangent_at(const HPoint& z, double alpha) {
    double x = z.x(), y = z.y();
    Vec3 ex{x / y, x / y, 1.0 / y};
    Vec3 ey{(y * y - x * x - 1.0) / (2.0 * y * y), (y * y - x * x + 1.0) / (2.0 * y * y), -x / (y * y)};
    return add(scale(ex, y * std::cos(alpha)), scale(ey, y * std::sin(alpha)));
}

double tangent_angle(const Vec3& X, const Vec3& v) {
    HPoint z = to_upper(X);
    double x = z.x(), y = z.y();
    Vec3 ex{x / y, x / y, 1.0 / y};
    Vec3 ey{(y * y - x * x - 1.0) / (2.0 * y * y), (y * y - x * x + 1.0) / (2.0 * y * y), -x / (y * y)};
    return std::atan2(y * mink(v, ey), y * mink(v, ex));
}

Vec3 reflect_in(const Vec3& n, const Vec3& y) {
    return sub(y, scale(n, 2.0 * mink(n, y)));
}

bool CoxeterPolygon::contains(const Vec3& x, double slack) const {
    for (const auto& n : normals)
        if (mink(n, x) < -slack) return false;
    return true;
}

CoxeterPolygon regular_polygon(int p, int m, const std::vector<int>& q) {
    if (p < 3 || m < 2) invalid("regular_polygon requires p >= 3 and m >= 2");
    if (!(m * (p - 2) > p)) {
        std::ostringstream os;
        os << "polygon (p=" << p << ", m=" << m << ") is not hyperbolic: m(p-2) <= p";
        throw Error(ErrorCode::NonHyperbolic, os.str());
    }
    if (static_cast<int>(q.size()) != p) {
        std::ostringstream os;
        os << "expected " << p << " thickness values, got " << q.size();
        throw Error(ErrorCode::BadThickness, os.str());
    }
    for (int qi : q)
        if (qi < 1) throw Error(ErrorCode::BadThickness, "thickness parameters must be >= 1");

    CoxeterPolygon P;
    P.p = p;
    P.m = m;
    P.q = q;

    const double half_angle = pi / (2.0 * m);
    const double central = pi / p;
    const double cosh_R = 1.0 / (std::tan(central) * std::tan(half_angle));
    P.circumradius = std::acosh(cosh_R);
    P.inradius = std::acosh(std::cos(half_angle) / std::sin(central));
    const double formula_edge = 2.0 * std::acosh(std::cos(central) / std::sin(half_angle));
    P.area = (p - 2) * pi - p * pi / m;

    const double sR = std::sinh(P.circumradius);
    for (int i = 0; i < p; ++i) {
        double beta = 2.0 * pi * i / p - central;
        // X1 is "up" in the half-plane, X2 is "right".
        P.hvertices.push_back({cosh_R, sR * std::cos(beta), sR * std::sin(beta)});
    }
    const Vec3 O{1.0, 0.0, 0.0};
    for (int i = 0; i < p; ++i) {
        const Vec3& a = P.hvertices[i];
        const Vec3& b = P.hvertices[(i + 1) % p];
        Vec3 n = mcross(a, b);
        n = scale(n, 1.0 / std::sqrt(mink(n, n)));
        if (mink(n, O) < 0) n = scale(n, -1.0);
        P.normals.push_back(n);
        double ell = hdist(a, b);
        // b = a cosh l + e sinh l
        Vec3 e = scale(sub(b, scale(a, std::cosh(ell))), 1.0 / std::sinh(ell));
        P.edge_dirs.push_back(e);
    }

    for (int i = 0; i < p; ++i) P.vertices.push_back(to_upper(P.hvertices[i]));
    double len_sum = 0;
    for (int i = 0; i < p; ++i) {
        const HPoint& a = P.vertices[i];
        const HPoint& b = P.vertices[(i + 1) % p];
        double ell = dist(a, b);
        len_sum += ell;
        P.edges.push_back(PolygonEdge{HGeodesic::between(a, b), a, b, ell});
    }
    P.edge_length = len_sum / p;

    std::ostringstream fail;
    for (int i = 0; i < p; ++i) {
        if (std::abs(P.edges[i].length - formula_edge) > tol::construction)
            fail << "edge " << i << " length " << P.edges[i].length << " != " << formula_edge << "; ";
        double interior = std::acos(std::clamp(-mink(P.normals[(i + p - 1) % p], P.normals[i]), -1.0, 1.0));
        if (std::abs(interior - pi / m) > tol::construction)
            fail << "angle at vertex " << i << " is " << interior << "; ";
        if (std::abs(mink(P.normals[i], O) - std::sinh(P.inradius)) > tol::construction)
            fail << "edge " << i << " is not at the in-radius; ";
    }
    if (!fail.str().empty()) throw Error(ErrorCode::InvalidArgument, "polygon construction check failed: " + fail.str());

    for (int i = 0; i < p; ++i) P.reflections.push_back(reflect(P.edges[i].line));

    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) P.diameter = std::max(P.diameter, hdist(P.hvertices[i], P.hvertices[j]));

    P.min_wall_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < p; ++i) {
        for (int j = i + 2; j < p; ++j) {
            if (i == 0 && j == p - 1) continue;  // adjacent through vertex 0
            auto inner = [&](double s) {
                Vec3 x = along(P.hvertices[i], P.edge_dirs[i], s);
                return ternary_min([&](double t) { return hdist(x, along(P.hvertices[j], P.edge_dirs[j], t)); },
                                   formula_edge);
            };
            P.min_wall_gap = std::min(P.min_wall_gap, ternary_min(inner, formula_edge));
        }
    }
    return P;
}

}  // namespace volent::hypgeom
