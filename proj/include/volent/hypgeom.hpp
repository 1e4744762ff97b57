#pragma once

#include <array>
#include <complex>
#include <vector>

namespace volent::hypgeom {

// Point of the upper half-plane.
class HPoint {
public:
    HPoint(double x, double y);
    double x() const { return x_; }
    double y() const { return y_; }
    std::complex<double> z() const { return {x_, y_}; }

private:
    double x_;
    double y_;
};

enum class Orientation { Preserving, Reversing };

// Element of PGL(2,R). det > 0 acts by z -> (az+b)/(cz+d), det < 0 acts
// by the same formula on conj(z). Stored scaled to |det| = 1.
class HIsometry {
public:
    using Matrix = std::array<double, 4>;  // a, b, c, d

    HIsometry();  // identity
    explicit HIsometry(const Matrix& m);

    const Matrix& matrix() const { return m_; }
    Orientation orientation() const { return orient_; }

    HPoint apply(const HPoint& z) const;
    HIsometry compose(const HIsometry& h) const;  // this ∘ h
    HIsometry inverse() const;

private:
    HIsometry(const Matrix& m, Orientation o) : m_(m), orient_(o) {}
    Matrix m_;
    Orientation orient_;
};

// Point of the boundary R ∪ {∞}.
class BoundaryPoint {
public:
    static BoundaryPoint real(double x) { return BoundaryPoint(false, x); }
    static BoundaryPoint infinity() { return BoundaryPoint(true, 0.0); }
    bool is_infinity() const { return inf_; }
    double value() const;  // throws for ∞

    bool operator==(const BoundaryPoint& o) const {
        return inf_ == o.inf_ && (inf_ || x_ == o.x_);
    }

private:
    BoundaryPoint(bool inf, double x) : inf_(inf), x_(x) {}
    bool inf_;
    double x_;
};

// Oriented geodesic from `from` to `to` with a marked basepoint.
// direction = +1 means the marked unit tangent points toward `to`.
class HGeodesic {
public:
    HGeodesic(BoundaryPoint from, BoundaryPoint to, HPoint base, int direction = 1);

    // Geodesic through z whose unit tangent makes Euclidean angle alpha
    // with the positive real axis.
    static HGeodesic through(const HPoint& z, double alpha);
    static HGeodesic between(const HPoint& a, const HPoint& b);

    const BoundaryPoint& from() const { return from_; }
    const BoundaryPoint& to() const { return to_; }
    const HPoint& base() const { return base_; }
    int direction() const { return dir_; }

    // Euclidean angle of the marked tangent at the basepoint.
    double angle() const;
    bool is_vertical() const { return from_.is_infinity() || to_.is_infinity(); }

private:
    BoundaryPoint from_;
    BoundaryPoint to_;
    HPoint base_;
    int dir_;
};

double dist(const HPoint& a, const HPoint& b);

// Reflection in the full geodesic carrying `edge`.
HIsometry reflect(const HGeodesic& edge);

// Hyperboloid model, used internally for exact-ish flow computations.
// <X,Y> = -X0 Y0 + X1 Y1 + X2 Y2; UHP point i maps to (1,0,0).
using Vec3 = std::array<double, 3>;

double mink(const Vec3& a, const Vec3& b);
Vec3 to_hyperboloid(const HPoint& z);
HPoint to_upper(const Vec3& x);
// Unit tangent at z with Euclidean angle alpha, as a hyperboloid vector.
Vec3 tangent_at(const HPoint& z, double alpha);
// Inverse of tangent_at: Euclidean angle of tangent v at point x.
double tangent_angle(const Vec3& x, const Vec3& v);
// Minkowski reflection in the wall with unit spacelike normal n.
Vec3 reflect_in(const Vec3& n, const Vec3& y);

struct PolygonEdge {
    HGeodesic line;  // oriented from vertex i to vertex i+1
    HPoint start;
    HPoint end;
    double length;
};

// Regular compact polygon with p edges and all interior angles π/m.
// Vertex i sits between edge i-1 and edge i; edge i runs from vertex i
// to vertex i+1.
struct CoxeterPolygon {
    int p = 0;
    int m = 0;
    std::vector<int> q;
    std::vector<HPoint> vertices;
    std::vector<PolygonEdge> edges;
    double area = 0;
    double edge_length = 0;
    double inradius = 0;
    double circumradius = 0;
    double diameter = 0;       // max distance between two vertices
    double min_wall_gap = 0;   // distance between the closest non-adjacent edges

    // Hyperboloid data aligned with the UHP data above.
    std::vector<Vec3> hvertices;
    std::vector<Vec3> normals;     // unit, pointing into the polygon
    std::vector<Vec3> edge_dirs;   // unit tangent of edge i at vertex i
    std::vector<HIsometry> reflections;

    HPoint center() const { return HPoint(0.0, 1.0); }
    bool contains(const Vec3& x, double slack = 0.0) const;
};

CoxeterPolygon regular_polygon(int p, int m, const std::vector<int>& q);

}  // namespace volent::hypgeom
