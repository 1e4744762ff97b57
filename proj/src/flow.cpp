#include "volent/flow.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "volent/constants.hpp"
#include "volent/error.hpp"

namespace volent::flow {

using hypgeom::mink;

namespace {

Vec3 lin(const Vec3& a, double s, const Vec3& b, double t) {
    return {a[0] * s + b[0] * t, a[1] * s + b[1] * t, a[2] * s + b[2] * t};
}

// Re-project onto the hyperboloid and its tangent space.
Frame normalize(Frame f) {
    double n = std::sqrt(-mink(f.x, f.x));
    for (auto& c : f.x) c /= n;
    f.v = lin(f.v, 1.0, f.x, mink(f.v, f.x));
    double w = std::sqrt(mink(f.v, f.v));
    for (auto& c : f.v) c /= w;
    return f;
}

}  // namespace

Frame from_upper(const hypgeom::HPoint& z, double alpha) {
    return normalize(Frame{hypgeom::to_hyperboloid(z), hypgeom::tangent_at(z, alpha)});
}

Frame geodesic_at(const Frame& f, double t) {
    double c = std::cosh(t), s = std::sinh(t);
    return normalize(Frame{lin(f.x, c, f.v, s), lin(f.x, s, f.v, c)});
}

double section_u(const hypgeom::CoxeterPolygon& P, const Vec3& x, int edge) {
    return std::asinh(mink(x, P.edge_dirs[edge]));
}

double section_angle(const hypgeom::CoxeterPolygon& P, const Frame& f, int edge) {
    double u = section_u(P, f.x, edge);
    Vec3 tang = lin(P.hvertices[edge], std::sinh(u), P.edge_dirs[edge], std::cosh(u));
    return std::atan2(mink(f.v, P.normals[edge]), mink(f.v, tang));
}

Exit next_exit(const hypgeom::CoxeterPolygon& P, const Frame& f, int skip) {
    double best = std::numeric_limits<double>::infinity();
    int which = -1;
    for (int j = 0; j < P.p; ++j) {
        if (j == skip) continue;
        double a = std::max(0.0, mink(P.normals[j], f.x));
        double b = mink(P.normals[j], f.v);
        if (!(b < 0) || !(a + b < 0)) continue;
        // tanh t = a / (-b)
        double t = 0.5 * std::log1p(2.0 * a / (-b - a));
        if (t < best) {
            best = t;
            which = j;
        }
    }
    if (which < 0) throw Error(ErrorCode::InvalidArgument, "frame has no exit wall; it is not inside the polygon");

    Frame at = geodesic_at(f, best);
    const Vec3& n = P.normals[which];
    at.x = lin(at.x, 1.0, n, -mink(n, at.x));
    at = normalize(at);
    double u = section_u(P, at.x, which);
    if (u < tol::vertex || u > P.edge_length - tol::vertex) {
        std::ostringstream os;
        os << "geodesic passes within " << std::min(u, P.edge_length - u) << " of a vertex on edge " << which;
        throw Error(ErrorCode::VertexHit, os.str());
    }
    // The outgoing velocity has negative normal component; measure the
    // angle of its mirror image, which is the inward velocity on the
    // other side.
    Vec3 tang = lin(P.hvertices[which], std::sinh(u), P.edge_dirs[which], std::cosh(u));
    double theta = std::atan2(-mink(at.v, n), mink(at.v, tang));
    return Exit{best, which, u, theta, at};
}

Frame reflect(const hypgeom::CoxeterPolygon& P, const Frame& f, int j) {
    return Frame{hypgeom::reflect_in(P.normals[j], f.x), hypgeom::reflect_in(P.normals[j], f.v)};
}

Frame section_frame(const hypgeom::CoxeterPolygon& P, int edge, double u, double theta) {
    Vec3 x = lin(P.hvertices[edge], std::cosh(u), P.edge_dirs[edge], std::sinh(u));
    Vec3 tang = lin(P.hvertices[edge], std::sinh(u), P.edge_dirs[edge], std::cosh(u));
    return normalize(Frame{x, lin(tang, std::cos(theta), P.normals[edge], std::sin(theta))});
}

Folded fold(const hypgeom::CoxeterPolygon& P, const Frame& global) {
    Folded out{global, hypgeom::HIsometry(), -1};
    for (int iter = 0; iter < 100000; ++iter) {
        int worst = -1;
        double most = -tol::on_wall;
        for (int j = 0; j < P.p; ++j) {
            double a = mink(P.normals[j], out.f.x);
            if (a < most) {
                most = a;
                worst = j;
            }
        }
        if (worst < 0) {
            out.f = normalize(out.f);
            for (int j = 0; j < P.p; ++j)
                if (std::abs(mink(P.normals[j], out.f.x)) <= tol::on_wall) out.wall = j;
            return out;
        }
        out.f = reflect(P, out.f, worst);
        out.g = out.g.compose(P.reflections[worst]);
    }
    throw Error(ErrorCode::InvalidArgument, "folding did not terminate");
}

Step step(const hypgeom::CoxeterPolygon& P, const Frame& f, int skip) {
    Exit e = next_exit(P, f, skip);
    return Step{e, reflect(P, e.at, e.edge)};
}

}  // namespace volent::flow
