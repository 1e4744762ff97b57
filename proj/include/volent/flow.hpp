#pragma once

#include "volent/hypgeom.hpp"

// Geodesic flow on T^1(P) with billiard folding: a geodesic of the
// tessellation, folded back into the base polygon at every wall crossing.
namespace volent::flow {

using hypgeom::Vec3;

struct Frame {
    Vec3 x;  // point on the hyperboloid
    Vec3 v;  // unit tangent at x
};

struct Exit {
    double t;      // flight time from the start frame
    int edge;
    double u;      // distance from vertex `edge` along the edge
    double theta;  // angle to the edge direction, in (0, π)
    Frame at;      // frame at the wall, velocity still pointing out of P
};

Frame from_upper(const hypgeom::HPoint& z, double alpha);
Frame geodesic_at(const Frame& f, double t);

// First wall of P crossed at time > 0. The frame must lie in P. `skip` is
// the edge the frame sits on (or -1). Throws VertexHit when the exit
// point is within ε_vertex of a polygon vertex, and InvalidArgument when
// no wall is ahead (frame outside P).
Exit next_exit(const hypgeom::CoxeterPolygon& P, const Frame& f, int skip);

// Reflect a frame in the wall of edge j (x is assumed to lie on it).
Frame reflect(const hypgeom::CoxeterPolygon& P, const Frame& f, int j);

// Inward unit vector at (edge, u) making angle theta with the edge.
Frame section_frame(const hypgeom::CoxeterPolygon& P, int edge, double u, double theta);

// Angle of an inward velocity relative to edge `edge` at x.
double section_angle(const hypgeom::CoxeterPolygon& P, const Frame& f, int edge);
double section_u(const hypgeom::CoxeterPolygon& P, const Vec3& x, int edge);

struct Folded {
    Frame f;                   // inside P
    hypgeom::HIsometry g;      // chamber g(P) contains the original point
    int wall = -1;             // edge of P the point lies on, if any
};

// Reflect a frame of the plane into the base polygon.
Folded fold(const hypgeom::CoxeterPolygon& P, const Frame& global);

// Flow from a frame inside P and follow the first exit, applying the
// reflection. Returns the crossing and the new inward frame.
struct Step {
    Exit exit;
    Frame next;
};
Step step(const hypgeom::CoxeterPolygon& P, const Frame& f, int skip);

}  // namespace volent::flow
