#pragma once

// Tolerance hierarchy shared by all modules.
namespace volent::tol {

// Checks performed once when a polygon is built.
inline constexpr double construction = 1e-9;
// Downstream geometric predicates (on-geodesic, isometry round trips).
inline constexpr double predicate = 1e-10;
// A crossing closer than this to a polygon vertex is a vertex hit.
inline constexpr double vertex = 1e-9;
// Minkowski product below which a point counts as lying on a wall.
inline constexpr double on_wall = 1e-12;
// Cell size for hashing chamber centers.
inline constexpr double dedup_quantum = 1e-8;
// Relative tolerance of the Perron root.
inline constexpr double power_iteration = 1e-10;

}  // namespace volent::tol
