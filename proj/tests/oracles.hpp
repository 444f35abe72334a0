#pragma once
// Test-only oracles: brute-force boundary sampling, analytic distances for
// rectangles/annuli/stadiums, dense ellipse sampling, and finite differences.
// These stay independent of the library's projection code paths on purpose.

#include <cmath>
#include <vector>

#include "medgeo/primitives.hpp"

namespace oracles {

using medgeo::Point2;
using medgeo::Shape;
using medgeo::Vec2;

// Brute-force min distance over dense primitive samples (no projection logic
// shared with the implementation beyond primitive_point).
inline double brute_force_distance(const Shape& shape, const Point2& x, int samples_per_prim) {
  double best = 1e300;
  for (const auto& prim : shape.primitives) {
    double L = medgeo::primitive_length(prim);
    if (L == 0.0) {
      best = std::min(best, medgeo::dist(medgeo::primitive_point(prim, 0.0), x));
      continue;
    }
    for (int k = 0; k <= samples_per_prim; ++k) {
      Point2 p = medgeo::primitive_point(prim, L * k / samples_per_prim);
      best = std::min(best, medgeo::dist(p, x));
    }
  }
  return best;
}

// Axis-aligned rectangle [0,w]x[0,hh]: interior distance to the boundary.
inline double rect_interior_distance(double w, double hh, const Point2& p) {
  return std::min(std::min(p.x, w - p.x), std::min(p.y, hh - p.y));
}

// Annulus with radii rin < rout centered at origin.
inline double annulus_interior_distance(double rin, double rout, const Point2& p) {
  double rho = p.norm();
  return std::min(rho - rin, rout - rho);
}

// Stadium around the segment [-a,a]x{0} with cap radius r: boundary distance
// for interior points.
inline double stadium_interior_distance(double a, double r, const Point2& p) {
  double dcore = 0.0;
  if (p.x < -a) dcore = medgeo::dist(p, {-a, 0});
  else if (p.x > a) dcore = medgeo::dist(p, {a, 0});
  else dcore = std::abs(p.y);
  return r - dcore;
}

// Dense polar sampling of the ellipse x^2/a^2 + y^2/b^2 = 1.
inline double ellipse_distance_sampled(double a, double b, const Point2& x, int n) {
  double best = 1e300;
  for (int k = 0; k < n; ++k) {
    double t = medgeo::kTwoPi * k / n;
    Point2 p{a * std::cos(t), b * std::sin(t)};
    best = std::min(best, medgeo::dist(p, x));
  }
  return best;
}

// Central difference of a scalar field.
template <typename F>
Vec2 fd_gradient(F&& f, const Point2& x, double step) {
  double gx = (f(Point2{x.x + step, x.y}) - f(Point2{x.x - step, x.y})) / (2 * step);
  double gy = (f(Point2{x.x, x.y + step}) - f(Point2{x.x, x.y - step})) / (2 * step);
  return {gx, gy};
}

}  // namespace oracles
