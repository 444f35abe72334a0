#pragma once
// Dense exact distance/projection grids, bounded domains with tagged
// regularity, the distance gradient, and sublevel-area measurement.

#include <cstdio>
#include <cstdint>
#include <memory>
#include <sstream>
#include <vector>

#include "medgeo/arclength.hpp"
#include "medgeo/primitives.hpp"

namespace medgeo {

inline constexpr std::size_t kDefaultNodeBudget = 16u * 1000u * 1000u;

enum class Regularity { C0, C1, C2 };

inline const char* regularity_name(Regularity r) {
  switch (r) {
    case Regularity::C0: return "C0";
    case Regularity::C1: return "C1";
    case Regularity::C2: return "C2";
  }
  return "?";
}

// Open bounded domain given by primitive boundary loops. loops[0] is the
// outer loop (stored CCW); the rest are holes (stored CW). With that
// handedness the +90-degree normal of every loop points into the domain.
struct Domain {
  std::vector<std::vector<Primitive>> loops;
  Regularity tag{Regularity::C1};
  bool simply_connected{true};
  std::string label;

  Shape boundary;                    // all loop primitives, flattened
  std::vector<ArcCurve> loop_curves; // oriented as described above
  std::vector<Point2> corners;       // joints where the boundary is not G1
  BBox bbox;

  bool contains(const Point2& q) const {
    // crossing number against the sampled loops
    int crossings = 0;
    for (const auto& lc : loop_curves) {
      const auto& s = lc.samples;
      for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        Point2 a = s[i].p, b = s[i + 1].p;
        if ((a.y <= q.y) != (b.y <= q.y)) {
          double xc = a.x + (q.y - a.y) / (b.y - a.y) * (b.x - a.x);
          if (xc > q.x) ++crossings;
        }
      }
    }
    return (crossings % 2) == 1;
  }

  double perimeter() const {
    double L = 0;
    for (const auto& lc : loop_curves) L += lc.length;
    return L;
  }
  // Signed loop areas add up to the domain area (outer CCW positive, holes
  // CW negative).
  double area() const {
    double a = 0;
    for (const auto& lc : loop_curves) a += lc.signed_area();
    return a;
  }
  int hole_count() const { return static_cast<int>(loops.size()) - 1; }
};

inline Domain make_domain(std::vector<std::vector<Primitive>> loops, Regularity tag,
                          bool simply_connected, std::string label = "",
                          double ds = 0.005) {
  if (loops.empty()) throw Error(Err::InvalidArgument, "domain needs at least one loop");
  Domain dom;
  dom.tag = tag;
  dom.simply_connected = simply_connected;
  dom.label = std::move(label);

  // Build curves; outer loop = largest |area|, stored first and CCW.
  std::vector<ArcCurve> curves;
  curves.reserve(loops.size());
  for (const auto& chain : loops)
    curves.push_back(build_arclength(chain, ds, JointPolicy::AllowCorners));
  std::size_t outer = 0;
  for (std::size_t i = 1; i < curves.size(); ++i)
    if (std::abs(curves[i].signed_area()) > std::abs(curves[outer].signed_area())) outer = i;
  std::swap(loops[0], loops[outer]);
  std::swap(curves[0], curves[outer]);
  for (std::size_t i = 0; i < loops.size(); ++i) {
    bool want_ccw = (i == 0);
    if ((curves[i].signed_area() > 0) != want_ccw) curves[i] = reversed(curves[i]);
  }

  std::vector<Primitive> all;
  for (const auto& chain : loops)
    for (const auto& p : chain) all.push_back(p);
  dom.loops = std::move(loops);
  dom.boundary = Shape(std::move(all), dom.label.empty() ? "domain-boundary" : dom.label);
  dom.loop_curves = std::move(curves);
  dom.bbox = dom.boundary.bbox;
  for (const auto& lc : dom.loop_curves)
    for (const auto& cp : lc.corner_pts) dom.corners.push_back(cp);
  return dom;
}

// Public facade over shape_distance.
inline ProjectionResult eval_distance(const Shape& shape, const Point2& x,
                                      double tie_tol = -1.0) {
  return shape_distance(shape, x, tie_tol);
}

// Frechet gradient of the distance function at a point with a unique
// projection: (x - pi(x)) / d(x).
inline UnitVec gradient(const Shape& shape, const Point2& x) {
  ProjectionResult pr = shape_distance(shape, x);
  if (pr.distance <= 1e-14 * shape.scale())
    throw Error(Err::OnSet, "gradient undefined on the set");
  if (pr.continuum || pr.multiplicity > 1)
    throw Error(Err::MultipleProjections, "gradient undefined at a multi-projection point");
  return UnitVec::of(x - pr.projections[0].p);
}

struct DistanceField {
  Point2 origin;
  double h{0.0};
  int nx{0}, ny{0};
  std::vector<double> values;        // nx * ny, row-major (iy * nx + ix)
  std::vector<int> multiplicity;
  std::vector<ProjFoot> feet;        // one representative nearest point per node
  std::vector<std::uint8_t> inside;  // nonempty iff built from a Domain
  std::shared_ptr<const Shape> source;

  std::size_t idx(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx + ix; }
  Point2 node(int ix, int iy) const { return {origin.x + ix * h, origin.y + iy * h}; }
  double value(int ix, int iy) const { return values[idx(ix, iy)]; }
  bool is_inside(int ix, int iy) const {
    return inside.empty() ? true : inside[idx(ix, iy)] != 0;
  }
  bool has_mask() const { return !inside.empty(); }

  double max_value_inside() const {
    double m = -1e300;
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        if (is_inside(ix, iy)) m = std::max(m, value(ix, iy));
    return m;
  }

  // grid tie tolerance: ties sharpen as h shrinks
  double tie_tol() const { return std::max(1e-9, h * h); }
};

namespace detail {
inline DistanceField alloc_field(const BBox& box, double h, std::size_t budget) {
  if (!box.valid() || box.width() <= 0 || box.height() <= 0)
    throw Error(Err::InvalidArgument, "degenerate bbox");
  if (!(h > 0)) throw Error(Err::InvalidArgument, "grid spacing must be > 0");
  DistanceField f;
  f.origin = box.lo;
  f.h = h;
  f.nx = std::max(2, static_cast<int>(std::ceil(box.width() / h)) + 1);
  f.ny = std::max(2, static_cast<int>(std::ceil(box.height() / h)) + 1);
  std::size_t n = static_cast<std::size_t>(f.nx) * f.ny;
  if (n > budget)
    throw Error(Err::GridTooLarge, "grid would need " + std::to_string(n) + " nodes");
  f.values.resize(n);
  f.multiplicity.resize(n);
  f.feet.resize(n);
  return f;
}
}  // namespace detail

inline DistanceField grid_transform(const Shape& shape, const BBox& box, double h,
                                    std::size_t node_budget = kDefaultNodeBudget) {
  DistanceField f = detail::alloc_field(box, h, node_budget);
  double tie = f.tie_tol();
  for (int iy = 0; iy < f.ny; ++iy) {
    for (int ix = 0; ix < f.nx; ++ix) {
      ProjectionResult pr = shape_distance(shape, f.node(ix, iy), tie);
      std::size_t k = f.idx(ix, iy);
      f.values[k] = pr.distance;
      f.multiplicity[k] = pr.multiplicity;
      f.feet[k] = pr.projections.front();
    }
  }
  f.source = std::make_shared<Shape>(shape);
  return f;
}

inline DistanceField grid_transform(const Domain& dom, const BBox& box, double h,
                                    std::size_t node_budget = kDefaultNodeBudget) {
  DistanceField f = grid_transform(dom.boundary, box, h, node_budget);
  f.inside.assign(f.values.size(), 0);
  // scanline parity per grid row
  for (int iy = 0; iy < f.ny; ++iy) {
    double y = f.origin.y + iy * h;
    std::vector<double> xs;
    for (const auto& lc : dom.loop_curves) {
      const auto& s = lc.samples;
      for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const Point2& a = s[i].p;
        const Point2& b = s[i + 1].p;
        if ((a.y <= y) != (b.y <= y))
          xs.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (int ix = 0; ix < f.nx; ++ix) {
      double x = f.origin.x + ix * h;
      std::size_t above = xs.end() - std::upper_bound(xs.begin(), xs.end(), x);
      f.inside[f.idx(ix, iy)] = (above % 2 == 1) ? 1 : 0;
    }
  }
  return f;
}

inline DistanceField grid_transform(const Domain& dom, double h,
                                    std::size_t node_budget = kDefaultNodeBudget) {
  return grid_transform(dom, dom.bbox.inflated(2 * h), h, node_budget);
}

// One row per node: ix, iy, x, y, value, multiplicity.
inline std::string field_to_csv(const DistanceField& f) {
  std::ostringstream os;
  os << "ix,iy,x,y,value,multiplicity\n";
  char buf[160];
  for (int iy = 0; iy < f.ny; ++iy) {
    for (int ix = 0; ix < f.nx; ++ix) {
      Point2 p = f.node(ix, iy);
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%d\n", ix, iy, p.x, p.y,
                    f.value(ix, iy), f.multiplicity[f.idx(ix, iy)]);
      os << buf;
    }
  }
  return os.str();
}

// Godunov upwind gradient magnitude at an interior node.
inline double upwind_gradient_norm(const DistanceField& f, int ix, int iy) {
  double c = f.value(ix, iy);
  double dxm = (c - f.value(ix - 1, iy)) / f.h;
  double dxp = (f.value(ix + 1, iy) - c) / f.h;
  double dym = (c - f.value(ix, iy - 1)) / f.h;
  double dyp = (f.value(ix, iy + 1) - c) / f.h;
  double gx = std::max({dxm, -dxp, 0.0});
  double gy = std::max({dym, -dyp, 0.0});
  return std::hypot(gx, gy);
}

// Area of {f < level} where f is sampled at cell corners by `eval`; cells of
// size h over box. Mixed cells are clipped with edge-linear interpolation.
template <typename F>
double sublevel_area(const BBox& box, double h, double level, F&& eval) {
  int nx = std::max(1, static_cast<int>(std::ceil(box.width() / h)));
  int ny = std::max(1, static_cast<int>(std::ceil(box.height() / h)));
  // corner values
  std::vector<double> row0(nx + 1), row1(nx + 1);
  auto corner = [&](int ix, int iy) -> Point2 {
    return {box.lo.x + ix * h, box.lo.y + iy * h};
  };
  for (int ix = 0; ix <= nx; ++ix) row0[ix] = eval(corner(ix, 0)) - level;
  double area = 0.0;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix <= nx; ++ix) row1[ix] = eval(corner(ix, iy + 1)) - level;
    for (int ix = 0; ix < nx; ++ix) {
      double f00 = row0[ix], f10 = row0[ix + 1], f11 = row1[ix + 1], f01 = row1[ix];
      bool in00 = f00 < 0, in10 = f10 < 0, in11 = f11 < 0, in01 = f01 < 0;
      int count = in00 + in10 + in11 + in01;
      if (count == 0) continue;
      if (count == 4) { area += h * h; continue; }
      // clip polygon walk, corners CCW: 00 -> 10 -> 11 -> 01
      Point2 c00 = corner(ix, iy), c10 = corner(ix + 1, iy);
      Point2 c11 = corner(ix + 1, iy + 1), c01 = corner(ix, iy + 1);
      Point2 cs[4] = {c00, c10, c11, c01};
      double fs[4] = {f00, f10, f11, f01};
      Point2 poly[8];
      int m = 0;
      for (int k = 0; k < 4; ++k) {
        int k2 = (k + 1) % 4;
        if (fs[k] < 0) poly[m++] = cs[k];
        if ((fs[k] < 0) != (fs[k2] < 0)) {
          double t = fs[k] / (fs[k] - fs[k2]);
          poly[m++] = cs[k] + (cs[k2] - cs[k]) * t;
        }
      }
      double a = 0;
      for (int k = 0; k < m; ++k) a += poly[k].cross(poly[(k + 1) % m]);
      area += 0.5 * std::abs(a);
    }
    std::swap(row0, row1);
  }
  return area;
}

}  // namespace medgeo
