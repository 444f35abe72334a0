#pragma once
// Geometric primitives (site points, segments, circular arcs, polycurves),
// shapes as finite unions of primitives, and exact point-to-set projection.

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "medgeo/geometry.hpp"

namespace medgeo {

struct SitePoint {
  Point2 p;
};

struct Segment {
  Point2 a;
  Point2 b;
  double length() const { return dist(a, b); }
  UnitVec direction() const { return UnitVec::of(b - a); }
};

// Counterclockwise arc from start_angle with sweep in (0, 2pi]. sweep == 2pi
// is a full circle.
struct CircArc {
  Point2 center;
  double radius{1.0};
  double start_angle{0.0};
  double sweep{kTwoPi};

  bool full_circle() const { return sweep >= kTwoPi - 1e-12; }
  double end_angle() const { return start_angle + sweep; }
  Point2 point_at_angle(double theta) const {
    return center + Vec2{std::cos(theta), std::sin(theta)} * radius;
  }
  Point2 start_point() const { return point_at_angle(start_angle); }
  Point2 end_point() const { return point_at_angle(end_angle()); }
  double length() const { return radius * sweep; }
  // Offset of theta from start_angle into [0, 2pi).
  double angle_offset(double theta) const { return norm_angle(theta - start_angle); }
  bool contains_angle(double theta) const { return angle_offset(theta) <= sweep + 1e-15; }
};

struct Polycurve {
  std::vector<Point2> vertices;
  bool closed{false};

  std::size_t edge_count() const {
    return closed ? vertices.size() : vertices.size() - 1;
  }
  Segment edge(std::size_t i) const {
    std::size_t j = (i + 1) % vertices.size();
    return Segment{vertices[i], vertices[j]};
  }
  double length() const {
    double L = 0;
    for (std::size_t i = 0; i < edge_count(); ++i) L += edge(i).length();
    return L;
  }
};

using Primitive = std::variant<SitePoint, Segment, CircArc, Polycurve>;

inline double primitive_length(const Primitive& prim) {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SitePoint>) return 0.0;
        else return p.length();
      },
      prim);
}

inline BBox primitive_bbox(const Primitive& prim) {
  BBox b;
  if (const auto* sp = std::get_if<SitePoint>(&prim)) {
    b.grow(sp->p);
  } else if (const auto* sg = std::get_if<Segment>(&prim)) {
    b.grow(sg->a);
    b.grow(sg->b);
  } else if (const auto* arc = std::get_if<CircArc>(&prim)) {
    b.grow(arc->start_point());
    b.grow(arc->end_point());
    // axis extremes reached inside the sweep
    for (int k = 0; k < 4; ++k) {
      double theta = k * kPi / 2.0;
      if (arc->contains_angle(theta)) b.grow(arc->point_at_angle(theta));
    }
  } else if (const auto* pc = std::get_if<Polycurve>(&prim)) {
    for (const auto& v : pc->vertices) b.grow(v);
  }
  return b;
}

// Point on the primitive at local arc length s (s in [0, length]).
inline Point2 primitive_point(const Primitive& prim, double s) {
  if (const auto* sp = std::get_if<SitePoint>(&prim)) return sp->p;
  if (const auto* sg = std::get_if<Segment>(&prim)) {
    double L = sg->length();
    double t = L > 0 ? std::clamp(s / L, 0.0, 1.0) : 0.0;
    return sg->a + (sg->b - sg->a) * t;
  }
  if (const auto* arc = std::get_if<CircArc>(&prim)) {
    double u = std::clamp(s / arc->radius, 0.0, arc->sweep);
    return arc->point_at_angle(arc->start_angle + u);
  }
  const auto& pc = std::get<Polycurve>(prim);
  double acc = 0;
  for (std::size_t i = 0; i < pc.edge_count(); ++i) {
    Segment e = pc.edge(i);
    double l = e.length();
    if (s <= acc + l || i + 1 == pc.edge_count()) {
      double t = l > 0 ? std::clamp((s - acc) / l, 0.0, 1.0) : 0.0;
      return e.a + (e.b - e.a) * t;
    }
    acc += l;
  }
  return pc.vertices.front();
}

// A nearest point together with where it sits on its primitive; local_s is
// arc length along the primitive (0 for site points).
struct ProjFoot {
  Point2 p;
  int prim{-1};
  double local_s{0.0};
};

struct ProjectionResult {
  double distance{0.0};
  std::vector<ProjFoot> projections;
  bool continuum{false};
  int multiplicity{1};
};

namespace detail {

inline void push_foot(std::vector<ProjFoot>& out, Point2 p, int prim, double s) {
  out.push_back(ProjFoot{p, prim, s});
}

// Exact distance from x to one primitive; reports every minimizer on it.
inline ProjectionResult primitive_distance_impl(const Primitive& prim, const Point2& x,
                                                int prim_index) {
  ProjectionResult res;
  if (const auto* sp = std::get_if<SitePoint>(&prim)) {
    res.distance = dist(x, sp->p);
    push_foot(res.projections, sp->p, prim_index, 0.0);
  } else if (const auto* sg = std::get_if<Segment>(&prim)) {
    Vec2 ab = sg->b - sg->a;
    double t = std::clamp((x - sg->a).dot(ab) / ab.norm2(), 0.0, 1.0);
    Point2 foot = sg->a + ab * t;
    res.distance = dist(x, foot);
    push_foot(res.projections, foot, prim_index, t * sg->length());
  } else if (const auto* arc = std::get_if<CircArc>(&prim)) {
    Vec2 u = x - arc->center;
    double rho = u.norm();
    double tol = 1e-12 * (1.0 + arc->radius);
    if (rho <= tol) {
      // x at the center: the whole arc minimizes.
      res.distance = arc->radius;
      res.continuum = true;
      push_foot(res.projections, arc->start_point(), prim_index, 0.0);
      double mid = arc->sweep * 0.5;
      push_foot(res.projections, arc->point_at_angle(arc->start_angle + mid), prim_index,
                mid * arc->radius);
    } else {
      double theta = std::atan2(u.y, u.x);
      if (arc->contains_angle(theta)) {
        res.distance = std::abs(rho - arc->radius);
        double off = arc->angle_offset(theta);
        off = std::min(off, arc->sweep);
        push_foot(res.projections, arc->point_at_angle(theta), prim_index, off * arc->radius);
      } else {
        Point2 e0 = arc->start_point();
        Point2 e1 = arc->end_point();
        double d0 = dist(x, e0);
        double d1 = dist(x, e1);
        res.distance = std::min(d0, d1);
        double tie = 1e-12 * (1.0 + res.distance);
        if (d0 <= res.distance + tie) push_foot(res.projections, e0, prim_index, 0.0);
        if (d1 <= res.distance + tie)
          push_foot(res.projections, e1, prim_index, arc->length());
      }
    }
  } else {
    const auto& pc = std::get<Polycurve>(prim);
    double best = 1e300;
    struct Cand { Point2 p; double s; double d; };
    std::vector<Cand> cands;
    double acc = 0;
    for (std::size_t i = 0; i < pc.edge_count(); ++i) {
      Segment e = pc.edge(i);
      Vec2 ab = e.b - e.a;
      double l = e.length();
      double t = std::clamp((x - e.a).dot(ab) / ab.norm2(), 0.0, 1.0);
      Point2 foot = e.a + ab * t;
      double d = dist(x, foot);
      cands.push_back({foot, acc + t * l, d});
      best = std::min(best, d);
      acc += l;
    }
    res.distance = best;
    double tie = 1e-12 * (1.0 + best);
    double dup = 1e-12 * (1.0 + best);
    for (const auto& c : cands) {
      if (c.d > best + tie) continue;
      bool dupd = false;
      for (const auto& f : res.projections)
        if (dist(f.p, c.p) <= dup) { dupd = true; break; }
      if (!dupd) push_foot(res.projections, c.p, prim_index, c.s);
    }
  }
  res.multiplicity = res.continuum ? std::max<int>(2, res.projections.size())
                                   : static_cast<int>(res.projections.size());
  return res;
}

// Proper segment intersection test (shared endpoints excluded by callers).
inline bool segments_intersect(const Segment& s1, const Segment& s2) {
  auto orient = [](const Point2& a, const Point2& b, const Point2& c) {
    double v = (b - a).cross(c - a);
    double eps = 1e-14 * (1.0 + std::abs(v));
    if (v > eps) return 1;
    if (v < -eps) return -1;
    return 0;
  };
  int o1 = orient(s1.a, s1.b, s2.a);
  int o2 = orient(s1.a, s1.b, s2.b);
  int o3 = orient(s2.a, s2.b, s1.a);
  int o4 = orient(s2.a, s2.b, s1.b);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  return false;
}

}  // namespace detail

inline void validate_primitive(const Primitive& prim) {
  if (const auto* sp = std::get_if<SitePoint>(&prim)) {
    if (!sp->p.finite()) throw Error(Err::InvalidArgument, "site point not finite");
  } else if (const auto* sg = std::get_if<Segment>(&prim)) {
    if (!sg->a.finite() || !sg->b.finite())
      throw Error(Err::InvalidArgument, "segment endpoint not finite");
    if (dist(sg->a, sg->b) == 0.0)
      throw Error(Err::InvalidArgument, "degenerate segment (a == b)");
  } else if (const auto* arc = std::get_if<CircArc>(&prim)) {
    if (!(arc->radius > 0)) throw Error(Err::InvalidArgument, "arc radius must be > 0");
    if (!(arc->sweep > 0) || arc->sweep > kTwoPi + 1e-12)
      throw Error(Err::InvalidArgument, "arc sweep must lie in (0, 2pi]");
  } else if (const auto* pc = std::get_if<Polycurve>(&prim)) {
    if (pc->vertices.size() < 2)
      throw Error(Err::InvalidArgument, "polycurve needs at least 2 vertices");
    for (std::size_t i = 0; i + 1 < pc->vertices.size(); ++i)
      if (dist(pc->vertices[i], pc->vertices[i + 1]) == 0.0)
        throw Error(Err::InvalidArgument, "polycurve has duplicate consecutive vertices");
    if (pc->closed && dist(pc->vertices.front(), pc->vertices.back()) == 0.0)
      throw Error(Err::InvalidArgument, "closed polycurve repeats the first vertex");
    // embeddedness: no proper crossing between non-adjacent edges
    std::size_t n = pc->edge_count();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        if (pc->closed && i == 0 && j == n - 1) continue;  // adjacent around the wrap
        if (detail::segments_intersect(pc->edge(i), pc->edge(j)))
          throw Error(Err::InvalidArgument, "polycurve self-intersects");
      }
    }
  }
}

// A tangent-continuous junction between two primitives: local parameters of
// the shared endpoint on each side. Feet close to the joint on both sides
// belong to one sheet.
struct SheetJoint {
  int pi, pj;
  double si, sj;
};

namespace detail {
struct EndpointInfo {
  Point2 p;
  double local_s;
  double into_angle;  // tangent direction pointing into the primitive
};

inline std::vector<EndpointInfo> primitive_endpoints(const Primitive& prim) {
  std::vector<EndpointInfo> out;
  if (const auto* sg = std::get_if<Segment>(&prim)) {
    double ang = std::atan2(sg->b.y - sg->a.y, sg->b.x - sg->a.x);
    out.push_back({sg->a, 0.0, ang});
    out.push_back({sg->b, sg->length(), ang + kPi});
  } else if (const auto* arc = std::get_if<CircArc>(&prim)) {
    if (!arc->full_circle()) {
      out.push_back({arc->start_point(), 0.0, arc->start_angle + kPi / 2});
      out.push_back({arc->end_point(), arc->length(), arc->end_angle() - kPi / 2});
    }
  } else if (const auto* pc = std::get_if<Polycurve>(&prim)) {
    if (!pc->closed) {
      Segment e0 = pc->edge(0);
      Segment e1 = pc->edge(pc->edge_count() - 1);
      out.push_back({pc->vertices.front(), 0.0,
                     std::atan2(e0.b.y - e0.a.y, e0.b.x - e0.a.x)});
      out.push_back({pc->vertices.back(), pc->length(),
                     std::atan2(e1.a.y - e1.b.y, e1.a.x - e1.b.x)});
    }
  }
  return out;
}
}  // namespace detail

struct Shape {
  std::vector<Primitive> primitives;
  std::string label;
  BBox bbox;
  std::vector<SheetJoint> sheet_joints;

  Shape() = default;
  Shape(std::vector<Primitive> prims, std::string name = "")
      : primitives(std::move(prims)), label(std::move(name)) {
    if (primitives.empty()) throw Error(Err::InvalidArgument, "shape must be nonempty");
    for (const auto& p : primitives) {
      validate_primitive(p);
      bbox.grow(primitive_bbox(p));
    }
    // tangent-continuous junctions between different primitives
    double join_tol = 1e-9 * std::max(1.0, bbox.diag());
    for (std::size_t i = 0; i < primitives.size(); ++i) {
      auto ei = detail::primitive_endpoints(primitives[i]);
      for (std::size_t j = i + 1; j < primitives.size(); ++j) {
        auto ej = detail::primitive_endpoints(primitives[j]);
        for (const auto& a : ei)
          for (const auto& b : ej) {
            if (dist(a.p, b.p) > join_tol) continue;
            double bend = a.into_angle - b.into_angle - kPi;
            bend = std::abs(std::remainder(bend, 2 * kPi));
            if (bend <= 1e-6)
              sheet_joints.push_back({static_cast<int>(i), static_cast<int>(j),
                                      a.local_s, b.local_s});
          }
      }
    }
  }

  double scale() const { return std::max(1e-12, bbox.diag()); }
  double total_boundary_length() const {
    double L = 0;
    for (const auto& p : primitives) L += primitive_length(p);
    return L;
  }
};

inline ProjectionResult primitive_distance(const Primitive& prim, const Point2& x) {
  return detail::primitive_distance_impl(prim, x, 0);
}

// Minimum over primitives; minimizers within tie_tol of the minimum are kept,
// duplicates within dup_radius merged. tie_tol < 0 selects the scale-free
// default 1e-9 * (1 + dist); dup_radius <= 0 selects 1e-7 * bbox diagonal.
inline ProjectionResult shape_distance(const Shape& shape, const Point2& x,
                                       double tie_tol = -1.0, double dup_radius = -1.0) {
  ProjectionResult out;
  out.distance = 1e300;
  std::vector<ProjectionResult> per;
  per.reserve(shape.primitives.size());
  for (std::size_t i = 0; i < shape.primitives.size(); ++i) {
    per.push_back(detail::primitive_distance_impl(shape.primitives[i], x, static_cast<int>(i)));
    out.distance = std::min(out.distance, per.back().distance);
  }
  double tie = tie_tol >= 0 ? tie_tol : 1e-9 * (1.0 + out.distance);
  double dup = dup_radius > 0 ? dup_radius : 1e-7 * shape.bbox.diag();
  for (const auto& r : per) {
    if (r.distance > out.distance + tie) continue;
    if (r.continuum) out.continuum = true;
    for (const auto& f : r.projections) {
      bool dupd = false;
      for (const auto& g : out.projections)
        if (dist(f.p, g.p) <= dup) { dupd = true; break; }
      if (!dupd) out.projections.push_back(f);
    }
  }
  out.multiplicity = out.continuum ? std::max<int>(2, out.projections.size())
                                   : static_cast<int>(out.projections.size());
  return out;
}

// Arc-length samples of a shape's primitives; for probing, oracles, and
// sheet-distinctness tests.
struct BoundarySample {
  Point2 p;
  int prim{0};
  double local_s{0.0};
  double tangent_angle{0.0};
  bool has_tangent{false};
};

inline std::vector<BoundarySample> sample_boundary(const Shape& shape, double ds) {
  std::vector<BoundarySample> out;
  for (std::size_t pi = 0; pi < shape.primitives.size(); ++pi) {
    const Primitive& prim = shape.primitives[pi];
    if (const auto* sp = std::get_if<SitePoint>(&prim)) {
      out.push_back({sp->p, static_cast<int>(pi), 0.0, 0.0, false});
      continue;
    }
    double L = primitive_length(prim);
    int n = std::max(2, static_cast<int>(std::ceil(L / ds)) + 1);
    for (int k = 0; k < n; ++k) {
      double s = L * k / (n - 1);
      BoundarySample bs;
      bs.p = primitive_point(prim, s);
      bs.prim = static_cast<int>(pi);
      bs.local_s = s;
      if (const auto* sg = std::get_if<Segment>(&prim)) {
        bs.tangent_angle = std::atan2(sg->b.y - sg->a.y, sg->b.x - sg->a.x);
        bs.has_tangent = true;
      } else if (const auto* arc = std::get_if<CircArc>(&prim)) {
        double theta = arc->start_angle + s / arc->radius;
        bs.tangent_angle = theta + kPi / 2.0;
        bs.has_tangent = true;
      } else if (const auto* pc = std::get_if<Polycurve>(&prim)) {
        // tangent of the edge the sample falls on
        double acc = 0;
        for (std::size_t i = 0; i < pc->edge_count(); ++i) {
          Segment e = pc->edge(i);
          double l = e.length();
          if (s <= acc + l || i + 1 == pc->edge_count()) {
            bs.tangent_angle = std::atan2(e.b.y - e.a.y, e.b.x - e.a.x);
            bs.has_tangent = true;
            break;
          }
          acc += l;
        }
      }
      out.push_back(bs);
    }
  }
  return out;
}

// Whether two feet lie on distinct local sheets of the shape: different
// primitives, or parameter separation beyond sheet_gap on the same one
// (wrap-aware for closed polycurves and full circles). Feet at the same
// geometric point are one point regardless of which primitive claimed them.
inline bool distinct_sheets(const Shape& shape, const ProjFoot& f1, const ProjFoot& f2,
                            double sheet_gap) {
  double ctol = 1e-7 * (1.0 + 0.5 * (f1.p.norm() + f2.p.norm()));
  if (dist(f1.p, f2.p) <= ctol) return false;
  if (f1.prim != f2.prim) {
    // feet on different primitives stay on one sheet when a G1 joint sits
    // between them within the gap
    for (const auto& jt : shape.sheet_joints) {
      double d1 = -1.0, d2 = -1.0;
      if (jt.pi == f1.prim && jt.pj == f2.prim) {
        d1 = std::abs(f1.local_s - jt.si);
        d2 = std::abs(f2.local_s - jt.sj);
      } else if (jt.pi == f2.prim && jt.pj == f1.prim) {
        d1 = std::abs(f2.local_s - jt.si);
        d2 = std::abs(f1.local_s - jt.sj);
      }
      if (d1 >= 0 && d1 + d2 <= sheet_gap) return false;
    }
    return true;
  }
  const Primitive& prim = shape.primitives[f1.prim];
  double L = primitive_length(prim);
  if (L <= 0) return false;
  double d = std::abs(f1.local_s - f2.local_s);
  bool wraps = false;
  if (const auto* arc = std::get_if<CircArc>(&prim)) wraps = arc->full_circle();
  if (const auto* pc = std::get_if<Polycurve>(&prim)) wraps = pc->closed;
  if (wraps) d = std::min(d, L - d);
  return d > sheet_gap;
}

}  // namespace medgeo
