#pragma once
// Contact sets C_r(p) = boundary of B_r(p) intersected with the tube
// boundary, their two-antipodal-points / semicircle / full-circle
// classification, and manifold-boundary detection on the core.

#include "medgeo/reach.hpp"

namespace medgeo {

enum class ContactClass { TwoAntipodal, Semicircle, FullCircle, Other };

inline const char* contact_class_name(ContactClass c) {
  switch (c) {
    case ContactClass::TwoAntipodal: return "TwoAntipodal";
    case ContactClass::Semicircle: return "Semicircle";
    case ContactClass::FullCircle: return "FullCircle";
    case ContactClass::Other: return "Other";
  }
  return "?";
}

struct ContactComponent {
  double angle_start{0.0};
  double sweep{0.0};
  bool is_point{false};
  double angle_center() const { return angle_start + 0.5 * sweep; }
};

struct ContactSet {
  Point2 p;
  double r{0.0};
  std::vector<ContactComponent> components;
  ContactClass classification{ContactClass::Other};
};

struct ContactParams {
  double reach_lower{-1.0};  // < 0: estimate internally
  double tol_on{1e-9};       // membership tolerance for p in S
  double tol_angle{0.05};    // antipodality / semicircle angular slack
  double point_sweep{0.3};   // components at most this wide count as points
  double tol_c{-1.0};        // run membership tolerance; <= 0: sag-scaled default
  double tol_exact{-1.0};    // refined membership; <= 0: 1e-9 * (1 + r)
};

inline ContactClass classify(const ContactSet& cs, double tol_angle = 0.05) {
  const auto& comps = cs.components;
  if (comps.size() == 1 && comps[0].sweep >= kTwoPi - 1e-6) return ContactClass::FullCircle;
  bool all_points = true, all_arcs = true;
  for (const auto& c : comps) {
    if (c.is_point) all_arcs = false;
    else all_points = false;
  }
  if (comps.size() == 2 && all_points) {
    double gap = std::abs(wrap_angle(comps[1].angle_center() - comps[0].angle_center()));
    if (std::abs(gap - kPi) <= tol_angle) return ContactClass::TwoAntipodal;
  }
  if (comps.size() == 1 && all_arcs && std::abs(comps[0].sweep - kPi) <= tol_angle)
    return ContactClass::Semicircle;
  return ContactClass::Other;
}

// Angular sweep of the circle of radius r around p in S, keeping the angles
// where the swept point lies on the tube boundary. The run tolerance covers
// the second-order sag of the depth between samples; every run is then
// confirmed by a ternary peak search and trimmed at a tight tolerance so
// tangency grazing cannot inflate or merge components.
inline ContactSet contact_set(const Shape& shape, double r, const Point2& p,
                              double angular_step = kPi / 720.0,
                              const ContactParams& prm = {}) {
  if (!(r > 0) || !(angular_step > 0))
    throw Error(Err::InvalidArgument, "need positive radius and angular step");
  if (shape_distance(shape, p).distance > prm.tol_on * (1.0 + shape.scale()))
    throw Error(Err::NotOnSet, "contact set base point must lie on the set");
  double reach_lower = prm.reach_lower;
  if (reach_lower < 0) reach_lower = estimate_reach(shape).lower;
  if (r >= reach_lower)
    throw Error(Err::ReachExceeded, "contact set requires r below the reach bound");

  ContactSet cs;
  cs.p = p;
  cs.r = r;
  auto depth = [&](double theta) {
    return shape_distance(shape, p + Vec2{std::cos(theta), std::sin(theta)} * r).distance;
  };
  double tol_exact = prm.tol_exact > 0 ? prm.tol_exact : 1e-9 * (1.0 + r);
  int n = std::max(16, static_cast<int>(std::ceil(kTwoPi / angular_step)));
  double step = kTwoPi / n;
  double tol_run = prm.tol_c > 0 ? prm.tol_c : std::max({1e-6, tol_exact, 2.0 * r * step * step});

  std::vector<double> d(n);
  int passes = 0;
  double worst = 1e300;
  for (int k = 0; k < n; ++k) {
    d[k] = depth(step * k);
    worst = std::min(worst, d[k]);
    if (d[k] >= r - tol_run) ++passes;
  }
  if (passes == 0) return cs;
  if (passes == n) {
    // every sampled angle is in contact
    cs.components.push_back({0.0, kTwoPi, false});
    cs.classification = ContactClass::FullCircle;
    return cs;
  }

  // maximal cyclic runs of in-contact samples
  std::vector<std::pair<int, int>> runs;  // [begin, end] inclusive, indices mod n
  int rot = 0;
  while (rot < n && d[rot] >= r - tol_run) ++rot;
  if (rot == n) rot = 0;
  auto in = [&](int k) { return d[(k + rot) % n] >= r - tol_run; };
  int start = -1;
  for (int k = 0; k < n; ++k) {
    if (in(k) && start < 0) start = k;
    if (start >= 0 && (!in(k) || k + 1 == n)) {
      int end = in(k) ? k : k - 1;
      runs.push_back({start, end});
      start = -1;
    }
  }

  auto inside = [&](double theta) { return depth(theta) >= r - tol_exact; };
  for (const auto& [b, e] : runs) {
    double lo = (b + rot) * step - step;
    double hi = (e + rot) * step + step;
    // confirm the contact: the depth must actually reach r on the run
    double m_lo = lo, m_hi = hi;
    for (int it = 0; it < 80; ++it) {
      double t1 = m_lo + (m_hi - m_lo) / 3, t2 = m_hi - (m_hi - m_lo) / 3;
      if (depth(t1) < depth(t2)) m_lo = t1;
      else m_hi = t2;
    }
    double peak = 0.5 * (m_lo + m_hi);
    if (!inside(peak)) {
      // flat runs hide the peak from the ternary search; fall back to the
      // best sample of the run
      double best = -1e300;
      for (int k = b; k <= e; ++k) {
        double a = (k + rot) * step;
        if (d[(k + rot) % n] > best) { best = d[(k + rot) % n]; peak = a; }
      }
      if (!inside(peak)) continue;  // grazing pass, not a contact
    }
    // trim both ends at the tight tolerance
    auto trim = [&](double outer) {
      if (inside(outer)) return outer;
      double a = outer, bnd = peak;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (a + bnd);
        if (inside(mid)) bnd = mid;
        else a = mid;
      }
      return bnd;
    };
    double left = trim(lo);
    double right = trim(hi);
    ContactComponent comp;
    comp.angle_start = left;
    comp.sweep = std::max(0.0, right - left);
    comp.is_point = comp.sweep <= prm.point_sweep;
    cs.components.push_back(comp);
  }
  cs.classification = classify(cs, prm.tol_angle);
  return cs;
}

struct BoundaryPointsResult {
  enum class Kind { Points, SingletonCore } kind{Kind::Points};
  std::vector<Point2> points;      // detected manifold-boundary points (S*)
  int other_count{0};              // samples that matched neither verdict
  int samples{0};
};

// Sample the core and keep the points whose contact set is a semicircle.
inline BoundaryPointsResult boundary_points(const Shape& shape, double r, int samples = 200,
                                            const ContactParams& prm_in = {}) {
  BoundaryPointsResult res;
  if (shape.primitives.size() == 1 && std::holds_alternative<SitePoint>(shape.primitives[0])) {
    res.kind = BoundaryPointsResult::Kind::SingletonCore;
    return res;
  }
  ContactParams prm = prm_in;
  if (prm.reach_lower < 0) prm.reach_lower = estimate_reach(shape).lower;
  double total = shape.total_boundary_length();
  double ds = std::max(total / std::max(4, samples), 1e-9);
  auto bs = sample_boundary(shape, ds);
  res.samples = static_cast<int>(bs.size());
  for (const auto& s : bs) {
    ContactSet cs = contact_set(shape, r, s.p, kPi / 720.0, prm);
    if (cs.classification == ContactClass::Semicircle) {
      bool dup = false;
      for (const auto& q : res.points)
        if (dist(q, s.p) < 2.0 * ds) { dup = true; break; }
      if (!dup) res.points.push_back(s.p);
    } else if (cs.classification == ContactClass::Other) {
      ++res.other_count;
    }
  }
  return res;
}

}  // namespace medgeo
