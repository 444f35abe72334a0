#pragma once
// Theorem-level verifiers: the tube lemma round trip, domains whose high
// ridge and cut locus agree, and the convex-domain ball certificate.

#include "medgeo/contact_sets.hpp"
#include "medgeo/normal_distance.hpp"
#include "medgeo/parallel_sets.hpp"
#include "medgeo/probes.hpp"

namespace medgeo {

inline Domain domain_from_offset(const OffsetBoundary& ob, Regularity tag,
                                 std::string label = "") {
  if (label.empty()) label = ob.source_label + "-tube";
  bool simply = ob.chains.size() == 1;
  return make_domain(ob.chains, tag, simply, label);
}

struct TubeLemmaReport {
  double r{0.0};
  double h{0.0};
  double high_dist{0.0};      // one-sided Hausdorff of each extracted set to the core
  double skeleton_dist{0.0};
  double central_dist{0.0};
  double cut_dist{0.0};
  double lambda_max_dev{0.0};  // max |lambda - r| over boundary samples
  bool pass{false};
};

// Lemma check: the tube S_r of a connected empty-interior core has all four
// singular sets on the core and lambda == r along the tube boundary.
inline TubeLemmaReport tube_lemma_check(const Shape& core, double r, double h,
                                        double reach_lower = -1.0) {
  if (reach_lower < 0) reach_lower = estimate_reach(core).lower;
  if (r >= reach_lower)
    throw Error(Err::ReachExceeded, "tube lemma requires r below the reach bound");
  OffsetParams op;
  op.reach_lower = reach_lower;
  OffsetBoundary ob = offset_boundary(core, r, OffsetMethod::Analytic, op);
  Regularity tag = ob.max_corner_angle > 1e-6 ? Regularity::C0 : Regularity::C1;
  Domain dom = domain_from_offset(ob, tag);
  DistanceField field = grid_transform(dom, h);

  auto dist_to_core = [&](const std::vector<Point2>& pts) {
    double worst = 0;
    for (const auto& p : pts) worst = std::max(worst, shape_distance(core, p).distance);
    return worst;
  };

  TubeLemmaReport rep;
  rep.r = r;
  rep.h = h;
  // band measured from the known tube radius, not from the grid max, so the
  // quantization of rho does not widen it
  std::vector<Point2> high;
  for (int iy = 0; iy < field.ny; ++iy)
    for (int ix = 0; ix < field.nx; ++ix)
      if (field.is_inside(ix, iy) && field.value(ix, iy) >= r - 2.0 * h)
        high.push_back(field.node(ix, iy));
  rep.high_dist = dist_to_core(high);
  rep.skeleton_dist = dist_to_core(skeleton(field));
  rep.central_dist = dist_to_core(central_set(field));
  rep.cut_dist = dist_to_core(cut_locus(field));

  LambdaParams lp;
  lp.n_samples = 160;
  LambdaProfile prof = lambda_profile(dom, r, h, lp);
  rep.lambda_max_dev = std::max(std::abs(prof.max - r), std::abs(prof.min - r));

  double tol = 2.0 * h + 1e-12;
  rep.pass = rep.high_dist <= tol && rep.skeleton_dist <= tol && rep.central_dist <= tol &&
             rep.cut_dist <= tol && rep.lambda_max_dev <= tol;
  return rep;
}

enum class CoreClass { Singleton, ClosedCurve, CurveWithBoundary, Other };

inline const char* core_class_name(CoreClass c) {
  switch (c) {
    case CoreClass::Singleton: return "Singleton";
    case CoreClass::ClosedCurve: return "ClosedCurve";
    case CoreClass::CurveWithBoundary: return "CurveWithBoundary";
    case CoreClass::Other: return "Other";
  }
  return "?";
}

struct VerifierReport {
  bool hypothesis_ok{false};       // high ridge and cut locus agree at 2h
  double high_cut_hausdorff{0.0};
  std::vector<Point2> S_points;
  double rho{0.0};
  double tube_hausdorff{-1.0};     // boundary of the rebuilt rho-tube vs the domain boundary
  CoreClass shape_class{CoreClass::Other};
  bool c2_class_ok{true};          // C2-tagged domains must yield singleton/closed curve
  bool disk_checked{false};
  bool disk_verdict{false};
  bool ball_checked{false};
  bool ball_verdict{false};
  double isoperimetric{0.0};       // |dOmega|^2 / (4 pi |Omega|)
  double curvature_jump{0.0};      // stadium-style C2 defect along the boundary
  std::string note;
};

namespace detail {

// keep nodes that are crest-like within the cloud, thinning the band the
// grid extractor produces
inline std::vector<Point2> thin_cloud(const std::vector<Point2>& cloud,
                                      const DistanceField& f) {
  std::vector<Point2> out;
  for (const auto& p : cloud) {
    int ix = static_cast<int>(std::lround((p.x - f.origin.x) / f.h));
    int iy = static_cast<int>(std::lround((p.y - f.origin.y) / f.h));
    double dp = f.value(ix, iy);
    bool crest = true;
    for (const auto& q : cloud) {
      if (dist(p, q) > 2.0 * f.h) continue;
      int jx = static_cast<int>(std::lround((q.x - f.origin.x) / f.h));
      int jy = static_cast<int>(std::lround((q.y - f.origin.y) / f.h));
      if (f.value(jx, jy) > dp + 0.35 * f.h) { crest = false; break; }
    }
    if (crest) out.push_back(p);
  }
  return out.empty() ? cloud : out;
}

inline double polyline_hausdorff_to_curves(const std::vector<std::vector<Point2>>& a,
                                           const std::vector<ArcCurve>& b) {
  std::vector<Point2> pa, pb;
  for (const auto& loop : a)
    for (const auto& p : loop) pa.push_back(p);
  for (const auto& lc : b)
    for (const auto& s : lc.samples) pb.push_back(s.p);
  return two_sided_hausdorff(pa, pb);
}

// Endpoint test on a curve-like cloud: around a true endpoint, neighbors
// extend to one side of the local tangent only.
inline bool cloud_endpoint_like(const std::vector<Point2>& cloud, const Point2& c,
                                double radius, double h) {
  Vec2 mean{0, 0};
  int n = 0;
  for (const auto& q : cloud) {
    if (dist(q, c) > radius) continue;
    mean += q - c;
    ++n;
  }
  if (n < 2) return true;
  mean = mean / n;
  // principal direction from the 2x2 scatter
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& q : cloud) {
    if (dist(q, c) > radius) continue;
    Vec2 d = q - c;
    sxx += d.x * d.x;
    sxy += d.x * d.y;
    syy += d.y * d.y;
  }
  double theta = 0.5 * std::atan2(2 * sxy, sxx - syy);
  Vec2 t{std::cos(theta), std::sin(theta)};
  double lo = 0, hi = 0;
  for (const auto& q : cloud) {
    if (dist(q, c) > radius) continue;
    double s = (q - c).dot(t);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return std::min(-lo, hi) <= 2.0 * h;
}

inline CoreClass classify_core_cloud(const std::vector<Point2>& cloud, double rho, double h) {
  (void)rho;
  if (cloud.empty()) return CoreClass::Other;
  double diam = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.size(); ++j)
      diam = std::max(diam, dist(cloud[i], cloud[j]));
  if (diam <= 3.0 * h) return CoreClass::Singleton;

  double radius = std::max(8.0 * h, 0.15 * diam);
  std::vector<Point2> ends;
  for (const auto& c : cloud) {
    if (!cloud_endpoint_like(cloud, c, radius, h)) continue;
    bool dup = false;
    for (const auto& e : ends)
      if (dist(e, c) <= 1.2 * radius) { dup = true; break; }
    if (!dup) ends.push_back(c);
  }
  if (ends.empty()) return CoreClass::ClosedCurve;
  if (ends.size() <= 4) return CoreClass::CurveWithBoundary;
  return CoreClass::Other;
}

}  // namespace detail

inline double isoperimetric_ratio(const Domain& dom) {
  double P = dom.perimeter();
  double A = dom.area();
  return P * P / (4.0 * kPi * A);
}

// Domains with high == Cut are tubes around their own singular set; rebuild
// the tube and compare. C2-tagged simply connected passers must be disks.
inline VerifierReport verify_high_equals_cut(const Domain& dom, const DistanceField& field,
                                             const SingularParams& prm = {}) {
  VerifierReport rep;
  auto [rho, high] = high_ridge(field, prm.eps_high);
  auto cut = cut_locus(field, prm);
  rep.rho = rho;
  rep.high_cut_hausdorff = two_sided_hausdorff(high, cut);
  rep.hypothesis_ok = rep.high_cut_hausdorff <= 2.0 * field.h + 1e-12;
  if (!rep.hypothesis_ok) {
    rep.note = "high ridge and cut locus differ beyond 2h; characterization not applicable";
    return rep;
  }
  rep.S_points = detail::thin_cloud(cut, field);

  // rebuild the rho-tube around the recovered core and compare boundaries
  Shape cloud_shape = [&] {
    std::vector<Primitive> prims;
    for (const auto& p : rep.S_points) prims.push_back(SitePoint{p});
    return Shape(prims, dom.label + "-core");
  }();
  double hc = field.h / 2.0;
  BBox box = dom.bbox.inflated(4.0 * field.h);
  auto tube_loops = detail::trace_level_set(
      box, hc, rho, [&](const Point2& q) { return shape_distance(cloud_shape, q).distance; },
      kDefaultNodeBudget);
  rep.tube_hausdorff = detail::polyline_hausdorff_to_curves(tube_loops, dom.loop_curves);

  rep.shape_class = detail::classify_core_cloud(rep.S_points, rho, field.h);
  if (dom.tag == Regularity::C2) {
    rep.c2_class_ok = rep.shape_class == CoreClass::Singleton ||
                      rep.shape_class == CoreClass::ClosedCurve;
    if (dom.simply_connected) {
      rep.disk_checked = true;
      rep.isoperimetric = isoperimetric_ratio(dom);
      rep.disk_verdict =
          rep.shape_class == CoreClass::Singleton && rep.isoperimetric <= 1.0 + 1e-2;
    }
  }
  return rep;
}

// Convex C2 domains with high == Cut must be balls. Non-C2 convex domains
// get the stadium diagnostic: the curvature jump where caps meet straights.
inline VerifierReport verify_convex_ball(const Domain& dom, const DistanceField& field,
                                         const SingularParams& prm = {}) {
  // convexity certificate: single loop, nonnegative turning, total 2 pi
  if (dom.hole_count() != 0) throw Error(Err::NotConvex, "domain has holes");
  const ArcCurve& outer = dom.loop_curves[0];
  const auto& s = outer.samples;
  for (std::size_t i = 0; i + 2 < s.size(); ++i) {
    Vec2 u = s[i + 1].p - s[i].p;
    Vec2 v = s[i + 2].p - s[i + 1].p;
    if (u.cross(v) < -1e-9 * u.norm() * v.norm() - 1e-15)
      throw Error(Err::NotConvex, "boundary turns clockwise");
  }

  VerifierReport rep = verify_high_equals_cut(dom, field, prm);
  if (!rep.hypothesis_ok) {
    rep.note = "high ridge and cut locus differ; convex ball theorem not applicable";
    return rep;
  }

  double diam = 0;
  for (std::size_t i = 0; i < rep.S_points.size(); ++i)
    for (std::size_t j = i + 1; j < rep.S_points.size(); ++j)
      diam = std::max(diam, dist(rep.S_points[i], rep.S_points[j]));

  // C2 defect: largest curvature jump between adjacent boundary samples
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    rep.curvature_jump = std::max(rep.curvature_jump, std::abs(s[i + 1].kappa - s[i].kappa));

  if (dom.tag != Regularity::C2) {
    rep.ball_checked = false;
    if (diam > 3.0 * field.h) {
      rep.note = "not C2 (curvature jump " + std::to_string(rep.curvature_jump) +
                 "); stadium-like cross-section through the two farthest core points; "
                 "theorem inapplicable";
    } else {
      rep.note = "not C2; theorem inapplicable";
    }
    return rep;
  }
  rep.ball_checked = true;
  rep.isoperimetric = isoperimetric_ratio(dom);
  rep.ball_verdict = diam <= 3.0 * field.h && rep.isoperimetric <= 1.0 + 1e-2;
  if (!rep.ball_verdict)
    rep.note = "C2 convex domain with high == cut failed the ball certificate";
  return rep;
}

}  // namespace medgeo
