#pragma once
// Proximal smoothness radius (reach) estimation, the fixed-radius uniqueness
// probe, and the exterior sphere check.

#include <optional>

#include "medgeo/distance_field.hpp"
#include "medgeo/primitives.hpp"

namespace medgeo {

struct ReachWitness {
  Point2 x;   // probe point with (near-)double projection
  Point2 y1;
  Point2 y2;
};

struct ReachEstimate {
  double lower{0.0};
  double upper{0.0};  // +inf sentinel for convex single primitives
  std::optional<ReachWitness> witness;
  int probes{0};
  std::uint64_t seed{0};

  bool upper_finite() const { return upper < 1e299; }
};

struct ReachParams {
  double r_cap{10.0};        // truncation for shapes with unbounded reach
  double boundary_ds{-1.0};  // <= 0: scale / 300
  int fan_directions{48};
  int ladder_steps{16};
  int bisect_iters{48};
  int pair_stride{3};        // subsampling stride for bottleneck pairs
  std::uint64_t seed{0};
};

namespace detail {

struct Ray {
  Point2 y;
  int prim;
  double local_s;
  Vec2 dir;  // unit
};

inline bool foot_returns(const Shape& shape, const Ray& ray, const ProjectionResult& pr,
                         double sheet_gap) {
  // every (near-)minimizer must stay on the launch sheet near the launch
  ProjFoot here{ray.y, ray.prim, ray.local_s};
  if (pr.continuum) return false;
  for (const auto& g : pr.projections)
    if (distinct_sheets(shape, here, g, sheet_gap)) return false;
  return true;
}

// Rays along which double projections can appear: both normals of curve
// samples, full fans at site points, and fans at open chain endpoints.
inline std::vector<Ray> probe_rays(const Shape& shape, double ds, int fan) {
  std::vector<Ray> rays;
  auto samples = sample_boundary(shape, ds);
  for (const auto& bs : samples) {
    if (bs.has_tangent) {
      UnitVec n = UnitVec::from_angle(bs.tangent_angle).rot90();
      rays.push_back({bs.p, bs.prim, bs.local_s, n.vec()});
      rays.push_back({bs.p, bs.prim, bs.local_s, n.flipped().vec()});
    } else {
      for (int k = 0; k < fan; ++k) {
        double a = kTwoPi * k / fan;
        rays.push_back({bs.p, bs.prim, bs.local_s, Vec2{std::cos(a), std::sin(a)}});
      }
    }
  }
  // endpoint fans
  for (std::size_t pi = 0; pi < shape.primitives.size(); ++pi) {
    const Primitive& prim = shape.primitives[pi];
    std::vector<std::pair<Point2, double>> ends;
    if (const auto* sg = std::get_if<Segment>(&prim)) {
      ends = {{sg->a, 0.0}, {sg->b, sg->length()}};
    } else if (const auto* arc = std::get_if<CircArc>(&prim)) {
      if (!arc->full_circle()) ends = {{arc->start_point(), 0.0}, {arc->end_point(), arc->length()}};
    } else if (const auto* pc = std::get_if<Polycurve>(&prim)) {
      if (!pc->closed) ends = {{pc->vertices.front(), 0.0}, {pc->vertices.back(), pc->length()}};
    }
    for (const auto& [p, s] : ends)
      for (int k = 0; k < fan; ++k) {
        double a = kTwoPi * k / fan;
        rays.push_back({p, static_cast<int>(pi), s, Vec2{std::cos(a), std::sin(a)}});
      }
  }
  return rays;
}

struct RayFailure {
  double t;
  ReachWitness witness;
};

// First radius along the ray at which the projection stops being the launch
// point; nullopt when none occurs below cap.
inline std::optional<RayFailure> first_failure(const Shape& shape, const Ray& ray, double cap,
                                               double sheet_gap, const ReachParams& prm) {
  double scale = shape.scale();
  double t0 = 1e-6 * scale;
  auto probe = [&](double t) { return shape_distance(shape, ray.y + ray.dir * t); };
  ProjectionResult pr0 = probe(t0);
  ProjFoot here{ray.y, ray.prim, ray.local_s};
  bool jumped0 = pr0.continuum;
  for (const auto& g : pr0.projections)
    if (distinct_sheets(shape, here, g, sheet_gap)) jumped0 = true;
  if (jumped0) {
    return RayFailure{t0, {ray.y + ray.dir * t0, ray.y, pr0.projections.front().p}};
  }
  // not a normal ray: the ray slides along the set instead of leaving it
  if (dist(pr0.projections.front().p, ray.y) > 0.02 * t0 + 1e-12 * scale) return std::nullopt;

  double lo = t0;
  double hi = -1.0;
  for (int k = 1; k <= prm.ladder_steps; ++k) {
    double t = cap * k / prm.ladder_steps;
    if (t <= lo) continue;
    if (foot_returns(shape, ray, probe(t), sheet_gap)) {
      lo = t;
    } else {
      hi = t;
      break;
    }
  }
  if (hi < 0) return std::nullopt;
  for (int it = 0; it < prm.bisect_iters; ++it) {
    double mid = 0.5 * (lo + hi);
    if (foot_returns(shape, ray, probe(mid), sheet_gap))
      lo = mid;
    else
      hi = mid;
  }
  ProjectionResult prh = probe(hi);
  Point2 other = prh.projections.front().p;
  for (const auto& g : prh.projections)
    if (distinct_sheets(shape, here, g, sheet_gap)) { other = g.p; break; }
  return RayFailure{hi, {ray.y + ray.dir * hi, ray.y, other}};
}

inline bool near_primitive_endpoint(const Primitive& prim, double local_s, double tol) {
  if (std::holds_alternative<SitePoint>(prim)) return true;
  if (const auto* arc = std::get_if<CircArc>(&prim)) {
    if (arc->full_circle()) return false;
  }
  if (const auto* pc = std::get_if<Polycurve>(&prim)) {
    if (pc->closed) return false;
  }
  double L = primitive_length(prim);
  return local_s <= tol || local_s >= L - tol;
}

// Interior contact between two primitives (shared chain endpoints are fine,
// tangency away from endpoints is not). Candidate near-contacts found by
// sampling are sharpened with a ternary search along the primitive.
inline std::optional<ReachWitness> interior_touch(const Shape& shape, double ds) {
  double tol = 1e-6 * shape.scale();
  auto samples = sample_boundary(shape, ds);
  for (const auto& bs : samples) {
    const Primitive& own = shape.primitives[bs.prim];
    double own_len = primitive_length(own);
    for (std::size_t j = 0; j < shape.primitives.size(); ++j) {
      if (static_cast<int>(j) == bs.prim) continue;
      ProjectionResult pr = primitive_distance(shape.primitives[j], bs.p);
      if (pr.distance >= std::max(tol, 2.0 * ds)) continue;
      // sharpen the minimum over the local parameter window
      double lo = std::max(0.0, bs.local_s - 2 * ds);
      double hi = std::min(own_len, bs.local_s + 2 * ds);
      auto gap = [&](double s) {
        return primitive_distance(shape.primitives[j], primitive_point(own, s)).distance;
      };
      for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (gap(m1) < gap(m2)) hi = m2;
        else lo = m1;
      }
      double s_star = 0.5 * (lo + hi);
      Point2 y1 = primitive_point(own, s_star);
      ProjectionResult prr = primitive_distance(shape.primitives[j], y1);
      if (prr.distance >= tol) continue;
      bool end_i = near_primitive_endpoint(own, s_star, 2 * ds);
      bool end_j = near_primitive_endpoint(shape.primitives[j], prr.projections[0].local_s, 2 * ds);
      if (end_i && end_j) continue;  // chain joint, not a tangency
      ReachWitness w;
      w.x = (y1 + prr.projections[0].p) * 0.5;
      w.y1 = y1;
      w.y2 = prr.projections[0].p;
      return w;
    }
  }
  return std::nullopt;
}

inline double curvature_radius_bound(const Shape& shape) {
  double bound = 1e300;
  for (const auto& prim : shape.primitives) {
    if (const auto* arc = std::get_if<CircArc>(&prim)) {
      bound = std::min(bound, arc->radius);
    } else if (const auto* pc = std::get_if<Polycurve>(&prim)) {
      std::size_t n = pc->vertices.size();
      std::size_t edges = pc->edge_count();
      for (std::size_t i = 0; i < edges; ++i) {
        std::size_t j = (i + 1) % edges;
        if (!pc->closed && j == 0) break;
        Segment e1 = pc->edge(i), e2 = pc->edge(j);
        double a1 = std::atan2(e1.b.y - e1.a.y, e1.b.x - e1.a.x);
        double a2 = std::atan2(e2.b.y - e2.a.y, e2.b.x - e2.a.x);
        double turn = std::abs(wrap_angle(a2 - a1));
        double len = 0.5 * (e1.length() + e2.length());
        if (turn > 1e-12) bound = std::min(bound, len / turn);
      }
      (void)n;
    }
  }
  return bound;
}

}  // namespace detail

// Reach bracketing: upper from the curvature bound plus verified bottleneck
// pairs; lower from normal/fan shooting with per-ray bisection.
inline ReachEstimate estimate_reach(const Shape& shape, const ReachParams& prm = {}) {
  ReachEstimate est;
  est.seed = prm.seed;
  double scale = shape.scale();
  double ds = prm.boundary_ds > 0 ? prm.boundary_ds
                                  : std::max(scale / 300.0, 1e-6);
  double sheet_gap = 10.0 * ds;

  double upper = detail::curvature_radius_bound(shape);
  std::optional<ReachWitness> upper_witness;

  // single convex primitive: infinite reach
  if (shape.primitives.size() == 1 &&
      (std::holds_alternative<SitePoint>(shape.primitives[0]) ||
       std::holds_alternative<Segment>(shape.primitives[0]))) {
    est.lower = prm.r_cap;
    est.upper = 1e300;
    return est;
  }

  // interior tangency between primitives collapses the estimate to zero
  if (auto touch = detail::interior_touch(shape, ds)) {
    est.lower = 0.0;
    est.upper = 0.0;
    est.witness = *touch;
    return est;
  }

  auto samples = sample_boundary(shape, ds);

  // bottleneck pairs
  double bottleneck = 1e300;
  ReachWitness bw;
  for (std::size_t i = 0; i < samples.size(); i += prm.pair_stride) {
    for (std::size_t j = i + 1; j < samples.size(); j += prm.pair_stride) {
      ProjFoot fi{samples[i].p, samples[i].prim, samples[i].local_s};
      ProjFoot fj{samples[j].p, samples[j].prim, samples[j].local_s};
      if (!distinct_sheets(shape, fi, fj, sheet_gap)) continue;
      double half = 0.5 * dist(samples[i].p, samples[j].p);
      if (half >= bottleneck || half >= upper + ds) continue;
      Point2 m = (samples[i].p + samples[j].p) * 0.5;
      ProjectionResult pm = shape_distance(shape, m);
      if (pm.distance >= half - std::max(1e-9, 0.5 * ds * ds)) {
        bottleneck = half;
        bw = {m, samples[i].p, samples[j].p};
      }
    }
  }
  if (bottleneck < upper) {
    upper = bottleneck;
    upper_witness = bw;
  }

  // shooting
  double cap = std::min(prm.r_cap, upper * 1.25 + 1e-3 * scale);
  auto rays = detail::probe_rays(shape, ds, prm.fan_directions);
  double probe_min = cap;
  std::optional<ReachWitness> probe_witness;
  for (const auto& ray : rays) {
    auto fail = detail::first_failure(shape, ray, cap, sheet_gap, prm);
    if (fail && fail->t < probe_min) {
      probe_min = fail->t;
      probe_witness = fail->witness;
    }
  }
  est.probes = static_cast<int>(rays.size());

  if (probe_min < upper && probe_witness) {
    double d1 = dist(probe_witness->x, probe_witness->y1);
    double d2 = dist(probe_witness->x, probe_witness->y2);
    upper = 0.5 * (d1 + d2);
    upper_witness = probe_witness;
  }
  est.upper = upper;
  est.witness = upper_witness;
  est.lower = std::min(probe_min, est.upper);
  return est;
}

struct SmoothnessVerdict {
  bool proximally_smooth{true};
  std::optional<ReachWitness> witness;
  int probes{0};
};

// True iff no probed point of {0 < d_S < r} exhibits a double projection.
inline SmoothnessVerdict is_proximally_smooth(const Shape& shape, double r, int probes = 4000) {
  if (!(r > 0)) throw Error(Err::InvalidArgument, "r must be > 0");
  ReachParams prm;
  double scale = shape.scale();
  // budget the boundary sampling so ray count matches the probe request
  prm.boundary_ds = std::max(scale * 2.5 / std::max(100, probes), 1e-6);
  double ds = prm.boundary_ds;
  double sheet_gap = 10.0 * ds;
  auto rays = detail::probe_rays(shape, ds, prm.fan_directions);
  SmoothnessVerdict v;
  v.probes = static_cast<int>(rays.size());
  for (const auto& ray : rays) {
    auto fail = detail::first_failure(shape, ray, r, sheet_gap, prm);
    if (fail && fail->t < r) {
      v.proximally_smooth = false;
      v.witness = fail->witness;
      return v;
    }
  }
  return v;
}

struct ExteriorSphereVerdict {
  bool holds{true};
  std::optional<Point2> witness;  // core point with no admissible sphere
  int samples{0};
};

// Every sampled core point must admit a radius-r ball touching it whose
// interior misses the set. Candidate directions are scanned on a fan and the
// best one refined by ternary search on the angle.
inline ExteriorSphereVerdict exterior_sphere_check(const Shape& shape, double r,
                                                   int samples = 400) {
  if (!(r > 0)) throw Error(Err::InvalidArgument, "r must be > 0");
  double scale = shape.scale();
  double total = shape.total_boundary_length();
  double ds = total > 0 ? std::max(total / std::max(8, samples), 1e-9) : scale;
  auto bsamples = sample_boundary(shape, ds);
  ExteriorSphereVerdict v;
  v.samples = static_cast<int>(bsamples.size());
  double tol = 1e-6 * (1.0 + r);
  for (const auto& bs : bsamples) {
    auto depth = [&](double a) {
      Point2 c = bs.p + Vec2{std::cos(a), std::sin(a)} * r;
      return shape_distance(shape, c).distance;
    };
    int K = 64;
    double best_a = 0, best_d = -1;
    for (int k = 0; k < K; ++k) {
      double a = kTwoPi * k / K;
      double d = depth(a);
      if (d > best_d) { best_d = d; best_a = a; }
    }
    // ternary refinement around the best direction
    double lo = best_a - kTwoPi / K, hi = best_a + kTwoPi / K;
    for (int it = 0; it < 60; ++it) {
      double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (depth(m1) < depth(m2)) lo = m1; else hi = m2;
    }
    best_d = std::max(best_d, depth(0.5 * (lo + hi)));
    if (best_d < r - tol) {
      v.holds = false;
      v.witness = bs.p;
      return v;
    }
  }
  return v;
}

}  // namespace medgeo
