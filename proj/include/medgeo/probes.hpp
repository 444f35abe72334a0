#pragma once
// Sampled verifications of the distance identities around a tube boundary
// and of the projection Lipschitz bound.

#include "medgeo/parallel_sets.hpp"

namespace medgeo {

struct IdentityReport {
  double r{0.0};
  double max_violation_inner{0.0};  // d_{(S_r)^c} = r - d_S on {0 < d_S < r}
  double max_violation_outer{0.0};  // d_{closure(S_r)} = d_S - r on {r < d_S < r_S}
  int samples_inner{0};
  int samples_outer{0};
  std::uint64_t seed{0};

  double max_violation() const { return std::max(max_violation_inner, max_violation_outer); }
};

// Verifies both tube distance identities against the analytic offset
// boundary. Sample points come from a seeded low-discrepancy stream.
inline IdentityReport check_complement_identity(const Shape& shape, double r, int samples,
                                                double reach_lower = -1.0,
                                                std::uint64_t seed = 0) {
  if (reach_lower < 0) reach_lower = estimate_reach(shape).lower;
  if (r >= reach_lower)
    throw Error(Err::ReachExceeded, "identity check requires r below the reach bound");

  OffsetParams op;
  op.reach_lower = reach_lower;
  OffsetBoundary ob = offset_boundary(shape, r, OffsetMethod::Analytic, op);
  Shape offset_shape = ob.as_shape();

  IdentityReport rep;
  rep.r = r;
  rep.seed = seed;
  double r_s = std::min(reach_lower, r + 2.0 * r + 1.0);
  BBox box = shape.bbox.inflated(r_s);
  R2Seq seq(seed);
  int want_each = samples / 2;
  int guard = samples * 200;
  while ((rep.samples_inner < want_each || rep.samples_outer < want_each) && guard-- > 0) {
    Point2 x = seq.next_in(box);
    double d = shape_distance(shape, x).distance;
    double d_off = shape_distance(offset_shape, x).distance;
    if (d > 1e-9 && d < r - 1e-9 && rep.samples_inner < want_each) {
      // x inside the tube: distance to the complement is the distance to the
      // offset boundary
      rep.max_violation_inner =
          std::max(rep.max_violation_inner, std::abs(d_off - (r - d)));
      ++rep.samples_inner;
    } else if (d > r + 1e-9 && d < r_s - 1e-9 && rep.samples_outer < want_each) {
      rep.max_violation_outer =
          std::max(rep.max_violation_outer, std::abs(d_off - (d - r)));
      ++rep.samples_outer;
    }
  }
  return rep;
}

struct LipschitzReport {
  double max_ratio{0.0};
  double bound{0.0};  // r_S / (r_S - r)
  int pairs{0};
  std::uint64_t seed{0};
};

// Max |pi(x) - pi(x')| / |x - x'| over close unique-projection pairs inside
// {0 < d_S < r}; must stay within r_S / (r_S - r).
inline LipschitzReport projection_lipschitz_probe(const Shape& shape, double r, double r_S,
                                                  int pairs, std::uint64_t seed = 0) {
  if (!(r > 0) || !(r < r_S))
    throw Error(Err::InvalidArgument, "need 0 < r < r_S");
  LipschitzReport rep;
  rep.bound = r_S / (r_S - r);
  rep.seed = seed;
  BBox box = shape.bbox.inflated(r);
  R2Seq seq(seed);
  SplitMix64 rng(seed * 977 + 3);
  double step = 1e-4 * (1.0 + shape.scale());
  int guard = pairs * 400;
  while (rep.pairs < pairs && guard-- > 0) {
    Point2 x = seq.next_in(box);
    ProjectionResult px = shape_distance(shape, x, 1e-12);
    if (!(px.distance > 1e-9) || px.distance >= r - 1e-9) continue;
    if (px.multiplicity != 1 || px.continuum) continue;
    double ang = rng.uniform(0.0, kTwoPi);
    Point2 x2 = x + Vec2{std::cos(ang), std::sin(ang)} * step;
    ProjectionResult px2 = shape_distance(shape, x2, 1e-12);
    if (!(px2.distance > 1e-9) || px2.distance >= r - 1e-9) continue;
    if (px2.multiplicity != 1 || px2.continuum) continue;
    double ratio = dist(px.projections[0].p, px2.projections[0].p) / dist(x, x2);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    ++rep.pairs;
  }
  return rep;
}

}  // namespace medgeo
