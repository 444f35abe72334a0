#pragma once
// Arc-length parametrized curves built from primitive chains: position,
// unwrapped tangent angle, curvature, and cumulative turning.

#include <algorithm>
#include <vector>

#include "medgeo/primitives.hpp"

namespace medgeo {

struct CurveSample {
  double s{0.0};
  Point2 p;
  double phi{0.0};    // unwrapped tangent angle; tangent = (cos phi, sin phi)
  double kappa{0.0};  // signed curvature w.r.t. the +90-degree normal
};

struct ArcCurve {
  std::vector<CurveSample> samples;
  double length{0.0};
  bool closed{false};
  std::vector<double> corner_s;    // arc lengths of G1-violating joints
  std::vector<Point2> corner_pts;  // exact joint positions, same order
  double max_corner_angle{0.0};

  UnitVec tangent_at_sample(std::size_t i) const {
    return UnitVec::from_angle(samples[i].phi);
  }
  UnitVec normal_at_sample(std::size_t i) const {
    return tangent_at_sample(i).rot90();
  }
  // Signed area enclosed (shoelace over the samples); positive = CCW.
  double signed_area() const {
    double a = 0;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i)
      a += samples[i].p.cross(samples[i + 1].p);
    if (!closed && samples.size() > 1) a += samples.back().p.cross(samples.front().p);
    return 0.5 * a;
  }
  double total_turning() const {
    return samples.empty() ? 0.0 : samples.back().phi - samples.front().phi;
  }
};

enum class JointPolicy { RequireG1, AllowCorners };

struct CurveEval {
  Point2 p;
  UnitVec tangent;
  UnitVec normal;
  double kappa{0.0};
};

namespace detail {

// One oriented piece of a chain. reversed flips traversal direction (and the
// sign of curvature).
struct ChainPiece {
  const Primitive* prim;
  bool reversed{false};
  double length{0.0};
  // polycurve cumulative edge lengths, forward orientation
  std::vector<double> cum;

  Point2 start() const { return eval_point(0.0); }
  Point2 end() const { return eval_point(length); }

  Point2 eval_point(double s) const {
    double sf = reversed ? length - s : s;
    return primitive_point(*prim, sf);
  }

  double tangent_angle(double s) const {
    double sf = reversed ? length - s : s;
    double ang = 0.0;
    if (const auto* sg = std::get_if<Segment>(prim)) {
      ang = std::atan2(sg->b.y - sg->a.y, sg->b.x - sg->a.x);
    } else if (const auto* arc = std::get_if<CircArc>(prim)) {
      double theta = arc->start_angle + sf / arc->radius;
      ang = theta + kPi / 2.0;
    } else if (const auto* pc = std::get_if<Polycurve>(prim)) {
      std::size_t e = edge_index(sf);
      Segment seg = pc->edge(e);
      ang = std::atan2(seg.b.y - seg.a.y, seg.b.x - seg.a.x);
    }
    return reversed ? ang + kPi : ang;
  }

  double curvature(double s) const {
    (void)s;
    if (const auto* arc = std::get_if<CircArc>(prim))
      return (reversed ? -1.0 : 1.0) / arc->radius;
    return 0.0;  // segments exact; polycurves get finite differences later
  }

  bool is_polycurve() const { return std::holds_alternative<Polycurve>(*prim); }

  std::size_t edge_index(double sf) const {
    auto it = std::upper_bound(cum.begin(), cum.end(), sf);
    std::size_t i = static_cast<std::size_t>(it - cum.begin());
    if (i > 0) --i;
    const auto& pc = std::get<Polycurve>(*prim);
    return std::min(i, pc.edge_count() - 1);
  }
};

inline ChainPiece make_piece(const Primitive& prim, bool reversed) {
  ChainPiece cp;
  cp.prim = &prim;
  cp.reversed = reversed;
  cp.length = primitive_length(prim);
  if (const auto* pc = std::get_if<Polycurve>(&prim)) {
    cp.cum.resize(pc->edge_count());
    double acc = 0;
    for (std::size_t i = 0; i < pc->edge_count(); ++i) {
      cp.cum[i] = acc;
      acc += pc->edge(i).length();
    }
  }
  return cp;
}

}  // namespace detail

// Resample a chain of primitives by arc length. Pieces are auto-oriented so
// consecutive endpoints connect; set reverse_first to flip the seed
// orientation (used to enforce loop handedness). Site points are not chain
// material.
inline ArcCurve build_arclength(const std::vector<Primitive>& chain, double ds,
                                JointPolicy policy = JointPolicy::RequireG1,
                                bool reverse_first = false) {
  if (chain.empty()) throw Error(Err::InvalidArgument, "empty chain");
  if (!(ds > 0)) throw Error(Err::InvalidArgument, "ds must be > 0");
  for (const auto& p : chain) {
    validate_primitive(p);
    if (std::holds_alternative<SitePoint>(p))
      throw Error(Err::InvalidArgument, "site points cannot be chained");
  }

  std::vector<detail::ChainPiece> pieces;
  pieces.push_back(detail::make_piece(chain[0], reverse_first));
  double scale = 1.0 + primitive_bbox(chain[0]).diag();
  for (std::size_t i = 1; i < chain.size(); ++i) {
    Point2 cur_end = pieces.back().end();
    detail::ChainPiece fwd = detail::make_piece(chain[i], false);
    detail::ChainPiece rev = detail::make_piece(chain[i], true);
    double df = dist(cur_end, fwd.start());
    double dr = dist(cur_end, rev.start());
    double join_tol = 1e-6 * scale;
    if (std::min(df, dr) > join_tol)
      throw Error(Err::InvalidArgument, "chain pieces do not connect");
    pieces.push_back(df <= dr ? fwd : rev);
  }

  bool closed = chain.size() == 1 && pieces[0].length > 0 &&
                dist(pieces[0].start(), pieces[0].end()) <= 1e-9 * scale;
  if (chain.size() > 1)
    closed = dist(pieces.back().end(), pieces.front().start()) <= 1e-6 * scale;
  if (const auto* arc = std::get_if<CircArc>(&chain[0]); chain.size() == 1 && arc)
    closed = arc->full_circle();
  if (const auto* pc = std::get_if<Polycurve>(&chain[0]); chain.size() == 1 && pc)
    closed = pc->closed;

  ArcCurve curve;
  curve.closed = closed;
  double total = 0;
  for (const auto& p : pieces) total += p.length;
  if (!(total > 0)) throw Error(Err::InvalidArgument, "chain has zero length");
  curve.length = total;

  // joint continuity; a single closed polycurve wraps through an ordinary
  // vertex, not a joint
  std::size_t joints = pieces.size() - 1 + (closed ? 1 : 0);
  if (pieces.size() == 1 && std::holds_alternative<Polycurve>(chain[0])) joints = 0;
  double acc = 0;
  for (std::size_t j = 0; j < joints; ++j) {
    const auto& in = pieces[j];
    const auto& out = pieces[(j + 1) % pieces.size()];
    acc += in.length;
    double jump = std::abs(wrap_angle(out.tangent_angle(0.0) - in.tangent_angle(in.length)));
    if (jump > 1e-6) {
      if (policy == JointPolicy::RequireG1)
        throw Error(Err::NotG1, "tangent jump " + std::to_string(jump) + " rad at joint");
      curve.corner_s.push_back(closed && j + 1 == pieces.size() ? 0.0 : acc);
      curve.corner_pts.push_back(out.start());
      curve.max_corner_angle = std::max(curve.max_corner_angle, jump);
    }
  }

  int n = std::max(2, static_cast<int>(std::ceil(total / ds)));
  curve.samples.resize(static_cast<std::size_t>(n) + 1);

  // piece start offsets
  std::vector<double> piece_s(pieces.size() + 1, 0.0);
  for (std::size_t i = 0; i < pieces.size(); ++i) piece_s[i + 1] = piece_s[i] + pieces[i].length;

  double prev_phi = 0.0;
  bool first = true;
  std::vector<bool> fd_kappa(curve.samples.size(), false);
  for (int k = 0; k <= n; ++k) {
    double s = total * k / n;
    // locate piece; samples exactly on a joint attribute to the incoming piece
    std::size_t pi = 0;
    while (pi + 1 < pieces.size() && s > piece_s[pi + 1] + 1e-15 * total) ++pi;
    if (pi + 1 < pieces.size() && s >= piece_s[pi + 1] - 1e-15 * total && k == n) pi = pieces.size() - 1;
    double ls = std::clamp(s - piece_s[pi], 0.0, pieces[pi].length);
    CurveSample& cs = curve.samples[static_cast<std::size_t>(k)];
    cs.s = s;
    cs.p = pieces[pi].eval_point(ls);
    double ang = pieces[pi].tangent_angle(ls);
    if (first) {
      cs.phi = wrap_angle(ang);
      first = false;
    } else {
      cs.phi = prev_phi + wrap_angle(ang - prev_phi);
    }
    prev_phi = cs.phi;
    cs.kappa = pieces[pi].curvature(ls);
    fd_kappa[static_cast<std::size_t>(k)] = pieces[pi].is_polycurve();
  }

  // finite-difference curvature where the chain is a polycurve
  for (std::size_t k = 0; k < curve.samples.size(); ++k) {
    if (!fd_kappa[k]) continue;
    std::size_t nn = curve.samples.size();
    if (closed) {
      std::size_t km = (k + nn - 2) % (nn - 1);
      std::size_t kp = (k + 1) % (nn - 1);
      double dphi = wrap_angle(curve.samples[kp].phi - curve.samples[km].phi);
      curve.samples[k].kappa = dphi / (2.0 * total / n);
    } else if (k == 0) {
      curve.samples[k].kappa =
          (curve.samples[1].phi - curve.samples[0].phi) / (total / n);
    } else if (k + 1 == nn) {
      curve.samples[k].kappa =
          (curve.samples[k].phi - curve.samples[k - 1].phi) / (total / n);
    } else {
      curve.samples[k].kappa =
          (curve.samples[k + 1].phi - curve.samples[k - 1].phi) / (2.0 * total / n);
    }
  }
  return curve;
}

// Evaluate by linear interpolation between bracketing samples; closed curves
// wrap modulo the length.
inline CurveEval curve_eval(const ArcCurve& curve, double s) {
  if (curve.samples.size() < 2) throw Error(Err::InvalidArgument, "curve has no samples");
  double L = curve.length;
  if (curve.closed) {
    s = std::fmod(s, L);
    if (s < 0) s += L;
  } else if (s < -1e-12 * (1.0 + L) || s > L + 1e-12 * (1.0 + L)) {
    throw Error(Err::OutOfRange, "s outside [0, L] on an open curve");
  }
  s = std::clamp(s, 0.0, L);
  std::size_t lo = 0, hi = curve.samples.size() - 1;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (curve.samples[mid].s <= s) lo = mid; else hi = mid;
  }
  const CurveSample& A = curve.samples[lo];
  const CurveSample& B = curve.samples[hi];
  double span = std::max(1e-300, B.s - A.s);
  double t = std::clamp((s - A.s) / span, 0.0, 1.0);
  CurveEval ev;
  ev.p = A.p + (B.p - A.p) * t;
  double phi = A.phi + (B.phi - A.phi) * t;
  ev.tangent = UnitVec::from_angle(phi);
  ev.normal = ev.tangent.rot90();
  ev.kappa = A.kappa + (B.kappa - A.kappa) * t;
  return ev;
}

// Reverse the traversal direction of a built curve: tangents flip by pi and
// curvature changes sign.
inline ArcCurve reversed(const ArcCurve& c) {
  ArcCurve r;
  r.length = c.length;
  r.closed = c.closed;
  r.max_corner_angle = c.max_corner_angle;
  std::size_t n = c.samples.size();
  r.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CurveSample& s = c.samples[n - 1 - i];
    r.samples[i] = CurveSample{c.length - s.s, s.p, s.phi + kPi, -s.kappa};
  }
  for (std::size_t i = c.corner_s.size(); i-- > 0;) {
    r.corner_s.push_back(c.length - c.corner_s[i]);
    r.corner_pts.push_back(c.corner_pts[i]);
  }
  return r;
}

// Build a loop with prescribed handedness (positive signed area = CCW).
inline ArcCurve oriented_loop(const std::vector<Primitive>& chain, double ds,
                              JointPolicy policy, bool want_ccw) {
  ArcCurve c = build_arclength(chain, ds, policy, false);
  if ((c.signed_area() > 0) != want_ccw) c = reversed(c);
  return c;
}

}  // namespace medgeo
