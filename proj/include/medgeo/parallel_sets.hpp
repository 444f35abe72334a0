#pragma once
// Tubular neighborhood boundaries (analytic primitive offsetting and grid
// contour tracing), core recovery from a tube boundary, the 1 - r*kappa
// profile, and tube area measurement with a quadratic fit.

#include <map>
#include <unordered_map>

#include "medgeo/distance_field.hpp"
#include "medgeo/reach.hpp"

namespace medgeo {

enum class OffsetMethod { Analytic, Contour };

struct OffsetBoundary {
  std::vector<ArcCurve> loops;                 // +90-degree normal points toward the core
  std::vector<std::vector<Primitive>> chains;  // exact loop geometry (analytic method)
  double r{0.0};
  OffsetMethod method{OffsetMethod::Analytic};
  double max_corner_angle{0.0};
  std::string source_label;

  Shape as_shape() const {
    std::vector<Primitive> prims;
    for (const auto& c : chains)
      for (const auto& p : c) prims.push_back(p);
    return Shape(prims, source_label + "-offset");
  }
};

struct OffsetParams {
  double ds_out{-1.0};        // loop resampling step; <= 0 picks r/24
  double grid_h{-1.0};        // contour grid; <= 0 picks r/24
  double reach_lower{-1.0};   // < 0: estimate internally (analytic pre-check)
  std::size_t node_budget{kDefaultNodeBudget};
};

namespace detail {

inline void append_offset_candidates(const Primitive& prim, double r,
                                     std::vector<Primitive>& out) {
  if (const auto* sp = std::get_if<SitePoint>(&prim)) {
    out.push_back(CircArc{sp->p, r, 0.0, kTwoPi});
  } else if (const auto* sg = std::get_if<Segment>(&prim)) {
    UnitVec d = sg->direction();
    Vec2 n = d.rot90().vec() * r;
    out.push_back(Segment{sg->a + n, sg->b + n});
    out.push_back(Segment{sg->b - n, sg->a - n});
    double ad = d.angle();
    out.push_back(CircArc{sg->b, r, ad - kPi / 2, kPi});
    out.push_back(CircArc{sg->a, r, ad + kPi / 2, kPi});
  } else if (const auto* arc = std::get_if<CircArc>(&prim)) {
    out.push_back(CircArc{arc->center, arc->radius + r, arc->start_angle, arc->sweep});
    if (arc->radius - r > 1e-12 * (1.0 + arc->radius))
      out.push_back(CircArc{arc->center, arc->radius - r, arc->start_angle, arc->sweep});
    if (!arc->full_circle()) {
      out.push_back(CircArc{arc->end_point(), r, arc->end_angle(), kPi});
      out.push_back(CircArc{arc->start_point(), r, arc->start_angle + kPi, kPi});
    }
  } else {
    const auto& pc = std::get<Polycurve>(prim);
    std::size_t edges = pc.edge_count();
    for (std::size_t i = 0; i < edges; ++i) {
      Segment e = pc.edge(i);
      UnitVec d = e.direction();
      Vec2 n = d.rot90().vec() * r;
      out.push_back(Segment{e.a + n, e.b + n});
      out.push_back(Segment{e.b - n, e.a - n});
    }
    // convex-side joint arcs
    std::size_t joints = pc.closed ? edges : edges - 1;
    for (std::size_t i = 0; i < joints; ++i) {
      Segment e1 = pc.edge(i);
      Segment e2 = pc.edge((i + 1) % edges);
      double a1 = e1.direction().angle();
      double a2 = e2.direction().angle();
      double turn = wrap_angle(a2 - a1);
      Point2 v = e1.b;
      if (turn > 1e-9) out.push_back(CircArc{v, r, a1 - kPi / 2, turn});
      else if (turn < -1e-9) out.push_back(CircArc{v, r, a2 + kPi / 2, -turn});
    }
    if (!pc.closed) {
      double a_first = pc.edge(0).direction().angle();
      double a_last = pc.edge(edges - 1).direction().angle();
      out.push_back(CircArc{pc.vertices.back(), r, a_last - kPi / 2, kPi});
      out.push_back(CircArc{pc.vertices.front(), r, a_first + kPi / 2, kPi});
    }
  }
}

inline Primitive sub_piece(const Primitive& prim, double s0, double s1) {
  if (const auto* sg = std::get_if<Segment>(&prim)) {
    double L = sg->length();
    Vec2 d = (sg->b - sg->a) / L;
    return Segment{sg->a + d * s0, sg->a + d * s1};
  }
  const auto& arc = std::get<CircArc>(prim);
  double u0 = s0 / arc.radius, u1 = s1 / arc.radius;
  return CircArc{arc.center, arc.radius, arc.start_angle + u0, u1 - u0};
}

// Keep the parts of a candidate piece lying on the global r-level set.
inline void clip_piece(const Shape& shape, const Primitive& piece, double r,
                       std::vector<Primitive>& out) {
  double L = primitive_length(piece);
  if (L <= 1e-12 * (1.0 + r)) return;
  double keep_tol = 1e-9 * (1.0 + r);
  int n = std::max(16, static_cast<int>(std::ceil(L / (r / 16.0))));
  auto kept = [&](double s) {
    return shape_distance(shape, primitive_point(piece, s)).distance >= r - keep_tol;
  };
  std::vector<char> flags(n + 1);
  for (int i = 0; i <= n; ++i) flags[i] = kept(L * i / n) ? 1 : 0;
  auto refine = [&](double s_in, double s_out) {
    // boundary between kept (s_in) and cut (s_out)
    for (int it = 0; it < 50; ++it) {
      double m = 0.5 * (s_in + s_out);
      if (kept(m)) s_in = m; else s_out = m;
    }
    return s_in;
  };
  int i = 0;
  while (i <= n) {
    if (!flags[i]) { ++i; continue; }
    int j = i;
    while (j + 1 <= n && flags[j + 1]) ++j;
    double s0 = L * i / n;
    double s1 = L * j / n;
    if (i > 0) s0 = refine(s0, L * (i - 1) / n);
    if (j < n) s1 = refine(s1, L * (j + 1) / n);
    // grazing contact at junctions leaves slivers; drop them
    if (s1 - s0 > 1e-3 * r) out.push_back(sub_piece(piece, s0, s1));
    i = j + 1;
  }
}

struct PieceEnd {
  Point2 start;
  Point2 end;
};

inline PieceEnd piece_ends(const Primitive& p) {
  return {primitive_point(p, 0.0), primitive_point(p, primitive_length(p))};
}

// Stitch clipped pieces into closed loops by endpoint matching.
inline std::vector<std::vector<Primitive>> stitch_loops(std::vector<Primitive> pieces,
                                                        double tol) {
  std::vector<std::vector<Primitive>> loops;
  std::vector<char> used(pieces.size(), 0);
  for (std::size_t seed = 0; seed < pieces.size(); ++seed) {
    if (used[seed]) continue;
    std::vector<Primitive> loop{pieces[seed]};
    used[seed] = 1;
    PieceEnd se = piece_ends(pieces[seed]);
    // full circles close alone
    if (dist(se.start, se.end) <= tol && primitive_length(pieces[seed]) > tol * 8) {
      loops.push_back(std::move(loop));
      continue;
    }
    Point2 cur = se.end;
    Point2 home = se.start;
    bool closed = false;
    for (std::size_t guard = 0; guard < pieces.size() + 2; ++guard) {
      double best = tol;
      std::size_t bi = pieces.size();
      for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (used[k]) continue;
        PieceEnd pe = piece_ends(pieces[k]);
        double d0 = dist(cur, pe.start);
        double d1 = dist(cur, pe.end);
        double d = std::min(d0, d1);
        if (d < best) { best = d; bi = k; }
      }
      if (bi == pieces.size()) break;
      PieceEnd pe = piece_ends(pieces[bi]);
      cur = dist(cur, pe.start) <= dist(cur, pe.end) ? pe.end : pe.start;
      loop.push_back(pieces[bi]);
      used[bi] = 1;
      if (dist(cur, home) <= tol) { closed = true; break; }
    }
    if (!closed)
      throw Error(Err::DegenerateLoop, "offset boundary piece chain failed to close");
    loops.push_back(std::move(loop));
  }
  return loops;
}

// Majority probe: does the +90 normal of the built loop point toward smaller
// distance (the core side)?
inline int normal_votes(const Shape& shape, const ArcCurve& loop, double eps) {
  int toward = 0, away = 0;
  std::size_t n = loop.samples.size();
  std::size_t step = std::max<std::size_t>(1, n / 24);
  for (std::size_t i = 0; i + 1 < n; i += step) {
    Vec2 nu = loop.normal_at_sample(i).vec();
    double dp = shape_distance(shape, loop.samples[i].p + nu * eps).distance;
    double dm = shape_distance(shape, loop.samples[i].p - nu * eps).distance;
    if (dp < dm) ++toward;
    else if (dm < dp) ++away;
  }
  if (toward > 0 && away > 0 && std::min(toward, away) * 10 > toward + away)
    throw Error(Err::NormalAmbiguous, "inward side probes disagree along the loop");
  return toward >= away ? 1 : -1;
}

// marching squares at the given level; loops come out with {f < level} on
// the left of the traversal.
template <typename F>
std::vector<std::vector<Point2>> trace_level_set(const BBox& box, double h, double level,
                                                 F&& eval, std::size_t node_budget) {
  int nx = std::max(2, static_cast<int>(std::ceil(box.width() / h)) + 1);
  int ny = std::max(2, static_cast<int>(std::ceil(box.height() / h)) + 1);
  if (static_cast<std::size_t>(nx) * ny > node_budget)
    throw Error(Err::GridTooLarge, "contour grid exceeds the node budget");
  auto node = [&](int i, int j) -> Point2 { return {box.lo.x + i * h, box.lo.y + j * h}; };
  std::vector<double> f(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double v = eval(node(i, j)) - level;
      if (v == 0.0) v = 1e-30;
      f[static_cast<std::size_t>(j) * nx + i] = v;
    }
  auto F_ = [&](int i, int j) { return f[static_cast<std::size_t>(j) * nx + i]; };

  // edge ids: horizontal edge (i,j)-(i+1,j) -> 2*(j*nx+i); vertical +1
  auto hedge = [&](int i, int j) -> std::int64_t {
    return 2 * (static_cast<std::int64_t>(j) * nx + i);
  };
  auto vedge = [&](int i, int j) -> std::int64_t {
    return 2 * (static_cast<std::int64_t>(j) * nx + i) + 1;
  };
  std::unordered_map<std::int64_t, Point2> pts;
  auto crossing = [&](std::int64_t id, Point2 a, Point2 b, double fa, double fb) {
    if (!pts.count(id)) {
      double t = fa / (fa - fb);
      pts[id] = a + (b - a) * t;
    }
  };

  std::unordered_map<std::int64_t, std::int64_t> succ;
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      double fs[4] = {F_(i, j), F_(i + 1, j), F_(i + 1, j + 1), F_(i, j + 1)};
      int in_count = (fs[0] < 0) + (fs[1] < 0) + (fs[2] < 0) + (fs[3] < 0);
      if (in_count == 0 || in_count == 4) continue;
      Point2 cs[4] = {node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)};
      std::int64_t eid[4] = {hedge(i, j), vedge(i + 1, j), hedge(i, j + 1), vedge(i, j)};
      struct Ev { std::int64_t id; bool exit; };
      Ev evs[4];
      int m = 0;
      for (int k = 0; k < 4; ++k) {
        int k2 = (k + 1) % 4;
        if ((fs[k] < 0) == (fs[k2] < 0)) continue;
        crossing(eid[k], cs[k], cs[k2], fs[k], fs[k2]);
        evs[m++] = {eid[k], fs[k] < 0};
      }
      auto connect = [&](int from, int to) { succ[evs[from].id] = evs[to].id; };
      if (m == 2) {
        if (evs[0].exit) connect(0, 1); else connect(1, 0);
      } else {
        // saddle; exits alternate with entries in walk order
        double fc = eval({cs[0].x + 0.5 * h, cs[0].y + 0.5 * h}) - level;
        int first_exit = evs[0].exit ? 0 : 1;
        int e1 = first_exit, n1 = (first_exit + 1) % 4;
        int e2 = (first_exit + 2) % 4, n2 = (first_exit + 3) % 4;
        if (fc < 0) { connect(e1, n1); connect(e2, n2); }
        else { connect(e1, n2); connect(e2, n1); }
      }
    }
  }

  std::vector<std::vector<Point2>> loops;
  std::unordered_map<std::int64_t, char> visited;
  for (const auto& [start, _] : succ) {
    if (visited.count(start)) continue;
    std::vector<Point2> loop;
    std::int64_t cur = start;
    bool ok = true;
    for (std::size_t guard = 0; guard <= succ.size(); ++guard) {
      visited[cur] = 1;
      loop.push_back(pts[cur]);
      auto it = succ.find(cur);
      if (it == succ.end()) { ok = false; break; }
      cur = it->second;
      if (cur == start) break;
    }
    if (!ok || loop.size() < 3) continue;
    // drop consecutive duplicates
    std::vector<Point2> clean;
    for (const auto& p : loop)
      if (clean.empty() || dist(clean.back(), p) > 1e-12) clean.push_back(p);
    while (clean.size() > 1 && dist(clean.front(), clean.back()) <= 1e-12) clean.pop_back();
    if (clean.size() >= 3) loops.push_back(std::move(clean));
  }
  return loops;
}

}  // namespace detail

// Boundary of the open tube {d_S < r}. The analytic method offsets each
// primitive, clips against the global level set, and stitches exact pieces;
// the contour method traces the level set on a grid. Loops carry the
// core-on-the-normal-side convention either way.
inline OffsetBoundary offset_boundary(const Shape& shape, double r,
                                      OffsetMethod method = OffsetMethod::Analytic,
                                      const OffsetParams& params = {}) {
  if (!(r > 0)) throw Error(Err::InvalidArgument, "offset radius must be > 0");
  OffsetBoundary ob;
  ob.r = r;
  ob.method = method;
  ob.source_label = shape.label;
  double ds_out = params.ds_out > 0 ? params.ds_out : r / 24.0;

  if (method == OffsetMethod::Analytic) {
    double reach_lower = params.reach_lower;
    if (reach_lower < 0) reach_lower = estimate_reach(shape).lower;
    if (r >= reach_lower)
      throw Error(Err::ReachExceeded, "analytic offset requires r below the reach bound");
    std::vector<Primitive> candidates;
    for (const auto& prim : shape.primitives)
      detail::append_offset_candidates(prim, r, candidates);
    std::vector<Primitive> kept;
    for (const auto& piece : candidates) detail::clip_piece(shape, piece, r, kept);
    double tol = std::max(1e-7 * (1.0 + r), 1e-9 * shape.scale());
    auto chains = detail::stitch_loops(std::move(kept), tol);
    for (auto& chain : chains) {
      ArcCurve loop = build_arclength(chain, ds_out, JointPolicy::AllowCorners);
      if (loop.length < 6 * ds_out)
        throw Error(Err::DegenerateLoop, "offset loop shorter than 6 steps");
      if (detail::normal_votes(shape, loop, std::min(r, shape.scale()) * 1e-3) < 0)
        loop = reversed(loop);
      ob.max_corner_angle = std::max(ob.max_corner_angle, loop.max_corner_angle);
      ob.loops.push_back(std::move(loop));
      ob.chains.push_back(chain);
    }
  } else {
    double h = params.grid_h > 0 ? params.grid_h : r / 24.0;
    BBox box = shape.bbox.inflated(r + 4 * h);
    auto polylines = detail::trace_level_set(
        box, h, r, [&](const Point2& p) { return shape_distance(shape, p).distance; },
        params.node_budget);
    for (auto& poly : polylines) {
      double len = 0;
      for (std::size_t i = 0; i < poly.size(); ++i)
        len += dist(poly[i], poly[(i + 1) % poly.size()]);
      if (len < 6 * h) throw Error(Err::DegenerateLoop, "contour loop shorter than 6h");
      std::vector<Primitive> chain{Polycurve{poly, true}};
      ArcCurve loop = build_arclength(chain, ds_out, JointPolicy::AllowCorners);
      // marching squares keeps the tube on the left already; verify
      if (detail::normal_votes(shape, loop, std::min(r, h)) < 0) loop = reversed(loop);
      ob.max_corner_angle = std::max(ob.max_corner_angle, loop.max_corner_angle);
      ob.loops.push_back(std::move(loop));
      ob.chains.push_back(std::move(chain));
    }
  }
  if (ob.loops.empty())
    throw Error(Err::DegenerateLoop, "offset produced no loops");
  return ob;
}

// eta(s) = gamma(s) + r * nu(s): the core parametrization recovered from a
// tube boundary loop (normals must point toward the core).
inline std::vector<Point2> recover_core(const ArcCurve& gamma, double r) {
  std::vector<Point2> eta;
  eta.reserve(gamma.samples.size());
  for (std::size_t i = 0; i < gamma.samples.size(); ++i)
    eta.push_back(gamma.samples[i].p + gamma.normal_at_sample(i).vec() * r);
  return eta;
}

// Variant that determines the inward side by probing the source distance.
inline std::vector<Point2> recover_core(const ArcCurve& gamma, double r, const Shape& source) {
  int side = detail::normal_votes(source, gamma, std::min(r, source.scale()) * 1e-3);
  std::vector<Point2> eta;
  eta.reserve(gamma.samples.size());
  for (std::size_t i = 0; i < gamma.samples.size(); ++i)
    eta.push_back(gamma.samples[i].p + gamma.normal_at_sample(i).vec() * (side * r));
  return eta;
}

struct ParallelParam {
  ArcCurve gamma;
  double r{0.0};
  std::vector<Point2> eta;
  std::vector<double> mu;
  double mu_min{0.0};
};

// mu(s) = 1 - r * kappa(s) with curvature signed toward the tube interior.
inline ParallelParam mu_profile(const ArcCurve& gamma, double r) {
  ParallelParam pp;
  pp.gamma = gamma;
  pp.r = r;
  pp.mu_min = 1e300;
  pp.eta = recover_core(gamma, r);
  pp.mu.reserve(gamma.samples.size());
  for (const auto& s : gamma.samples) {
    double mu = 1.0 - r * s.kappa;
    pp.mu.push_back(mu);
    pp.mu_min = std::min(pp.mu_min, mu);
  }
  return pp;
}

struct TubeAreaReport {
  std::vector<std::pair<double, double>> areas;  // (r, |S_r|)
  double c0{0.0}, c1{0.0}, c2{0.0};
  double residual{0.0};
  bool through_origin{false};
};

struct TubeAreaParams {
  double grid_h{-1.0};       // <= 0: min(r)/40
  double reach_lower{-1.0};  // < 0: estimate internally
  std::size_t node_budget{kDefaultNodeBudget};
};

// Area of {d < r} for each radius by corrected cell counting, then a
// least-squares quadratic in r.
inline TubeAreaReport tube_area(const Shape& shape, const std::vector<double>& r_list,
                                const TubeAreaParams& params = {}) {
  if (r_list.empty()) throw Error(Err::InvalidArgument, "need at least one radius");
  double reach_lower = params.reach_lower;
  if (reach_lower < 0) reach_lower = estimate_reach(shape).lower;
  double rmin = r_list[0];
  for (double r : r_list) {
    if (!(r > 0)) throw Error(Err::InvalidArgument, "radii must be positive");
    if (r >= reach_lower)
      throw Error(Err::ReachExceeded, "tube area requested beyond the reach bound");
    rmin = std::min(rmin, r);
  }
  double h = params.grid_h > 0 ? params.grid_h : rmin / 40.0;

  TubeAreaReport rep;
  for (double r : r_list) {
    BBox box = shape.bbox.inflated(r + 2 * h);
    double area = sublevel_area(box, h, r, [&](const Point2& p) {
      return shape_distance(shape, p).distance;
    });
    rep.areas.emplace_back(r, area);
  }

  // quadratic least squares; with two radii the constant term is pinned at 0
  std::size_t n = rep.areas.size();
  if (n >= 3) {
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, b0 = 0, b1 = 0, b2 = 0;
    for (auto& [r, a] : rep.areas) {
      double r2 = r * r;
      s0 += 1; s1 += r; s2 += r2; s3 += r2 * r; s4 += r2 * r2;
      b0 += a; b1 += a * r; b2 += a * r2;
    }
    double det = s0 * (s2 * s4 - s3 * s3) - s1 * (s1 * s4 - s3 * s2) + s2 * (s1 * s3 - s2 * s2);
    rep.c0 = (b0 * (s2 * s4 - s3 * s3) - s1 * (b1 * s4 - s3 * b2) + s2 * (b1 * s3 - s2 * b2)) / det;
    rep.c1 = (s0 * (b1 * s4 - b2 * s3) - b0 * (s1 * s4 - s3 * s2) + s2 * (s1 * b2 - s2 * b1)) / det;
    rep.c2 = (s0 * (s2 * b2 - s3 * b1) - s1 * (s1 * b2 - b1 * s2) + b0 * (s1 * s3 - s2 * s2)) / det;
  } else {
    rep.through_origin = true;
    double s2 = 0, s3 = 0, s4 = 0, b1 = 0, b2 = 0;
    for (auto& [r, a] : rep.areas) {
      double r2 = r * r;
      s2 += r2; s3 += r2 * r; s4 += r2 * r2;
      b1 += a * r; b2 += a * r2;
    }
    double det = s2 * s4 - s3 * s3;
    rep.c0 = 0.0;
    rep.c1 = (b1 * s4 - b2 * s3) / det;
    rep.c2 = (s2 * b2 - s3 * b1) / det;
  }
  for (auto& [r, a] : rep.areas)
    rep.residual = std::max(rep.residual, std::abs(rep.c0 + rep.c1 * r + rep.c2 * r * r - a));
  return rep;
}

}  // namespace medgeo
