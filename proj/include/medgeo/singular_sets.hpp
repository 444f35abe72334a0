#pragma once
// High ridge, skeleton, central set, and cut locus extraction from a domain
// distance field, the inclusion-chain report, and component counting.

#include <functional>
#include <map>
#include <unordered_map>

#include "medgeo/distance_field.hpp"

namespace medgeo {

struct SingularParams {
  double delta_sep{-1.0};   // foot-separation threshold; <= 0: 3h
  double theta_sep{0.5};    // gradient-angle threshold between branches (rad)
  double eps_high{0.0};     // extra slack on the high ridge band
};

namespace detail {

inline Vec2 node_gradient_dir(const DistanceField& f, std::size_t k, const Point2& node) {
  const ProjFoot& foot = f.feet[k];
  Vec2 g = node - foot.p;
  double n = g.norm();
  return n > 1e-300 ? g / n : Vec2{0, 0};
}

inline double angle_between(const Vec2& a, const Vec2& b) {
  double c = std::clamp(a.dot(b), -1.0, 1.0);
  return std::acos(c);
}

// Two distance branches meet between p and q: feet separated, gradient
// directions bent apart, and compatible values.
inline bool branch_crossing(const DistanceField& f, const Shape& boundary, int ix1, int iy1,
                            int ix2, int iy2, double delta_sep, double theta_sep,
                            double sheet_gap) {
  std::size_t k1 = f.idx(ix1, iy1), k2 = f.idx(ix2, iy2);
  if (!f.is_inside(ix1, iy1) || !f.is_inside(ix2, iy2)) return false;
  double d1 = f.values[k1], d2 = f.values[k2];
  if (d1 <= 0 || d2 <= 0) return false;
  if (std::abs(d1 - d2) > 2.0 * f.h) return false;
  const ProjFoot& f1 = f.feet[k1];
  const ProjFoot& f2 = f.feet[k2];
  if (dist(f1.p, f2.p) <= delta_sep) return false;
  if (!distinct_sheets(boundary, f1, f2, sheet_gap)) {
    // same-sheet feet this far apart still count when they straddle a
    // wrapped parameter range; distinct_sheets already handles that, so
    // reject here.
    return false;
  }
  Vec2 g1 = node_gradient_dir(f, k1, f.node(ix1, iy1));
  Vec2 g2 = node_gradient_dir(f, k2, f.node(ix2, iy2));
  return angle_between(g1, g2) > theta_sep;
}

// Tied feet at one node spanning a real corner of the distance function.
inline bool multi_foot_node(const DistanceField& f, const Shape& boundary, int ix, int iy,
                            double delta_sep, double theta_sep, double sheet_gap) {
  std::size_t k = f.idx(ix, iy);
  if (!f.is_inside(ix, iy)) return false;
  double d = f.values[k];
  if (d <= 0 || f.multiplicity[k] < 2) return false;
  Point2 node = f.node(ix, iy);
  ProjectionResult pr = shape_distance(*f.source, node, f.tie_tol());
  if (pr.continuum && pr.distance > 0) return true;
  for (std::size_t i = 0; i < pr.projections.size(); ++i) {
    for (std::size_t j = i + 1; j < pr.projections.size(); ++j) {
      if (dist(pr.projections[i].p, pr.projections[j].p) <= delta_sep) continue;
      if (!distinct_sheets(boundary, pr.projections[i], pr.projections[j], sheet_gap)) continue;
      Vec2 g1 = node - pr.projections[i].p;
      Vec2 g2 = node - pr.projections[j].p;
      if (g1.norm() < 1e-300 || g2.norm() < 1e-300) continue;
      if (angle_between(g1 / g1.norm(), g2 / g2.norm()) > theta_sep) return true;
    }
  }
  return false;
}

inline std::vector<Point2> skeleton_at(const DistanceField& f, double delta_sep,
                                       double theta_sep) {
  if (!f.source) throw Error(Err::InvalidArgument, "field carries no source shape");
  const Shape& boundary = *f.source;
  double sheet_gap = std::max(delta_sep, 10.0 * f.h);
  std::vector<char> mark(f.values.size(), 0);
  for (int iy = 0; iy < f.ny; ++iy) {
    for (int ix = 0; ix < f.nx; ++ix) {
      if (ix + 1 < f.nx &&
          branch_crossing(f, boundary, ix, iy, ix + 1, iy, delta_sep, theta_sep, sheet_gap)) {
        mark[f.idx(ix, iy)] = 1;
        mark[f.idx(ix + 1, iy)] = 1;
      }
      if (iy + 1 < f.ny &&
          branch_crossing(f, boundary, ix, iy, ix, iy + 1, delta_sep, theta_sep, sheet_gap)) {
        mark[f.idx(ix, iy)] = 1;
        mark[f.idx(ix, iy + 1)] = 1;
      }
      if (!mark[f.idx(ix, iy)] && f.multiplicity[f.idx(ix, iy)] >= 2 &&
          multi_foot_node(f, boundary, ix, iy, delta_sep, theta_sep, sheet_gap))
        mark[f.idx(ix, iy)] = 1;
    }
  }
  std::vector<Point2> pts;
  for (int iy = 0; iy < f.ny; ++iy)
    for (int ix = 0; ix < f.nx; ++ix)
      if (mark[f.idx(ix, iy)] && f.is_inside(ix, iy)) pts.push_back(f.node(ix, iy));
  return pts;
}

}  // namespace detail

// rho and the argmax band of the interior distance.
inline std::pair<double, std::vector<Point2>> high_ridge(const DistanceField& f,
                                                         double eps_high = 0.0) {
  double rho = f.max_value_inside();
  if (!(rho > 0)) throw Error(Err::EmptyDomain, "no interior nodes with positive distance");
  double band = std::max(2.0 * f.h, eps_high);
  std::vector<Point2> pts;
  for (int iy = 0; iy < f.ny; ++iy)
    for (int ix = 0; ix < f.nx; ++ix)
      if (f.is_inside(ix, iy) && f.value(ix, iy) >= rho - band) pts.push_back(f.node(ix, iy));
  return {rho, pts};
}

inline std::vector<Point2> skeleton(const DistanceField& f, const SingularParams& prm = {}) {
  double delta = prm.delta_sep > 0 ? prm.delta_sep : 3.0 * f.h;
  return detail::skeleton_at(f, delta, prm.theta_sep);
}

// Skeleton plus nodes whose maximal ball cannot be extended: walking 3h
// upstream along the gradient must keep the unit growth rate for the node to
// be removable.
inline std::vector<Point2> central_set(const DistanceField& f, const SingularParams& prm = {}) {
  if (!f.source) throw Error(Err::InvalidArgument, "field carries no source shape");
  double delta = prm.delta_sep > 0 ? prm.delta_sep : 3.0 * f.h;
  auto skel = detail::skeleton_at(f, delta, prm.theta_sep);

  std::vector<char> mark(f.values.size(), 0);
  std::unordered_map<std::int64_t, char> skel_nodes;
  auto key = [&](int ix, int iy) { return static_cast<std::int64_t>(iy) * f.nx + ix; };
  for (const auto& p : skel) {
    int ix = static_cast<int>(std::lround((p.x - f.origin.x) / f.h));
    int iy = static_cast<int>(std::lround((p.y - f.origin.y) / f.h));
    skel_nodes[key(ix, iy)] = 1;
    mark[f.idx(ix, iy)] = 1;
  }

  double u = 2.0 * f.h;
  double tol = std::max(1e-9, f.h * f.h);
  std::vector<char> survivor(f.values.size(), 0);
  for (int iy = 0; iy < f.ny; ++iy) {
    for (int ix = 0; ix < f.nx; ++ix) {
      std::size_t k = f.idx(ix, iy);
      if (mark[k] || !f.is_inside(ix, iy)) continue;
      double d = f.values[k];
      // closure candidates live in the interior; boundary-hugging nodes only
      // contribute noise through ill-conditioned gradient directions
      if (d <= 2.0 * f.h) continue;
      Point2 node = f.node(ix, iy);
      Vec2 g = detail::node_gradient_dir(f, k, node);
      if (g.norm2() < 0.5) continue;
      double ahead = shape_distance(*f.source, node + g * u).distance;
      double deficit = (d + u) - ahead;
      if (deficit > tol) survivor[k] = 1;
    }
  }
  // require local support to suppress isolated numerical survivors
  for (int iy = 0; iy < f.ny; ++iy) {
    for (int ix = 0; ix < f.nx; ++ix) {
      std::size_t k = f.idx(ix, iy);
      if (!survivor[k]) continue;
      int support = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          int jx = ix + dx, jy = iy + dy;
          if (jx < 0 || jy < 0 || jx >= f.nx || jy >= f.ny) continue;
          std::size_t kk = f.idx(jx, jy);
          if (survivor[kk] || mark[kk]) ++support;
        }
      if (support >= 2) mark[k] = 1;
    }
  }
  std::vector<Point2> pts;
  for (int iy = 0; iy < f.ny; ++iy)
    for (int ix = 0; ix < f.nx; ++ix)
      if (mark[f.idx(ix, iy)]) pts.push_back(f.node(ix, iy));
  return pts;
}

// Discrete closure: the separation sweep is run at delta, delta/2, delta/4
// and every node that ever joins counts as a cut point.
inline std::vector<Point2> cut_locus(const DistanceField& f, const SingularParams& prm = {}) {
  double delta = prm.delta_sep > 0 ? prm.delta_sep : 3.0 * f.h;
  std::unordered_map<std::int64_t, Point2> acc;
  auto key = [&](const Point2& p) {
    int ix = static_cast<int>(std::lround((p.x - f.origin.x) / f.h));
    int iy = static_cast<int>(std::lround((p.y - f.origin.y) / f.h));
    return static_cast<std::int64_t>(iy) * f.nx + ix;
  };
  for (double d : {delta, delta / 2.0, delta / 4.0})
    for (const auto& p : detail::skeleton_at(f, d, prm.theta_sep)) acc.emplace(key(p), p);
  std::vector<Point2> pts;
  pts.reserve(acc.size());
  for (const auto& [_, p] : acc) pts.push_back(p);
  return pts;
}

// ---- point-set utilities ----

inline double one_sided_hausdorff(const std::vector<Point2>& from,
                                  const std::vector<Point2>& to) {
  if (from.empty()) return 0.0;
  if (to.empty()) return 1e300;
  // cell hash on `to`
  BBox box;
  for (const auto& p : to) box.grow(p);
  double cell = std::max(1e-12, box.diag() / 256.0);
  std::unordered_map<std::int64_t, std::vector<Point2>> hash;
  auto key = [&](double x, double y) {
    return (static_cast<std::int64_t>(std::floor(x / cell)) << 22) ^
           static_cast<std::int64_t>(std::floor(y / cell));
  };
  for (const auto& p : to) hash[key(p.x, p.y)].push_back(p);
  double worst = 0.0;
  for (const auto& a : from) {
    double best = 1e300;
    for (int ring = 0; ring < 300 && best == 1e300; ++ring) {
      int cx = static_cast<int>(std::floor(a.x / cell));
      int cy = static_cast<int>(std::floor(a.y / cell));
      for (int dy = -ring; dy <= ring; ++dy)
        for (int dx = -ring; dx <= ring; ++dx) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          auto it = hash.find((static_cast<std::int64_t>(cx + dx) << 22) ^
                              static_cast<std::int64_t>(cy + dy));
          if (it == hash.end()) continue;
          for (const auto& b : it->second) best = std::min(best, dist(a, b));
        }
      if (best < 1e300) {
        // one more ring to be safe against cell-boundary effects
        int rr = ring + 1;
        for (int dy = -rr; dy <= rr; ++dy)
          for (int dx = -rr; dx <= rr; ++dx) {
            if (std::max(std::abs(dx), std::abs(dy)) != rr) continue;
            auto it = hash.find((static_cast<std::int64_t>(cx + dx) << 22) ^
                                static_cast<std::int64_t>(cy + dy));
            if (it == hash.end()) continue;
            for (const auto& b : it->second) best = std::min(best, dist(a, b));
          }
        break;
      }
    }
    if (best == 1e300)
      for (const auto& b : to) best = std::min(best, dist(a, b));
    worst = std::max(worst, best);
  }
  return worst;
}

inline double two_sided_hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  return std::max(one_sided_hausdorff(a, b), one_sided_hausdorff(b, a));
}

// Connected components of the union of link_radius balls (single linkage).
inline int component_count(const std::vector<Point2>& pts, double link_radius) {
  if (pts.empty()) return 0;
  std::vector<int> parent(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  double cell = link_radius;
  std::unordered_map<std::int64_t, std::vector<int>> hash;
  auto key = [&](double x, double y) {
    return (static_cast<std::int64_t>(std::floor(x / cell)) << 22) ^
           static_cast<std::int64_t>(std::floor(y / cell));
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    hash[key(pts[i].x, pts[i].y)].push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    int cx = static_cast<int>(std::floor(pts[i].x / cell));
    int cy = static_cast<int>(std::floor(pts[i].y / cell));
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        auto it = hash.find((static_cast<std::int64_t>(cx + dx) << 22) ^
                            static_cast<std::int64_t>(cy + dy));
        if (it == hash.end()) continue;
        for (int j : it->second)
          if (dist(pts[i], pts[j]) <= link_radius) {
            int ra = find(static_cast<int>(i)), rb = find(j);
            if (ra != rb) parent[ra] = rb;
          }
      }
  }
  int comps = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++comps;
  return comps;
}

// Whether the link_radius-dilated point set encloses a region (an essential
// cycle): flood the complement from the frame and look for unreached cells.
inline bool encloses_region(const std::vector<Point2>& pts, double link_radius) {
  if (pts.empty()) return false;
  BBox box;
  for (const auto& p : pts) box.grow(p);
  box = box.inflated(2 * link_radius);
  double cell = link_radius / 2.0;
  int nx = std::max(4, static_cast<int>(std::ceil(box.width() / cell)) + 1);
  int ny = std::max(4, static_cast<int>(std::ceil(box.height() / cell)) + 1);
  std::vector<char> blocked(static_cast<std::size_t>(nx) * ny, 0);
  auto id = [&](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };
  for (const auto& p : pts) {
    int ci = static_cast<int>(std::floor((p.x - box.lo.x) / cell));
    int cj = static_cast<int>(std::floor((p.y - box.lo.y) / cell));
    int rad = static_cast<int>(std::ceil(link_radius / cell));
    for (int dj = -rad; dj <= rad; ++dj)
      for (int di = -rad; di <= rad; ++di) {
        int i = ci + di, j = cj + dj;
        if (i < 0 || j < 0 || i >= nx || j >= ny) continue;
        Point2 c{box.lo.x + (i + 0.5) * cell, box.lo.y + (j + 0.5) * cell};
        if (dist(c, p) <= link_radius) blocked[id(i, j)] = 1;
      }
  }
  std::vector<char> seen = blocked;
  std::vector<std::pair<int, int>> stack;
  for (int i = 0; i < nx; ++i) {
    stack.push_back({i, 0});
    stack.push_back({i, ny - 1});
  }
  for (int j = 0; j < ny; ++j) {
    stack.push_back({0, j});
    stack.push_back({nx - 1, j});
  }
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    if (i < 0 || j < 0 || i >= nx || j >= ny) continue;
    if (seen[id(i, j)]) continue;
    seen[id(i, j)] = 1;
    stack.push_back({i + 1, j});
    stack.push_back({i - 1, j});
    stack.push_back({i, j + 1});
    stack.push_back({i, j - 1});
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) return true;
  return false;
}

// Connected components of a domain mask (4-neighborhood flood fill).
inline int mask_component_count(const DistanceField& f) {
  if (!f.has_mask()) return 1;
  std::vector<char> seen(f.values.size(), 0);
  int comps = 0;
  for (int iy = 0; iy < f.ny; ++iy) {
    for (int ix = 0; ix < f.nx; ++ix) {
      if (seen[f.idx(ix, iy)] || !f.is_inside(ix, iy)) continue;
      ++comps;
      std::vector<std::pair<int, int>> stack{{ix, iy}};
      while (!stack.empty()) {
        auto [i, j] = stack.back();
        stack.pop_back();
        if (i < 0 || j < 0 || i >= f.nx || j >= f.ny) continue;
        if (seen[f.idx(i, j)] || !f.is_inside(i, j)) continue;
        seen[f.idx(i, j)] = 1;
        stack.push_back({i + 1, j});
        stack.push_back({i - 1, j});
        stack.push_back({i, j + 1});
        stack.push_back({i, j - 1});
      }
    }
  }
  return comps;
}

// ---- chain report ----

enum class PairRelation { Equal, Strict, SubResolution };

inline const char* pair_relation_name(PairRelation r) {
  switch (r) {
    case PairRelation::Equal: return "equal";
    case PairRelation::Strict: return "strict";
    case PairRelation::SubResolution: return "strict-below-resolution";
  }
  return "?";
}

struct PairVerdict {
  std::string pair;
  bool inclusion_ok{false};  // smaller set within 2h of the larger
  double inclusion_gap{0.0};
  double excess_gap{0.0};    // how far the larger set sticks out
  PairRelation relation{PairRelation::Equal};
};

struct SingularSetReport {
  double h{0.0};
  double rho{0.0};
  std::vector<Point2> high;
  std::vector<Point2> skeleton_pts;
  std::vector<Point2> central;
  std::vector<Point2> cut;
  PairVerdict high_vs_skeleton;
  PairVerdict skeleton_vs_central;
  PairVerdict central_vs_cut;
  bool chain_ok{false};
  bool c2_equality_checked{false};
  bool c2_central_equals_cut{false};
  std::map<std::string, int> components;
};

namespace detail {
inline PairVerdict pair_verdict(const std::string& name, const std::vector<Point2>& small,
                                const std::vector<Point2>& large, double h) {
  PairVerdict v;
  v.pair = name;
  v.inclusion_gap = one_sided_hausdorff(small, large);
  v.inclusion_ok = v.inclusion_gap <= 2.0 * h + 1e-12;
  v.excess_gap = one_sided_hausdorff(large, small);
  if (v.excess_gap >= 5.0 * h)
    v.relation = PairRelation::Strict;
  else if (v.excess_gap <= 2.0 * h + 1e-12)
    v.relation = PairRelation::Equal;
  else
    v.relation = PairRelation::SubResolution;
  return v;
}
}  // namespace detail

inline SingularSetReport inclusion_chain_report(const Domain& dom, const DistanceField& f,
                                                const SingularParams& prm = {}) {
  SingularSetReport rep;
  rep.h = f.h;
  auto [rho, high] = high_ridge(f, prm.eps_high);
  rep.rho = rho;
  rep.high = std::move(high);
  rep.skeleton_pts = skeleton(f, prm);
  rep.central = central_set(f, prm);
  rep.cut = cut_locus(f, prm);
  rep.high_vs_skeleton = detail::pair_verdict("high-vs-skeleton", rep.high, rep.skeleton_pts, f.h);
  rep.skeleton_vs_central =
      detail::pair_verdict("skeleton-vs-central", rep.skeleton_pts, rep.central, f.h);
  rep.central_vs_cut = detail::pair_verdict("central-vs-cut", rep.central, rep.cut, f.h);
  rep.chain_ok = rep.high_vs_skeleton.inclusion_ok && rep.skeleton_vs_central.inclusion_ok &&
                 rep.central_vs_cut.inclusion_ok;
  if (dom.tag == Regularity::C2) {
    rep.c2_equality_checked = true;
    rep.c2_central_equals_cut = two_sided_hausdorff(rep.central, rep.cut) <= 2.0 * f.h + 1e-12;
  }
  double link = std::max(2.5 * f.h, 1e-12);
  rep.components["high"] = component_count(rep.high, link);
  rep.components["skeleton"] = component_count(rep.skeleton_pts, link);
  rep.components["central"] = component_count(rep.central, link);
  rep.components["cut"] = component_count(rep.cut, link);
  rep.components["domain"] = mask_component_count(f);
  return rep;
}

}  // namespace medgeo
