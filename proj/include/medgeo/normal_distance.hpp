#pragma once
// Normal distance to the cut locus along the inner normal, profiles over the
// boundary, and the constancy verdict.

#include <cstdio>
#include "medgeo/singular_sets.hpp"

namespace medgeo {

struct LambdaSample {
  Point2 y;
  UnitVec nu;
  double lambda{0.0};
  double s{0.0};
  int loop{0};
};

struct LambdaProfile {
  std::vector<LambdaSample> samples;
  double min{0.0}, max{0.0}, mean{0.0};
  bool constant{false};
  double constancy_tol{0.0};
  int corners_excluded{0};
};

// sup { t : the projection of y + t*nu onto the boundary stays y }, found by
// bisection at resolution 1e-4 * rho. tol_proj absorbs near-ties close to
// the cut locus.
inline double lambda_at(const Domain& dom, const Point2& y, const UnitVec& nu, double rho,
                        double tol_proj) {
  for (const auto& c : dom.corners)
    if (dist(c, y) <= tol_proj)
      throw Error(Err::NormalUndefined, "inner normal undefined at a boundary corner");
  double d0 = shape_distance(dom.boundary, y).distance;
  if (d0 > tol_proj) throw Error(Err::NotOnSet, "lambda query point is not on the boundary");

  auto unique_back = [&](double t) {
    ProjectionResult pr = shape_distance(dom.boundary, y + nu.vec() * t);
    return dist(pr.projections.front().p, y) <= tol_proj;
  };
  double cap = rho + 2.0 * tol_proj;
  int ladder = 24;
  double lo = 0.0, hi = -1.0;
  for (int k = 1; k <= ladder; ++k) {
    double t = cap * k / ladder;
    if (unique_back(t)) lo = t;
    else { hi = t; break; }
  }
  if (hi < 0) return cap;
  double res = std::max(1e-4 * rho, 1e-12);
  while (hi - lo > res) {
    double mid = 0.5 * (lo + hi);
    if (unique_back(mid)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct LambdaParams {
  int n_samples{200};
  double tol_proj{-1.0};        // <= 0: 3h
  double corner_exclusion{-1.0}; // arc-length margin around corners; <= 0: 4*tol_proj
};

inline LambdaProfile lambda_profile(const Domain& dom, double rho, double h,
                                    const LambdaParams& prm = {}) {
  LambdaProfile prof;
  double tol_proj = prm.tol_proj > 0 ? prm.tol_proj : 3.0 * h;
  double excl = prm.corner_exclusion > 0 ? prm.corner_exclusion : 4.0 * tol_proj;
  double total = dom.perimeter();
  double sum = 0;
  prof.min = 1e300;
  prof.max = -1e300;
  for (std::size_t li = 0; li < dom.loop_curves.size(); ++li) {
    const ArcCurve& lc = dom.loop_curves[li];
    int n = std::max(4, static_cast<int>(std::lround(prm.n_samples * lc.length / total)));
    for (int k = 0; k < n; ++k) {
      double s = lc.length * k / n;
      bool near_corner = false;
      for (double cs : lc.corner_s) {
        double d = std::abs(s - cs);
        d = std::min(d, lc.length - d);
        if (d <= excl) { near_corner = true; break; }
      }
      if (near_corner) { ++prof.corners_excluded; continue; }
      CurveEval ev = curve_eval(lc, s);
      LambdaSample ls;
      ls.y = ev.p;
      ls.nu = ev.normal;  // domain loops keep the interior on the normal side
      ls.s = s;
      ls.loop = static_cast<int>(li);
      ls.lambda = lambda_at(dom, ls.y, ls.nu, rho, tol_proj);
      prof.min = std::min(prof.min, ls.lambda);
      prof.max = std::max(prof.max, ls.lambda);
      sum += ls.lambda;
      prof.samples.push_back(ls);
    }
  }
  if (prof.samples.empty()) throw Error(Err::EmptyDomain, "no lambda samples");
  prof.mean = sum / prof.samples.size();
  prof.constancy_tol = std::max(2.0 * h, 1e-2 * prof.mean);
  prof.constant = (prof.max - prof.min) <= prof.constancy_tol;
  return prof;
}

inline std::string lambda_profile_csv(const LambdaProfile& prof) {
  std::ostringstream os;
  os << "loop,s,x,y,lambda\n";
  char buf[160];
  for (const auto& ls : prof.samples) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\n", ls.loop, ls.s, ls.y.x,
                  ls.y.y, ls.lambda);
    os << buf;
  }
  return os.str();
}

}  // namespace medgeo
