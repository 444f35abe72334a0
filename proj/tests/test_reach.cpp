#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "medgeo/reach.hpp"

using namespace medgeo;

namespace {

Shape unit_circle() { return Shape({CircArc{{0, 0}, 1.0, 0.0, kTwoPi}}, "unit-circle"); }

Shape two_points() { return Shape({SitePoint{{-1, 0}}, SitePoint{{1, 0}}}, "two-points"); }

Shape tangent_circles() {
  return Shape({CircArc{{0, 0}, 1.0, 0.0, kTwoPi}, CircArc{{2, 0}, 1.0, 0.0, kTwoPi}},
               "tangent-circles");
}

Shape vee_graph() {
  return Shape({Segment{{-1, 1}, {0, 0}}, Segment{{0, 0}, {1, 1}}}, "abs-graph");
}

Shape corner_chain() {
  return Shape({Segment{{-1, 1}, {0, 1}},
                CircArc{{0, 0}, 1.0, 0.0, kPi / 2},
                Segment{{1, 0}, {1, -1}}},
               "corner-chain");
}

}  // namespace

TEST_CASE("reach of the unit circle brackets 1") {
  ReachEstimate est = estimate_reach(unit_circle());
  CHECK(est.lower >= 1.0 - 1e-3);
  CHECK(est.upper <= 1.0 + 1e-3);
  CHECK(est.lower <= est.upper);
  REQUIRE(est.witness.has_value());
  double d1 = dist(est.witness->x, est.witness->y1);
  double d2 = dist(est.witness->x, est.witness->y2);
  CHECK(std::abs(d1 - est.upper) <= 1e-9);
  CHECK(std::abs(d2 - est.upper) <= 1e-9);
}

TEST_CASE("reach of two points is the half gap") {
  ReachEstimate est = estimate_reach(two_points());
  CHECK(est.lower >= 1.0 - 1e-3);
  CHECK(est.upper <= 1.0 + 1e-3);
}

TEST_CASE("tangent circles have zero reach with a witness at the tangency") {
  ReachEstimate est = estimate_reach(tangent_circles());
  CHECK(est.lower == 0.0);
  CHECK(est.upper == 0.0);
  REQUIRE(est.witness.has_value());
  CHECK(dist(est.witness->x, {1, 0}) < 0.05);
}

TEST_CASE("rotated tangency is found between sample points") {
  // tangency direction deliberately incommensurate with the sweep sampling
  double a = 0.37;
  Point2 c2{2 * std::cos(a), 2 * std::sin(a)};
  Shape s({CircArc{{0, 0}, 1.0, 0.0, kTwoPi}, CircArc{c2, 1.0, 0.0, kTwoPi}},
          "rotated-tangent-circles");
  ReachEstimate est = estimate_reach(s);
  CHECK(est.lower == 0.0);
  CHECK(est.upper == 0.0);
  REQUIRE(est.witness.has_value());
  CHECK(dist(est.witness->x, {std::cos(a), std::sin(a)}) < 0.01);
}

TEST_CASE("corner chain reach is curvature limited at 1") {
  ReachEstimate est = estimate_reach(corner_chain());
  CHECK(est.lower >= 1.0 - 5e-3);
  CHECK(est.upper <= 1.0 + 1e-3);
}

TEST_CASE("single convex primitives report the infinite sentinel") {
  ReachEstimate seg = estimate_reach(Shape({Segment{{-1, 0}, {1, 0}}}, "segment"));
  CHECK_FALSE(seg.upper_finite());
  CHECK(seg.lower == doctest::Approx(10.0));
  ReachEstimate pt = estimate_reach(Shape({SitePoint{{0, 0}}}, "point"));
  CHECK_FALSE(pt.upper_finite());
}

TEST_CASE("proximal smoothness probe on the circle") {
  SmoothnessVerdict ok = is_proximally_smooth(unit_circle(), 0.9);
  CHECK(ok.proximally_smooth);
  SmoothnessVerdict bad = is_proximally_smooth(unit_circle(), 1.1);
  CHECK_FALSE(bad.proximally_smooth);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->x.norm() < 0.05);  // failure shows up near the center
}

TEST_CASE("proximal smoothness is monotone in r") {
  bool prev = true;
  for (double r : {0.2, 0.5, 0.8, 0.95, 1.05, 1.3}) {
    bool now = is_proximally_smooth(unit_circle(), r).proximally_smooth;
    if (!prev) CHECK_FALSE(now);
    prev = now;
  }
}

TEST_CASE("abs-graph fails proximal smoothness near the kink") {
  SmoothnessVerdict v = is_proximally_smooth(vee_graph(), 0.1);
  CHECK_FALSE(v.proximally_smooth);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->x.norm() < 0.2);  // witness near the origin
}

TEST_CASE("exterior spheres exist where proximal smoothness fails") {
  // the kinked graph and the tangent pair satisfy the exterior sphere
  // condition at r = 0.5 while their reach is below 0.5 (or zero)
  CHECK(exterior_sphere_check(vee_graph(), 0.5).holds);
  CHECK(exterior_sphere_check(tangent_circles(), 0.5).holds);
  CHECK_FALSE(is_proximally_smooth(vee_graph(), 0.5).proximally_smooth);
  CHECK_FALSE(is_proximally_smooth(tangent_circles(), 0.5).proximally_smooth);
  // a proximally smooth shape passes at any radius below its reach
  CHECK(exterior_sphere_check(unit_circle(), 0.5).holds);
}

TEST_CASE("proximal smoothness at r implies exterior spheres below r") {
  Shape s = corner_chain();
  REQUIRE(is_proximally_smooth(s, 0.9).proximally_smooth);
  for (double r : {0.2, 0.5, 0.8}) CHECK(exterior_sphere_check(s, r).holds);
}

TEST_CASE("estimate invariants on a small gallery") {
  for (const Shape& s : {unit_circle(), two_points(), corner_chain(), tangent_circles()}) {
    ReachEstimate est = estimate_reach(s);
    INFO(s.label);
    CHECK(est.lower <= est.upper + 1e-12);
    if (est.witness) {
      // the witness exhibits the double projection at the reported upper bound
      double d1 = dist(est.witness->x, est.witness->y1);
      double d2 = dist(est.witness->x, est.witness->y2);
      CHECK(std::abs(d1 - est.upper) <= 1e-9);
      CHECK(std::abs(d2 - est.upper) <= 1e-9);
    }
  }
}
