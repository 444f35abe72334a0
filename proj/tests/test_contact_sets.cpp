#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "medgeo/contact_sets.hpp"

using namespace medgeo;

namespace {

Shape segment2() { return Shape({Segment{{-1, 0}, {1, 0}}}, "segment"); }
Shape unit_circle() { return Shape({CircArc{{0, 0}, 1.0, 0.0, kTwoPi}}, "unit-circle"); }

Shape corner_chain() {
  return Shape({Segment{{-1, 1}, {0, 1}},
                CircArc{{0, 0}, 1.0, 0.0, kPi / 2},
                Segment{{1, 0}, {1, -1}}},
               "corner-chain");
}

ContactParams fast_params(double reach_lower) {
  ContactParams cp;
  cp.reach_lower = reach_lower;
  return cp;
}

std::vector<Point2> component_points(const ContactSet& cs, double step) {
  std::vector<Point2> pts;
  for (const auto& comp : cs.components) {
    int n = std::max(1, static_cast<int>(std::ceil(comp.sweep / step)));
    for (int k = 0; k <= n; ++k) {
      double a = comp.angle_start + comp.sweep * k / n;
      pts.push_back(cs.p + Vec2{std::cos(a), std::sin(a)} * cs.r);
    }
  }
  return pts;
}

}  // namespace

TEST_CASE("interior segment point: two antipodal contact points") {
  ContactSet cs = contact_set(segment2(), 0.5, {0, 0}, kPi / 720, fast_params(10.0));
  CHECK(cs.classification == ContactClass::TwoAntipodal);
  REQUIRE(cs.components.size() == 2);
  for (const auto& comp : cs.components) {
    Point2 y = cs.p + Vec2{std::cos(comp.angle_center()), std::sin(comp.angle_center())} * 0.5;
    CHECK(std::abs(std::abs(y.y) - 0.5) < 1e-3);
    CHECK(std::abs(y.x) < 1e-3);
  }
}

TEST_CASE("segment endpoint: closed semicircle") {
  ContactSet cs = contact_set(segment2(), 0.5, {1, 0}, kPi / 720, fast_params(10.0));
  CHECK(cs.classification == ContactClass::Semicircle);
  REQUIRE(cs.components.size() == 1);
  CHECK(cs.components[0].sweep == doctest::Approx(kPi).epsilon(1e-2));
  // the arc is the right half: center angle 0
  CHECK(std::abs(wrap_angle(cs.components[0].angle_center())) < 0.05);
}

TEST_CASE("singleton core: full circle") {
  Shape pt({SitePoint{{0.25, -0.5}}}, "point");
  ContactSet cs = contact_set(pt, 0.5, {0.25, -0.5}, kPi / 360, fast_params(10.0));
  CHECK(cs.classification == ContactClass::FullCircle);
}

TEST_CASE("arc midpoint on the corner chain is interior") {
  Shape s = corner_chain();
  Point2 p{std::cos(kPi / 4), std::sin(kPi / 4)};
  ContactSet cs = contact_set(s, 0.5, p, kPi / 720, fast_params(1.0));
  CHECK(cs.classification == ContactClass::TwoAntipodal);
  // every contact point sits on the circle and on the tube boundary
  for (const auto& y : component_points(cs, 0.01)) {
    CHECK(std::abs(dist(y, p) - 0.5) < 1e-9);
    CHECK(std::abs(shape_distance(s, y).distance - 0.5) < 1e-6);
  }
}

TEST_CASE("chain endpoints classify as semicircles, interior as antipodal pairs") {
  Shape s = corner_chain();
  ContactParams cp = fast_params(1.0);
  BoundaryPointsResult res = boundary_points(s, 0.5, 200, cp);
  CHECK(res.kind == BoundaryPointsResult::Kind::Points);
  CHECK(res.other_count == 0);
  REQUIRE(res.points.size() == 2);
  double d1 = std::min(dist(res.points[0], {-1, 1}), dist(res.points[0], {1, -1}));
  double d2 = std::min(dist(res.points[1], {-1, 1}), dist(res.points[1], {1, -1}));
  double step = s.total_boundary_length() / 200;
  CHECK(d1 <= step);
  CHECK(d2 <= step);
  CHECK(dist(res.points[0], res.points[1]) >= 10 * step);
}

TEST_CASE("closed curve has no manifold boundary") {
  BoundaryPointsResult res = boundary_points(unit_circle(), 0.5, 120, fast_params(1.0));
  CHECK(res.kind == BoundaryPointsResult::Kind::Points);
  CHECK(res.points.empty());
  CHECK(res.other_count == 0);
}

TEST_CASE("singleton core reports not-applicable") {
  Shape pt({SitePoint{{0, 0}}}, "point");
  BoundaryPointsResult res = boundary_points(pt, 0.5, 50, fast_params(10.0));
  CHECK(res.kind == BoundaryPointsResult::Kind::SingletonCore);
}

TEST_CASE("contact sets of distinct base points are disjoint") {
  Shape s = segment2();
  ContactParams cp = fast_params(10.0);
  std::vector<Point2> ps{{-0.6, 0}, {-0.2, 0}, {0.3, 0}, {0.9, 0}, {1, 0}};
  std::vector<ContactSet> sets;
  for (const auto& p : ps) sets.push_back(contact_set(s, 0.5, p, kPi / 720, cp));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      double best = 1e300;
      for (const auto& a : component_points(sets[i], 0.02))
        for (const auto& b : component_points(sets[j], 0.02)) best = std::min(best, dist(a, b));
      CHECK(best > 0.0);
    }
  }
}

TEST_CASE("no arc component exceeds pi plus slack") {
  Shape s = corner_chain();
  ContactParams cp = fast_params(1.0);
  double L = s.total_boundary_length();
  for (int k = 0; k <= 40; ++k) {
    // walk the chain by arc length across all primitives
    double target = L * k / 40;
    double acc = 0;
    Point2 p{};
    for (const auto& prim : s.primitives) {
      double pl = primitive_length(prim);
      if (target <= acc + pl || &prim == &s.primitives.back()) {
        p = primitive_point(prim, std::clamp(target - acc, 0.0, pl));
        break;
      }
      acc += pl;
    }
    ContactSet cs = contact_set(s, 0.5, p, kPi / 360, cp);
    for (const auto& comp : cs.components) CHECK(comp.sweep <= kPi + 0.05);
  }
}

TEST_CASE("classification is stable under step halving") {
  Shape s = segment2();
  ContactParams cp = fast_params(10.0);
  for (const Point2& p : {Point2{0.3, 0}, Point2{-1, 0}, Point2{1, 0}}) {
    ContactSet a = contact_set(s, 0.5, p, kPi / 360, cp);
    ContactSet b = contact_set(s, 0.5, p, kPi / 720, cp);
    CHECK(a.classification == b.classification);
  }
}

TEST_CASE("error paths: off-set base point and excessive radius") {
  Shape s = segment2();
  bool threw = false;
  try {
    contact_set(s, 0.5, {0, 1}, kPi / 360, fast_params(10.0));
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == Err::NotOnSet);
  }
  CHECK(threw);

  Shape c = unit_circle();
  threw = false;
  try {
    contact_set(c, 1.5, {1, 0}, kPi / 360, fast_params(1.0));
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == Err::ReachExceeded);
  }
  CHECK(threw);
}
