#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "medgeo/arclength.hpp"

using namespace medgeo;

namespace {

std::vector<Primitive> stadium_chain(double a, double r) {
  // core [-a,a]x{0}, boundary traversed CCW
  return {
      CircArc{{a, 0}, r, -kPi / 2, kPi},
      Segment{{a, r}, {-a, r}},
      CircArc{{-a, 0}, r, kPi / 2, kPi},
      Segment{{-a, -r}, {a, -r}},
  };
}

}  // namespace

TEST_CASE("circle resample: length and curvature") {
  ArcCurve c = build_arclength({CircArc{{0, 0}, 2.0, 0.0, kTwoPi}}, 0.01);
  CHECK(c.closed);
  CHECK(std::abs(c.length - 4 * kPi) < 1e-6);
  for (const auto& s : c.samples) CHECK(s.kappa == doctest::Approx(0.5).epsilon(1e-12));
  // total turning of a CCW circle
  CHECK(c.total_turning() == doctest::Approx(kTwoPi).epsilon(1e-9));
}

TEST_CASE("segment resample") {
  ArcCurve c = build_arclength({Segment{{0, 0}, {3, 0}}}, 0.05);
  CHECK_FALSE(c.closed);
  CHECK(c.length == doctest::Approx(3.0));
  for (const auto& s : c.samples) {
    CHECK(s.kappa == 0.0);
    CHECK(s.phi == doctest::Approx(0.0));
  }
}

TEST_CASE("stadium chain: length and alternating curvature") {
  ArcCurve c = build_arclength(stadium_chain(1.0, 1.0), 0.01);
  CHECK(c.closed);
  CHECK(std::abs(c.length - (2 * kPi + 4)) < 1e-6);
  int zero = 0, one = 0;
  for (const auto& s : c.samples) {
    if (std::abs(s.kappa) < 1e-9) ++zero;
    else if (std::abs(s.kappa - 1.0) < 1e-9) ++one;
  }
  CHECK(zero + one == static_cast<int>(c.samples.size()));
  CHECK(zero > 100);
  CHECK(one > 100);
}

TEST_CASE("tangent equals (cos phi, sin phi) at every sample") {
  ArcCurve c = build_arclength(stadium_chain(1.0, 1.0), 0.01);
  for (std::size_t i = 0; i + 1 < c.samples.size(); ++i) {
    // chord direction vs stored angle at the left sample
    Point2 d = c.samples[i + 1].p - c.samples[i].p;
    double chord = std::atan2(d.y, d.x);
    double mid = 0.5 * (c.samples[i].phi + c.samples[i + 1].phi);
    CHECK(std::abs(wrap_angle(chord - mid)) < 2e-2);
    UnitVec t = c.tangent_at_sample(i);
    CHECK(std::abs(t.x - std::cos(c.samples[i].phi)) < 1e-12);
    CHECK(std::abs(t.y - std::sin(c.samples[i].phi)) < 1e-12);
  }
}

TEST_CASE("curve_eval on the unit circle") {
  ArcCurve c = build_arclength({CircArc{{0, 0}, 1.0, 0.0, kTwoPi}}, 0.002);
  CurveEval ev = curve_eval(c, kPi / 2);
  CHECK(dist(ev.p, {0, 1}) < 1e-5);
  CHECK(std::abs(ev.tangent.x + 1.0) < 1e-5);
  CHECK(std::abs(ev.tangent.y) < 1e-5);
  CHECK(ev.kappa == doctest::Approx(1.0));
  // normal (tangent rotated +90) points to the center on a CCW circle
  CHECK(dist(Point2{ev.normal.x, ev.normal.y}, {0, -1}) < 1e-5);
  // closed curves wrap
  CurveEval wrap = curve_eval(c, c.length + kPi / 2);
  CHECK(dist(wrap.p, ev.p) < 1e-12);
}

TEST_CASE("curve_eval on a segment") {
  ArcCurve c = build_arclength({Segment{{0, 0}, {4, 0}}}, 0.1);
  CurveEval ev = curve_eval(c, 1.0);
  CHECK(dist(ev.p, {1, 0}) < 1e-12);
  CHECK(ev.tangent.x == doctest::Approx(1.0));
  CHECK(ev.kappa == 0.0);
  CHECK_THROWS_AS(curve_eval(c, 4.5), Error);
  CHECK_THROWS_AS(curve_eval(c, -0.5), Error);
}

TEST_CASE("stadium cap midpoint has unit curvature") {
  ArcCurve c = build_arclength(stadium_chain(1.0, 1.0), 0.005);
  // first piece is the right cap; midpoint at s = pi/2
  CurveEval ev = curve_eval(c, kPi / 2);
  CHECK(std::abs(ev.kappa - 1.0) < 1e-6);
  CHECK(dist(ev.p, {2, 0}) < 1e-4);
}

TEST_CASE("resampled points stay on the source primitives") {
  double ds = 0.02;
  std::vector<Primitive> chain = stadium_chain(1.0, 1.0);
  ArcCurve c = build_arclength(chain, ds);
  Shape src(chain, "stadium-boundary");
  for (const auto& s : c.samples) {
    double d = shape_distance(src, s.p).distance;
    CHECK(d <= 2 * ds * ds);
  }
}

TEST_CASE("chains that do not connect or bend are rejected") {
  CHECK_THROWS_AS(build_arclength({Segment{{0, 0}, {1, 0}}, Segment{{5, 5}, {6, 5}}}, 0.1),
                  Error);
  // right angle joint violates G1
  bool threw = false;
  try {
    build_arclength({Segment{{0, 0}, {1, 0}}, Segment{{1, 0}, {1, 1}}}, 0.1);
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == Err::NotG1);
  }
  CHECK(threw);
  // but the corner policy accepts and records it
  ArcCurve c = build_arclength({Segment{{0, 0}, {1, 0}}, Segment{{1, 0}, {1, 1}}}, 0.1,
                               JointPolicy::AllowCorners);
  CHECK(c.corner_s.size() == 1);
  CHECK(c.max_corner_angle == doctest::Approx(kPi / 2).epsilon(1e-9));
}

TEST_CASE("chain pieces auto-orient to connect") {
  // second piece given tip-to-tip reversed
  ArcCurve c = build_arclength({Segment{{0, 0}, {1, 0}}, Segment{{2, 0}, {1, 0}}}, 0.05);
  CHECK(c.length == doctest::Approx(2.0));
  CHECK(dist(curve_eval(c, 2.0).p, {2, 0}) < 1e-12);
}

TEST_CASE("oriented_loop enforces handedness") {
  std::vector<Primitive> chain = stadium_chain(1.0, 0.5);
  ArcCurve ccw = oriented_loop(chain, 0.01, JointPolicy::RequireG1, true);
  ArcCurve cw = oriented_loop(chain, 0.01, JointPolicy::RequireG1, false);
  CHECK(ccw.signed_area() > 0);
  CHECK(cw.signed_area() < 0);
  CHECK(ccw.signed_area() == doctest::Approx(-cw.signed_area()).epsilon(1e-9));
}
