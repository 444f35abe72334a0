#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "medgeo/scene.hpp"
#include "medgeo/svg.hpp"

using namespace medgeo;

TEST_CASE("minimal scene parses to one segment") {
  Scene sc = parse_scene(R"({"shapes":[{"type":"segment","a":[-1,0],"b":[1,0]}]})");
  REQUIRE(sc.shapes.size() == 1);
  REQUIRE(sc.shapes[0].primitives.size() == 1);
  const auto& seg = std::get<Segment>(sc.shapes[0].primitives[0]);
  CHECK(dist(seg.a, {-1, 0}) == 0.0);
  CHECK(dist(seg.b, {1, 0}) == 0.0);
}

TEST_CASE("schema errors carry the offending path") {
  bool threw = false;
  try {
    parse_scene(R"({"shapes":[{"type":"arc","center":[0,0],"radius":-1}]})");
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == Err::SchemaError);
    CHECK(std::string(e.what()).find("shapes[0].radius") != std::string::npos);
  }
  CHECK(threw);
  CHECK_THROWS_AS(parse_scene("not json"), Error);
  CHECK_THROWS_AS(parse_scene("{}"), Error);
  CHECK_THROWS_AS(parse_scene(R"({"shapes":[{"type":"warp","p":[0,0]}]})"), Error);
}

TEST_CASE("gallery names resolve and contain the required scenes") {
  auto names = gallery_names();
  for (const char* want :
       {"disk", "rectangle", "ellipse", "annulus", "stadium", "corner_chain", "two_disk_union",
        "tangent_circles", "abs_graph", "point", "segment", "unit_circle"}) {
    bool found = false;
    for (const auto& n : names)
      if (n == want) found = true;
    INFO(want);
    CHECK(found);
  }
  for (const auto& n : names) {
    Scene sc = gallery_scene(n);
    CHECK(sc.name == n);
    CHECK((sc.shapes.size() + sc.domains.size()) >= 1);
    CHECK_FALSE(sc.expected.is_null());
  }
  CHECK_THROWS_AS(gallery_scene("no-such-scene"), Error);
}

TEST_CASE("corner_chain gallery shape matches the three-piece construction") {
  Scene sc = gallery_scene("corner_chain");
  REQUIRE(sc.shapes.size() == 1);
  CHECK(sc.shapes[0].primitives.size() == 3);
  CHECK(shape_distance(sc.shapes[0], {0, 0}).distance == doctest::Approx(1.0));
  // its tube domain is closed and has the corner at the origin
  REQUIRE(sc.domains.size() == 1);
  bool corner_at_origin = false;
  for (const auto& c : sc.domains[0].corners)
    if (c.norm() < 1e-6) corner_at_origin = true;
  CHECK(corner_at_origin);
}

TEST_CASE("serialize then parse is the identity on the gallery") {
  for (const auto& name : gallery_names()) {
    Scene sc = gallery_scene(name);
    std::string text = serialize_scene(sc);
    Scene back = parse_scene(text);
    std::string text2 = serialize_scene(back);
    INFO(name);
    CHECK(text == text2);
    CHECK(back.shapes.size() == sc.shapes.size());
    CHECK(back.domains.size() == sc.domains.size());
    // geometric spot check: distances agree at probe points
    if (!sc.shapes.empty()) {
      R2Seq seq(5);
      for (int k = 0; k < 32; ++k) {
        Point2 x = seq.next_in(sc.shapes[0].bbox.inflated(1.0));
        CHECK(shape_distance(sc.shapes[0], x).distance ==
              doctest::Approx(shape_distance(back.shapes[0], x).distance).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("svg output is deterministic and well formed") {
  Scene sc = gallery_scene("rectangle");
  svg::Figure fig(sc.domains[0].bbox);
  svg::Style st;
  st.stroke = "#2266cc";
  fig.add_curve(sc.domains[0].loop_curves[0], st);
  fig.add_points({{2, 1}, {1, 1}}, st, 0.03);
  std::string a = fig.str();
  CHECK(a.find("<svg") != std::string::npos);
  CHECK(a.find("polyline") != std::string::npos);
  CHECK(a.find("circle") != std::string::npos);

  svg::Figure fig2(sc.domains[0].bbox);
  fig2.add_curve(sc.domains[0].loop_curves[0], st);
  fig2.add_points({{2, 1}, {1, 1}}, st, 0.03);
  CHECK(fig2.str() == a);
}
