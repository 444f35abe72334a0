#pragma once
// Scene files: JSON schema for shapes and domains, canonical serialization,
// and the built-in example gallery.

#include <json.hpp>

#include "medgeo/distance_field.hpp"

namespace medgeo {

using json = nlohmann::ordered_json;

struct Scene {
  std::string name;
  std::vector<Shape> shapes;
  std::vector<Domain> domains;
  json expected;  // optional free-form verdict metadata, passed through
};

namespace detail {

inline Point2 parse_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(Err::SchemaError, path + " must be a [x, y] pair");
  Point2 p{j[0].get<double>(), j[1].get<double>()};
  if (!p.finite()) throw Error(Err::SchemaError, path + " has non-finite coordinates");
  return p;
}

inline Primitive parse_primitive(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw Error(Err::SchemaError, path + ".type missing");
  std::string type = j["type"].get<std::string>();
  try {
    if (type == "point") {
      return SitePoint{parse_point(j.at("p"), path + ".p")};
    }
    if (type == "segment") {
      return Segment{parse_point(j.at("a"), path + ".a"), parse_point(j.at("b"), path + ".b")};
    }
    if (type == "arc") {
      if (!j.contains("radius") || !j["radius"].is_number())
        throw Error(Err::SchemaError, path + ".radius missing");
      double radius = j["radius"].get<double>();
      if (!(radius > 0)) throw Error(Err::SchemaError, path + ".radius must be > 0");
      double start = j.value("start", 0.0);
      double end = j.value("end", start + kTwoPi);
      double sweep = norm_angle(end - start);
      if (sweep == 0.0) sweep = kTwoPi;
      return CircArc{parse_point(j.at("center"), path + ".center"), radius, start, sweep};
    }
    if (type == "polyline") {
      if (!j.contains("vertices") || !j["vertices"].is_array())
        throw Error(Err::SchemaError, path + ".vertices missing");
      Polycurve pc;
      int k = 0;
      for (const auto& v : j["vertices"])
        pc.vertices.push_back(parse_point(v, path + ".vertices[" + std::to_string(k++) + "]"));
      pc.closed = j.value("closed", false);
      return pc;
    }
  } catch (const json::exception& e) {
    throw Error(Err::SchemaError, path + ": " + e.what());
  }
  throw Error(Err::SchemaError, path + ".type unknown: " + type);
}

inline json point_json(const Point2& p) { return json::array({p.x, p.y}); }

inline json primitive_json(const Primitive& prim) {
  json j;
  if (const auto* sp = std::get_if<SitePoint>(&prim)) {
    j["type"] = "point";
    j["p"] = point_json(sp->p);
  } else if (const auto* sg = std::get_if<Segment>(&prim)) {
    j["type"] = "segment";
    j["a"] = point_json(sg->a);
    j["b"] = point_json(sg->b);
  } else if (const auto* arc = std::get_if<CircArc>(&prim)) {
    j["type"] = "arc";
    j["center"] = point_json(arc->center);
    j["radius"] = arc->radius;
    j["start"] = arc->start_angle;
    j["end"] = arc->end_angle();
  } else {
    const auto& pc = std::get<Polycurve>(prim);
    j["type"] = "polyline";
    json vs = json::array();
    for (const auto& v : pc.vertices) vs.push_back(point_json(v));
    j["vertices"] = vs;
    j["closed"] = pc.closed;
  }
  return j;
}

inline Regularity parse_regularity(const std::string& s, const std::string& path) {
  if (s == "C0") return Regularity::C0;
  if (s == "C1") return Regularity::C1;
  if (s == "C2") return Regularity::C2;
  throw Error(Err::SchemaError, path + " must be C0, C1 or C2");
}

}  // namespace detail

inline Scene parse_scene(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Err::SchemaError, std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw Error(Err::SchemaError, "top level must be an object");
  Scene scene;
  scene.name = root.value("name", "scene");
  if (root.contains("shapes")) {
    if (!root["shapes"].is_array()) throw Error(Err::SchemaError, "shapes must be an array");
    int si = 0;
    for (const auto& js : root["shapes"]) {
      std::string path = "shapes[" + std::to_string(si) + "]";
      std::vector<Primitive> prims;
      if (js.is_object() && js.contains("primitives")) {
        int pi = 0;
        for (const auto& jp : js["primitives"])
          prims.push_back(
              detail::parse_primitive(jp, path + ".primitives[" + std::to_string(pi++) + "]"));
      } else {
        prims.push_back(detail::parse_primitive(js, path));
      }
      std::string label = js.is_object() ? js.value("label", scene.name) : scene.name;
      try {
        scene.shapes.emplace_back(std::move(prims), label);
      } catch (const Error& e) {
        throw Error(Err::SchemaError, path + ": " + e.what());
      }
      ++si;
    }
  }
  if (root.contains("domains")) {
    if (!root["domains"].is_array()) throw Error(Err::SchemaError, "domains must be an array");
    int di = 0;
    for (const auto& jd : root["domains"]) {
      std::string path = "domains[" + std::to_string(di) + "]";
      if (!jd.is_object() || !jd.contains("outer"))
        throw Error(Err::SchemaError, path + ".outer missing");
      std::vector<std::vector<Primitive>> loops;
      std::vector<Primitive> outer;
      int pi = 0;
      for (const auto& jp : jd["outer"])
        outer.push_back(detail::parse_primitive(jp, path + ".outer[" + std::to_string(pi++) + "]"));
      loops.push_back(std::move(outer));
      if (jd.contains("holes")) {
        int hi = 0;
        for (const auto& jh : jd["holes"]) {
          std::vector<Primitive> hole;
          int pj = 0;
          for (const auto& jp : jh)
            hole.push_back(detail::parse_primitive(
                jp, path + ".holes[" + std::to_string(hi) + "][" + std::to_string(pj++) + "]"));
          loops.push_back(std::move(hole));
          ++hi;
        }
      }
      Regularity tag = Regularity::C1;
      bool simply = jd.contains("holes") ? jd["holes"].empty() : true;
      if (jd.contains("tags")) {
        const auto& jt = jd["tags"];
        if (jt.contains("regularity"))
          tag = detail::parse_regularity(jt["regularity"].get<std::string>(),
                                         path + ".tags.regularity");
        if (jt.contains("simply_connected")) simply = jt["simply_connected"].get<bool>();
      }
      std::string label = jd.value("label", scene.name);
      try {
        scene.domains.push_back(make_domain(std::move(loops), tag, simply, label));
      } catch (const Error& e) {
        throw Error(Err::SchemaError, path + ": " + e.what());
      }
      ++di;
    }
  }
  if (root.contains("expected")) scene.expected = root["expected"];
  if (scene.shapes.empty() && scene.domains.empty())
    throw Error(Err::SchemaError, "scene needs at least one shape or domain");
  return scene;
}

inline std::string serialize_scene(const Scene& scene) {
  json root;
  root["name"] = scene.name;
  if (!scene.shapes.empty()) {
    json arr = json::array();
    for (const auto& s : scene.shapes) {
      json js;
      js["label"] = s.label;
      json prims = json::array();
      for (const auto& p : s.primitives) prims.push_back(detail::primitive_json(p));
      js["primitives"] = prims;
      arr.push_back(js);
    }
    root["shapes"] = arr;
  }
  if (!scene.domains.empty()) {
    json arr = json::array();
    for (const auto& d : scene.domains) {
      json jd;
      jd["label"] = d.label;
      json outer = json::array();
      for (const auto& p : d.loops[0]) outer.push_back(detail::primitive_json(p));
      jd["outer"] = outer;
      json holes = json::array();
      for (std::size_t i = 1; i < d.loops.size(); ++i) {
        json hole = json::array();
        for (const auto& p : d.loops[i]) hole.push_back(detail::primitive_json(p));
        holes.push_back(hole);
      }
      jd["holes"] = holes;
      jd["tags"] = {{"regularity", regularity_name(d.tag)},
                    {"simply_connected", d.simply_connected}};
      arr.push_back(jd);
    }
    root["domains"] = arr;
  }
  if (!scene.expected.is_null()) root["expected"] = scene.expected;
  return root.dump(2) + "\n";
}

// ---- built-in gallery ----

namespace gallery_detail {

inline Polycurve ellipse_polyline(double a, double b, int n = 2048) {
  std::vector<Point2> v;
  v.reserve(n);
  for (int k = 0; k < n; ++k) {
    double t = kTwoPi * k / n;
    v.push_back({a * std::cos(t), b * std::sin(t)});
  }
  return Polycurve{v, true};
}

inline std::vector<Primitive> stadium_loop(double a, double r) {
  return {CircArc{{a, 0}, r, -kPi / 2, kPi}, Segment{{a, r}, {-a, r}},
          CircArc{{-a, 0}, r, kPi / 2, kPi}, Segment{{-a, -r}, {a, -r}}};
}

inline std::vector<Primitive> corner_chain_prims() {
  return {Segment{{-1, 1}, {0, 1}}, CircArc{{0, 0}, 1.0, 0.0, kPi / 2},
          Segment{{1, 0}, {1, -1}}};
}

// boundary of the 1-tube around the corner chain (exact pieces)
inline std::vector<Primitive> corner_tube_loop() {
  return {
      CircArc{{0, 0}, 2.0, 0.0, kPi / 2},     // outer arc (2,0) -> (0,2)
      Segment{{0, 2}, {-1, 2}},               // above [p,q]
      CircArc{{-1, 1}, 1.0, kPi / 2, kPi},    // cap around p
      Segment{{-1, 0}, {0, 0}},               // below [p,q]
      Segment{{0, 0}, {0, -1}},               // left of [a,b]
      CircArc{{1, -1}, 1.0, kPi, kPi},        // cap around b
      Segment{{2, -1}, {2, 0}},               // right of [a,b]
  };
}

inline std::vector<Primitive> two_disk_loop(double alpha, double r) {
  double beta = std::acos(alpha / r);
  return {CircArc{{alpha, 0}, r, -(kPi - beta), 2 * (kPi - beta)},
          CircArc{{-alpha, 0}, r, beta, 2 * (kPi - beta)}};
}

}  // namespace gallery_detail

inline std::vector<std::string> gallery_names() {
  return {"point",      "segment",    "unit_circle", "two_points",     "disk",
          "rectangle",  "ellipse",    "annulus",     "stadium",        "corner_chain",
          "two_disk_union", "tangent_circles", "abs_graph"};
}

inline Scene gallery_scene(const std::string& name) {
  using namespace gallery_detail;
  Scene sc;
  sc.name = name;
  if (name == "point") {
    sc.shapes.emplace_back(std::vector<Primitive>{SitePoint{{0, 0}}}, name);
    sc.expected = {{"reach", "infinite"}, {"contact", "full-circle"}};
  } else if (name == "segment") {
    sc.shapes.emplace_back(std::vector<Primitive>{Segment{{-1, 0}, {1, 0}}}, name);
    sc.expected = {{"reach", "infinite"}, {"boundary_points", 2}};
  } else if (name == "unit_circle") {
    sc.shapes.emplace_back(std::vector<Primitive>{CircArc{{0, 0}, 1.0, 0.0, kTwoPi}}, name);
    sc.expected = {{"reach", 1.0}, {"boundary_points", 0}};
  } else if (name == "two_points") {
    sc.shapes.emplace_back(std::vector<Primitive>{SitePoint{{-1, 0}}, SitePoint{{1, 0}}}, name);
    sc.expected = {{"reach", 1.0}};
  } else if (name == "disk") {
    sc.domains.push_back(
        make_domain({{CircArc{{0, 0}, 2.0, 0, kTwoPi}}}, Regularity::C2, true, name));
    sc.shapes.emplace_back(std::vector<Primitive>{SitePoint{{0, 0}}}, "disk-core");
    sc.expected = {{"chain", "all-equal"}, {"high_equals_cut", true},
                   {"lambda_constant", true}, {"tube_core", "point"}, {"rho", 2.0}};
  } else if (name == "rectangle") {
    std::vector<Primitive> loop{Segment{{0, 0}, {4, 0}}, Segment{{4, 0}, {4, 2}},
                                Segment{{4, 2}, {0, 2}}, Segment{{0, 2}, {0, 0}}};
    sc.domains.push_back(make_domain({loop}, Regularity::C0, true, name));
    sc.expected = {{"chain", "high<sigma=central<cut"}, {"high_equals_cut", false},
                   {"rho", 1.0}};
  } else if (name == "ellipse") {
    sc.domains.push_back(
        make_domain({{ellipse_polyline(2, 1)}}, Regularity::C2, true, name));
    sc.expected = {{"chain", "high<sigma<central=cut"}, {"high_equals_cut", false},
                   {"lambda_constant", false}, {"rho", 1.0}};
  } else if (name == "annulus") {
    sc.domains.push_back(make_domain(
        {{CircArc{{0, 0}, 3.0, 0, kTwoPi}}, {CircArc{{0, 0}, 1.0, 0, kTwoPi}}},
        Regularity::C2, false, name));
    sc.shapes.emplace_back(std::vector<Primitive>{CircArc{{0, 0}, 2.0, 0, kTwoPi}},
                           "annulus-core");
    sc.expected = {{"high_equals_cut", true}, {"lambda_constant", true},
                   {"tube_core", "circle"}, {"rho", 1.0}};
  } else if (name == "stadium") {
    sc.domains.push_back(make_domain({stadium_loop(1.0, 0.5)}, Regularity::C1, true, name));
    sc.shapes.emplace_back(std::vector<Primitive>{Segment{{-1, 0}, {1, 0}}}, "stadium-core");
    sc.expected = {{"high_equals_cut", true}, {"lambda_constant", true},
                   {"tube_core", "segment"}, {"rho", 0.5}, {"c2", false}};
  } else if (name == "corner_chain") {
    sc.shapes.emplace_back(corner_chain_prims(), name);
    sc.domains.push_back(make_domain({corner_tube_loop()}, Regularity::C0, true, name + "-tube"));
    sc.expected = {{"reach", 1.0}, {"high_equals_cut", true}, {"tube_core", "chain"},
                   {"rho", 1.0}, {"c1", false}};
  } else if (name == "two_disk_union") {
    sc.domains.push_back(make_domain({two_disk_loop(0.8, 1.2)}, Regularity::C0, true, name));
    sc.expected = {{"high_equals_cut", false}, {"lambda_smooth_value", 1.2}, {"rho", 1.2}};
  } else if (name == "tangent_circles") {
    sc.shapes.emplace_back(
        std::vector<Primitive>{CircArc{{0, 0}, 1.0, 0, kTwoPi}, CircArc{{2, 0}, 1.0, 0, kTwoPi}},
        name);
    sc.expected = {{"reach", 0.0}, {"exterior_sphere_at_half", true}};
  } else if (name == "abs_graph") {
    sc.shapes.emplace_back(
        std::vector<Primitive>{Segment{{-1, 1}, {0, 0}}, Segment{{0, 0}, {1, 1}}}, name);
    sc.expected = {{"reach", 0.0}, {"exterior_sphere_at_half", true}};
  } else {
    throw Error(Err::InvalidArgument, "unknown gallery scene: " + name);
  }
  return sc;
}

}  // namespace medgeo
