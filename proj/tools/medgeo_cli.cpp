// Command-line front end: scene ingestion, per-concept subcommands, JSON
// reports, CSV tables, and SVG figures.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "medgeo/contact_sets.hpp"
#include "medgeo/probes.hpp"
#include "medgeo/scene.hpp"
#include "medgeo/svg.hpp"
#include "medgeo/verifiers.hpp"

namespace fs = std::filesystem;
using namespace medgeo;

namespace {

struct GlobalOpts {
  double grid{0.02};
  std::uint64_t seed{0};
  std::string out{"."};
  bool want_svg{false};
};

struct RunReport {
  json j;
  bool all_pass{true};

  RunReport(const std::string& command, const std::string& scene, const GlobalOpts& g) {
    j["command"] = command;
    j["scene"] = scene;
    j["parameters"] = {{"grid", g.grid}, {"seed", g.seed}};
    j["checks"] = json::array();
    j["metrics"] = json::object();
    j["artifacts"] = json::array();
  }
  void param(const std::string& k, const json& v) { j["parameters"][k] = v; }
  void metric(const std::string& k, const json& v) { j["metrics"][k] = v; }
  void check(const std::string& name, bool pass, double tolerance, double value) {
    j["checks"].push_back(
        {{"name", name}, {"pass", pass}, {"tolerance", tolerance}, {"value", value}});
    all_pass = all_pass && pass;
  }
  // filenames only: artifacts sit next to the report
  void artifact(const std::string& path) {
    j["artifacts"].push_back(fs::path(path).filename().string());
  }
};

Scene load_scene(const std::string& arg) {
  if (arg.rfind("gallery:", 0) == 0) return gallery_scene(arg.substr(8));
  std::ifstream in(arg, std::ios::binary);
  if (!in) throw Error(Err::IOFailure, "cannot open scene file " + arg);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

std::string scene_slug(const std::string& arg) {
  std::string s = arg;
  if (s.rfind("gallery:", 0) == 0) s = s.substr(8);
  auto slash = s.find_last_of('/');
  if (slash != std::string::npos) s = s.substr(slash + 1);
  auto dot = s.find_last_of('.');
  if (dot != std::string::npos) s = s.substr(0, dot);
  return s;
}

Point2 parse_xy(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw Error(Err::InvalidArgument, "expected X,Y but got " + s);
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(std::stod(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

int finish(RunReport& rep, const GlobalOpts& g, const std::string& name) {
  fs::create_directories(g.out);
  fs::path path = fs::path(g.out) / (name + ".json");
  std::ofstream out(path, std::ios::binary);
  out << rep.j.dump(2) << "\n";
  std::cout << rep.j.dump(2) << "\n";
  return rep.all_pass ? 0 : 1;
}

const Shape& pick_shape(const Scene& sc, int idx) {
  if (sc.shapes.empty()) throw Error(Err::InvalidArgument, "scene has no shapes");
  if (idx < 0 || idx >= static_cast<int>(sc.shapes.size()))
    throw Error(Err::InvalidArgument, "shape index out of range");
  return sc.shapes[idx];
}

const Domain& pick_domain(const Scene& sc, int idx) {
  if (sc.domains.empty()) throw Error(Err::InvalidArgument, "scene has no domains");
  if (idx < 0 || idx >= static_cast<int>(sc.domains.size()))
    throw Error(Err::InvalidArgument, "domain index out of range");
  return sc.domains[idx];
}

svg::Style style(const char* color, double width = 0.01) {
  svg::Style st;
  st.stroke = color;
  st.width = width;
  return st;
}

int cmd_distance(const std::string& scene_arg, const GlobalOpts& g, const std::string& query,
                 int shape_idx) {
  Scene sc = load_scene(scene_arg);
  const Shape& shape = pick_shape(sc, shape_idx);
  Point2 q = parse_xy(query);
  ProjectionResult pr = eval_distance(shape, q);
  RunReport rep("distance", scene_arg, g);
  rep.param("query", {q.x, q.y});
  rep.metric("distance", pr.distance);
  rep.metric("multiplicity", pr.multiplicity);
  rep.metric("continuum", pr.continuum);
  json feet = json::array();
  for (const auto& f : pr.projections) feet.push_back({f.p.x, f.p.y});
  rep.metric("projections", feet);
  // each reported projection realizes the distance
  double worst = 0;
  for (const auto& f : pr.projections) worst = std::max(worst, std::abs(dist(q, f.p) - pr.distance));
  rep.check("projections-at-distance", worst <= 1e-12 * (1 + pr.distance), 1e-12, worst);
  return finish(rep, g, "distance_" + scene_slug(scene_arg));
}

int cmd_reach(const std::string& scene_arg, const GlobalOpts& g, int shape_idx) {
  Scene sc = load_scene(scene_arg);
  const Shape& shape = pick_shape(sc, shape_idx);
  ReachParams prm;
  prm.seed = g.seed;
  ReachEstimate est = estimate_reach(shape, prm);
  RunReport rep("reach", scene_arg, g);
  rep.metric("lower", est.lower);
  rep.metric("upper", est.upper_finite() ? json(est.upper) : json("infinite"));
  rep.metric("probes", est.probes);
  if (est.witness) {
    rep.metric("witness", {{"x", {est.witness->x.x, est.witness->x.y}},
                           {"y1", {est.witness->y1.x, est.witness->y1.y}},
                           {"y2", {est.witness->y2.x, est.witness->y2.y}}});
  }
  rep.check("lower-le-upper", est.lower <= est.upper + 1e-12, 1e-12,
            est.upper_finite() ? est.upper - est.lower : 0.0);
  return finish(rep, g, "reach_" + scene_slug(scene_arg));
}

int cmd_skeleton(const std::string& scene_arg, const GlobalOpts& g, int domain_idx) {
  Scene sc = load_scene(scene_arg);
  const Domain& dom = pick_domain(sc, domain_idx);
  DistanceField field = grid_transform(dom, g.grid);
  SingularSetReport srep = inclusion_chain_report(dom, field);
  RunReport rep("skeleton", scene_arg, g);
  rep.metric("rho", srep.rho);
  rep.metric("counts", {{"high", srep.high.size()},
                        {"skeleton", srep.skeleton_pts.size()},
                        {"central", srep.central.size()},
                        {"cut", srep.cut.size()}});
  rep.metric("components", srep.components);
  auto pair_json = [](const PairVerdict& v) {
    return json{{"pair", v.pair},
                {"inclusion_ok", v.inclusion_ok},
                {"inclusion_gap", v.inclusion_gap},
                {"excess_gap", v.excess_gap},
                {"relation", pair_relation_name(v.relation)}};
  };
  rep.metric("chain", json::array({pair_json(srep.high_vs_skeleton),
                                   pair_json(srep.skeleton_vs_central),
                                   pair_json(srep.central_vs_cut)}));
  rep.check("chain-inclusions", srep.chain_ok, 2 * g.grid,
            std::max({srep.high_vs_skeleton.inclusion_gap,
                      srep.skeleton_vs_central.inclusion_gap,
                      srep.central_vs_cut.inclusion_gap}));
  if (srep.c2_equality_checked)
    rep.check("c2-central-equals-cut", srep.c2_central_equals_cut, 2 * g.grid,
              two_sided_hausdorff(srep.central, srep.cut));

  fs::create_directories(g.out);
  fs::path csv = fs::path(g.out) / ("field_" + scene_slug(scene_arg) + ".csv");
  std::ofstream(csv, std::ios::binary) << field_to_csv(field);
  rep.artifact(csv.string());
  if (g.want_svg) {
    svg::Figure fig(dom.bbox);
    for (const auto& lc : dom.loop_curves) fig.add_curve(lc, style("#444444"));
    fig.add_points(srep.cut, style("#88bbee"), 0.01);
    fig.add_points(srep.central, style("#33aa55"), 0.009);
    fig.add_points(srep.skeleton_pts, style("#dd8822"), 0.008);
    fig.add_points(srep.high, style("#cc2222"), 0.007);
    fs::path svg_path = fs::path(g.out) / ("skeleton_" + scene_slug(scene_arg) + ".svg");
    fig.write(svg_path.string());
    rep.artifact(svg_path.string());
  }
  return finish(rep, g, "skeleton_" + scene_slug(scene_arg));
}

int cmd_offset(const std::string& scene_arg, const GlobalOpts& g, double r,
               const std::string& method, int shape_idx) {
  Scene sc = load_scene(scene_arg);
  const Shape& shape = pick_shape(sc, shape_idx);
  OffsetMethod m = method == "contour" ? OffsetMethod::Contour : OffsetMethod::Analytic;
  OffsetParams op;
  op.grid_h = g.grid;
  OffsetBoundary ob = offset_boundary(shape, r, m, op);
  RunReport rep("offset", scene_arg, g);
  rep.param("r", r);
  rep.param("method", method);
  rep.metric("loops", ob.loops.size());
  double len = 0;
  for (const auto& lc : ob.loops) len += lc.length;
  rep.metric("total_length", len);
  rep.metric("max_corner_angle", ob.max_corner_angle);
  double worst = 0;
  for (const auto& lc : ob.loops)
    for (std::size_t i = 0; i < lc.samples.size(); i += 5)
      worst = std::max(worst, std::abs(shape_distance(shape, lc.samples[i].p).distance - r));
  double tol = m == OffsetMethod::Analytic ? 1e-6 : 2 * g.grid;
  rep.check("loops-at-distance-r", worst <= tol, tol, worst);

  // cross-validation against the other construction (skipped when the
  // analytic method is inapplicable, e.g. past the reach)
  try {
    OffsetBoundary other = offset_boundary(
        shape, r, m == OffsetMethod::Analytic ? OffsetMethod::Contour : OffsetMethod::Analytic,
        op);
    std::vector<Point2> pa, pb;
    for (const auto& lc : ob.loops)
      for (const auto& s : lc.samples) pa.push_back(s.p);
    for (const auto& lc : other.loops)
      for (const auto& s : lc.samples) pb.push_back(s.p);
    double cross = two_sided_hausdorff(pa, pb);
    rep.metric("cross_method_hausdorff", cross);
    rep.check("methods-agree", cross <= 2 * g.grid, 2 * g.grid, cross);
  } catch (const Error& e) {
    rep.metric("cross_method_hausdorff", nullptr);
    rep.metric("cross_method_note", e.what());
  }

  json loops = json::array();
  for (const auto& lc : ob.loops) {
    json pts = json::array();
    for (const auto& s : lc.samples) pts.push_back({s.p.x, s.p.y});
    loops.push_back(pts);
  }
  rep.metric("polylines", loops);
  if (g.want_svg) {
    svg::Figure fig(shape.bbox.inflated(r * 1.2));
    for (const auto& lc : ob.loops) fig.add_curve(lc, style("#2266cc"));
    for (const auto& bs : sample_boundary(shape, shape.scale() / 256))
      fig.add_points({bs.p}, style("#222222"), 0.004);
    fs::path svg_path = fs::path(g.out) / ("offset_" + scene_slug(scene_arg) + ".svg");
    fs::create_directories(g.out);
    fig.write(svg_path.string());
    rep.artifact(svg_path.string());
  }
  return finish(rep, g, "offset_" + scene_slug(scene_arg));
}

int cmd_contact(const std::string& scene_arg, const GlobalOpts& g, double r,
                const std::string& p_arg, int shape_idx) {
  Scene sc = load_scene(scene_arg);
  const Shape& shape = pick_shape(sc, shape_idx);
  Point2 p = parse_xy(p_arg);
  ContactSet cs = contact_set(shape, r, p);
  RunReport rep("contact", scene_arg, g);
  rep.param("r", r);
  rep.param("p", {p.x, p.y});
  rep.metric("classification", contact_class_name(cs.classification));
  json comps = json::array();
  for (const auto& c : cs.components)
    comps.push_back({{"angle_start", c.angle_start}, {"sweep", c.sweep},
                     {"is_point", c.is_point}});
  rep.metric("components", comps);
  rep.check("dichotomy", cs.classification != ContactClass::Other, 0, 0);
  if (g.want_svg) {
    svg::Figure fig(shape.bbox.inflated(r * 1.5));
    for (const auto& bs : sample_boundary(shape, shape.scale() / 256))
      fig.add_points({bs.p}, style("#222222"), 0.004);
    fig.add_circle(p, r, style("#bbbbbb", 0.005));
    for (const auto& c : cs.components) {
      std::vector<Point2> arc;
      int n = std::max(2, static_cast<int>(c.sweep / 0.01));
      for (int k = 0; k <= n; ++k) {
        double a = c.angle_start + c.sweep * k / n;
        arc.push_back(p + Vec2{std::cos(a), std::sin(a)} * r);
      }
      if (c.is_point) fig.add_points({arc[arc.size() / 2]}, style("#cc2222"), 0.02);
      else fig.add_polyline(arc, style("#cc2222", 0.02));
    }
    fs::path svg_path = fs::path(g.out) / ("contact_" + scene_slug(scene_arg) + ".svg");
    fs::create_directories(g.out);
    fig.write(svg_path.string());
    rep.artifact(svg_path.string());
  }
  return finish(rep, g, "contact_" + scene_slug(scene_arg));
}

int cmd_lambda(const std::string& scene_arg, const GlobalOpts& g, int samples, int domain_idx) {
  Scene sc = load_scene(scene_arg);
  const Domain& dom = pick_domain(sc, domain_idx);
  DistanceField field = grid_transform(dom, g.grid);
  auto [rho, high] = high_ridge(field);
  LambdaParams lp;
  lp.n_samples = samples;
  LambdaProfile prof = lambda_profile(dom, rho, g.grid, lp);
  RunReport rep("lambda", scene_arg, g);
  rep.metric("rho", rho);
  rep.metric("min", prof.min);
  rep.metric("max", prof.max);
  rep.metric("mean", prof.mean);
  rep.metric("constant", prof.constant);
  rep.metric("constancy_tol", prof.constancy_tol);
  rep.metric("corners_excluded", prof.corners_excluded);
  rep.check("lambda-le-rho", prof.max <= rho + 2 * g.grid + 1e-9, 2 * g.grid,
            prof.max - rho);
  fs::create_directories(g.out);
  fs::path csv = fs::path(g.out) / ("lambda_" + scene_slug(scene_arg) + ".csv");
  std::ofstream(csv, std::ios::binary) << lambda_profile_csv(prof);
  rep.artifact(csv.string());
  if (g.want_svg) {
    svg::Figure fig(dom.bbox);
    for (const auto& lc : dom.loop_curves) fig.add_curve(lc, style("#444444"));
    for (std::size_t i = 0; i < prof.samples.size(); i += 2) {
      const auto& ls = prof.samples[i];
      fig.add_polyline({ls.y, ls.y + ls.nu.vec() * ls.lambda}, style("#2266cc", 0.004));
    }
    fig.add_points(high, style("#cc2222"), 0.012);
    fs::path svg_path = fs::path(g.out) / ("lambda_" + scene_slug(scene_arg) + ".svg");
    fig.write(svg_path.string());
    rep.artifact(svg_path.string());
  }
  return finish(rep, g, "lambda_" + scene_slug(scene_arg));
}

int cmd_tube_area(const std::string& scene_arg, const GlobalOpts& g, const std::string& r_arg,
                  int shape_idx) {
  Scene sc = load_scene(scene_arg);
  const Shape& shape = pick_shape(sc, shape_idx);
  std::vector<double> rs = parse_list(r_arg);
  TubeAreaReport ta = tube_area(shape, rs);
  RunReport rep("tube-area", scene_arg, g);
  rep.param("r", rs);
  json areas = json::array();
  for (auto& [r, a] : ta.areas) areas.push_back({{"r", r}, {"area", a}});
  rep.metric("areas", areas);
  rep.metric("fit", {{"c0", ta.c0}, {"c1", ta.c1}, {"c2", ta.c2},
                     {"residual", ta.residual}, {"through_origin", ta.through_origin}});
  double max_area = 0;
  for (auto& [r, a] : ta.areas) max_area = std::max(max_area, a);
  rep.check("fit-residual", ta.residual <= 1e-2 * max_area, 1e-2 * max_area, ta.residual);
  return finish(rep, g, "tube_area_" + scene_slug(scene_arg));
}

int cmd_verify(const std::string& scene_arg, const GlobalOpts& g, const std::string& check,
               double r_opt) {
  Scene sc = load_scene(scene_arg);
  RunReport rep("verify:" + check, scene_arg, g);
  double h = g.grid;
  if (check == "chain") {
    const Domain& dom = pick_domain(sc, 0);
    DistanceField field = grid_transform(dom, h);
    SingularSetReport srep = inclusion_chain_report(dom, field);
    rep.metric("rho", srep.rho);
    rep.metric("relations", {pair_relation_name(srep.high_vs_skeleton.relation),
                             pair_relation_name(srep.skeleton_vs_central.relation),
                             pair_relation_name(srep.central_vs_cut.relation)});
    rep.check("inclusions", srep.chain_ok, 2 * h,
              std::max({srep.high_vs_skeleton.inclusion_gap,
                        srep.skeleton_vs_central.inclusion_gap,
                        srep.central_vs_cut.inclusion_gap}));
    if (srep.c2_equality_checked)
      rep.check("central-equals-cut", srep.c2_central_equals_cut, 2 * h, 0);
  } else if (check == "high-eq-cut") {
    const Domain& dom = pick_domain(sc, 0);
    DistanceField field = grid_transform(dom, h);
    VerifierReport vr = verify_high_equals_cut(dom, field);
    rep.metric("hypothesis_ok", vr.hypothesis_ok);
    rep.metric("high_cut_hausdorff", vr.high_cut_hausdorff);
    rep.metric("rho", vr.rho);
    rep.metric("core_class", core_class_name(vr.shape_class));
    rep.metric("tube_hausdorff", vr.tube_hausdorff);
    rep.metric("note", vr.note);
    bool expected = sc.expected.is_object() && sc.expected.contains("high_equals_cut")
                        ? sc.expected["high_equals_cut"].get<bool>()
                        : true;
    rep.check("hypothesis-matches-expectation", vr.hypothesis_ok == expected, 2 * h,
              vr.high_cut_hausdorff);
    if (vr.hypothesis_ok)
      rep.check("tube-hausdorff", vr.tube_hausdorff <= 2 * h, 2 * h, vr.tube_hausdorff);
    if (vr.disk_checked) {
      rep.metric("isoperimetric", vr.isoperimetric);
      rep.check("disk-verdict", vr.disk_verdict, 1.01, vr.isoperimetric);
    }
  } else if (check == "convex-ball") {
    const Domain& dom = pick_domain(sc, 0);
    DistanceField field = grid_transform(dom, h);
    VerifierReport vr = verify_convex_ball(dom, field);
    rep.metric("hypothesis_ok", vr.hypothesis_ok);
    rep.metric("ball_checked", vr.ball_checked);
    rep.metric("ball_verdict", vr.ball_verdict);
    rep.metric("curvature_jump", vr.curvature_jump);
    rep.metric("note", vr.note);
    if (vr.ball_checked) rep.check("ball", vr.ball_verdict, 1.01, vr.isoperimetric);
  } else if (check == "tube-lemma") {
    const Shape& core = pick_shape(sc, 0);
    double reach = estimate_reach(core).lower;
    double r = r_opt > 0 ? r_opt : 0.5 * reach;
    TubeLemmaReport tl = tube_lemma_check(core, r, h, reach);
    rep.param("r", r);
    rep.metric("high_dist", tl.high_dist);
    rep.metric("skeleton_dist", tl.skeleton_dist);
    rep.metric("central_dist", tl.central_dist);
    rep.metric("cut_dist", tl.cut_dist);
    rep.metric("lambda_max_dev", tl.lambda_max_dev);
    rep.check("tube-lemma", tl.pass, 2 * h,
              std::max({tl.high_dist, tl.skeleton_dist, tl.central_dist, tl.cut_dist,
                        tl.lambda_max_dev}));
  } else if (check == "identities") {
    const Shape& shape = pick_shape(sc, 0);
    double reach = estimate_reach(shape).lower;
    double r = r_opt > 0 ? r_opt : 0.5 * reach;
    IdentityReport ir = check_complement_identity(shape, r, 10000, reach, g.seed);
    rep.param("r", r);
    rep.metric("max_violation_inner", ir.max_violation_inner);
    rep.metric("max_violation_outer", ir.max_violation_outer);
    rep.check("identities", ir.max_violation() <= 5e-6, 5e-6, ir.max_violation());
  } else if (check == "lipschitz") {
    const Shape& shape = pick_shape(sc, 0);
    double reach = estimate_reach(shape).lower;
    double r = r_opt > 0 ? r_opt : 0.5 * reach;
    LipschitzReport lr = projection_lipschitz_probe(shape, r, reach, 4000, g.seed);
    rep.param("r", r);
    rep.metric("bound", lr.bound);
    rep.metric("max_ratio", lr.max_ratio);
    rep.check("projection-lipschitz", lr.max_ratio <= lr.bound + 1e-3, lr.bound + 1e-3,
              lr.max_ratio);
  } else if (check == "exterior-sphere") {
    const Shape& shape = pick_shape(sc, 0);
    double r = r_opt > 0 ? r_opt : 0.5;
    ExteriorSphereVerdict ev = exterior_sphere_check(shape, r);
    rep.param("r", r);
    rep.metric("holds", ev.holds);
    rep.metric("samples", ev.samples);
    rep.check("exterior-sphere", ev.holds, 1e-6, ev.holds ? 0.0 : 1.0);
  } else {
    throw Error(Err::InvalidArgument, "unknown check: " + check);
  }
  return finish(rep, g, "verify_" + check + "_" + scene_slug(scene_arg));
}

int cmd_gallery(const GlobalOpts& g) {
  fs::create_directories(g.out);
  for (const auto& name : gallery_names()) {
    Scene sc = gallery_scene(name);
    fs::path path = fs::path(g.out) / (name + ".json");
    std::ofstream(path, std::ios::binary) << serialize_scene(sc);
    std::cout << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planar distance geometry toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  app.add_option("--grid", g.grid, "grid spacing h")->capture_default_str();
  app.add_option("--seed", g.seed, "probe seed")->capture_default_str();
  app.add_option("--out", g.out, "output directory")->capture_default_str();
  app.add_flag("--svg", g.want_svg, "emit SVG figures");

  std::string scene_arg, query, p_arg, method{"analytic"}, check, r_list;
  double r = -1.0;
  int shape_idx = 0, domain_idx = 0, samples = 200;

  auto* distance = app.add_subcommand("distance", "distance and projections at a point");
  distance->add_option("scene", scene_arg)->required();
  distance->add_option("--query", query, "query point X,Y")->required();
  distance->add_option("--shape", shape_idx);

  auto* reach = app.add_subcommand("reach", "proximal smoothness radius estimate");
  reach->add_option("scene", scene_arg)->required();
  reach->add_option("--shape", shape_idx);

  auto* skeleton = app.add_subcommand("skeleton", "singular sets of a domain");
  skeleton->add_option("scene", scene_arg)->required();
  skeleton->add_option("--domain", domain_idx);

  auto* offset = app.add_subcommand("offset", "tube boundary at radius r");
  offset->add_option("scene", scene_arg)->required();
  offset->add_option("--r", r, "offset radius")->required();
  offset->add_option("--method", method)->check(CLI::IsMember({"analytic", "contour"}));
  offset->add_option("--shape", shape_idx);

  auto* contact = app.add_subcommand("contact", "contact set of a core point");
  contact->add_option("scene", scene_arg)->required();
  contact->add_option("--r", r, "tube radius")->required();
  contact->add_option("--p", p_arg, "core point X,Y")->required();
  contact->add_option("--shape", shape_idx);

  auto* lambda = app.add_subcommand("lambda", "normal distance profile along the boundary");
  lambda->add_option("scene", scene_arg)->required();
  lambda->add_option("--samples", samples);
  lambda->add_option("--domain", domain_idx);

  auto* tube_area = app.add_subcommand("tube-area", "tube areas and the quadratic fit");
  tube_area->add_option("scene", scene_arg)->required();
  tube_area->add_option("--r", r_list, "comma-separated radii")->required();
  tube_area->add_option("--shape", shape_idx);

  auto* verify = app.add_subcommand("verify", "run a named verifier");
  verify->add_option("scene", scene_arg)->required();
  verify->add_option("--check", check)
      ->required()
      ->check(CLI::IsMember({"chain", "high-eq-cut", "convex-ball", "tube-lemma", "identities",
                             "lipschitz", "exterior-sphere"}));
  verify->add_option("--r", r, "radius parameter where applicable");

  auto* gallery = app.add_subcommand("gallery", "write the built-in scenes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*distance) return cmd_distance(scene_arg, g, query, shape_idx);
    if (*reach) return cmd_reach(scene_arg, g, shape_idx);
    if (*skeleton) return cmd_skeleton(scene_arg, g, domain_idx);
    if (*offset) return cmd_offset(scene_arg, g, r, method, shape_idx);
    if (*contact) return cmd_contact(scene_arg, g, r, p_arg, shape_idx);
    if (*lambda) return cmd_lambda(scene_arg, g, samples, domain_idx);
    if (*tube_area) return cmd_tube_area(scene_arg, g, r_list, shape_idx);
    if (*verify) return cmd_verify(scene_arg, g, check, r);
    if (*gallery) return cmd_gallery(g);
  } catch (const Error& e) {
    std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
    return e.code() == Err::SchemaError || e.code() == Err::InvalidArgument ||
                   e.code() == Err::IOFailure
               ? 2
               : 1;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
    return 2;
  }
  return 2;
}
