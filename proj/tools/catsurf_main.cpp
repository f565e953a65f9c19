#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "catsurf/comparison.hpp"
#include "catsurf/generators.hpp"
#include "catsurf/model_space.hpp"
#include "catsurf/polyhedral.hpp"
#include "catsurf/smoothing.hpp"
#include "catsurf/surface_io.hpp"
#include "catsurf/triangulation.hpp"

namespace {

using nlohmann::json;
using namespace catsurf;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;

struct Report {
  std::string command;
  std::string input;
  json checks = json::array();
  bool pass = true;

  void add(const std::string& name, bool ok, double value, double tol) {
    checks.push_back(
        {{"name", name}, {"pass", ok}, {"value", value}, {"tolerance", tol}});
    pass = pass && ok;
  }
  void note(const std::string& name, const json& payload) {
    checks.push_back({{"name", name}, {"info", payload}});
  }
  json to_json() const {
    return {{"command", command},
            {"input", input},
            {"checks", checks},
            {"pass", pass}};
  }
  void emit(bool as_json) const {
    if (as_json) {
      std::cout << to_json().dump(2) << "\n";
      return;
    }
    for (const json& c : checks) {
      if (c.contains("pass")) {
        std::cout << (c["pass"].get<bool>() ? "pass" : "FAIL") << "  "
                  << c["name"].get<std::string>()
                  << "  value=" << c["value"].dump()
                  << " tol=" << c["tolerance"].dump() << "\n";
      } else {
        std::cout << "info  " << c["name"].get<std::string>() << "  "
                  << c["info"].dump() << "\n";
      }
    }
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
  }
};

int threads_cap() {
  if (const char* env = std::getenv("CATSURF_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

int cmd_check(const std::string& path, double kappa_override, bool has_kappa,
              bool gauss_bonnet, bool cat_faces, bool as_json) {
  Report rep;
  rep.command = "check";
  rep.input = path;
  PolySurface surface = io::read_surface(path);

  const CurvatureReport cr = curvature_report(surface);
  rep.note("surface", {{"faces", surface.faces().size()},
                       {"vertices", surface.vertices().size()},
                       {"edges", surface.edges().size()},
                       {"chi", surface.euler_characteristic()},
                       {"omega_plus", cr.omega_plus},
                       {"omega_minus", cr.omega_minus},
                       {"face_curvature", cr.face_curvature},
                       {"total_area", cr.total_area}});

  if (gauss_bonnet) {
    double omega_total = 0.0;
    for (const auto& [v, w] : cr.omega) omega_total += w;
    const double expected = 2.0 * M_PI * surface.euler_characteristic();
    const double defect =
        std::abs(omega_total + cr.face_curvature - expected);
    rep.add("gauss-bonnet-closed", defect <= 1e-8, defect, 1e-8);
    double worst = 0.0;
    for (std::size_t f = 0; f < surface.faces().size(); ++f) {
      const GaussBonnetRecord gb =
          gauss_bonnet_region(surface, PolygonRegion{{f}});
      worst = std::max(worst, std::abs(gb.defect));
    }
    rep.add("gauss-bonnet-face-regions", worst <= 1e-8, worst, 1e-8);
  }

  if (cat_faces) {
    const double kappa = has_kappa ? kappa_override : surface.max_kappa();
    double worst = -1e300;
    for (const FaceSpec& f : surface.faces()) {
      const ModelSpace ambient{f.kappa};
      const AbstractTriangle tri =
          model_triangle(ambient, f.len[1], f.len[2], f.len[0]);
      const ViolationReport v = cat_test(tri, kappa);
      worst = std::max(worst, v.max_violation);
    }
    rep.add("cat-faces-max-violation", worst <= 1e-9, worst, 1e-9);
  }

  rep.emit(as_json);
  return rep.pass ? kExitPass : kExitCheckFailure;
}

int cmd_smooth(const std::string& path, double epsilon,
               const std::string& mode_name, const std::string& out_plan,
               const std::string& profiles_dir, bool as_json) {
  Report rep;
  rep.command = "smooth";
  rep.input = path;
  PolySurface surface = io::read_surface(path);
  const smoothing::Mode mode = io::mode_from_name(mode_name);

  smoothing::SurfacePlan plan;
  try {
    plan = smoothing::plan_surface_smoothing(surface, epsilon, mode);
  } catch (const std::invalid_argument& e) {
    rep.add(std::string("plan: ") + e.what(), false, 0.0, 0.0);
    rep.emit(as_json);
    return kExitCheckFailure;
  }

  double cap_area_total = 0.0, budget_total = 0.0;
  for (std::size_t i = 0; i < plan.vertices.size(); ++i) {
    const smoothing::VertexPlan& v = plan.vertices[i];
    std::ostringstream name;
    name << "vertex " << v.vertex << " max_excess_curvature";
    rep.add(name.str(), v.certificate.max_excess_curvature <= 1e-6,
            v.certificate.max_excess_curvature, 1e-6);
    cap_area_total += v.cap.area;
    budget_total += epsilon * std::pow(2.0, -static_cast<double>(i));
  }
  rep.add("cap-area-within-budget", cap_area_total <= budget_total,
          cap_area_total, budget_total);

  if (!out_plan.empty()) io::atomic_write(out_plan, io::plan_to_json(plan));
  if (!profiles_dir.empty()) {
    std::filesystem::create_directories(profiles_dir);
    for (const smoothing::VertexPlan& v : plan.vertices) {
      smoothing::ConeMetric cone{v.alpha, v.kappa,
                                 smoothing::radial_coordinate(
                                     smoothing::ConeMetric{v.alpha, v.kappa, 1.0},
                                     v.r_budget)};
      smoothing::SmoothingParams params;
      params.delta = v.delta;
      params.mode = v.mode;
      const auto raw = smoothing::raw_profile(cone, 512);
      const auto smoothed = smoothing::smoothed_profile(cone, params, 512);
      const std::string base =
          profiles_dir + "/vertex_" + std::to_string(v.vertex);
      io::atomic_write(base + "_raw.csv", io::profile_to_csv(raw));
      io::atomic_write(base + "_smoothed.csv", io::profile_to_csv(smoothed));
      io::atomic_write(base + ".svg", io::profiles_to_svg(raw, smoothed));
    }
  }

  rep.emit(as_json);
  return rep.pass ? kExitPass : kExitCheckFailure;
}

int cmd_refine(const std::string& path, int levels,
               const std::vector<int>& distance_pair, const std::string& out,
               bool as_json) {
  Report rep;
  rep.command = "refine";
  rep.input = path;
  PolySurface surface = io::read_surface(path);

  if (!distance_pair.empty()) {
    const RefinedDistance rd = refined_distance(
        surface, distance_pair[0], distance_pair[1], levels);
    json table = json::array();
    for (std::size_t l = 0; l < rd.per_level.size(); ++l) {
      json row = {{"level", l}, {"distance", rd.per_level[l]}};
      if (l > 0) row["gap"] = rd.per_level[l - 1] - rd.per_level[l];
      table.push_back(row);
    }
    rep.note("distance-table", table);
    bool monotone = true;
    for (std::size_t l = 1; l < rd.per_level.size(); ++l) {
      monotone = monotone && rd.per_level[l] <= rd.per_level[l - 1] + 1e-12;
    }
    rep.add("distance-non-increasing", monotone, rd.distance, 1e-12);
  }

  PolySurface refined = surface;
  for (int l = 0; l < levels; ++l) {
    if (refined.faces().size() * 4 > 2000000) {
      throw std::runtime_error("refine: face budget exceeded");
    }
    refined = refine_midpoint(refined);
  }
  rep.note("refined", {{"faces", refined.faces().size()},
                       {"vertices", refined.vertices().size()}});
  if (!out.empty()) io::write_surface(refined, out);

  rep.emit(as_json);
  return rep.pass ? kExitPass : kExitCheckFailure;
}

int cmd_triangulate(const std::string& path, double kappa_override,
                    bool has_kappa, const std::string& out,
                    const std::string& svg, bool as_json) {
  Report rep;
  rep.command = "triangulate";
  rep.input = path;
  io::ChartScene scene = io::read_scene(path);
  if (has_kappa) {
    scene.parent = make_polygon(scene.parent.pts, kappa_override);
    for (ChartPolygon& p : scene.family) {
      p = make_polygon(p.pts, kappa_override);
    }
  }

  RefinementOutput refinement;
  try {
    refinement = ve_refine(scene.parent, scene.family);
  } catch (const std::invalid_argument& e) {
    rep.add(std::string("scene: ") + e.what(), false, 0.0, 0.0);
    rep.emit(as_json);
    return kExitCheckFailure;
  }

  // Certificate check: replaying the split sequence must reproduce the
  // triangle set exactly.
  const Triangle2 parent_tri{scene.parent.pts[0], scene.parent.pts[1],
                             scene.parent.pts[2]};
  const std::vector<Triangle2> replayed =
      replay_certificate(parent_tri, refinement.certificate);
  double worst = 0.0;
  bool same = replayed.size() == refinement.triangles.size();
  if (same) {
    for (std::size_t i = 0; i < replayed.size(); ++i) {
      for (int k = 0; k < 3; ++k) {
        worst = std::max(worst,
                         norm(replayed[i][k] - refinement.triangles[i][k]));
      }
    }
  }
  rep.add("certificate-replay", same && worst <= 1e-9, worst, 1e-9);
  rep.note("refinement", {{"triangles", refinement.triangles.size()},
                          {"splits", refinement.certificate.size()}});

  if (rep.pass && !out.empty()) {
    io::atomic_write(out,
                     io::refinement_to_json(refinement, scene.parent.kappa));
  }
  if (rep.pass && !svg.empty()) {
    io::atomic_write(svg, io::refinement_to_svg(scene, refinement));
  }
  rep.emit(as_json);
  return rep.pass ? kExitPass : kExitCheckFailure;
}

int cmd_gen(const std::string& name, double side, std::uint64_t seed,
            const std::string& out) {
  PolySurface surface = [&] {
    if (name == "tetrahedron") return gen::tetrahedron(side);
    if (name == "octant-octahedron") return gen::octant_octahedron();
    if (name == "cube-corner") return gen::cube_corner(side);
    if (name == "icosahedron") return gen::icosahedron(side);
    if (name == "perturbed-icosahedron") return gen::perturbed_icosahedron(seed);
    throw std::runtime_error("unknown generator: " + name);
  }();
  if (out.empty()) {
    std::cout << io::surface_to_json(surface);
  } else {
    io::write_surface(surface, out);
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  (void)threads_cap();  // parsed for interface compatibility; kernels are serial
  CLI::App app{"model-surface geometry toolkit"};
  app.require_subcommand(1);

  std::string surface_path, scene_path, out, out_plan, profiles_dir, svg;
  std::string mode = "flat", gen_name;
  double kappa = 0.0, epsilon = 0.1, side = 1.0;
  std::uint64_t seed = 1;
  int levels = 1;
  bool gauss_bonnet = false, cat_faces = false, as_json = false;
  std::vector<int> distance_pair;

  CLI::App* check = app.add_subcommand("check", "validate a surface file");
  check->add_option("surface", surface_path)->required();
  CLI::Option* check_kappa = check->add_option("--kappa", kappa);
  check->add_flag("--gauss-bonnet", gauss_bonnet);
  check->add_flag("--cat-faces", cat_faces);
  check->add_flag("--json", as_json);

  CLI::App* smooth =
      app.add_subcommand("smooth", "plan certified vertex smoothing");
  smooth->add_option("surface", surface_path)->required();
  smooth->add_option("--epsilon", epsilon);
  smooth->add_option("--mode", mode)
      ->check(CLI::IsMember({"flat", "hyperbolic", "cbb", "spherical-cbb"}));
  smooth->add_option("--out-plan", out_plan);
  smooth->add_option("--out-profiles-dir", profiles_dir);
  smooth->add_flag("--json", as_json);

  CLI::App* refine = app.add_subcommand("refine", "midpoint refinement");
  refine->add_option("surface", surface_path)->required();
  refine->add_option("--levels", levels)->check(CLI::NonNegativeNumber);
  refine->add_option("--distance", distance_pair)->expected(2);
  refine->add_option("--out", out);
  refine->add_flag("--json", as_json);

  CLI::App* triangulate =
      app.add_subcommand("triangulate", "vertex-edge chart refinement");
  triangulate->add_option("scene", scene_path)->required();
  CLI::Option* tri_kappa = triangulate->add_option("--kappa", kappa);
  triangulate->add_option("--out", out);
  triangulate->add_option("--svg", svg);
  triangulate->add_flag("--json", as_json);

  CLI::App* generate = app.add_subcommand("gen", "bundled surface corpus");
  generate->add_option("name", gen_name)
      ->required()
      ->check(CLI::IsMember({"tetrahedron", "octant-octahedron", "cube-corner",
                             "icosahedron", "perturbed-icosahedron"}));
  generate->add_option("--side", side);
  generate->add_option("--seed", seed);
  generate->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (check->parsed()) {
      return cmd_check(surface_path, kappa, check_kappa->count() > 0,
                       gauss_bonnet, cat_faces, as_json);
    }
    if (smooth->parsed()) {
      return cmd_smooth(surface_path, epsilon, mode, out_plan, profiles_dir,
                        as_json);
    }
    if (refine->parsed()) {
      return cmd_refine(surface_path, levels, distance_pair, out, as_json);
    }
    if (triangulate->parsed()) {
      return cmd_triangulate(scene_path, kappa, tri_kappa->count() > 0, out,
                             svg, as_json);
    }
    if (generate->parsed()) {
      return cmd_gen(gen_name, side, seed, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
