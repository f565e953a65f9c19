#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <string>

#include "doctest.h"

#include "catsurf/generators.hpp"
#include "catsurf/surface_io.hpp"

using namespace catsurf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("catsurf-io-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("atomic_write leaves no temp files and replaces content") {
  TempDir tmp;
  const std::string target = tmp.file("out.json");
  io::atomic_write(target, "first");
  CHECK(slurp(target) == "first");
  io::atomic_write(target, "second");
  CHECK(slurp(target) == "second");
  std::size_t entries = 0;
  for (const auto& e : fs::directory_iterator(tmp.path)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("surface JSON round trip is byte-identical") {
  TempDir tmp;
  for (const PolySurface& s :
       {gen::tetrahedron(), gen::octant_octahedron(),
        gen::perturbed_icosahedron(5)}) {
    const std::string text = io::surface_to_json(s);
    const std::string path = tmp.file("s.json");
    io::atomic_write(path, text);
    const PolySurface back = io::read_surface(path);
    CHECK(io::surface_to_json(back) == text);
    CHECK(back.faces().size() == s.faces().size());
    CHECK(back.euler_characteristic() == s.euler_characteristic());
  }
  // The derived block is additive: the faces parse identically.
  const PolySurface tet = gen::tetrahedron();
  const std::string derived = io::surface_to_json(tet, true);
  CHECK(derived.find("chi") != std::string::npos);
  const std::string path = tmp.file("d.json");
  io::atomic_write(path, derived);
  CHECK(io::surface_to_json(io::read_surface(path)) ==
        io::surface_to_json(tet));
}

TEST_CASE("OFF import of a flat tetrahedron") {
  TempDir tmp;
  // Regular tetrahedron with side sqrt(8) on alternating cube corners.
  const std::string off =
      "OFF\n"
      "4 4 6\n"
      "1 1 1\n"
      "1 -1 -1\n"
      "-1 1 -1\n"
      "-1 -1 1\n"
      "3 0 1 2\n"
      "3 0 3 1\n"
      "3 1 3 2\n"
      "3 2 3 0\n";
  const std::string path = tmp.file("tet.off");
  io::atomic_write(path, off);
  const PolySurface s = io::read_surface(path);
  CHECK(s.faces().size() == 4);
  CHECK(s.euler_characteristic() == 2);
  const double side = std::sqrt(8.0);
  for (const FaceSpec& f : s.faces()) {
    CHECK(f.kappa == 0.0);
    for (double l : f.len) CHECK(l == doctest::Approx(side).epsilon(1e-12));
  }
  CHECK_THROWS(io::read_surface(tmp.file("missing.json")));
}

TEST_CASE("scene and refinement round trips") {
  TempDir tmp;
  io::ChartScene scene;
  scene.parent = make_polygon({{0, 0}, {1, 0}, {0.4, 0.8}}, 0.0);
  scene.family.push_back(
      make_polygon({{0.3, 0.2}, {0.5, 0.2}, {0.4, 0.35}}, 0.0));
  const std::string text = io::scene_to_json(scene);
  const std::string path = tmp.file("scene.json");
  io::atomic_write(path, text);
  const io::ChartScene back = io::read_scene(path);
  CHECK(io::scene_to_json(back) == text);
  CHECK(back.family.size() == 1);

  const RefinementOutput out = ve_refine(scene.parent, scene.family);
  const std::string rj = io::refinement_to_json(out, 0.0);
  const RefinementOutput rback = io::refinement_from_json(rj);
  CHECK(io::refinement_to_json(rback, 0.0) == rj);
  CHECK(rback.triangles.size() == out.triangles.size());
  CHECK(rback.certificate.size() == out.certificate.size());
  CHECK(rback.owner == out.owner);
}

TEST_CASE("mode names round trip") {
  using smoothing::Mode;
  for (Mode m :
       {Mode::Flat, Mode::Hyperbolic, Mode::FlatCBB, Mode::SphericalCBB}) {
    CHECK(io::mode_from_name(io::mode_name(m)) == m);
  }
  CHECK(io::mode_name(Mode::Flat) == "flat");
  CHECK(io::mode_name(Mode::FlatCBB) == "cbb");
  CHECK_THROWS_AS(io::mode_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("profile CSV format") {
  smoothing::RadialProfile prof;
  prof.r = {0.1, 0.2};
  prof.lambda = {1.0, 0.5};
  prof.curvature = {0.0, -1.0};
  const std::string csv = io::profile_to_csv(prof);
  CHECK(csv.rfind("r,lambda,K\n", 0) == 0);
  // One data line per sample, full round-trip precision.
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n' ? 1 : 0;
  CHECK(lines == 3);
  CHECK(csv.find("0.10000000000000001") != std::string::npos);
}

TEST_CASE("svg writers emit well-formed documents") {
  const smoothing::ConeMetric c{0.75, 0.0, 0.5};
  smoothing::SmoothingParams p;
  p.mode = smoothing::Mode::FlatCBB;
  p.delta = smoothing::admissible_delta(c, p.mode);
  const std::string svg = io::profiles_to_svg(
      smoothing::raw_profile(c, 64), smoothing::smoothed_profile(c, p, 64));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);

  io::ChartScene scene;
  scene.parent = make_polygon({{0, 0}, {1, 0}, {0.4, 0.8}}, 0.0);
  scene.family.push_back(
      make_polygon({{0.3, 0.2}, {0.5, 0.2}, {0.4, 0.35}}, 0.0));
  const std::string fig =
      io::refinement_to_svg(scene, ve_refine(scene.parent, scene.family));
  CHECK(fig.rfind("<svg", 0) == 0);
  CHECK(fig.find("</svg>") != std::string::npos);
}

TEST_CASE("plan JSON names every certified vertex") {
  const smoothing::SurfacePlan plan = smoothing::plan_surface_smoothing(
      gen::tetrahedron(), 0.1, smoothing::Mode::FlatCBB);
  const std::string text = io::plan_to_json(plan);
  CHECK(text.find("\"vertices\"") != std::string::npos);
  CHECK(text.find("\"delta\"") != std::string::npos);
  CHECK(text.find("\"cbb\"") != std::string::npos);
  // Deterministic serialization.
  CHECK(io::plan_to_json(plan) == text);
}
