#include "catsurf/surface_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace catsurf::io {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool has_suffix(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() &&
         s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

PolySurface surface_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("surface parse error: ") + e.what());
  }
  if (!doc.contains("faces") || !doc["faces"].is_array()) {
    throw std::runtime_error("surface file: missing \"faces\" array");
  }
  std::vector<FaceSpec> faces;
  for (const json& jf : doc["faces"]) {
    FaceSpec f;
    const auto& v = jf.at("v");
    const auto& len = jf.at("len");
    if (v.size() != 3 || len.size() != 3) {
      throw std::runtime_error("surface file: face needs 3 vertices/lengths");
    }
    for (int i = 0; i < 3; ++i) {
      f.v[i] = v[i].get<int>();
      f.len[i] = len[i].get<double>();
    }
    f.kappa = jf.value("kappa", 0.0);
    faces.push_back(f);
  }
  return PolySurface::validate(std::move(faces));
}

// Minimal OFF reader for flat surfaces: vertex coordinates give the edge
// lengths, faces must be triangles.
PolySurface surface_from_off(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    while (ls >> tok) tokens.push_back(tok);
  }
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw std::runtime_error("OFF: truncated file");
    return tokens[pos++];
  };
  if (next() != "OFF") throw std::runtime_error("OFF: missing header");
  const long nv = std::stol(next());
  const long nf = std::stol(next());
  next();  // edge count, ignored
  std::vector<std::array<double, 3>> coords(nv);
  for (long i = 0; i < nv; ++i) {
    for (int k = 0; k < 3; ++k) coords[i][k] = std::stod(next());
  }
  auto dist = [&](int a, int b) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double d = coords[a][k] - coords[b][k];
      s += d * d;
    }
    return std::sqrt(s);
  };
  std::vector<FaceSpec> faces;
  for (long i = 0; i < nf; ++i) {
    const long arity = std::stol(next());
    if (arity != 3) throw std::runtime_error("OFF: only triangles supported");
    FaceSpec f;
    for (int k = 0; k < 3; ++k) f.v[k] = static_cast<int>(std::stol(next()));
    for (int k = 0; k < 3; ++k) f.len[k] = dist(f.v[k], f.v[(k + 1) % 3]);
    f.kappa = 0.0;
    faces.push_back(f);
  }
  return PolySurface::validate(std::move(faces));
}

json vec2_to_json(const Vec2& v) { return json::array({v.x, v.y}); }

Vec2 vec2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::runtime_error("expected [x, y] pair");
  }
  return Vec2{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    if (!out.good()) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("rename failed: " + path);
  }
}

PolySurface read_surface(const std::string& path) {
  const std::string text = slurp(path);
  if (has_suffix(path, ".off") || has_suffix(path, ".OFF")) {
    return surface_from_off(text);
  }
  return surface_from_json(text);
}

std::string surface_to_json(const PolySurface& s, bool derived) {
  json doc;
  doc["faces"] = json::array();
  for (const FaceSpec& f : s.faces()) {
    doc["faces"].push_back({{"v", {f.v[0], f.v[1], f.v[2]}},
                            {"len", {f.len[0], f.len[1], f.len[2]}},
                            {"kappa", f.kappa}});
  }
  if (derived) {
    doc["chi"] = s.euler_characteristic();
    const CurvatureReport rep = curvature_report(s);
    json omega = json::object();
    for (const auto& [v, w] : rep.omega) omega[std::to_string(v)] = w;
    doc["omega"] = omega;
  }
  return doc.dump(2) + "\n";
}

void write_surface(const PolySurface& s, const std::string& path,
                   bool derived) {
  atomic_write(path, surface_to_json(s, derived));
}

ChartScene read_scene(const std::string& path) {
  json doc;
  try {
    doc = json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("scene parse error: ") + e.what());
  }
  const double kappa = doc.value("kappa", 0.0);
  const json& jp = doc.at("parent");
  if (jp.size() != 3) throw std::runtime_error("scene: parent must be a triangle");
  std::vector<Vec2> parent;
  for (const json& j : jp) parent.push_back(vec2_from_json(j));
  ChartScene scene;
  scene.parent = make_polygon(parent, kappa);
  if (doc.contains("family")) {
    for (const json& jpoly : doc["family"]) {
      std::vector<Vec2> pts;
      for (const json& j : jpoly) pts.push_back(vec2_from_json(j));
      scene.family.push_back(make_polygon(pts, kappa));
    }
  }
  return scene;
}

std::string scene_to_json(const ChartScene& scene) {
  json doc;
  doc["kappa"] = scene.parent.kappa;
  doc["parent"] = json::array();
  for (const Vec2& v : scene.parent.pts) doc["parent"].push_back(vec2_to_json(v));
  doc["family"] = json::array();
  for (const ChartPolygon& poly : scene.family) {
    json jp = json::array();
    for (const Vec2& v : poly.pts) jp.push_back(vec2_to_json(v));
    doc["family"].push_back(jp);
  }
  return doc.dump(2) + "\n";
}

std::string refinement_to_json(const RefinementOutput& out, double kappa) {
  json doc;
  doc["kappa"] = kappa;
  doc["triangles"] = json::array();
  for (const Triangle2& t : out.triangles) {
    doc["triangles"].push_back(
        {vec2_to_json(t[0]), vec2_to_json(t[1]), vec2_to_json(t[2])});
  }
  doc["owner"] = out.owner;
  doc["certificate"] = json::array();
  for (const SplitStep& s : out.certificate) {
    doc["certificate"].push_back({{"tri", s.tri},
                                  {"vertex", s.vertex},
                                  {"point", vec2_to_json(s.point)}});
  }
  return doc.dump(2) + "\n";
}

RefinementOutput refinement_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("refinement parse error: ") +
                             e.what());
  }
  RefinementOutput out;
  for (const json& jt : doc.at("triangles")) {
    out.triangles.push_back(Triangle2{vec2_from_json(jt.at(0)),
                                      vec2_from_json(jt.at(1)),
                                      vec2_from_json(jt.at(2))});
  }
  out.owner = doc.at("owner").get<std::vector<int>>();
  for (const json& js : doc.at("certificate")) {
    SplitStep s;
    s.tri = js.at("tri").get<std::size_t>();
    s.vertex = js.at("vertex").get<int>();
    s.point = vec2_from_json(js.at("point"));
    out.certificate.push_back(s);
  }
  return out;
}

std::string mode_name(smoothing::Mode mode) {
  switch (mode) {
    case smoothing::Mode::Flat: return "flat";
    case smoothing::Mode::Hyperbolic: return "hyperbolic";
    case smoothing::Mode::FlatCBB: return "cbb";
    case smoothing::Mode::SphericalCBB: return "spherical-cbb";
  }
  return "unknown";
}

smoothing::Mode mode_from_name(const std::string& name) {
  if (name == "flat") return smoothing::Mode::Flat;
  if (name == "hyperbolic") return smoothing::Mode::Hyperbolic;
  if (name == "cbb") return smoothing::Mode::FlatCBB;
  if (name == "spherical-cbb") return smoothing::Mode::SphericalCBB;
  throw std::invalid_argument("unknown smoothing mode: " + name);
}

std::string plan_to_json(const smoothing::SurfacePlan& plan) {
  json doc;
  doc["epsilon"] = plan.epsilon;
  doc["vertices"] = json::array();
  for (const smoothing::VertexPlan& v : plan.vertices) {
    json cert = {{"max_excess_curvature", v.certificate.max_excess_curvature},
                 {"monotone_ok", v.certificate.monotone_ok},
                 {"tail_match", v.certificate.tail_match},
                 {"junction_jump", v.certificate.junction_jump},
                 {"rescale", v.certificate.rescale},
                 {"experimental", v.certificate.experimental},
                 {"grid_points", v.certificate.grid_points}};
    doc["vertices"].push_back({{"vertex", v.vertex},
                               {"alpha", v.alpha},
                               {"kappa", v.kappa},
                               {"r_budget", v.r_budget},
                               {"delta", v.delta},
                               {"mode", mode_name(v.mode)},
                               {"certificate", cert},
                               {"cap", {{"area", v.cap.area},
                                        {"diameter", v.cap.diameter}}}});
  }
  return doc.dump(2) + "\n";
}

std::string profile_to_csv(const smoothing::RadialProfile& profile) {
  std::ostringstream out;
  out.precision(17);
  out << "r,lambda,K\n";
  for (std::size_t i = 0; i < profile.r.size(); ++i) {
    out << profile.r[i] << ',' << profile.lambda[i] << ','
        << profile.curvature[i] << '\n';
  }
  return out.str();
}

namespace {

struct SvgFrame {
  double xmin, xmax, ymin, ymax;
  double width = 640.0, height = 480.0, pad = 40.0;

  double px(double x) const {
    return pad + (x - xmin) / (xmax - xmin) * (width - 2 * pad);
  }
  double py(double y) const {
    return height - pad - (y - ymin) / (ymax - ymin) * (height - 2 * pad);
  }
};

void svg_polyline(std::ostringstream& out, const SvgFrame& fr,
                  const std::vector<double>& x, const std::vector<double>& y,
                  const char* color) {
  out << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << fr.px(x[i]) << ',' << fr.py(y[i]) << ' ';
  }
  out << "\"/>\n";
}

}  // namespace

std::string profiles_to_svg(const smoothing::RadialProfile& raw,
                            const smoothing::RadialProfile& smoothed) {
  SvgFrame fr{0, 1, 0, 1};
  fr.xmin = 1e300;
  fr.xmax = -1e300;
  fr.ymin = 1e300;
  fr.ymax = -1e300;
  for (const auto* p : {&raw, &smoothed}) {
    for (std::size_t i = 0; i < p->r.size(); ++i) {
      fr.xmin = std::min(fr.xmin, p->r[i]);
      fr.xmax = std::max(fr.xmax, p->r[i]);
      for (double v : {p->lambda[i], p->curvature[i]}) {
        fr.ymin = std::min(fr.ymin, v);
        fr.ymax = std::max(fr.ymax, v);
      }
    }
  }
  if (fr.xmax <= fr.xmin) fr.xmax = fr.xmin + 1;
  if (fr.ymax <= fr.ymin) fr.ymax = fr.ymin + 1;
  std::ostringstream out;
  out.precision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fr.width
      << "\" height=\"" << fr.height << "\">\n";
  svg_polyline(out, fr, raw.r, raw.lambda, "#888888");
  svg_polyline(out, fr, raw.r, raw.curvature, "#cccccc");
  svg_polyline(out, fr, smoothed.r, smoothed.lambda, "#1f77b4");
  svg_polyline(out, fr, smoothed.r, smoothed.curvature, "#d62728");
  out << "</svg>\n";
  return out.str();
}

std::string refinement_to_svg(const ChartScene& scene,
                              const RefinementOutput& out) {
  SvgFrame fr{1e300, -1e300, 1e300, -1e300};
  for (const Vec2& v : scene.parent.pts) {
    fr.xmin = std::min(fr.xmin, v.x);
    fr.xmax = std::max(fr.xmax, v.x);
    fr.ymin = std::min(fr.ymin, v.y);
    fr.ymax = std::max(fr.ymax, v.y);
  }
  if (fr.xmax <= fr.xmin) fr.xmax = fr.xmin + 1;
  if (fr.ymax <= fr.ymin) fr.ymax = fr.ymin + 1;
  std::ostringstream svg;
  svg.precision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fr.width
      << "\" height=\"" << fr.height << "\">\n";
  static const char* fills[] = {"#aec7e8", "#ffbb78", "#98df8a", "#ff9896",
                                "#c5b0d5", "#c49c94"};
  for (std::size_t i = 0; i < out.triangles.size(); ++i) {
    const Triangle2& t = out.triangles[i];
    const int owner = i < out.owner.size() ? out.owner[i] : -1;
    const char* fill = owner < 0 ? "#f2f2f2" : fills[owner % 6];
    svg << "<polygon fill=\"" << fill
        << "\" stroke=\"#333333\" stroke-width=\"0.8\" points=\"";
    for (const Vec2& v : t) svg << fr.px(v.x) << ',' << fr.py(v.y) << ' ';
    svg << "\"/>\n";
  }
  svg << "<polygon fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\""
         " points=\"";
  for (const Vec2& v : scene.parent.pts) {
    svg << fr.px(v.x) << ',' << fr.py(v.y) << ' ';
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

}  // namespace catsurf::io
