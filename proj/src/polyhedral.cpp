#include "catsurf/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace catsurf {

namespace {

std::pair<int, int> edge_key(int a, int b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

PolySurface PolySurface::validate(std::vector<FaceSpec> faces) {
  PolySurface s;
  std::set<int> verts;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const FaceSpec& face = faces[f];
    const ModelSpace space{face.kappa};
    try {
      require_admissible_sides(space, face.len[0], face.len[1], face.len[2]);
    } catch (const std::domain_error& e) {
      std::ostringstream msg;
      msg << "face " << f << ": " << e.what();
      throw std::invalid_argument(msg.str());
    }
    if (face.v[0] == face.v[1] || face.v[1] == face.v[2] ||
        face.v[0] == face.v[2]) {
      std::ostringstream msg;
      msg << "face " << f << ": repeated vertex id";
      throw std::invalid_argument(msg.str());
    }
    for (int i = 0; i < 3; ++i) verts.insert(face.v[i]);
  }
  std::map<std::pair<int, int>, EdgeInfo> edges;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (int i = 0; i < 3; ++i) {
      const auto key = edge_key(faces[f].v[i], faces[f].v[(i + 1) % 3]);
      const double len = faces[f].len[i];
      auto [it, inserted] = edges.try_emplace(key);
      if (inserted) {
        it->second.length = len;
      } else if (std::abs(it->second.length - len) >
                 1e-12 * std::max(1.0, it->second.length)) {
        std::ostringstream msg;
        msg << "edge (" << key.first << "," << key.second
            << "): gluing length mismatch " << it->second.length << " vs "
            << len;
        throw std::invalid_argument(msg.str());
      }
      it->second.faces.push_back(f);
    }
  }
  for (const auto& [key, info] : edges) {
    if (info.faces.size() != 2) {
      std::ostringstream msg;
      msg << "edge (" << key.first << "," << key.second << "): incident to "
          << info.faces.size() << " faces, expected 2";
      throw std::invalid_argument(msg.str());
    }
  }
  s.faces_ = std::move(faces);
  s.vertices_.assign(verts.begin(), verts.end());
  s.edges_ = std::move(edges);
  return s;
}

PolySurface glue_from_edge_graph(std::vector<FaceSpec> faces) {
  return PolySurface::validate(std::move(faces));
}

int PolySurface::euler_characteristic() const {
  return static_cast<int>(vertices_.size()) -
         static_cast<int>(edges_.size()) + static_cast<int>(faces_.size());
}

bool PolySurface::uniform_kappa() const {
  for (const FaceSpec& f : faces_) {
    if (f.kappa != faces_.front().kappa) return false;
  }
  return true;
}

double PolySurface::max_kappa() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const FaceSpec& f : faces_) m = std::max(m, f.kappa);
  return m;
}

double PolySurface::corner_angle(std::size_t f, int v) const {
  const FaceSpec& face = faces_.at(f);
  const ModelSpace space{face.kappa};
  for (int i = 0; i < 3; ++i) {
    if (face.v[i] == v) {
      // Opposite side is len[(i+1)%3]; adjacent sides len[i], len[(i+2)%3].
      return angle_from_sides(space, face.len[i], face.len[(i + 2) % 3],
                              face.len[(i + 1) % 3]);
    }
  }
  throw std::invalid_argument("vertex not a corner of the face");
}

double cone_angle(const PolySurface& surface, int v) {
  double sum = 0.0;
  bool found = false;
  for (std::size_t f = 0; f < surface.faces().size(); ++f) {
    const FaceSpec& face = surface.faces()[f];
    for (int i = 0; i < 3; ++i) {
      if (face.v[i] == v) {
        sum += surface.corner_angle(f, v);
        found = true;
        break;
      }
    }
  }
  if (!found) throw std::invalid_argument("unknown vertex");
  return sum;
}

CurvatureReport curvature_report(const PolySurface& surface) {
  CurvatureReport rep;
  for (int v : surface.vertices()) {
    const double angle = cone_angle(surface, v);
    const double w = 2.0 * M_PI - angle;
    rep.cone_angles[v] = angle;
    rep.omega[v] = w;
    if (w > 0.0) rep.omega_plus += w;
    else rep.omega_minus += -w;
  }
  for (const FaceSpec& f : surface.faces()) {
    const ModelSpace space{f.kappa};
    const TriangleData t = triangle_data(space, f.len[0], f.len[1], f.len[2]);
    rep.face_curvature += f.kappa * t.area;
    rep.total_area += t.area;
  }
  return rep;
}

GaussBonnetRecord gauss_bonnet_region(const PolySurface& surface,
                                      const PolygonRegion& region) {
  std::set<std::size_t> in_region(region.faces.begin(), region.faces.end());
  if (in_region.empty()) throw std::invalid_argument("empty region");

  // Boundary edges: incident to exactly one region face.
  std::set<std::pair<int, int>> boundary_edges;
  std::set<int> region_vertices;
  for (std::size_t f : region.faces) {
    const FaceSpec& face = surface.faces().at(f);
    for (int i = 0; i < 3; ++i) {
      region_vertices.insert(face.v[i]);
      const auto key = edge_key(face.v[i], face.v[(i + 1) % 3]);
      const EdgeInfo& info = surface.edges().at(key);
      int inside = 0;
      for (std::size_t g : info.faces) inside += in_region.count(g) ? 1 : 0;
      if (inside == 1) boundary_edges.insert(key);
    }
  }
  if (boundary_edges.empty()) {
    throw std::invalid_argument("region has no boundary (not a disk)");
  }
  // Disk check: V - E + F of the enclosed complex must be 1, and the
  // boundary must form a single closed walk with each vertex of degree 2.
  std::set<std::pair<int, int>> region_edges;
  for (std::size_t f : region.faces) {
    const FaceSpec& face = surface.faces().at(f);
    for (int i = 0; i < 3; ++i) {
      region_edges.insert(edge_key(face.v[i], face.v[(i + 1) % 3]));
    }
  }
  const int chi = static_cast<int>(region_vertices.size()) -
                  static_cast<int>(region_edges.size()) +
                  static_cast<int>(region.faces.size());
  if (chi != 1) {
    throw std::invalid_argument("region is not a disk (chi != 1)");
  }
  std::map<int, int> boundary_degree;
  for (const auto& [a, b] : boundary_edges) {
    boundary_degree[a]++;
    boundary_degree[b]++;
  }
  for (const auto& [v, deg] : boundary_degree) {
    if (deg != 2) {
      throw std::invalid_argument("region boundary is not a simple loop");
    }
  }

  GaussBonnetRecord rec;
  // Interior-side corner angles along the boundary.
  for (const auto& [v, deg] : boundary_degree) {
    double phi = 0.0;
    for (std::size_t f : region.faces) {
      const FaceSpec& face = surface.faces()[f];
      if (face.v[0] == v || face.v[1] == v || face.v[2] == v) {
        phi += surface.corner_angle(f, v);
      }
    }
    rec.tau += M_PI - phi;
  }
  for (int v : region_vertices) {
    if (boundary_degree.count(v)) continue;
    rec.omega_interior += 2.0 * M_PI - cone_angle(surface, v);
  }
  for (std::size_t f : region.faces) {
    const FaceSpec& face = surface.faces()[f];
    const ModelSpace space{face.kappa};
    rec.omega_interior +=
        face.kappa *
        triangle_data(space, face.len[0], face.len[1], face.len[2]).area;
  }
  rec.defect = rec.tau + rec.omega_interior - 2.0 * M_PI;
  return rec;
}

double edge_graph_distance(const PolySurface& surface, int u, int v) {
  if (u == v) return 0.0;
  std::map<int, std::vector<std::pair<int, double>>> adj;
  for (const auto& [key, info] : surface.edges()) {
    adj[key.first].emplace_back(key.second, info.length);
    adj[key.second].emplace_back(key.first, info.length);
  }
  if (!adj.count(u) || !adj.count(v)) {
    throw std::invalid_argument("unknown vertex");
  }
  std::map<int, double> dist;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  pq.emplace(0.0, u);
  dist[u] = 0.0;
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d > dist[x] + 1e-15) continue;
    if (x == v) return d;
    for (auto [y, w] : adj[x]) {
      const double nd = d + w;
      auto it = dist.find(y);
      if (it == dist.end() || nd < it->second) {
        dist[y] = nd;
        pq.emplace(nd, y);
      }
    }
  }
  throw std::invalid_argument("surface disconnected");
}

PolySurface refine_midpoint(const PolySurface& surface) {
  int next_id = surface.vertices().empty()
                    ? 0
                    : surface.vertices().back() + 1;
  std::map<std::pair<int, int>, int> midpoint_id;
  for (const auto& [key, info] : surface.edges()) {
    midpoint_id[key] = next_id++;
  }
  std::vector<FaceSpec> out;
  out.reserve(surface.faces().size() * 4);
  for (std::size_t f = 0; f < surface.faces().size(); ++f) {
    const FaceSpec& face = surface.faces()[f];
    const ModelSpace space{face.kappa};
    const double D = space.diameter();
    if (face.len[0] + face.len[1] + face.len[2] >= 2.0 * D) {
      throw std::domain_error("face inadmissible for midpoint refinement");
    }
    // Midpoint chord opposite corner i: connects midpoints of the two sides
    // adjacent at vertex v[i], via the law of cosines in the face's model.
    std::array<double, 3> chord{};
    for (int i = 0; i < 3; ++i) {
      const double s1 = face.len[i];            // side (v[i], v[i+1])
      const double s2 = face.len[(i + 2) % 3];  // side (v[i+2], v[i])
      const double angle = surface.corner_angle(f, face.v[i]);
      chord[i] = side_from_angle(space, 0.5 * s1, 0.5 * s2, angle);
    }
    const std::array<int, 3> m = {
        midpoint_id.at(edge_key(face.v[0], face.v[1])),
        midpoint_id.at(edge_key(face.v[1], face.v[2])),
        midpoint_id.at(edge_key(face.v[2], face.v[0]))};
    // Corner triangle at v[i]: (v[i], m_prev_edge... laid out explicitly.
    out.push_back({{face.v[0], m[0], m[2]},
                   {0.5 * face.len[0], chord[0], 0.5 * face.len[2]},
                   face.kappa});
    out.push_back({{face.v[1], m[1], m[0]},
                   {0.5 * face.len[1], chord[1], 0.5 * face.len[0]},
                   face.kappa});
    out.push_back({{face.v[2], m[2], m[1]},
                   {0.5 * face.len[2], chord[2], 0.5 * face.len[1]},
                   face.kappa});
    out.push_back({{m[0], m[1], m[2]}, {chord[1], chord[2], chord[0]}, face.kappa});
  }
  return PolySurface::validate(std::move(out));
}

RefinedDistance refined_distance(const PolySurface& surface, int u, int v,
                                 int level, std::size_t max_faces) {
  if (level < 0) throw std::invalid_argument("level must be >= 0");
  RefinedDistance out;
  PolySurface current = surface;
  for (int l = 0;; ++l) {
    out.per_level.push_back(edge_graph_distance(current, u, v));
    if (l == level) break;
    if (current.faces().size() * 4 > max_faces) {
      throw std::runtime_error("refined_distance: face budget exceeded");
    }
    current = refine_midpoint(current);
  }
  out.distance = out.per_level.back();
  return out;
}

}  // namespace catsurf
