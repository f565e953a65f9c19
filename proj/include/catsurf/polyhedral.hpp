#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "catsurf/model_space.hpp"

namespace catsurf {

struct FaceSpec {
  std::array<int, 3> v{};       // vertex ids
  std::array<double, 3> len{};  // len[i] = length of edge (v[i], v[(i+1)%3])
  double kappa = 0.0;
};

struct EdgeInfo {
  double length = 0.0;
  std::vector<std::size_t> faces;  // incident face indices
};

// Closed triangulated cone-metric surface: faces are model triangles glued
// along equal-length edges. Immutable after validation.
class PolySurface {
 public:
  // Establishes all structural invariants or throws std::invalid_argument
  // with a description naming the offending face/edge.
  static PolySurface validate(std::vector<FaceSpec> faces);

  const std::vector<FaceSpec>& faces() const { return faces_; }
  const std::vector<int>& vertices() const { return vertices_; }
  const std::map<std::pair<int, int>, EdgeInfo>& edges() const {
    return edges_;
  }
  int euler_characteristic() const;
  bool uniform_kappa() const;
  double max_kappa() const;

  // Corner angle of face f at vertex v (v must be a corner of f).
  double corner_angle(std::size_t f, int v) const;

 private:
  PolySurface() = default;
  std::vector<FaceSpec> faces_;
  std::vector<int> vertices_;
  std::map<std::pair<int, int>, EdgeInfo> edges_;
};

// Named entry point for the gluing pipeline; equivalent to validate.
PolySurface glue_from_edge_graph(std::vector<FaceSpec> faces);

double cone_angle(const PolySurface& surface, int v);

struct CurvatureReport {
  std::map<int, double> cone_angles;
  std::map<int, double> omega;  // 2*pi - cone angle
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double face_curvature = 0.0;  // sum of kappa_f * |f|
  double total_area = 0.0;
};

CurvatureReport curvature_report(const PolySurface& surface);

// Disk region assembled from whole faces.
struct PolygonRegion {
  std::vector<std::size_t> faces;
};

struct GaussBonnetRecord {
  double tau = 0.0;             // sum of (pi - interior corner angle)
  double omega_interior = 0.0;  // interior vertex omega + enclosed curvature
  double defect = 0.0;          // tau + omega_interior - 2*pi
};

GaussBonnetRecord gauss_bonnet_region(const PolySurface& surface,
                                      const PolygonRegion& region);

double edge_graph_distance(const PolySurface& surface, int u, int v);

// Each face replaced by four via model-space midpoint chords. Original
// vertex ids are preserved; new vertices get fresh ids.
PolySurface refine_midpoint(const PolySurface& surface);

struct RefinedDistance {
  double distance = 0.0;
  std::vector<double> per_level;  // distances at levels 0..level
};

RefinedDistance refined_distance(const PolySurface& surface, int u, int v,
                                 int level, std::size_t max_faces = 2000000);

}  // namespace catsurf
