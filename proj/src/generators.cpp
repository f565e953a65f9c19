#include "catsurf/generators.hpp"

#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace catsurf::gen {

namespace {

using Vec3 = std::array<double, 3>;

double dist3(const Vec3& a, const Vec3& b) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

PolySurface from_embedding(const std::vector<Vec3>& coords,
                           const std::vector<std::array<int, 3>>& tris) {
  std::vector<FaceSpec> faces;
  faces.reserve(tris.size());
  for (const auto& t : tris) {
    FaceSpec f;
    f.v = t;
    for (int k = 0; k < 3; ++k) {
      f.len[k] = dist3(coords[t[k]], coords[t[(k + 1) % 3]]);
    }
    f.kappa = 0.0;
    faces.push_back(f);
  }
  return PolySurface::validate(std::move(faces));
}

const std::vector<std::array<int, 3>>& icosa_faces() {
  static const std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return faces;
}

std::vector<Vec3> icosa_coords() {
  const double p = 0.5 * (1.0 + std::sqrt(5.0));
  return {{-1, p, 0}, {1, p, 0},   {-1, -p, 0}, {1, -p, 0},
          {0, -1, p}, {0, 1, p},   {0, -1, -p}, {0, 1, -p},
          {p, 0, -1}, {p, 0, 1},   {-p, 0, -1}, {-p, 0, 1}};
}

}  // namespace

PolySurface tetrahedron(double side) {
  std::vector<FaceSpec> faces;
  const std::array<std::array<int, 3>, 4> tris = {
      {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}}};
  for (const auto& t : tris) {
    faces.push_back({t, {side, side, side}, 0.0});
  }
  return PolySurface::validate(std::move(faces));
}

PolySurface octant_octahedron() {
  // Vertices 0..5 are the axis poles +x,-x,+y,-y,+z,-z.
  const std::array<std::array<int, 3>, 8> tris = {{{0, 2, 4},
                                                   {2, 1, 4},
                                                   {1, 3, 4},
                                                   {3, 0, 4},
                                                   {2, 0, 5},
                                                   {1, 2, 5},
                                                   {3, 1, 5},
                                                   {0, 3, 5}}};
  const double h = 0.5 * M_PI;
  std::vector<FaceSpec> faces;
  for (const auto& t : tris) faces.push_back({t, {h, h, h}, 1.0});
  return PolySurface::validate(std::move(faces));
}

PolySurface cube_corner(double side) {
  std::vector<Vec3> coords;
  for (int i = 0; i < 8; ++i) {
    coords.push_back({side * ((i >> 0) & 1), side * ((i >> 1) & 1),
                      side * ((i >> 2) & 1)});
  }
  // Each square face of the cube (outward ccw) split along one diagonal.
  const std::array<std::array<int, 4>, 6> quads = {{{0, 2, 3, 1},    // z = 0
                                                    {4, 5, 7, 6},    // z = 1
                                                    {0, 1, 5, 4},    // y = 0
                                                    {2, 6, 7, 3},    // y = 1
                                                    {0, 4, 6, 2},    // x = 0
                                                    {1, 3, 7, 5}}};  // x = 1
  std::vector<std::array<int, 3>> tris;
  for (const auto& q : quads) {
    tris.push_back({q[0], q[1], q[2]});
    tris.push_back({q[0], q[2], q[3]});
  }
  return from_embedding(coords, tris);
}

PolySurface icosahedron(double side) {
  std::vector<Vec3> coords = icosa_coords();
  const double scale = side / 2.0;  // base model has side 2
  for (Vec3& c : coords) {
    for (double& x : c) x *= scale;
  }
  return from_embedding(coords, icosa_faces());
}

PolySurface perturbed_icosahedron(std::uint64_t seed, double amount) {
  std::vector<Vec3> coords = icosa_coords();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-amount, amount);
  for (Vec3& c : coords) {
    const double s = 1.0 + jitter(rng);
    for (double& x : c) x *= s;
  }
  return from_embedding(coords, icosa_faces());
}

}  // namespace catsurf::gen
