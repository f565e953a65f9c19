#pragma once

#include <string>
#include <vector>

#include "catsurf/polyhedral.hpp"
#include "catsurf/smoothing.hpp"
#include "catsurf/triangulation.hpp"

namespace catsurf::io {

// Scene for chart-level refinement: a parent triangle and a family of
// convex polygons, all in projective-chart coordinates.
struct ChartScene {
  ChartPolygon parent;
  std::vector<ChartPolygon> family;
};

// Writes `content` to `path` via a temp file + rename, so readers never see
// a partial file.
void atomic_write(const std::string& path, const std::string& content);

// Surface files: native JSON {"faces":[{"v":[i,j,k],"len":[a,b,c],"kappa":x}]}
// or OFF (flat only; edge lengths computed from the embedded coordinates).
// Dispatch is by filename extension.
PolySurface read_surface(const std::string& path);
std::string surface_to_json(const PolySurface& s, bool derived = false);
void write_surface(const PolySurface& s, const std::string& path,
                   bool derived = false);

ChartScene read_scene(const std::string& path);
std::string scene_to_json(const ChartScene& scene);

std::string refinement_to_json(const RefinementOutput& out, double kappa);
RefinementOutput refinement_from_json(const std::string& text);

std::string mode_name(smoothing::Mode mode);
smoothing::Mode mode_from_name(const std::string& name);

std::string plan_to_json(const smoothing::SurfacePlan& plan);

std::string profile_to_csv(const smoothing::RadialProfile& profile);

// Write-only SVG conveniences.
std::string profiles_to_svg(const smoothing::RadialProfile& raw,
                            const smoothing::RadialProfile& smoothed);
std::string refinement_to_svg(const ChartScene& scene,
                              const RefinementOutput& out);

}  // namespace catsurf::io
