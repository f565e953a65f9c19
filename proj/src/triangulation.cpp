#include "catsurf/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace catsurf {

namespace {

constexpr double kRelTol = 1e-12;

double scale_of(const std::vector<Vec2>& pts) {
  double s = 1e-30;
  for (const Vec2& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return s;
}

bool close(Vec2 a, Vec2 b, double tol) {
  return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

// Signed distance of c from the line a->b, normalized by |b-a|.
double line_side(Vec2 a, Vec2 b, Vec2 c) {
  return orient2d(a, b, c) / norm(b - a);
}

bool point_in_convex(const std::vector<Vec2>& poly, Vec2 p, double tol) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (line_side(poly[i], poly[(i + 1) % n], p) < -tol) return false;
  }
  return true;
}

// Parameter of p along segment [a, b]; assumes p close to the segment line.
double param_on_segment(Vec2 a, Vec2 b, Vec2 p) {
  const Vec2 d = b - a;
  return dot(p - a, d) / dot(d, d);
}

}  // namespace

std::vector<Vec2> clip_convex(const std::vector<Vec2>& subject,
                              const std::vector<Vec2>& clip) {
  std::vector<Vec2> out = subject;
  const std::size_t m = clip.size();
  for (std::size_t i = 0; i < m && !out.empty(); ++i) {
    const Vec2 a = clip[i], b = clip[(i + 1) % m];
    std::vector<Vec2> in;
    in.swap(out);
    const std::size_t n = in.size();
    for (std::size_t j = 0; j < n; ++j) {
      const Vec2 cur = in[j], nxt = in[(j + 1) % n];
      const double sc = orient2d(a, b, cur);
      const double sn = orient2d(a, b, nxt);
      if (sc >= 0.0) out.push_back(cur);
      if ((sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0)) {
        const double t = sc / (sc - sn);
        out.push_back(cur + (nxt - cur) * t);
      }
    }
  }
  return out;
}

double segment_line_param(Vec2 a, Vec2 b, Vec2 p, Vec2 q) {
  const double denom = cross(b - a, q - p);
  const double num = cross(p - a, q - p);
  if (denom == 0.0) return -1.0;
  return num / denom;
}

ChartPolygon make_polygon(std::vector<Vec2> pts, double kappa) {
  if (pts.size() < 3) throw std::invalid_argument("polygon needs >= 3 points");
  if (polygon_area(pts) < 0.0) std::reverse(pts.begin(), pts.end());
  const double tol = kRelTol * scale_of(pts) * 1e3;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = pts[i], b = pts[(i + 1) % n], c = pts[(i + 2) % n];
    if (norm(b - a) <= tol) throw std::invalid_argument("repeated vertex");
    if (orient2d(a, b, c) < -tol) {
      throw std::invalid_argument("polygon not convex / not simple");
    }
  }
  return ChartPolygon{std::move(pts), kappa};
}

IntersectionResult intersect_convex(const ChartPolygon& p,
                                    const ChartPolygon& q) {
  if (p.kappa != q.kappa) throw std::invalid_argument("chart mismatch");
  IntersectionResult res;
  auto clipped = clip_convex(p.pts, q.pts);
  const double scale = std::max(scale_of(p.pts), scale_of(q.pts));
  const double tol = kRelTol * scale;
  if (clipped.size() < 3 ||
      std::abs(polygon_area(clipped)) <= kRelTol * scale * scale) {
    // A segment or point of contact survives clipping with < 3 vertices (or
    // with vanishing area): nonempty but lower-dimensional.
    res.empty = clipped.empty();
    res.degenerate = !res.empty;
    res.poly.kappa = p.kappa;
    res.poly.pts = std::move(clipped);
    return res;
  }
  // Drop near-duplicate vertices produced by clipping.
  std::vector<Vec2> cleaned;
  for (const Vec2& v : clipped) {
    if (cleaned.empty() || !close(cleaned.back(), v, tol)) cleaned.push_back(v);
  }
  if (cleaned.size() > 1 && close(cleaned.front(), cleaned.back(), tol)) {
    cleaned.pop_back();
  }
  res.poly = ChartPolygon{std::move(cleaned), p.kappa};
  return res;
}

Vec2 extend_geodesic_to_side(const Triangle2& parent, Vec2 v,
                             bool* on_boundary) {
  const Vec2 p = parent[0], q = parent[1], r = parent[2];
  const double tol = kRelTol * scale_of({p, q, r}) * 1e2;
  if (on_boundary) *on_boundary = false;
  if (close(v, p, tol)) throw std::domain_error("v coincides with the apex");
  if (std::abs(line_side(q, r, v)) <= tol) {
    const double t = param_on_segment(q, r, v);
    if (t < -1e-9 || t > 1.0 + 1e-9) {
      throw std::domain_error("v on line qr but outside the segment");
    }
    if (on_boundary) *on_boundary = true;
    return v;
  }
  if (!point_in_convex({p, q, r}, v, tol)) {
    throw std::domain_error("v not inside the parent triangle");
  }
  const double t = segment_line_param(q, r, p, v);
  if (t < -1e-9 || t > 1.0 + 1e-9) {
    throw std::domain_error("ray p->v does not meet segment qr");
  }
  return q + (r - q) * std::clamp(t, 0.0, 1.0);
}

std::vector<Triangle2> replay_certificate(const Triangle2& parent,
                                          const std::vector<SplitStep>& cert) {
  std::vector<Triangle2> tris{parent};
  for (const SplitStep& s : cert) {
    if (s.tri >= tris.size()) throw std::invalid_argument("bad certificate");
    const Triangle2 t = tris[s.tri];
    const Vec2 v0 = t[s.vertex % 3];
    const Vec2 v1 = t[(s.vertex + 1) % 3];
    const Vec2 v2 = t[(s.vertex + 2) % 3];
    tris[s.tri] = Triangle2{v0, v1, s.point};
    tris.push_back(Triangle2{v0, s.point, v2});
  }
  return tris;
}

namespace {

struct Chord {
  Vec2 x;       // endpoint on I_k
  Vec2 y;       // endpoint on I_{k+1}
  double tx;    // parameter along I_k from the foot toward the apex
  double ty;
};

}  // namespace

RefinementOutput ve_refine(const ChartPolygon& parent,
                           const std::vector<ChartPolygon>& family) {
  if (parent.pts.size() != 3) {
    throw std::invalid_argument("parent must be a triangle");
  }
  const Vec2 p = parent.pts[0], q = parent.pts[1], r = parent.pts[2];
  const double scale = scale_of(parent.pts);
  const double tol = 1e-9 * scale;
  const double parent_area = polygon_area(parent.pts);

  // Containment and pairwise non-overlap of the family.
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].kappa != parent.kappa) {
      throw std::invalid_argument("family/parent chart mismatch");
    }
    const double ai = polygon_area(family[i].pts);
    const double inside =
        std::abs(polygon_area(clip_convex(family[i].pts, parent.pts)));
    if (ai - inside > 1e-9 * parent_area) {
      throw std::invalid_argument("family polygon not contained in parent");
    }
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      auto ov = clip_convex(family[i].pts, family[j].pts);
      if (ov.size() >= 3 &&
          std::abs(polygon_area(ov)) > 1e-10 * parent_area) {
        throw std::invalid_argument("family polygons overlap");
      }
    }
  }

  // Fan feet on [qr], one through every family vertex off [pq] and [pr].
  std::vector<double> foot_params;
  for (const ChartPolygon& A : family) {
    for (const Vec2& v : A.pts) {
      if (close(v, p, tol) || close(v, q, tol) || close(v, r, tol)) continue;
      if (std::abs(line_side(p, q, v)) <= tol ||
          std::abs(line_side(p, r, v)) <= tol) {
        continue;  // already on I_0 or I_{K+1}
      }
      const Vec2 foot = extend_geodesic_to_side({p, q, r}, v);
      foot_params.push_back(param_on_segment(q, r, foot));
    }
  }
  std::sort(foot_params.begin(), foot_params.end());
  std::vector<double> feet{0.0};
  for (double t : foot_params) {
    if (t - feet.back() > kRelTol) feet.push_back(t);
  }
  if (1.0 - feet.back() > kRelTol) feet.push_back(1.0);
  else feet.back() = 1.0;

  RefinementOutput out;
  std::vector<Triangle2>& tris = out.triangles;
  std::vector<SplitStep>& cert = out.certificate;
  tris.push_back({p, q, r});

  auto split = [&](std::size_t idx, int vertex, Vec2 point)
      -> std::pair<std::size_t, std::size_t> {
    cert.push_back({idx, vertex, point});
    const Triangle2 t = tris[idx];
    const Vec2 v0 = t[vertex % 3];
    const Vec2 v1 = t[(vertex + 1) % 3];
    const Vec2 v2 = t[(vertex + 2) % 3];
    tris[idx] = Triangle2{v0, v1, point};
    tris.push_back(Triangle2{v0, point, v2});
    return {idx, tris.size() - 1};
  };

  // Fan splits: peel off (p, f_k, f_{k+1}) from the left.
  std::vector<std::size_t> fan;  // index of each fan triangle
  std::size_t rest = 0;          // currently (p, f_k, r)
  for (std::size_t k = 0; k + 2 < feet.size(); ++k) {
    const Vec2 foot = q + (r - q) * feet[k + 1];
    auto [left, right] = split(rest, 0, foot);
    fan.push_back(left);
    rest = right;
  }
  fan.push_back(rest);

  // Stacked chords within each fan triangle.
  for (std::size_t k = 0; k + 1 < feet.size(); ++k) {
    const Vec2 fa = q + (r - q) * feet[k];
    const Vec2 fb = q + (r - q) * feet[k + 1];
    std::vector<Chord> chords;
    for (const ChartPolygon& A : family) {
      auto piece = clip_convex(A.pts, {p, fa, fb});
      if (piece.size() < 3 ||
          std::abs(polygon_area(piece)) <= 1e-12 * parent_area) {
        continue;
      }
      const std::size_t n = piece.size();
      for (std::size_t e = 0; e < n; ++e) {
        const Vec2 u = piece[e], w = piece[(e + 1) % n];
        const bool u_on_a = std::abs(line_side(p, fa, u)) <= tol;
        const bool w_on_a = std::abs(line_side(p, fa, w)) <= tol;
        const bool u_on_b = std::abs(line_side(p, fb, u)) <= tol;
        const bool w_on_b = std::abs(line_side(p, fb, w)) <= tol;
        const bool u_on_qr = std::abs(line_side(q, r, u)) <= tol;
        const bool w_on_qr = std::abs(line_side(q, r, w)) <= tol;
        if ((u_on_a && w_on_a) || (u_on_b && w_on_b) || (u_on_qr && w_on_qr)) {
          continue;  // lies on I_k, I_{k+1} or the base
        }
        Chord c;
        if (u_on_a && w_on_b) {
          c.x = u;
          c.y = w;
        } else if (w_on_a && u_on_b) {
          c.x = w;
          c.y = u;
        } else {
          throw std::runtime_error(
              "chord endpoint off the fan triangle boundary");
        }
        c.tx = param_on_segment(fa, p, c.x);
        c.ty = param_on_segment(fb, p, c.y);
        chords.push_back(c);
      }
    }
    std::sort(chords.begin(), chords.end(), [](const Chord& a, const Chord& b) {
      if (std::abs(a.tx - b.tx) > kRelTol) return a.tx < b.tx;
      return a.ty < b.ty;
    });

    // Working triangle `cur` always has vertex set {p, Lx, Ly}, but the
    // split bookkeeping permutes the slots, so locate vertices by value.
    std::size_t cur = fan[k];
    Vec2 Lx = fa, Ly = fb;
    auto split_toward_apex = [&](std::size_t idx, Vec2 opposite, Vec2 point) {
      const Triangle2& t = tris[idx];
      int slot = -1;
      for (int s = 0; s < 3; ++s) {
        if (close(t[s], opposite, tol)) slot = s;
      }
      if (slot < 0) throw std::runtime_error("lost track of a strip vertex");
      auto [c1, c2] = split(idx, slot, point);
      for (std::size_t child : {c1, c2}) {
        for (const Vec2& v : tris[child]) {
          if (close(v, p, tol)) return child;
        }
      }
      throw std::runtime_error("apex fell off the working triangle");
    };
    for (const Chord& c : chords) {
      const bool same_x = close(c.x, Lx, tol);
      const bool same_y = close(c.y, Ly, tol);
      if (same_x && same_y) continue;  // duplicate chord
      if (same_x) {
        // Single strip triangle (Lx, Ly, y); split [Ly, p] at y.
        cur = split_toward_apex(cur, Lx, c.y);
      } else if (same_y) {
        // Single strip triangle (Lx, Ly, x); split [Lx, p] at x.
        cur = split_toward_apex(cur, Ly, c.x);
      } else {
        // Quadrilateral strip with diagonal from Lx to y: peel off
        // (Lx, Ly, y), then (Lx, y, x).
        cur = split_toward_apex(cur, Lx, c.y);
        cur = split_toward_apex(cur, c.y, c.x);
      }
      Lx = c.x;
      Ly = c.y;
    }
  }

  // Ownership by centroid containment.
  out.owner.assign(tris.size(), -1);
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const Vec2 c = polygon_centroid({tris[i][0], tris[i][1], tris[i][2]});
    for (std::size_t a = 0; a < family.size(); ++a) {
      if (point_in_convex(family[a].pts, c, tol)) {
        out.owner[i] = static_cast<int>(a);
        break;
      }
    }
  }
  return out;
}

namespace {

struct VeSearch {
  const std::vector<Triangle2>* tris = nullptr;
  double tol = 0.0;
  std::size_t budget = 0;
  std::size_t nodes = 0;
  std::map<std::vector<std::size_t>, VeStatus> memo;
  std::vector<std::pair<Vec2, Vec2>> trace;

  // All distinct corner points of the given triangle subset.
  std::vector<Vec2> subset_points(const std::vector<std::size_t>& idx) const {
    std::vector<Vec2> pts;
    for (std::size_t i : idx) {
      for (const Vec2& v : (*tris)[i]) {
        bool found = false;
        for (const Vec2& w : pts) {
          if (close(w, v, tol)) {
            found = true;
            break;
          }
        }
        if (!found) pts.push_back(v);
      }
    }
    return pts;
  }

  // True when the segment [a, b] is exactly covered by triangle edges.
  bool chord_covered(Vec2 a, Vec2 b, const std::vector<std::size_t>& idx) const {
    const double len = norm(b - a);
    if (len <= tol) return false;
    std::vector<std::pair<double, double>> intervals;
    for (std::size_t i : idx) {
      const Triangle2& t = (*tris)[i];
      for (int e = 0; e < 3; ++e) {
        const Vec2 u = t[e], w = t[(e + 1) % 3];
        if (std::abs(line_side(a, b, u)) > tol ||
            std::abs(line_side(a, b, w)) > tol) {
          continue;
        }
        double tu = param_on_segment(a, b, u);
        double tw = param_on_segment(a, b, w);
        if (tu > tw) std::swap(tu, tw);
        if (tw < -1e-9 || tu > 1.0 + 1e-9) continue;
        intervals.emplace_back(std::max(tu, 0.0), std::min(tw, 1.0));
      }
    }
    std::sort(intervals.begin(), intervals.end());
    double covered = 0.0;
    const double gap_tol = tol / len + 1e-12;
    for (auto [lo, hi] : intervals) {
      if (lo > covered + gap_tol) return false;
      covered = std::max(covered, hi);
    }
    return covered >= 1.0 - gap_tol;
  }

  VeStatus run(const std::vector<Vec2>& poly, std::vector<std::size_t> idx) {
    if (++nodes > budget) return VeStatus::Unknown;
    if (idx.size() == 1) {
      if (poly.size() != 3) return VeStatus::No;
      const Triangle2& t = (*tris)[idx[0]];
      int matched = 0;
      for (const Vec2& v : poly) {
        for (const Vec2& w : t) {
          if (close(v, w, tol)) {
            ++matched;
            break;
          }
        }
      }
      return matched == 3 ? VeStatus::Yes : VeStatus::No;
    }
    std::sort(idx.begin(), idx.end());
    auto it = memo.find(idx);
    if (it != memo.end()) return it->second;

    const std::size_t n = poly.size();
    const std::vector<Vec2> candidates = subset_points(idx);
    bool hit_budget = false;
    for (std::size_t vi = 0; vi < n; ++vi) {
      const Vec2 v = poly[vi];
      for (std::size_t e = 0; e < n; ++e) {
        // Edge [poly[e], poly[e+1]] not containing vertex vi.
        if (e == vi || (e + 1) % n == vi) continue;
        const Vec2 ea = poly[e], eb = poly[(e + 1) % n];
        for (const Vec2& t : candidates) {
          if (std::abs(line_side(ea, eb, t)) > tol) continue;
          const double param = param_on_segment(ea, eb, t);
          if (param < -1e-9 || param > 1.0 + 1e-9) continue;
          if (close(t, v, tol)) continue;
          // Skip degenerate chords along the boundary of poly.
          if (close(t, poly[(vi + 1) % n], tol) ||
              close(t, poly[(vi + n - 1) % n], tol)) {
            continue;
          }
          if (!chord_covered(v, t, idx)) continue;
          // Partition triangles by centroid side of the chord.
          std::vector<std::size_t> left, right;
          bool ok = true;
          for (std::size_t i : idx) {
            const Triangle2& tr = (*tris)[i];
            const Vec2 c = polygon_centroid({tr[0], tr[1], tr[2]});
            const double s = line_side(v, t, c);
            if (s > tol) left.push_back(i);
            else if (s < -tol) right.push_back(i);
            else ok = false;
          }
          if (!ok || left.empty() || right.empty()) continue;
          // Boundary loops of the two sub-polygons.
          std::vector<Vec2> p1{v}, p2{t};
          for (std::size_t j = vi;;) {
            j = (j + 1) % n;
            if (j == (e + 1) % n) break;
            p1.push_back(poly[j]);
            if (j == e) break;
          }
          if (!close(p1.back(), t, tol)) p1.push_back(t);
          for (std::size_t j = e;;) {
            j = (j + 1) % n;
            if (!close(poly[j], t, tol)) p2.push_back(poly[j]);
            if (j == vi) break;
          }
          // Assign sides: p1 runs v -> ... -> t, closed by chord t -> v.
          auto side_of = [&](const std::vector<Vec2>& pp) {
            const Vec2 c = polygon_centroid(pp);
            return line_side(v, t, c);
          };
          std::vector<Vec2> poly_left, poly_right;
          if (side_of(p1) > 0.0) {
            poly_left = p1;
            poly_right = p2;
          } else {
            poly_left = p2;
            poly_right = p1;
          }
          const VeStatus s1 = run(poly_left, left);
          if (s1 == VeStatus::Unknown) hit_budget = true;
          if (s1 != VeStatus::Yes) continue;
          const VeStatus s2 = run(poly_right, right);
          if (s2 == VeStatus::Unknown) hit_budget = true;
          if (s2 != VeStatus::Yes) continue;
          trace.emplace_back(v, t);
          memo[idx] = VeStatus::Yes;
          return VeStatus::Yes;
        }
      }
    }
    const VeStatus res = hit_budget ? VeStatus::Unknown : VeStatus::No;
    memo[idx] = res;
    return res;
  }
};

}  // namespace

VeCheck is_vertex_edge(const ChartPolygon& parent,
                       const std::vector<Triangle2>& triangles) {
  VeCheck out;
  if (triangles.empty()) {
    out.status = VeStatus::No;
    return out;
  }
  const double area = polygon_area(parent.pts);
  double sum = 0.0;
  for (const Triangle2& t : triangles) {
    sum += std::abs(polygon_area({t[0], t[1], t[2]}));
  }
  if (std::abs(sum - area) > 1e-8 * std::max(area, 1e-30)) {
    throw std::invalid_argument("triangles do not tile the parent");
  }
  VeSearch search;
  search.tris = &triangles;
  search.tol = 1e-9 * scale_of(parent.pts);
  search.budget = std::max<std::size_t>(2000, 400 * triangles.size());
  std::vector<std::size_t> all(triangles.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  out.status = search.run(parent.pts, std::move(all));
  std::reverse(search.trace.begin(), search.trace.end());
  out.trace = std::move(search.trace);
  out.nodes_searched = search.nodes;
  return out;
}

std::array<double, 3> ambient_side_lengths(double kappa, const Triangle2& t) {
  const ModelSpace space{kappa};
  std::array<ChartPoint, 3> c;
  for (int i = 0; i < 3; ++i) {
    c[i] = from_projective_chart(space, ProjPoint{t[i].x, t[i].y});
  }
  return {distance(space, c[0], c[1]), distance(space, c[1], c[2]),
          distance(space, c[2], c[0])};
}

double ambient_excess(double kappa, const Triangle2& t) {
  const auto len = ambient_side_lengths(kappa, t);
  // Sides: [01], [12], [20]; triangle_data wants (a, b, c) opposite p, q, r.
  const ModelSpace space{kappa};
  return triangle_data(space, len[1], len[2], len[0]).excess;
}

ExcessBoundDemo family_excess_bound_demo(
    const ChartPolygon& parent, const std::vector<ChartPolygon>& family,
    double target_kappa) {
  if (parent.pts.size() != 3) {
    throw std::invalid_argument("parent must be a triangle");
  }
  ExcessBoundDemo out;
  for (const ChartPolygon& A : family) {
    // Fan triangulation from the first vertex.
    for (std::size_t i = 1; i + 1 < A.pts.size(); ++i) {
      out.family_excess += ambient_excess(
          A.kappa, Triangle2{A.pts[0], A.pts[i], A.pts[i + 1]});
    }
  }
  const auto len = ambient_side_lengths(parent.kappa,
                                        {parent.pts[0], parent.pts[1],
                                         parent.pts[2]});
  const ModelSpace target{target_kappa};
  const double area = triangle_data(target, len[1], len[2], len[0]).area;
  out.parent_model_area_scaled = target_kappa * area;
  return out;
}

}  // namespace catsurf
