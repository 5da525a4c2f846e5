#ifndef KSHAPE_GEOMETRY_HPP
#define KSHAPE_GEOMETRY_HPP

// Verification geometry: planar convex hulls with tolerant containment, the
// weight-form containment certificate, and crossing counts of the xy
// projection of a closed space curve.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kshape/landmarks.hpp"
#include "kshape/shape.hpp"

namespace kshape {

using Vec2 = std::array<double, 2>;

namespace detail {

inline double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline double dist(const Vec2& a, const Vec2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return dist(p, a);
  const double s = std::clamp(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2, 0.0, 1.0);
  return dist(p, {a[0] + s * dx, a[1] + s * dy});
}

}  // namespace detail

/// Extreme points in counterclockwise order, starting from the
/// lexicographically smallest. Collinear input gives its two endpoints, a
/// single distinct point gives itself.
struct ConvexHull2D {
  std::vector<Vec2> vertices;
};

inline ConvexHull2D hull_2d(std::span<const Vec2> points) {
  if (points.empty()) throw std::invalid_argument("hull of an empty point set");
  std::vector<Vec2> p(points.begin(), points.end());
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return {p};

  // Andrew's monotone chain; collinear points are dropped.
  std::vector<Vec2> h(2 * p.size());
  std::size_t k = 0;
  for (const auto& q : p) {
    while (k >= 2 && detail::cross(h[k - 2], h[k - 1], q) <= 0) --k;
    h[k++] = q;
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && detail::cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return {h};
}

inline ConvexHull2D hull_2d(const LandmarkSet& landmarks) {
  if (landmarks.dim() != 2) throw std::invalid_argument("planar hull needs 2D landmarks");
  std::vector<Vec2> pts(landmarks.size());
  for (std::size_t j = 0; j < pts.size(); ++j) pts[j] = {landmarks.point(j)[0], landmarks.point(j)[1]};
  return hull_2d(pts);
}

inline double hull_diameter(const ConvexHull2D& hull) {
  double d = 0.0;
  for (std::size_t i = 0; i < hull.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < hull.vertices.size(); ++j) {
      d = std::max(d, detail::dist(hull.vertices[i], hull.vertices[j]));
    }
  }
  return d;
}

/// How far p lies outside the hull (0 when inside or on the boundary).
/// For polygons this is the largest negative signed edge distance.
inline double containment_violation(const ConvexHull2D& hull, const Vec2& p) {
  const auto& v = hull.vertices;
  if (v.size() == 1) return detail::dist(p, v[0]);
  if (v.size() == 2) return detail::point_segment_distance(p, v[0], v[1]);
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    const double signed_dist = detail::cross(a, b, p) / detail::dist(a, b);
    worst = std::max(worst, -signed_dist);
  }
  return worst;
}

inline bool contains_2d(const ConvexHull2D& hull, const Vec2& p, double tol) {
  return containment_violation(hull, p) <= tol;
}

/// Non-negative weights summing to one place the point in the hull of the
/// landmarks, whatever the dimension.
inline bool weight_certificate_contains(std::span<const double> weights, double tol) {
  if (weights.empty()) return false;
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= -tol)) return false;
    sum += w;
  }
  return std::abs(sum - 1.0) <= tol;
}

inline bool weight_certificate_contains(const EvalResult& result, double tol) {
  return weight_certificate_contains(std::span<const double>(result.weights), tol);
}

/// Worst certificate defect of a weight vector: max(0, -min weight, |sum - 1|).
inline double certificate_violation(std::span<const double> weights) {
  double sum = 0.0, worst = 0.0;
  for (double w : weights) {
    worst = std::max(worst, -w);
    sum += w;
  }
  return std::max(worst, std::abs(sum - 1.0));
}

// ---------------------------------------------------------------------------
// Projected crossings

enum class OverStrand { First, Second, Level };

struct Crossing {
  double t_a = 0.0;  // parameter on the earlier strand
  double t_b = 0.0;  // parameter on the later strand
  OverStrand over = OverStrand::Level;
  double x = 0.0;
  double y = 0.0;
};

struct CrossingReport {
  std::size_t crossing_count = 0;
  std::vector<Crossing> crossings;
  /// Tangential or overlapping contacts that were seen but not counted.
  std::size_t degenerate = 0;
};

struct CrossingOptions {
  /// Points closer than this, relative to the xy bounding-box diagonal, are
  /// treated as the same point. Small-kappa curves approach a landmark with
  /// offsets on every scale down to rounding, so this sits well above it.
  double snap_tolerance = 1e-6;
  /// Intersections whose strands meet at a sine of angle below this are
  /// reported as degenerate.
  double angular_guard = 1e-9;
  /// Edges within this many steps along the polyline are never tested.
  std::size_t adjacency_guard = 1;
  /// Largest allowed gap between the first and last sample.
  double closure_tolerance = 1e-9;
};

namespace detail {

struct CurveVertex {
  Vec2 p;
  double z;
  double t;
};

inline std::vector<CurveVertex> merge_consecutive(const std::vector<CurveVertex>& in, double snap) {
  std::vector<CurveVertex> out;
  for (const auto& v : in) {
    if (out.empty() || dist(out.back().p, v.p) > snap) out.push_back(v);
  }
  while (out.size() > 1 && dist(out.back().p, out.front().p) <= snap) out.pop_back();
  return out;
}

// Moves every vertex within `snap` of another onto a shared representative.
inline void snap_clusters(std::vector<CurveVertex>& v, double snap) {
  std::vector<std::size_t> parent(v.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a].p[0] < v[b].p[0]; });
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      const auto i = order[a], j = order[b];
      if (v[j].p[0] - v[i].p[0] > snap) break;
      if (dist(v[i].p, v[j].p) <= snap) {
        const auto ri = find(i), rj = find(j);
        if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
      }
    }
  }
  for (std::size_t i = 0; i < v.size(); ++i) v[i].p = v[find(i)].p;
}

// Splits edges that pass within `snap` of a non-incident vertex so that
// every contact becomes an exact shared vertex.
inline std::vector<CurveVertex> split_touching_edges(const std::vector<CurveVertex>& v, double snap, double t_wrap) {
  const std::size_t n = v.size();
  std::vector<std::vector<std::pair<double, Vec2>>> splits(n);
  for (std::size_t e = 0; e < n; ++e) {
    const Vec2& a = v[e].p;
    const Vec2& b = v[(e + 1) % n].p;
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double len2 = dx * dx + dy * dy;
    if (len2 == 0.0) continue;
    const double lo_x = std::min(a[0], b[0]) - snap, hi_x = std::max(a[0], b[0]) + snap;
    const double lo_y = std::min(a[1], b[1]) - snap, hi_y = std::max(a[1], b[1]) + snap;
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2& p = v[k].p;
      if (p[0] < lo_x || p[0] > hi_x || p[1] < lo_y || p[1] > hi_y) continue;
      if (p == a || p == b || dist(p, a) <= snap || dist(p, b) <= snap) continue;
      const double s = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2;
      if (s <= 0.0 || s >= 1.0) continue;
      if (dist(p, {a[0] + s * dx, a[1] + s * dy}) <= snap) splits[e].emplace_back(s, p);
    }
  }
  std::vector<CurveVertex> out;
  out.reserve(n);
  for (std::size_t e = 0; e < n; ++e) {
    out.push_back(v[e]);
    if (splits[e].empty()) continue;
    std::sort(splits[e].begin(), splits[e].end());
    const CurveVertex& a = v[e];
    const CurveVertex& b = v[(e + 1) % n];
    const double tb = e + 1 == n ? t_wrap : b.t;
    for (const auto& [s, p] : splits[e]) out.push_back({p, a.z + s * (b.z - a.z), a.t + s * (tb - a.t)});
  }
  std::vector<CurveVertex> dedup;
  for (const auto& c : out) {
    if (dedup.empty() || dedup.back().p != c.p) dedup.push_back(c);
  }
  while (dedup.size() > 1 && dedup.back().p == dedup.front().p) dedup.pop_back();
  return dedup;
}

inline OverStrand over_of(double z_first, double z_second) {
  if (z_first > z_second) return OverStrand::First;
  if (z_second > z_first) return OverStrand::Second;
  return OverStrand::Level;
}

// True if angle x lies strictly inside the counterclockwise arc from a to b.
inline bool in_ccw_arc(double a, double b, double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  auto norm = [&](double v) {
    v = std::fmod(v, two_pi);
    return v < 0 ? v + two_pi : v;
  };
  const double span = norm(b - a);
  const double off = norm(x - a);
  return off > 0.0 && off < span;
}

inline double angle_gap(double a, double b) {
  const double two_pi = 2.0 * std::numbers::pi;
  double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

}  // namespace detail

/// Crossings of the xy projection of a closed sampled space curve.
///
/// Proper intersections between non-adjacent polyline edges are counted
/// directly. Strands that pass through the same point (as the small-kappa
/// members of a family do at shared landmarks) are resolved from the
/// cyclic order of their incoming and outgoing directions. Tangential and
/// overlapping contacts are tallied in `degenerate` instead of counted.
///
/// Quadratic in the number of samples.
inline CrossingReport projected_crossings(const SampledCurve& curve, CrossingOptions opts = {}) {
  if (curve.dim != 3) throw std::invalid_argument("projected crossings need a 3D curve");
  if (curve.size() < 4) throw std::invalid_argument("projected crossings need at least 4 samples");
  {
    auto first = curve.point(0), last = curve.point(curve.size() - 1);
    for (std::size_t d = 0; d < 3; ++d) {
      if (std::abs(first[d] - last[d]) > opts.closure_tolerance) {
        throw std::invalid_argument("curve is not closed: first and last samples differ");
      }
    }
  }

  std::vector<detail::CurveVertex> raw;
  raw.reserve(curve.size() - 1);
  double min_x = INFINITY, max_x = -INFINITY, min_y = INFINITY, max_y = -INFINITY;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    auto p = curve.point(i);
    raw.push_back({{p[0], p[1]}, p[2], curve.t[i]});
    min_x = std::min(min_x, p[0]);
    max_x = std::max(max_x, p[0]);
    min_y = std::min(min_y, p[1]);
    max_y = std::max(max_y, p[1]);
  }
  double diag = std::hypot(max_x - min_x, max_y - min_y);
  if (diag == 0.0) diag = 1.0;
  const double snap = opts.snap_tolerance * diag;
  const double t_wrap = curve.t.back();

  auto v = detail::merge_consecutive(raw, 0.0);
  CrossingReport report;
  if (v.size() < 3) return report;
  v = detail::split_touching_edges(v, snap, t_wrap);
  detail::snap_clusters(v, snap);
  v = detail::merge_consecutive(v, 0.0);
  const std::size_t n = v.size();
  if (n < 3) return report;

  auto cyclic_gap = [n](std::size_t i, std::size_t j) {
    const std::size_t d = i > j ? i - j : j - i;
    return std::min(d, n - d);
  };
  auto end_t = [&](std::size_t e) { return e + 1 == n ? t_wrap : v[e + 1].t; };

  // Proper crossings between edge interiors.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = v[i].p;
    const Vec2& b = v[(i + 1) % n].p;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (cyclic_gap(i, j) <= opts.adjacency_guard) continue;
      const Vec2& c = v[j].p;
      const Vec2& d = v[(j + 1) % n].p;
      if (std::max(c[0], d[0]) < std::min(a[0], b[0]) || std::min(c[0], d[0]) > std::max(a[0], b[0]) ||
          std::max(c[1], d[1]) < std::min(a[1], b[1]) || std::min(c[1], d[1]) > std::max(a[1], b[1])) {
        continue;
      }
      const double o1 = detail::cross(a, b, c), o2 = detail::cross(a, b, d);
      const double o3 = detail::cross(c, d, a), o4 = detail::cross(c, d, b);
      if (o1 == 0.0 && o2 == 0.0) {
        // Shared edges are resolved with the shared-vertex runs below.
        if ((a == c && b == d) || (a == d && b == c)) continue;
        // Collinear: only an overlap of positive length matters.
        const bool use_x = std::abs(b[0] - a[0]) >= std::abs(b[1] - a[1]);
        const int k = use_x ? 0 : 1;
        const double lo = std::max(std::min(a[k], b[k]), std::min(c[k], d[k]));
        const double hi = std::min(std::max(a[k], b[k]), std::max(c[k], d[k]));
        if (hi > lo) ++report.degenerate;
        continue;
      }
      if (!((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0))) continue;
      if (!((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) continue;
      const double ab = detail::dist(a, b), cd = detail::dist(c, d);
      const double sine = std::abs((b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])) / (ab * cd);
      if (sine < opts.angular_guard) {
        ++report.degenerate;
        continue;
      }
      const double s = o3 / (o3 - o4);
      const double u = o1 / (o1 - o2);
      const double za = v[i].z + s * (v[(i + 1) % n].z - v[i].z);
      const double zb = v[j].z + u * (v[(j + 1) % n].z - v[j].z);
      Crossing cr;
      cr.t_a = v[i].t + s * (end_t(i) - v[i].t);
      cr.t_b = v[j].t + u * (end_t(j) - v[j].t);
      cr.over = detail::over_of(za, zb);
      cr.x = a[0] + s * (b[0] - a[0]);
      cr.y = a[1] + s * (b[1] - a[1]);
      report.crossings.push_back(cr);
    }
  }

  // Strands meeting at shared vertices. A run of vertices shared by two
  // strands (in either direction) is contracted to one point; the strands
  // cross there when their four outside edges alternate around it.
  auto at = [&](std::size_t i, long step) { return (i + n + static_cast<std::size_t>(step % static_cast<long>(n))) % n; };
  auto angle_from = [&](const Vec2& o, std::size_t k) { return std::atan2(v[k].p[1] - o[1], v[k].p[0] - o[0]); };
  std::set<std::pair<std::size_t, std::size_t>> done;
  std::map<Vec2, std::vector<std::size_t>> visits;
  for (std::size_t i = 0; i < n; ++i) visits[v[i].p].push_back(i);
  for (const auto& [pt, idx] : visits) {
    for (std::size_t x = 0; x < idx.size(); ++x) {
      for (std::size_t y = x + 1; y < idx.size(); ++y) {
        const std::size_t p = idx[x], q = idx[y];
        if (cyclic_gap(p, q) <= opts.adjacency_guard || done.count({p, q})) continue;
        long dir = 0;
        if (v[at(p, 1)].p == v[at(q, 1)].p || v[at(p, -1)].p == v[at(q, -1)].p) dir = 1;
        if (v[at(p, 1)].p == v[at(q, -1)].p || v[at(p, -1)].p == v[at(q, 1)].p) dir = dir == 0 ? -1 : 2;
        if (dir == 2) {
          ++report.degenerate;  // both orientations share an edge
          continue;
        }
        // Extend the shared run [p0, p1] on the first strand, matched by
        // q0 and q1 on the second.
        std::size_t p0 = p, q0 = q, p1 = p, q1 = q, len = 1;
        if (dir != 0) {
          while (len < n / 2 && v[at(p0, -1)].p == v[at(q0, -dir)].p && cyclic_gap(at(p0, -1), at(q0, -dir)) > 0) {
            p0 = at(p0, -1);
            q0 = at(q0, -dir);
            ++len;
          }
          while (len < n / 2 && v[at(p1, 1)].p == v[at(q1, dir)].p && cyclic_gap(at(p1, 1), at(q1, dir)) > 0) {
            p1 = at(p1, 1);
            q1 = at(q1, dir);
            ++len;
          }
        }
        for (std::size_t k = 0, a = p0, b = q0; k < len; ++k, a = at(a, 1), b = at(b, dir)) {
          done.insert({std::min(a, b), std::max(a, b)});
        }
        if (len >= n / 2) {
          ++report.degenerate;
          continue;
        }
        // Outside edges: first strand (label 0) in at p0 and out at p1,
        // second strand (label 1) at q0 and q1.
        const std::size_t a_in = at(p0, -1), a_out = at(p1, 1);
        const std::size_t b_s = dir >= 0 ? at(q0, -1) : at(q0, 1);
        const std::size_t b_e = dir >= 0 ? at(q1, 1) : at(q1, -1);
        bool tangent = false;
        bool cross = false;
        if (len == 1) {
          const double dirs[4] = {angle_from(pt, a_in), angle_from(pt, a_out), angle_from(pt, b_s), angle_from(pt, b_e)};
          for (int m = 0; m < 4; ++m) {
            for (int l = m + 1; l < 4; ++l) tangent = tangent || detail::angle_gap(dirs[m], dirs[l]) < opts.angular_guard;
          }
          cross = detail::in_ccw_arc(dirs[0], dirs[1], dirs[2]) != detail::in_ccw_arc(dirs[0], dirs[1], dirs[3]);
        } else {
          // Rotation of the contracted run: outside edges at the start in
          // counterclockwise order from the run direction, then those at
          // the end from the reversed run direction.
          auto ordered = [&](std::size_t end, std::size_t inward, std::size_t ea, std::size_t eb) {
            const Vec2& o = v[end].p;
            const double ref = angle_from(o, inward);
            const double pa = angle_from(o, ea), pb = angle_from(o, eb);
            const double two_pi = 2.0 * std::numbers::pi;
            auto off = [&](double ang) { return std::fmod(std::fmod(ang - ref, two_pi) + two_pi, two_pi); };
            tangent = tangent || detail::angle_gap(pa, pb) < opts.angular_guard ||
                      detail::angle_gap(pa, ref) < opts.angular_guard || detail::angle_gap(pb, ref) < opts.angular_guard;
            return off(pa) < off(pb) ? std::array<int, 2>{0, 1} : std::array<int, 2>{1, 0};
          };
          const auto s = ordered(p0, at(p0, 1), a_in, b_s);
          const auto e = ordered(p1, at(p1, -1), a_out, b_e);
          cross = s[1] != e[0];
        }
        if (tangent) {
          ++report.degenerate;
          continue;
        }
        if (!cross) continue;
        Crossing cr;
        cr.t_a = v[p0].t;
        cr.t_b = v[q0].t;
        cr.over = detail::over_of(v[p0].z, v[q0].z);
        cr.x = v[p0].p[0];
        cr.y = v[p0].p[1];
        report.crossings.push_back(cr);
      }
    }
  }

  std::sort(report.crossings.begin(), report.crossings.end(),
            [](const Crossing& l, const Crossing& r) { return std::pair(l.t_a, l.t_b) < std::pair(r.t_a, r.t_b); });
  report.crossing_count = report.crossings.size();
  return report;
}

}  // namespace kshape

#endif  // KSHAPE_GEOMETRY_HPP
