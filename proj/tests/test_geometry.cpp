#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kshape/generators.hpp"
#include "kshape/geometry.hpp"
#include "kshape/verify.hpp"
#include "oracles.hpp"

using namespace kshape;

namespace {

std::vector<Vec2> random_points(oracle::Draw& draw, int n) {
  std::vector<Vec2> p(n);
  for (auto& v : p) v = {draw.uniform(0, 1), draw.uniform(0, 1)};
  return p;
}

SampledCurve closed_curve(std::size_t n, const std::function<std::array<double, 3>(double)>& f) {
  SampledCurve c;
  c.dim = 3;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    auto p = f(i == n ? 0.0 : t);
    c.t.push_back(t);
    c.coords.insert(c.coords.end(), p.begin(), p.end());
    c.quality.push_back(Quality::Exact);
  }
  return c;
}

std::vector<std::array<double, 2>> xy_polygon(const SampledCurve& c) {
  std::vector<std::array<double, 2>> out;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) out.push_back({c.point(i)[0], c.point(i)[1]});
  return out;
}

}  // namespace

TEST(Hull, MatchesBruteForce) {
  oracle::Draw draw(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = random_points(draw, draw.integer(3, 30));
    const ConvexHull2D h = hull_2d(pts);
    for (int s = 0; s < 50; ++s) {
      const Vec2 p{draw.uniform(-0.5, 1.5), draw.uniform(-0.5, 1.5)};
      EXPECT_NEAR(containment_violation(h, p), oracle::hull_violation({pts.begin(), pts.end()}, p), 1e-12);
    }
    for (const auto& p : pts) EXPECT_TRUE(contains_2d(h, p, 1e-12));
  }
}

TEST(Hull, StrictlyConvexCounterclockwise) {
  oracle::Draw draw(9);
  const auto pts = random_points(draw, 200);
  const auto v = hull_2d(pts).vertices;
  ASSERT_GE(v.size(), 3u);
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_GT(detail::cross(v[i], v[(i + 1) % v.size()], v[(i + 2) % v.size()]), 0.0);
  }
  EXPECT_EQ(v.front(), *std::min_element(pts.begin(), pts.end()));
}

TEST(Hull, PermutationInvariantAndIdempotent) {
  oracle::Draw draw(10);
  auto pts = random_points(draw, 40);
  const auto h = hull_2d(pts).vertices;
  std::reverse(pts.begin(), pts.end());
  EXPECT_EQ(hull_2d(pts).vertices, h);
  EXPECT_EQ(hull_2d(h).vertices, h);
}

TEST(Hull, Degenerate) {
  const std::vector<Vec2> one{{1, 1}, {1, 1}};
  EXPECT_EQ(hull_2d(one).vertices.size(), 1u);
  EXPECT_TRUE(contains_2d(hull_2d(one), {1, 1}, 0.0));
  EXPECT_NEAR(containment_violation(hull_2d(one), {4, 5}), 5.0, 1e-15);
  const std::vector<Vec2> line{{0, 0}, {1, 1}, {2, 2}, {0.5, 0.5}};
  const auto h = hull_2d(line);
  ASSERT_EQ(h.vertices.size(), 2u);
  EXPECT_TRUE(contains_2d(h, {1.5, 1.5}, 1e-12));
  EXPECT_FALSE(contains_2d(h, {3, 3}, 1e-12));
  EXPECT_THROW(hull_2d(std::vector<Vec2>{}), std::invalid_argument);
  EXPECT_THROW(hull_2d(trefoil_landmarks()), std::invalid_argument);
}

TEST(Hull, FamilyStaysInside) {
  const LandmarkSet lm = random_uniform_landmarks(20, 2, 3);
  const KappaFamily f(lm);
  const auto h = hull_2d(lm);
  for (double k : {0.01, 0.3, 5.0}) {
    for (double t = -2.0; t <= 21.0; t += 0.05) {
      const Point p = f.evaluate(t, k).point;
      EXPECT_TRUE(contains_2d(h, {p[0], p[1]}, 1e-9));
    }
  }
}

TEST(Certificate, DetectsCorruptedWeights) {
  const std::vector<double> ok{0.2, 0.3, 0.5};
  const std::vector<double> negative{0.7, -0.1, 0.4};
  const std::vector<double> heavy{0.5, 0.3, 0.3};
  EXPECT_TRUE(weight_certificate_contains(ok, 1e-12));
  EXPECT_FALSE(weight_certificate_contains(negative, 1e-12));
  EXPECT_FALSE(weight_certificate_contains(heavy, 1e-12));
  EXPECT_FALSE(weight_certificate_contains(std::vector<double>{}, 1e-12));
  const ContainmentRow row = certify_weights(0.1, {ok, negative}, 1e-12);
  EXPECT_FALSE(row.pass);
  EXPECT_NEAR(row.max_violation, 0.1, 1e-15);
}

TEST(Containment, ReportModes) {
  const KappaFamily planar(random_uniform_landmarks(30, 2, 4));
  const std::vector<double> ks{0.01, 1.0};
  const auto r = check_containment(planar, ks, 500, 1e-9);
  EXPECT_EQ(r.mode, ContainmentMode::Hull);
  EXPECT_TRUE(r.pass());
  const auto c = check_containment(KappaFamily(trefoil_landmarks()), ks, 500, 1e-12);
  EXPECT_EQ(c.mode, ContainmentMode::Certificate);
  EXPECT_TRUE(c.pass());
  EXPECT_THROW(check_containment(KappaFamily(trefoil_landmarks()), ks, 10, 1e-9, ContainmentMode::Hull),
               std::invalid_argument);
}

TEST(Crossings, AnalyticTrefoil) {
  const auto c = closed_curve(3000, [](double t) {
    return std::array<double, 3>{std::sin(t) + 2 * std::sin(2 * t), std::cos(t) - 2 * std::cos(2 * t), -std::sin(3 * t)};
  });
  const CrossingReport r = projected_crossings(c);
  EXPECT_EQ(r.crossing_count, 3u);
  EXPECT_EQ(r.degenerate, 0u);
  // Alternating diagram: every crossing has a strict over strand.
  for (const auto& x : r.crossings) EXPECT_NE(x.over, OverStrand::Level);
}

TEST(Crossings, MatchesSegmentOracleOnGenericCurves) {
  oracle::Draw draw(12);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> coords(3 * 7);
    for (auto& v : coords) v = draw.uniform(0, 1);
    const KappaFamily f(LandmarkSet(3, coords, Topology::Closed));
    const SampledCurve c = sample(f, draw.uniform(0.05, 1.0), 0.0, 7.0, 701);
    EXPECT_EQ(static_cast<int>(projected_crossings(c).crossing_count), oracle::segment_crossings(xy_polygon(c)));
  }
}

TEST(Crossings, TrefoilFamilyEnds) {
  const KappaFamily f(trefoil_landmarks());
  const CrossingReport small = crossings_at(f, 0.01, 2000);
  EXPECT_EQ(small.crossing_count, 3u);
  EXPECT_EQ(crossings_at(f, 0.3, 2000).crossing_count, 3u);
  EXPECT_EQ(crossings_at(f, 1.0, 2000).crossing_count, 0u);
  // The three crossings sit at the shared landmark projections.
  std::vector<std::pair<double, double>> at;
  for (const auto& c : small.crossings) at.push_back({std::round(c.x * 10) / 10, std::round(c.y * 10) / 10});
  std::sort(at.begin(), at.end());
  const std::vector<std::pair<double, double>> want{{0.3, 0.4}, {0.5, 0.8}, {0.7, 0.4}};
  EXPECT_EQ(at, want);
}

TEST(Crossings, RotationInvariant) {
  const KappaFamily f(trefoil_landmarks());
  for (double k : {0.01, 0.3, 0.6}) {
    const std::size_t base = crossings_at(f, k, 2000).crossing_count;
    const KappaFamily g = transform(f, Matrix::rotation_z(0.7));
    EXPECT_EQ(crossings_at(g, k, 2000).crossing_count, base) << k;
  }
}

TEST(Crossings, PlanarSquareHasNone) {
  const KappaFamily sq(LandmarkSet(3, {0, 0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1}, Topology::Closed));
  for (double k : {0.01, 0.1, 1.0}) EXPECT_EQ(crossings_at(sq, k, 400).crossing_count, 0u);
}

TEST(Crossings, Errors) {
  const KappaFamily planar(polygon_landmarks(4));
  EXPECT_THROW(crossings_at(planar, 0.1, 100), std::invalid_argument);
  const KappaFamily open(LandmarkSet(3, {0, 0, 0, 1, 1, 1, 2, 0, 0}, Topology::Open));
  EXPECT_THROW(crossings_at(open, 0.1, 100), std::invalid_argument);
  const SampledCurve unclosed = sample(open, 0.1, 0.0, 2.0, 50);
  EXPECT_THROW(projected_crossings(unclosed), std::invalid_argument);
  const KappaFamily tre(trefoil_landmarks());
  EXPECT_THROW(projected_crossings(sample(tre, 0.1, 0.0, 9.0, 3)), std::invalid_argument);
}

TEST(Crossings, SweepReportsTransition) {
  const KappaFamily f(trefoil_landmarks());
  const std::vector<double> ks{0.01, 0.5, 1.0};
  const CrossingSweep sw = crossing_sweep(f, ks, 1000, 1e-2);  // coarse sampling still resolves the small-kappa junctions
  ASSERT_EQ(sw.rows.size(), 3u);
  EXPECT_EQ(sw.rows[0].count, 3u);
  ASSERT_TRUE(sw.first_zero.has_value());
  EXPECT_EQ(*sw.first_zero, 1.0);
  ASSERT_TRUE(sw.zero_threshold.has_value());
  EXPECT_GT(*sw.zero_threshold, 0.5);
  EXPECT_LE(*sw.zero_threshold, 1.0);
  const std::vector<double> one{0.2};
  EXPECT_EQ(crossing_sweep(f, one, 500).rows.size(), 1u);
}
