#include <gtest/gtest.h>

#include <cfloat>
#include <cmath>
#include <numbers>

#include "kshape/shape.hpp"
#include "oracles.hpp"

using namespace kshape;

namespace {

const std::vector<std::vector<double>> kTriangle{{0, 0}, {4, 3}, {7, 1}};
const std::vector<std::vector<double>> kWaveform{{1}, {4}, {2}, {2}, {1}};

KappaFamily family(const std::vector<std::vector<double>>& pts, Topology topo) {
  return KappaFamily(LandmarkSet::from_points(pts, topo));
}

double max_diff(const Point& a, const Point& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Shape, FrozenOpenTriangle) {
  auto f = family(kTriangle, Topology::Open);
  auto r = f.evaluate(0.5, 0.3);
  EXPECT_NEAR(r.point[0], 2.0063550710358362547, 1e-13);
  EXPECT_NEAR(r.point[1], 1.4993644928964163745, 1e-13);
  r = f.evaluate(1.7, 0.2);
  EXPECT_NEAR(r.point[0], 6.6422466864677039473, 1e-13);
  EXPECT_NEAR(r.point[1], 1.2384673819335385204, 1e-13);
  EXPECT_EQ(r.quality, Quality::Exact);
}

TEST(Shape, FrozenClosed) {
  auto tri = family(kTriangle, Topology::Closed).evaluate(0.5, 0.3);
  EXPECT_NEAR(tri.point[0], 2.1666886607596671705, 1e-13);
  EXPECT_NEAR(tri.point[1], 1.483331133924033283, 1e-13);
  auto wave = family(kWaveform, Topology::Closed).evaluate(2.5, 0.1);
  EXPECT_NEAR(wave.point[0], 2.0000443981254576384, 1e-13);
}

TEST(Shape, FarOutsideUsesLogDomain) {
  auto r = family(kTriangle, Topology::Open).evaluate(-3.0, 0.05);
  EXPECT_EQ(r.quality, Quality::OutsideCanonicalDomain);
  EXPECT_NEAR(r.point[0] / 1.6993417021166393768e-17, 1.0, 1e-9);
  EXPECT_NEAR(r.point[1] / 1.274506276587479525e-17, 1.0, 1e-9);
  double sum = 0.0;
  for (double w : r.weights) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Shape, ClampOnlyWhenLogDomainFails) {
  // Far enough out that even the log-domain weights are exp(-huge) = 0.
  Weights w = open_weights(3, -1e6, 1e-3);
  for (double v : w.values) {
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GE(v, 0.0);
  }
  Weights near = open_weights(3, -5.0, 1e-3);
  EXPECT_EQ(near.quality, Quality::OutsideCanonicalDomain);
  EXPECT_NEAR(near.values[0], 1.0, 1e-12);
}

TEST(Shape, MatchesBruteForceOracle) {
  oracle::Draw draw(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = draw.integer(2, 12);
    std::vector<std::vector<double>> pts(n, std::vector<double>(3));
    for (auto& p : pts) {
      for (auto& c : p) c = draw.uniform(-5, 5);
    }
    const double k = draw.log_uniform(0.05, 20);
    auto open = family(pts, Topology::Open);
    auto closed = family(pts, Topology::Closed);
    for (int s = 0; s < 20; ++s) {
      const double t = draw.uniform(0, n - 1);
      EXPECT_LT(max_diff(open.evaluate(t, k).point, oracle::eval_open(pts, t, k)), 1e-11);
      const double tc = draw.uniform(-n, 2 * n);
      EXPECT_LT(max_diff(closed.evaluate(tc, k).point, oracle::eval_closed(pts, tc, k)), 1e-11);
    }
  }
}

TEST(Shape, WeightsAreACertificate) {
  oracle::Draw draw(4);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = static_cast<std::size_t>(draw.integer(1, 40));
    const double k = draw.log_uniform(1e-3, 1e3);
    for (const Weights& w : {open_weights(n, draw.uniform(-5, n + 5), k), closed_weights(n, draw.uniform(-50, 50), k)}) {
      double sum = 0.0;
      for (double v : w.values) {
        EXPECT_GE(v, 0.0);
        sum += v;
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(Shape, LandmarkRecovery) {
  auto f = family(kTriangle, Topology::Open);
  for (std::size_t n = 0; n < 3; ++n) {
    Point p = recover_landmark(f, n);
    EXPECT_NEAR(p[0], kTriangle[n][0], 1e-9);
    EXPECT_NEAR(p[1], kTriangle[n][1], 1e-9);
  }
  EXPECT_THROW(recover_landmark(f, 3), std::out_of_range);
  EXPECT_THROW(recover_landmark(f, 0, {0.5, 1e-6}), RecoveryError);
}

TEST(Shape, CentroidCollapse) {
  for (auto topo : {Topology::Open, Topology::Closed}) {
    auto f = family(kTriangle, topo);
    const Point c = centroid(f);
    EXPECT_NEAR(c[0], 11.0 / 3.0, 1e-15);
    for (double t = 0.0; t <= 2.0; t += 0.1) EXPECT_LT(max_diff(f.evaluate(t, 1e8).point, c), 1e-5);
  }
}

TEST(Shape, ClosedPeriodicity) {
  auto f = family(kTriangle, Topology::Closed);
  for (double k : {0.01, 0.3, 1.0}) {
    for (double t = 0.0; t < 3.0; t += 0.37) {
      for (int m : {-2, 1, 5}) {
        EXPECT_LT(max_diff(f.evaluate(t + 3.0 * m, k).point, f.evaluate(t, k).point), 1e-12);
      }
    }
  }
}

TEST(Shape, CyclicShiftEquivariance) {
  const LandmarkSet lm = LandmarkSet::from_points(kTriangle, Topology::Closed);
  const KappaFamily f(lm), g(lm.rotated(1));
  for (double t = 0.0; t < 3.0; t += 0.25) {
    EXPECT_LT(max_diff(g.evaluate(t, 0.3).point, f.evaluate(t + 1.0, 0.3).point), 1e-12);
  }
}

TEST(Shape, OpenFamilyDiffersFromClosed) {
  const auto o = family(kTriangle, Topology::Open).evaluate(1.5, 0.3).point;
  const auto c = family(kTriangle, Topology::Closed).evaluate(1.5, 0.3).point;
  EXPECT_GT(max_diff(o, c), 1e-3);
}

TEST(Shape, RepeatedLandmarkMovesCentroid) {
  auto f = family({{0, 0}, {4, 3}, {0, 0}, {7, 1}, {0, 0}}, Topology::Closed);
  const Point c = centroid(f);
  EXPECT_NEAR(c[0], 11.0 / 5.0, 1e-15);
  EXPECT_LT(max_diff(f.evaluate(0.7, 1e8).point, c), 1e-5);
}

TEST(Shape, LinearEquivariance) {
  auto f = family(kTriangle, Topology::Open);
  const Matrix m(2, 2, {0.3, -1.2, 2.0, 0.7});
  auto g = transform(f, m);
  for (double t = -1.0; t < 3.0; t += 0.3) {
    const Point want = m.apply(f.evaluate(t, 0.4).point);
    EXPECT_LT(max_diff(g.evaluate(t, 0.4).point, want), 1e-12);
  }
  EXPECT_THROW(transform(f, Matrix::identity(3)), std::invalid_argument);
}

TEST(Shape, OneLandmarkIsConstant) {
  auto f = family({{2.5, -1.0}}, Topology::Open);
  auto r = f.evaluate(0.0, 0.1);
  EXPECT_DOUBLE_EQ(r.point[0], 2.5);
  auto g = family({{2.5, -1.0}}, Topology::Closed);
  EXPECT_DOUBLE_EQ(g.evaluate(0.3, 0.1).point[1], -1.0);
}

TEST(Shape, WrongTopologyAndKappa) {
  auto f = family(kTriangle, Topology::Open);
  EXPECT_THROW(eval_closed(f, 0.0, 0.1), std::invalid_argument);
  EXPECT_THROW(f.evaluate(0.0, 0.0), std::domain_error);
  EXPECT_THROW(f.evaluate(0.0, -1.0), std::domain_error);
}

TEST(Shape, Sampling) {
  auto f = family(kTriangle, Topology::Closed);
  SampledCurve c = sample(f, 0.3);
  EXPECT_EQ(c.size(), 31u);
  EXPECT_EQ(c.t.front(), 0.0);
  EXPECT_EQ(c.t.back(), 3.0);
  EXPECT_LT(max_diff(Point(c.point(0).begin(), c.point(0).end()),
                     Point(c.point(30).begin(), c.point(30).end())), 1e-12);
  for (std::size_t i = 1; i < c.size(); ++i) EXPECT_LT(c.t[i - 1], c.t[i]);
  EXPECT_THROW(sample(f, 0.3, 0.0, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(sample(f, 0.3, 1.0, 1.0, 5), std::invalid_argument);
}

TEST(Landmarks, Validation) {
  EXPECT_THROW(LandmarkSet(0, {1.0}, Topology::Open), std::invalid_argument);
  EXPECT_THROW(LandmarkSet(2, {1.0, 2.0, 3.0}, Topology::Open), std::invalid_argument);
  EXPECT_THROW(LandmarkSet(1, {}, Topology::Open), std::invalid_argument);
  EXPECT_THROW(LandmarkSet(1, {std::nan("")}, Topology::Open), std::invalid_argument);
  EXPECT_THROW(LandmarkSet(1, {1.0}, Topology::Open, {"a", "b"}), std::invalid_argument);
  EXPECT_THROW(LandmarkSet::from_points({{1, 2}, {3}}, Topology::Open), std::invalid_argument);
  EXPECT_THROW(topology_from_string("loop"), std::invalid_argument);
  const LandmarkSet lm(1, {1, 2, 3}, Topology::Open);
  EXPECT_THROW(lm.point(3), std::out_of_range);
  EXPECT_EQ(lm.rotated(2).point(0)[0], 3.0);
}
