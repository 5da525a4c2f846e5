#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "kshape/bkernel.hpp"
#include "oracles.hpp"

using namespace kshape;

TEST(BExact, KroneckerOnIntegers) {
  for (int n = 0; n < 64; ++n) {
    for (int j = 0; j < 64; ++j) {
      EXPECT_EQ(b_exact(static_cast<double>(n - j), 0.5), n == j ? 1.0 : 0.0);
    }
  }
}

TEST(BExact, EdgeAndSign) {
  EXPECT_EQ(b_exact(0.5, 0.5), 0.5);
  EXPECT_EQ(b_exact(-0.5, 0.5), 0.5);
  EXPECT_EQ(b_exact(0.2, -0.5), -1.0);
  EXPECT_EQ(b_exact(0.5, -0.5), -0.5);
  EXPECT_EQ(b_exact(3.0, 0.0), 0.0);
  EXPECT_EQ(b_exact(0.0, 0.0), 0.0);
  static_assert(b_exact(0.0, 1.0) == 1.0);
}

TEST(BKappa, FrozenValues) {
  // Reference values computed with 40-digit arithmetic.
  EXPECT_NEAR(b_kappa(0.3, 0.5, 0.2), 0.88046172784741596577, 1e-15);
  EXPECT_NEAR(b_kappa(0.3, 0.5, 1000.0), 0.00049999991333335519999, 1e-18);
  EXPECT_NEAR(b_kappa(0.49, 0.5, 0.001), 0.99999999793884638181, 1e-15);
}

TEST(BKappa, SaturatedTailKeepsRelativePrecision) {
  // The naive tanh difference is exactly zero here.
  EXPECT_EQ(0.5 * (std::tanh((5.0 + 0.5) / 0.1) - std::tanh((5.0 - 0.5) / 0.1)), 0.0);
  const double v = b_kappa(5.0, 0.5, 0.1);
  EXPECT_NEAR(v / 8.194012607096798323e-40, 1.0, 1e-12);
  const double w = b_kappa(-7.25, 0.5, 0.05);
  EXPECT_NEAR(w / 5.5016110817405392271e-118, 1.0, 1e-12);
}

TEST(BKappa, MatchesExtendedPrecisionOracle) {
  oracle::Draw draw(11);
  for (int i = 0; i < 5000; ++i) {
    const double x = draw.uniform(-5, 5), y = draw.uniform(-3, 3), k = draw.log_uniform(0.05, 50);
    const double want = static_cast<double>(oracle::b_kappa(x, y, k));
    if (std::abs(want) < 1e-12) continue;  // oracle loses digits in the tail
    EXPECT_NEAR(b_kappa(x, y, k), want, 1e-14 * std::max(1.0, std::abs(want))) << x << " " << y << " " << k;
  }
}

TEST(BKappa, SymmetryAndBounds) {
  oracle::Draw draw(3);
  for (int i = 0; i < 2000; ++i) {
    const double x = draw.uniform(-20, 20), y = draw.uniform(0, 10), k = draw.log_uniform(1e-3, 1e3);
    const double v = b_kappa(x, y, k);
    EXPECT_EQ(v, b_kappa(-x, y, k));
    EXPECT_EQ(-v, b_kappa(x, -y, k));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(BKappa, ConvergesToBAsKappaVanishes) {
  EXPECT_NEAR(b_kappa(0.0, 0.5, 1e-4), 1.0, 1e-15);
  EXPECT_NEAR(b_kappa(1.0, 0.5, 1e-4), 0.0, 1e-15);
  EXPECT_NEAR(b_kappa(0.5, 0.5, 1e-4), 0.5, 1e-15);
}

TEST(BKappa, LargeKappaLimitIsYOverKappa) {
  for (double k : {1e4, 1e6, 1e8}) {
    EXPECT_NEAR(b_kappa(0.7, 0.5, k) * k / 0.5, 1.0, 1e-6);
  }
}

TEST(BKappa, ScalingIdentityIsHomogeneous) {
  oracle::Draw draw(5);
  for (int i = 0; i < 5000; ++i) {
    const double x = draw.uniform(-10, 10), y = draw.uniform(-5, 5), k = draw.log_uniform(1e-2, 1e2);
    const double a = draw.log_uniform(0.1, 10);
    const double l = b_kappa(a * x, a * y, a * k), r = b_kappa(x, y, k);
    EXPECT_LE(std::abs(l - r), 1e-13 * std::max(1.0, std::abs(l)));
  }
}

TEST(BKappa, TelescopingRowSum) {
  oracle::Draw draw(7);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = static_cast<std::size_t>(draw.integer(1, 64));
    const double t = draw.uniform(-10, static_cast<double>(n) + 10), k = draw.log_uniform(1e-3, 1e3);
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += b_kappa(t - static_cast<double>(j), 0.5, k);
    const double closed = b_kappa_row_sum(t, n, k);
    EXPECT_LE(std::abs(sum - closed), 1e-12 * std::max(1.0, closed));
  }
}

TEST(BKappa, RejectsBadKappa) {
  EXPECT_THROW(b_kappa(0.0, 0.5, 0.0), std::domain_error);
  EXPECT_THROW(b_kappa(0.0, 0.5, -1.0), std::domain_error);
  EXPECT_THROW(b_kappa(0.0, 0.5, std::numeric_limits<double>::infinity()), std::domain_error);
  EXPECT_THROW(b_kappa(0.0, 0.5, std::nan("")), std::domain_error);
  EXPECT_THROW(b_kappa_row_sum(0.0, 0, 1.0), std::invalid_argument);
}

TEST(LogBKappa, AgreesWhereRepresentable) {
  for (double x : {-3.0, -0.2, 0.0, 0.4, 0.6, 2.0, 5.0}) {
    EXPECT_NEAR(log_b_kappa(x, 0.5, 0.1), std::log(b_kappa(x, 0.5, 0.1)), 1e-10);
  }
  EXPECT_TRUE(std::isinf(log_b_kappa(0.0, -0.5, 0.1)));
}

TEST(LogBKappa, FiniteFarOutside) {
  // b_kappa underflows to zero; its log is about -2 * (x - y) / k.
  const double l = log_b_kappa(100.0, 0.5, 1e-3);
  EXPECT_TRUE(std::isfinite(l));
  EXPECT_EQ(b_kappa(100.0, 0.5, 1e-3), 0.0);
  EXPECT_NEAR(l / (-2.0 * 99.5 / 1e-3), 1.0, 1e-5);
}

TEST(PiKappa, PeriodicAndMatchesOracle) {
  for (double x : {-2.3, 0.0, 0.4, 1.7, 3.1}) {
    const double v = pi_kappa(x, 0.5, 0.2, 5.0);
    EXPECT_NEAR(v, pi_kappa(x + 5.0, 0.5, 0.2, 5.0), 1e-14);
    EXPECT_NEAR(v, static_cast<double>(oracle::pi_kappa(x, 0.5, 0.2, 5.0)), 1e-14);
  }
  EXPECT_THROW(pi_kappa(0.0, 0.5, 0.1, 0.0), std::domain_error);
}

TEST(BKappa, FloatInstantiation) {
  EXPECT_NEAR(b_kappa(0.3f, 0.5f, 0.2f), 0.8804617f, 1e-6f);
  EXPECT_NEAR(static_cast<double>(b_kappa(0.3L, 0.5L, 0.2L)), 0.88046172784741596577, 1e-16);
}
