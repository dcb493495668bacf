#include <gtest/gtest.h>

#include <cmath>

#include "holmc/taming.hpp"

using namespace holmc;

TEST(Taming, IdentityAtOrigin) {
  for (double l : {1e-6, 0.1, 1.0, 10.0}) EXPECT_EQ(taming_factor({l, 2, 1.0, 0.0}), 1.0);
}

TEST(Taming, UnitSubstitution) { EXPECT_NEAR(taming_factor({1.0, 2, 1.0, 1.0}), std::cbrt(2.0), 1e-15); }

TEST(Taming, LargeNormAsymptote) {
  const double g = taming_factor({0.01, 2, 1.0, 100.0});
  EXPECT_NEAR(g, std::cbrt(1 + std::pow(0.01, 1.5) * 1e12), 1e-9 * g);
  EXPECT_NEAR(g / 1000.0, 1.0, 1e-3);
}

TEST(Taming, NoOverflowForHugeNorm) {
  const double g = taming_factor({0.5, 2, 1.0, 1e120});
  EXPECT_TRUE(std::isfinite(g));
  EXPECT_NEAR(std::log(g), 0.5 * std::log(0.5) + 2 * std::log(1e120), 1e-9);
}

TEST(Taming, MonotoneInNorm) {
  double prev = 0;
  for (double r = 0; r <= 1000; r += 0.5) {
    const double g = taming_factor({0.05, 2, 1.0, r});
    EXPECT_GE(g, prev);
    EXPECT_GE(g, 1.0);
    prev = g;
  }
}

TEST(Taming, SmallStepConsistency) {
  double prev = INFINITY;
  for (double l : {1e-2, 1e-4, 1e-6}) {
    const double dev = taming_factor({l, 2, 1.0, 3.0}) - 1.0;
    EXPECT_LT(dev, prev);
    prev = dev;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(Taming, TamedGradientBound) {
  // double-well with K_h = 2
  auto m = make_double_well(1);
  const double lambda = 0.01;
  for (double r = 0; r <= 1000; r += 0.25) {
    Vector th(1);
    th << r;
    const double hl = std::abs(m->gradient(th)[0]) / taming_factor(*m, th, lambda);
    const double bound = std::cbrt(4.0) / std::sqrt(lambda) * 2 * std::pow(1 + r, 3) / (1 + r * r);
    ASSERT_LE(hl, bound) << r;
  }
}

TEST(Taming, LinearModelsBypass) {
  auto g = make_gaussian(3);
  EXPECT_EQ(taming_factor(*g, Vector::Constant(3, 1e6), 0.5), 1.0);
}
