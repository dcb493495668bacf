#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "holmc/metrics.hpp"
#include "holmc/quadrature.hpp"

using namespace holmc;

namespace {

double mass(const Marginal1D& m) {
  const auto [lo, hi] = m.support();
  return integrate([&](double x) { return m.pdf(x); }, lo - 4, hi + 4, 1e-12);
}

std::vector<double> quantile_points(const Marginal1D& m, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = m.quantile((i + 0.5) / n);
  return xs;
}

}  // namespace

TEST(Metrics, MarginalsNormalise) {
  EXPECT_NEAR(mass(*gaussian_marginal()), 1.0, 1e-10);
  EXPECT_NEAR(mass(*mixture_marginal(0.2)), 1.0, 1e-10);
  EXPECT_NEAR(mass(*mixture_marginal(2.0)), 1.0, 1e-10);
  for (int d : {2, 5, 100}) EXPECT_NEAR(mass(*doublewell_marginal(d)), 1.0, 1e-6) << d;
}

TEST(Metrics, DoubleWellSymmetricPositive) {
  auto m = doublewell_marginal(100);
  for (double x = -4; x <= 4; x += 0.125) {
    EXPECT_GT(m->pdf(x), 0.0);
    EXPECT_NEAR(m->pdf(x), m->pdf(-x), 1e-12 * m->pdf(x));
    EXPECT_NEAR(m->cdf(x) + m->cdf(-x), 1.0, 1e-8);
  }
  EXPECT_NEAR(m->cdf(0.0), 0.5, 1e-10);
}

TEST(Metrics, DoubleWellTwoDimensionalClosedForm) {
  // d = 2: marginal of exp(-(|x|^2)^2/4 + |x|^2/2) on R^2, integrated numerically in one variable
  auto m = doublewell_marginal(2);
  auto joint = [](double x, double y) {
    const double s = x * x + y * y;
    return std::exp(-s * s / 4 + s / 2);
  };
  auto row = [&](double x) { return integrate([&](double y) { return joint(x, y); }, -6, 6, 1e-12); };
  const double z = integrate(row, -6, 6, 1e-10);
  for (double x : {0.0, 0.4, 1.1, 2.3}) EXPECT_NEAR(m->pdf(x), row(x) / z, 1e-7);
}

TEST(Metrics, MixtureBimodalityAndCdf) {
  auto m = mixture_marginal(2.0);
  EXPECT_GT(m->pdf(2.0), m->pdf(0.0));
  EXPECT_NEAR(m->cdf(0.0), 0.5, 1e-15);
  EXPECT_NEAR(mixture_marginal(0.0)->pdf(0.3), gaussian_marginal()->pdf(0.3), 1e-15);
}

TEST(Metrics, MarginalForMixtureUsesCentre) {
  auto m = marginal_for("mixture", 100);
  EXPECT_NEAR(m->pdf(0.2), mixture_marginal(0.2)->pdf(0.2), 1e-14);
  EXPECT_THROW(marginal_for("logistic", 2), std::invalid_argument);
  EXPECT_THROW(doublewell_marginal(1), std::invalid_argument);
}

TEST(Metrics, ExactQuantilesAreNearlyZeroDistance) {
  const int n = 10000;
  for (auto m : {gaussian_marginal(), mixture_marginal(2.0), doublewell_marginal(100)}) {
    const auto [lo, hi] = m->support();
    EXPECT_LT(w1_vs_marginal(quantile_points(*m, n), *m), (hi - lo) / (2.0 * n) * 1.01);
  }
}

TEST(Metrics, ShiftedSampleDistance) {
  auto m = gaussian_marginal();
  auto xs = quantile_points(*m, 4000);
  for (auto& x : xs) x += 0.3;
  EXPECT_NEAR(w1_vs_marginal(xs, *m), 0.3, 2e-3);
}

TEST(Metrics, SingleAtomDistance) {
  // W1(delta_0, N(0,1)) = E|X| = sqrt(2/pi)
  EXPECT_NEAR(w1_vs_marginal({0.0}, *gaussian_marginal()), std::sqrt(2 / M_PI), 1e-6);
}

TEST(Metrics, SamplesOutsideSupportCounted) {
  EXPECT_NEAR(w1_vs_marginal({100.0}, *gaussian_marginal()), 100.0, 1e-6);
  EXPECT_THROW(w1_vs_marginal({}, *gaussian_marginal()), std::invalid_argument);
  EXPECT_THROW(w1_vs_marginal({NAN}, *gaussian_marginal()), std::invalid_argument);
}

TEST(Metrics, EvaluatorMatchesOneShot) {
  auto m = doublewell_marginal(10);
  std::mt19937_64 gen(4);
  std::normal_distribution<double> nd(0, 0.7);
  std::vector<double> xs(200);
  for (auto& x : xs) x = nd(gen);
  W1Evaluator ev(m, 8192);
  EXPECT_NEAR(ev(xs), w1_vs_marginal(xs, *m), 1e-6);
}

TEST(Metrics, EmpiricalTransport) {
  EXPECT_DOUBLE_EQ(w1_empirical({3, 1, 2}, {2, 3, 4}), 1.0);
  EXPECT_THROW(w1_empirical({1}, {1, 2}), std::invalid_argument);
}

TEST(Metrics, MseAndHistogram) {
  EXPECT_DOUBLE_EQ(mse({Vector::Constant(2, 1.0), Vector::Constant(2, 3.0)}, Vector::Constant(2, 2.0)), 2.0);
  EXPECT_THROW(mse({}, Vector::Zero(2)), std::invalid_argument);
  auto m = gaussian_marginal();
  EXPECT_LT(histogram_tv(quantile_points(*m, 20000), *m, 30), 0.01);
  EXPECT_GT(histogram_tv(std::vector<double>(100, 5.0), *m, 30), 0.9);
}

TEST(Metrics, DensityGridCsv) {
  const auto path = (std::filesystem::temp_directory_path() / "holmc_grid.csv").string();
  write_density_grid_csv(*mixture_marginal(0.2), path, 11);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,pdf");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    const double x = std::stod(line.substr(0, comma)), p = std::stod(line.substr(comma + 1));
    EXPECT_NEAR(p, mixture_marginal(0.2)->pdf(x), 1e-15);
    ++rows;
  }
  EXPECT_EQ(rows, 11);
  std::filesystem::remove(path);
}
