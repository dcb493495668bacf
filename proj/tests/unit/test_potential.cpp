#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "holmc/dataset.hpp"
#include "holmc/potential.hpp"
#include "test_helpers.hpp"

using namespace holmc;
using holmc::testing::fd_gradient;
using holmc::testing::fd_laplacian;
using holmc::testing::random_vector;

namespace {

std::vector<std::pair<std::string, ModelPtr>> all_models() {
  return {{"gaussian", make_gaussian(4)},
          {"mixture", make_gaussian_mixture(mixture_center(4))},
          {"doublewell", make_double_well(5)},
          {"logistic", holmc::testing::small_logistic(2, 10, 7)}};
}

double rel_err(const Vector& a, const Vector& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

}  // namespace

TEST(Potential, GradientMatchesFiniteDifferences) {
  std::mt19937_64 gen(11);
  for (const auto& [name, m] : all_models()) {
    for (int k = 0; k < 100; ++k) {
      const Vector th = random_vector(gen, m->dimension(), 1.0);
      EXPECT_LT(rel_err(m->gradient(th), fd_gradient(*m, th)), 1e-5) << name;
    }
  }
}

TEST(Potential, HessianActionIsSymmetricAndMatchesGradientDifferences) {
  std::mt19937_64 gen(12);
  for (const auto& [name, m] : all_models()) {
    for (int k = 0; k < 100; ++k) {
      const Vector th = random_vector(gen, m->dimension(), 1.0);
      const Vector u = random_vector(gen, m->dimension(), 1.0), v = random_vector(gen, m->dimension(), 1.0);
      const double a = u.dot(m->hvp(th, v)), b = v.dot(m->hvp(th, u));
      EXPECT_LE(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(a))) << name;
      const double eps = 1e-6;
      const Vector fd = (m->gradient(th + eps * v) - m->gradient(th - eps * v)) / (2 * eps);
      EXPECT_LT(rel_err(m->hvp(th, v), fd), 1e-5) << name;
    }
  }
}

TEST(Potential, UpsilonMatchesFiniteDifferenceLaplacian) {
  std::mt19937_64 gen(13);
  for (const auto& [name, m] : all_models()) {
    for (int k = 0; k < 100; ++k) {
      const Vector th = random_vector(gen, m->dimension(), 1.0);
      EXPECT_LT(rel_err(m->upsilon(th), fd_laplacian(*m, th)), 1e-4) << name;
    }
  }
}

TEST(Potential, DoubleWellClosedForms) {
  auto m = make_double_well(5);
  const Vector zero = Vector::Zero(5);
  EXPECT_EQ(m->gradient(zero).norm(), 0.0);
  EXPECT_EQ(m->upsilon(zero).norm(), 0.0);
  Vector th = Vector::Zero(5);
  th[0] = 2;
  EXPECT_DOUBLE_EQ(m->gradient(th)[0], 6.0);
  std::mt19937_64 gen(3);
  const Vector r = random_vector(gen, 5, 1.0);
  EXPECT_LT((m->upsilon(r) - 14.0 * r).norm(), 1e-12);
  EXPECT_EQ(m->regime(), Regime::superlinear);
}

TEST(Potential, GaussianAndMixtureBasics) {
  auto g = make_gaussian(3);
  Vector th(3);
  th << 1, -2, 0.5;
  EXPECT_LT((g->gradient(th) - th).norm(), 1e-15);
  EXPECT_EQ(g->upsilon(th).norm(), 0.0);
  EXPECT_EQ(g->regime(), Regime::linear);
  EXPECT_NEAR(mixture_center(100).norm(), 2.0, 1e-12);
  EXPECT_THROW(make_gaussian_mixture(Vector::Constant(2, 0.5)), std::invalid_argument);
}

TEST(Potential, LogisticSingleObservationAtOrigin) {
  LogisticDataset ds;
  ds.z = Eigen::MatrixXd::Ones(1, 3);
  ds.y = {1};
  auto m = make_logistic(ds);
  EXPECT_LT((m->gradient(Vector::Zero(3)) + 0.5 * Vector::Ones(3)).norm(), 1e-15);
  EXPECT_EQ(m->regime(), Regime::linear);
  LogisticDataset empty;
  empty.z.resize(0, 2);
  EXPECT_THROW(make_logistic(empty), std::invalid_argument);
}

TEST(Potential, LogisticStableForLargeArguments) {
  auto m = holmc::testing::small_logistic(2, 10, 5);
  const Vector th = Vector::Constant(2, 800.0);
  EXPECT_TRUE(std::isfinite(m->value(th)));
  EXPECT_TRUE(m->gradient(th).allFinite());
  EXPECT_TRUE(m->upsilon(th).allFinite());
  EXPECT_TRUE(m->hvp(th, Vector::Ones(2)).allFinite());
}

TEST(Potential, DoubleWellConvexityAtInfinity) {
  auto m = make_double_well(5);
  std::mt19937_64 gen(21);
  for (int k = 0; k < 10000; ++k) {
    const Vector a = random_vector(gen, 5, 2.0), b = random_vector(gen, 5, 2.0);
    const double lhs = (a - b).dot(m->gradient(a) - m->gradient(b));
    const double r2 = (a - b).squaredNorm();
    ASSERT_GE(lhs + 1e-9 * (1 + std::abs(lhs)), 0.5 * r2 * (a.squaredNorm() + b.squaredNorm()) - 2 * r2);
  }
}

TEST(Potential, MixtureLipschitz) {
  const Vector ahat = mixture_center(4);
  auto m = make_gaussian_mixture(ahat);
  const double L = 1 + 4 * ahat.squaredNorm();
  std::mt19937_64 gen(22);
  for (int k = 0; k < 10000; ++k) {
    const Vector a = random_vector(gen, 4, 3.0), b = random_vector(gen, 4, 3.0);
    ASSERT_LE((m->gradient(a) - m->gradient(b)).norm(), L * (a - b).norm() * (1 + 1e-12));
  }
}

TEST(Potential, LogisticDissipativity) {
  auto data = generate_logistic_data(2, 50, Vector::Ones(2), 9);
  double s = 0;
  for (int i = 0; i < data.count(); ++i) s += std::abs(1 - data.y[i]) * data.z.row(i).norm();
  const double b = s * s / 2 + data.count();
  auto m = make_logistic(data);
  std::mt19937_64 gen(23);
  for (int k = 0; k < 10000; ++k) {
    const Vector th = random_vector(gen, 2, 20.0);
    ASSERT_GE(th.dot(m->gradient(th)), th.squaredNorm() / 2 - b);
  }
}

TEST(Potential, DenseHessianDebugPath) {
  auto m = make_double_well(3);
  Vector th(3);
  th << 0.3, -1.0, 2.0;
  const Matrix H = m->dense_hessian(th);
  const Matrix expect = (th.squaredNorm() - 1) * Matrix::Identity(3, 3) + 2 * th * th.transpose();
  EXPECT_LT((H - expect).norm(), 1e-12);
  EXPECT_THROW(make_double_well(17)->dense_hessian(Vector::Zero(17)), std::invalid_argument);
}

TEST(Dataset, CsvRoundTrip) {
  auto data = generate_logistic_data(3, 20, Vector::Ones(3), 4);
  const auto path = (std::filesystem::temp_directory_path() / "holmc_ds_roundtrip.csv").string();
  write_dataset_csv(data, path);
  auto back = read_dataset_csv(path);
  EXPECT_EQ(back.y, data.y);
  EXPECT_EQ((back.z - data.z).norm(), 0.0);
  std::filesystem::remove(path);
}

TEST(Potential, DimensionMismatchRejected) {
  EXPECT_THROW(make_gaussian(3)->gradient(Vector::Zero(2)), std::invalid_argument);
}
