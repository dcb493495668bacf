#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "holmc/potential.hpp"

namespace holmc {

enum class MarginalKind { gaussian, mixture, doublewell };

std::string to_string(MarginalKind k);

// First-coordinate marginal of a target distribution.
class Marginal1D {
 public:
  virtual ~Marginal1D() = default;
  virtual MarginalKind kind() const = 0;
  virtual double pdf(double x) const = 0;
  virtual double cdf(double x) const = 0;
  // truncation interval used for quadrature and W1 integration
  virtual std::pair<double, double> support() const = 0;
  virtual double quantile(double p) const;
};

using MarginalPtr = std::shared_ptr<const Marginal1D>;

MarginalPtr gaussian_marginal();
// equal-weight mixture of N(a1, 1) and N(-a1, 1)
MarginalPtr mixture_marginal(double a1);
MarginalPtr doublewell_marginal(int d);

// Marginal of the first coordinate for a built-in sampling target.
MarginalPtr marginal_for(const std::string& potential, int d);

// Exact 1-D optimal transport between equal-size samples.
double w1_empirical(std::vector<double> xs, std::vector<double> ys);

// Integral of |F_n - F| over the support hint widened to cover the samples.
double w1_vs_marginal(const std::vector<double>& xs, const Marginal1D& m);

// Reuses cdf values on a fixed grid across many evaluations against the same marginal.
class W1Evaluator {
 public:
  W1Evaluator(MarginalPtr m, std::size_t grid_points);
  double operator()(std::vector<double> xs) const;
  const Marginal1D& marginal() const { return *m_; }

 private:
  MarginalPtr m_;
  double lo_, hi_, h_;
  std::vector<double> F_;
};

// Mean over chains of |estimate - theta_star|^2.
double mse(const std::vector<Vector>& estimates, const Vector& theta_star);

// Total variation between a density-normalised histogram on the support and the marginal.
double histogram_tv(const std::vector<double>& xs, const Marginal1D& m, int bins);

// CSV with header "x,pdf" on a uniform grid over the support hint.
void write_density_grid_csv(const Marginal1D& m, const std::string& path, int points = 801);

}  // namespace holmc
