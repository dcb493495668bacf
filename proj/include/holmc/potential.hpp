#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>

#include "holmc/dataset.hpp"

namespace holmc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class Regime { superlinear, linear };

std::string to_string(Regime r);

// Target potential U with gradient h, Hessian action H v and vector Laplacian Y.
// Implementations are immutable after construction and safe to share across threads.
class PotentialModel {
 public:
  virtual ~PotentialModel() = default;

  virtual std::string name() const = 0;
  virtual int dimension() const = 0;
  virtual int rho() const { return 2; }
  virtual double q() const { return 1.0; }
  virtual Regime regime() const = 0;

  virtual double value(const Vector& theta) const = 0;
  virtual Vector gradient(const Vector& theta) const = 0;
  virtual Vector hvp(const Vector& theta, const Vector& v) const = 0;
  virtual Vector upsilon(const Vector& theta) const = 0;

  // Dense Hessian assembled from hvp; debug path limited to small d.
  Matrix dense_hessian(const Vector& theta) const;

 protected:
  void check_dim(const Vector& theta) const;
};

using ModelPtr = std::shared_ptr<const PotentialModel>;

ModelPtr make_gaussian(int d);
ModelPtr make_gaussian_mixture(const Vector& a_hat);
// equal components with |a_hat| = norm
Vector mixture_center(int d, double norm = 2.0);
ModelPtr make_double_well(int d);
ModelPtr make_logistic(LogisticDataset data);

// Numerically stable helpers shared with the harness.
double sigmoid(double t);
double softplus(double t);

}  // namespace holmc
