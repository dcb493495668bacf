#pragma once

#include "holmc/potential.hpp"

namespace holmc {

struct TamingContext {
  double lambda;
  int rho = 2;
  double q = 1.0;
  double norm_theta = 0.0;
};

// g = (1 + lambda^{3/2} |theta|^{3(rho+q-1)})^{1/3}; tamed f = f / g.
double taming_factor(const TamingContext& ctx);

// Factor for a model at theta: 1 for linear-regime models.
double taming_factor(const PotentialModel& model, const Vector& theta, double lambda);

}  // namespace holmc
