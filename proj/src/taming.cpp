#include "holmc/taming.hpp"

#include <cmath>
#include <stdexcept>

namespace holmc {

double taming_factor(const TamingContext& ctx) {
  if (!(ctx.lambda > 0)) throw std::invalid_argument("taming requires lambda > 0");
  if (ctx.norm_theta < 0) throw std::invalid_argument("norm must be nonnegative");
  if (ctx.norm_theta == 0.0) return 1.0;
  // log form keeps lambda^{3/2}|theta|^{3r} from overflowing for large |theta|
  const double r = ctx.rho + ctx.q - 1.0;
  const double lx = 1.5 * std::log(ctx.lambda) + 3.0 * r * std::log(ctx.norm_theta);
  const double log1p_term = lx > 30.0 ? lx + std::log1p(std::exp(-lx)) : std::log1p(std::exp(lx));
  return std::exp(log1p_term / 3.0);
}

double taming_factor(const PotentialModel& model, const Vector& theta, double lambda) {
  if (model.regime() == Regime::linear) return 1.0;
  return taming_factor(TamingContext{lambda, model.rho(), model.q(), theta.norm()});
}

}  // namespace holmc
