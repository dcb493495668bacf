#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace holmc {

// Adaptive 15/31-point Gauss-Kronrod on [a, b].
template <class F>
double integrate(F f, double a, double b, double rel_tol = 1e-10, unsigned max_depth = 20) {
  double err = 0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol, &err);
}

}  // namespace holmc
