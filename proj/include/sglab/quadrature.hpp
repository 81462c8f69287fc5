#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string_view>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sglab/error.hpp"

namespace sglab {

/// Adaptive Gauss-Kronrod (G7/K15) on [a, b]; either end may be infinite.
/// Throws QuadratureError unless the error estimate is within `abs_tol`.
/// Depth grows until the estimate is met: boost's own stopping rule is
/// relative, which over-refines integrals that are close to zero.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol, std::string_view op,
                 unsigned max_depth = 15) {
  if (a == b) return 0.0;
  for (unsigned depth = 0; depth <= max_depth; ++depth) {
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, depth, 1e-13, &error);
    if (!std::isfinite(value)) break;
    if (error <= abs_tol) return value;
  }
  throw QuadratureError(op, "integral", "adaptive quadrature did not reach tolerance");
}

template <class F>
std::complex<double> integrate_complex(F&& f, double a, double b, double abs_tol,
                                       std::string_view op) {
  const double re = integrate([&](double s) { return std::real(f(s)); }, a, b, abs_tol, op);
  const double im = integrate([&](double s) { return std::imag(f(s)); }, a, b, abs_tol, op);
  return {re, im};
}

}  // namespace sglab
