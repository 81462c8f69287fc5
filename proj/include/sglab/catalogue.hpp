#pragma once

#include <string>
#include <string_view>

namespace sglab {

/// Scalar functions of one coordinate, named as "kind:c" in configuration:
///   const:c -> c,  linear:c -> c*t,  sin:c -> c*sin(t),  poly:c -> c*t^2
struct CatalogueFunction {
  enum class Kind { Const, Linear, Sin, Poly };

  Kind kind = Kind::Const;
  double c = 0.0;

  double operator()(double t) const;
  /// Closed-form integral from a to b; used by tests as an oracle.
  double exact_integral(double a, double b) const;
  std::string label() const;

  static CatalogueFunction parse(std::string_view spec);
};

}  // namespace sglab
