#pragma once

// Logarithmic representation of the generator of an evolution family:
//
//   K(t) = (I + kappa U(s,t)) d/dt Log(U(t,s) + kappa I)
//
// with Log the principal branch and d/dt a finite difference in t.

#include <optional>

#include "sglab/evolution_family.hpp"

namespace sglab {

/// The shift kappa that keeps U + kappa I off the branch cut of Log.
/// Zero is accepted; whether a shift is usable is decided per point by
/// kappa_admissible.
class KappaShift {
 public:
  KappaShift() = default;
  explicit KappaShift(Complex kappa);

  Complex value() const { return kappa_; }
  bool is_zero() const { return kappa_ == Complex(0.0); }

 private:
  Complex kappa_{1.0, 0.0};
};

struct LogRepOptions {
  /// Difference step; defaults to 1e-4 * max(1, |t|).
  std::optional<double> step;
  /// Two-step Richardson extrapolation of the central difference.
  bool richardson = false;
  double branch_tolerance = kBranchTolerance;
};

struct LogRepResult {
  DenseOperator generator_estimate;
  KappaShift kappa;
  CoordinatePoint t;
  CoordinatePoint s;
  double fd_step = 0.0;
  /// Max-abs distance to the family's exact generator at t.
  std::optional<double> residual_vs_true;
};

double default_step(double t);

bool kappa_admissible(const EvolutionFamily& family, const CoordinatePoint& t,
                      const CoordinatePoint& s, const KappaShift& kappa,
                      double branch_tolerance = kBranchTolerance);

LogRepResult log_representation(const EvolutionFamily& family, const CoordinatePoint& t,
                                const CoordinatePoint& s, const KappaShift& kappa,
                                const LogRepOptions& options = {});

/// (kappa U(xi,x) + I) d/dx Log(U(x,xi) + kappa I).
DenseOperator normalized_generator(const EvolutionFamily& family, const CoordinatePoint& x,
                                   const CoordinatePoint& xi, const KappaShift& kappa,
                                   const LogRepOptions& options = {});

/// (kappa I + U(x,xi)) d/dx Log(U(x,xi) + kappa I), i.e. K(x) U(x,xi) for
/// commuting families.
DenseOperator generator_times_evolution(const EvolutionFamily& family, const CoordinatePoint& x,
                                        const CoordinatePoint& xi, const KappaShift& kappa,
                                        const LogRepOptions& options = {});

/// -2 mu^{-1/2} times normalized_generator.
DenseOperator generalized_cole_hopf(const EvolutionFamily& family, const CoordinatePoint& x,
                                    const CoordinatePoint& xi, const KappaShift& kappa, double mu,
                                    const LogRepOptions& options = {});

}  // namespace sglab
