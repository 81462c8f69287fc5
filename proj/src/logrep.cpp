#include "sglab/logrep.hpp"

#include <algorithm>
#include <cmath>

namespace sglab {

KappaShift::KappaShift(Complex kappa) : kappa_(kappa) {
  if (!std::isfinite(kappa.real()) || !std::isfinite(kappa.imag()))
    throw DomainError("KappaShift", "kappa", "kappa must be finite");
}

double default_step(double t) { return 1e-4 * std::max(1.0, std::abs(t)); }

namespace {

DenseOperator shifted(const EvolutionFamily& family, double t, double s, const KappaShift& k) {
  DenseOperator m = family(t, s);
  m.diagonal().array() += k.value();
  return m;
}

bool admissible_at(const EvolutionFamily& family, double t, double s, const KappaShift& k,
                   double tol) {
  const auto spectrum = spectrum_of(shifted(family, t, s, k));
  return std::all_of(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                     [tol](Complex z) { return distance_to_branch_cut(z) > tol; });
}

struct Derivative {
  DenseOperator value;
  double step;
};

/// Central difference of x -> Log(U(x, xi) + kappa I) at x.
Derivative log_derivative(const EvolutionFamily& family, const CoordinatePoint& x,
                          const CoordinatePoint& xi, const KappaShift& k,
                          const LogRepOptions& options, const char* op) {
  if (x.label != family.label() || xi.label != family.label())
    throw DomainError(op, "label", "coordinate label does not match family direction");
  const double h = options.step.value_or(default_step(x.value));
  if (!(h > 0.0)) throw DomainError(op, "h", "step must be positive");
  if (!family.contains(x.value + h) || !family.contains(x.value - h))
    throw DomainError(op, "h", "t +- h leaves [-T, T]");
  if (!family.contains(xi.value)) throw DomainError(op, "s", "outside [-T, T]");

  for (double point : {x.value - h, x.value, x.value + h})
    if (!admissible_at(family, point, xi.value, k, options.branch_tolerance))
      throw BranchCutError(op, "kappa",
                           k.is_zero() ? "U(t,s) touches the branch cut; choose kappa != 0"
                                       : "spectrum of U(t,s) + kappa I touches the branch cut");

  auto central = [&](double step) -> DenseOperator {
    const DenseOperator ahead = mat_log_principal(shifted(family, x.value + step, xi.value, k),
                                                  options.branch_tolerance);
    const DenseOperator behind = mat_log_principal(shifted(family, x.value - step, xi.value, k),
                                                   options.branch_tolerance);
    return (ahead - behind) / (2.0 * step);
  };

  if (!options.richardson) return {central(h), h};
  return {(4.0 * central(0.5 * h) - central(h)) / 3.0, h};
}

}  // namespace

bool kappa_admissible(const EvolutionFamily& family, const CoordinatePoint& t,
                      const CoordinatePoint& s, const KappaShift& kappa,
                      double branch_tolerance) {
  return admissible_at(family, t.value, s.value, kappa, branch_tolerance);
}

LogRepResult log_representation(const EvolutionFamily& family, const CoordinatePoint& t,
                                const CoordinatePoint& s, const KappaShift& kappa,
                                const LogRepOptions& options) {
  const auto d = log_derivative(family, t, s, kappa, options, "log_representation");
  const auto n = family.dim();
  const DenseOperator prefactor =
      DenseOperator::Identity(n, n) + kappa.value() * family(s.value, t.value);

  LogRepResult result{prefactor * d.value, kappa, t, s, d.step, std::nullopt};
  result.residual_vs_true = max_abs(result.generator_estimate - family.generator_at(t.value));
  return result;
}

DenseOperator normalized_generator(const EvolutionFamily& family, const CoordinatePoint& x,
                                   const CoordinatePoint& xi, const KappaShift& kappa,
                                   const LogRepOptions& options) {
  const auto d = log_derivative(family, x, xi, kappa, options, "normalized_generator");
  const auto n = family.dim();
  const DenseOperator prefactor =
      kappa.value() * family(xi.value, x.value) + DenseOperator::Identity(n, n);
  return prefactor * d.value;
}

DenseOperator generator_times_evolution(const EvolutionFamily& family, const CoordinatePoint& x,
                                        const CoordinatePoint& xi, const KappaShift& kappa,
                                        const LogRepOptions& options) {
  const auto d = log_derivative(family, x, xi, kappa, options, "generator_times_evolution");
  DenseOperator prefactor = family(x.value, xi.value);
  prefactor.diagonal().array() += kappa.value();
  return prefactor * d.value;
}

DenseOperator generalized_cole_hopf(const EvolutionFamily& family, const CoordinatePoint& x,
                                    const CoordinatePoint& xi, const KappaShift& kappa, double mu,
                                    const LogRepOptions& options) {
  if (!(mu > 0.0)) throw DomainError("generalized_cole_hopf", "mu", "mu must be positive");
  const double scale = -2.0 / std::sqrt(mu);
  return scale * normalized_generator(family, x, xi, kappa, options);
}

}  // namespace sglab
