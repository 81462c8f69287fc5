#pragma once

// Evolution of the heat equation along x: Fourier transform in t, the
// per-frequency 2x2 system and its diagonalisation, the resolvent bound of
// mu^{1/2} d_t, and its square root via subordination.

#include <array>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sglab/operator_core.hpp"
#include "sglab/report.hpp"

namespace sglab {

/// omega_j = (j - m/2) d_omega, j = 0..m-1, m even.
class FrequencyGrid {
 public:
  FrequencyGrid(Eigen::Index m, double d_omega);
  /// The grid dual to m samples spaced dt: d_omega = 2 pi / (m dt).
  static FrequencyGrid for_samples(Eigen::Index m, double dt);

  Eigen::Index size() const { return m_; }
  double spacing() const { return d_omega_; }
  double omega(Eigen::Index j) const { return static_cast<double>(j - m_ / 2) * d_omega_; }
  double max_abs() const { return static_cast<double>(m_ / 2) * d_omega_; }
  Eigen::Index zero_index() const { return m_ / 2; }
  Eigen::VectorXd omegas() const;

 private:
  Eigen::Index m_;
  double d_omega_;
};

/// Uniform samples f(t0 + k dt), k = 0..m-1, treated as one period.
struct SampledTrace {
  double t0 = 0.0;
  double dt = 1.0;
  Eigen::VectorXcd values;

  Eigen::Index size() const { return values.size(); }
  double time(Eigen::Index k) const { return t0 + static_cast<double>(k) * dt; }
  /// Discrete L2 norm sqrt(dt sum |f_k|^2).
  double l2_norm() const;
};

struct SpectralField {
  FrequencyGrid grid;
  Eigen::VectorXcd coeffs;
};

/// f~(omega_j) = sum_k f(t_k) e^{-i omega_j t_k} dt.
SpectralField fourier_forward(const SampledTrace& trace);
/// f(t_k) = (1/2pi) sum_j f~(omega_j) e^{i omega_j t_k} d_omega.
SampledTrace fourier_inverse(const SpectralField& field, double t0, double dt);

/// Value and derivative traces at x = -L.
struct XBoundaryData {
  SampledTrace v0;
  SampledTrace v1;
};

struct XDirectionSolution {
  double x = 0.0;
  SpectralField value;
  SpectralField derivative;
  SampledTrace trace;
  SampledTrace derivative_trace;
};

/// u~(omega, x) = v0~ cosh(r (x+L)) + v1~ sinh(r (x+L)) / r, r = (i mu^{1/2} omega)^{1/2}
/// principal, written as the two exponential branches; v0~ + v1~ (x+L) at omega = 0.
std::vector<XDirectionSolution> solve_x_direction(const XBoundaryData& boundary, double mu,
                                                  double half_width,
                                                  std::span<const double> x_targets);

/// +-(i mu^{1/2} omega)^{1/2}, principal root.
std::pair<SpectralField, SpectralField> diagonalized_symbols(double mu, const FrequencyGrid& grid);

/// Per-frequency symbol of the first-order system operator [[0, I], [mu^{1/2} d_t, 0]].
DenseOperator operator_matrix_symbol(double mu, double omega);

struct ResolventProbe {
  Complex lambda;
  double mu = 1.0;
};

struct ResolventSupremum {
  /// max_j |lambda - i mu^{1/2} omega_j|^{-n}, n = 1..4.
  std::array<double, 4> powers{};
  /// (Re lambda)^{-n}, n = 1..4.
  std::array<double, 4> bounds{};
  double attained_at = 0.0;
};

ResolventSupremum resolvent_supremum(const ResolventProbe& probe, const FrequencyGrid& grid);
VerificationReport resolvent_bound_check(const ResolventProbe& probe, const FrequencyGrid& grid);

/// u(t) = mu^{-1/2} int_t^inf exp(-lambda (s-t) / mu^{1/2}) f(s) ds for the
/// periodic extension of f, integrating its piecewise-linear interpolant exactly.
SampledTrace resolvent_apply(const ResolventProbe& probe, const SampledTrace& f);

/// max_k |(lambda - mu^{1/2} D_t) u - f| with periodic central D_t.
double resolvent_equation_residual(const ResolventProbe& probe, const SampledTrace& u,
                                   const SampledTrace& f);

/// x / (2 sqrt(pi)) lambda^{-3/2} exp(-x^2 / (4 lambda)), zero for lambda <= 0.
double subordination_density(double x, double lambda);

/// int_0^inf e^{-lambda k} density_x(lambda) d lambda for Re k >= 0, by
/// quadrature after lambda = x^2/(4 s^2), along arg(lambda) = -arg(k)/2.
Complex subordinator_laplace(double x, Complex k);

VerificationReport subordination_density_check(double x, std::span<const double> ks,
                                               double tolerance = 1e-8);

/// Closed-form multiplier exp(-x (-i mu^{1/2} omega)^{1/2}).
Complex fractional_multiplier(double x, double mu, double omega);
/// The same multiplier by quadrature of int_0^inf e^{i mu^{1/2} omega lambda} d gamma_x.
Complex subordination_multiplier(double x, double mu, double omega);
Eigen::VectorXcd subordination_multipliers(double x, double mu, const FrequencyGrid& grid);

/// W(x) w0 = int_0^inf w0(. + mu^{1/2} lambda) d gamma_x(lambda); shifts are
/// band-limited (Fourier phase) on the periodic window.
SampledTrace subordinated_semigroup_apply(double x, double mu, const SampledTrace& w0);

}  // namespace sglab
