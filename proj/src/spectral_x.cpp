#include "sglab/spectral_x.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "sglab/quadrature.hpp"

namespace sglab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr double kOverflowLimit = 1e300;

std::string format_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << v;
  return os.str();
}

void require_positive(double v, const char* op, const char* param) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(op, param, "must be positive and finite");
}

void require_trace(const SampledTrace& f, const char* op) {
  if (f.size() < 2 || f.size() % 2 != 0)
    throw ShapeError(op, "trace", "sample count must be even and >= 2");
  require_positive(f.dt, op, "dt");
  if (!f.values.allFinite()) throw DomainError(op, "trace", "samples must be finite");
}

}  // namespace

FrequencyGrid::FrequencyGrid(Eigen::Index m, double d_omega) : m_(m), d_omega_(d_omega) {
  if (m < 2 || m % 2 != 0) throw ShapeError("FrequencyGrid", "m", "m must be even and >= 2");
  require_positive(d_omega, "FrequencyGrid", "d_omega");
}

FrequencyGrid FrequencyGrid::for_samples(Eigen::Index m, double dt) {
  require_positive(dt, "FrequencyGrid", "dt");
  return FrequencyGrid(m, 2.0 * kPi / (static_cast<double>(m) * dt));
}

Eigen::VectorXd FrequencyGrid::omegas() const {
  Eigen::VectorXd w(m_);
  for (Eigen::Index j = 0; j < m_; ++j) w(j) = omega(j);
  return w;
}

double SampledTrace::l2_norm() const { return std::sqrt(dt * values.squaredNorm()); }

SpectralField fourier_forward(const SampledTrace& trace) {
  require_trace(trace, "fourier_forward");
  const auto m = trace.size();
  const auto grid = FrequencyGrid::for_samples(m, trace.dt);

  std::vector<Complex> in(static_cast<std::size_t>(m)), out;
  for (Eigen::Index k = 0; k < m; ++k)
    in[static_cast<std::size_t>(k)] = (k % 2 == 0 ? 1.0 : -1.0) * trace.values(k);
  Eigen::FFT<double> fft;
  fft.fwd(out, in);

  SpectralField field{grid, Eigen::VectorXcd(m)};
  for (Eigen::Index j = 0; j < m; ++j)
    field.coeffs(j) = trace.dt * std::exp(-kI * grid.omega(j) * trace.t0) *
                      out[static_cast<std::size_t>(j)];
  return field;
}

SampledTrace fourier_inverse(const SpectralField& field, double t0, double dt) {
  require_positive(dt, "fourier_inverse", "dt");
  const auto m = field.grid.size();
  if (field.coeffs.size() != m)
    throw ShapeError("fourier_inverse", "coeffs", "coefficient count differs from grid");
  const double expected = 2.0 * kPi / (static_cast<double>(m) * dt);
  if (std::abs(field.grid.spacing() - expected) > 1e-12 * expected)
    throw ShapeError("fourier_inverse", "dt", "frequency spacing is not dual to dt");

  std::vector<Complex> in(static_cast<std::size_t>(m)), out;
  for (Eigen::Index j = 0; j < m; ++j)
    in[static_cast<std::size_t>(j)] = field.coeffs(j) * std::exp(kI * field.grid.omega(j) * t0);
  Eigen::FFT<double> fft;
  fft.inv(out, in);  // includes the 1/m

  SampledTrace trace{t0, dt, Eigen::VectorXcd(m)};
  for (Eigen::Index k = 0; k < m; ++k)
    trace.values(k) = (k % 2 == 0 ? 1.0 : -1.0) * out[static_cast<std::size_t>(k)] / dt;
  return trace;
}

std::vector<XDirectionSolution> solve_x_direction(const XBoundaryData& boundary, double mu,
                                                  double half_width,
                                                  std::span<const double> x_targets) {
  require_positive(mu, "solve_x_direction", "mu");
  require_positive(half_width, "solve_x_direction", "L");
  require_trace(boundary.v0, "solve_x_direction");
  require_trace(boundary.v1, "solve_x_direction");
  if (boundary.v0.size() != boundary.v1.size() || boundary.v0.dt != boundary.v1.dt ||
      boundary.v0.t0 != boundary.v1.t0)
    throw ShapeError("solve_x_direction", "v1", "boundary traces use different time grids");

  const auto v0 = fourier_forward(boundary.v0);
  const auto v1 = fourier_forward(boundary.v1);
  const auto& grid = v0.grid;
  const double root_mu = std::sqrt(mu);

  std::vector<XDirectionSolution> out;
  for (double x : x_targets) {
    if (!(x >= -half_width && x <= half_width))
      throw DomainError("solve_x_direction", "x", "target outside [-L, L]");
    const double xi = x + half_width;
    XDirectionSolution sol{x, {grid, Eigen::VectorXcd(grid.size())},
                           {grid, Eigen::VectorXcd(grid.size())}, {}, {}};
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
      const Complex a0 = v0.coeffs(j), a1 = v1.coeffs(j);
      if (j == grid.zero_index()) {
        sol.value.coeffs(j) = a0 + a1 * xi;
        sol.derivative.coeffs(j) = a1;
        continue;
      }
      const Complex r = std::sqrt(kI * root_mu * grid.omega(j));
      const Complex growing = 0.5 * (a0 + a1 / r);
      const Complex decaying = 0.5 * (a0 - a1 / r);
      const Complex up = std::exp(r * xi);
      const Complex down = std::exp(-r * xi);
      if (!(std::abs(up) < kOverflowLimit) || !(std::abs(down) < kOverflowLimit))
        throw OverflowError("solve_x_direction", "x", "exponential branch exceeds 1e300");
      sol.value.coeffs(j) = growing * up + decaying * down;
      sol.derivative.coeffs(j) = r * (growing * up - decaying * down);
    }
    sol.trace = fourier_inverse(sol.value, boundary.v0.t0, boundary.v0.dt);
    sol.derivative_trace = fourier_inverse(sol.derivative, boundary.v0.t0, boundary.v0.dt);
    out.push_back(std::move(sol));
  }
  return out;
}

std::pair<SpectralField, SpectralField> diagonalized_symbols(double mu, const FrequencyGrid& grid) {
  require_positive(mu, "diagonalized_symbols", "mu");
  SpectralField plus{grid, Eigen::VectorXcd(grid.size())};
  SpectralField minus{grid, Eigen::VectorXcd(grid.size())};
  const double root_mu = std::sqrt(mu);
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const Complex r = std::sqrt(kI * root_mu * grid.omega(j));
    plus.coeffs(j) = r;
    minus.coeffs(j) = -r;
  }
  return {plus, minus};
}

DenseOperator operator_matrix_symbol(double mu, double omega) {
  require_positive(mu, "operator_matrix_symbol", "mu");
  DenseOperator a(2, 2);
  a << 0.0, 1.0, kI * std::sqrt(mu) * omega, 0.0;
  return a;
}

namespace {

void require_probe(const ResolventProbe& p, const char* op) {
  if (!(p.lambda.real() > 0.0))
    throw PreconditionError(op, "lambda", "Re lambda must be positive");
  require_positive(p.mu, op, "mu");
}

}  // namespace

ResolventSupremum resolvent_supremum(const ResolventProbe& probe, const FrequencyGrid& grid) {
  require_probe(probe, "resolvent_bound_check");
  const double root_mu = std::sqrt(probe.mu);
  const double bound = 1.0 / probe.lambda.real();
  ResolventSupremum sup;
  double best = -1.0;
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double inv = 1.0 / std::abs(probe.lambda - kI * root_mu * grid.omega(j));
    if (inv > best) {
      best = inv;
      sup.attained_at = grid.omega(j);
    }
  }
  // Powers by repeated multiplication on both sides so that the comparison
  // inherits the exact monotonicity of rounded products.
  double p = 1.0, b = 1.0;
  for (std::size_t n = 0; n < 4; ++n) {
    p *= best;
    b *= bound;
    sup.powers[n] = p;
    sup.bounds[n] = b;
  }
  return sup;
}

VerificationReport resolvent_bound_check(const ResolventProbe& probe, const FrequencyGrid& grid) {
  const auto sup = resolvent_supremum(probe, grid);
  VerificationReport report;
  report.name = "resolvent_bound";
  report.at_most("sup", sup.powers[0], sup.bounds[0] + 1e-14);
  for (std::size_t n = 1; n < 4; ++n)
    report.at_most("power_" + std::to_string(n + 1), sup.powers[n], sup.bounds[n]);
  report.metric("attained_omega", sup.attained_at)
      .metric("lambda_re", probe.lambda.real())
      .metric("lambda_im", probe.lambda.imag());
  return report;
}

namespace {

/// int_0^1 e^{-z s} ds and int_0^1 s e^{-z s} ds.
std::pair<Complex, Complex> exponential_moments(Complex z) {
  if (std::abs(z) < 0.5) {
    Complex s0 = 0.0, s1 = 0.0, term = 1.0;  // term = (-z)^n / n!
    for (int n = 0; n < 30; ++n) {
      s0 += term / static_cast<double>(n + 1);
      s1 += term / static_cast<double>(n + 2);
      term *= -z / static_cast<double>(n + 1);
    }
    return {s0, s1};
  }
  const Complex e = std::exp(-z);
  return {(1.0 - e) / z, (1.0 - e - z * e) / (z * z)};
}

}  // namespace

SampledTrace resolvent_apply(const ResolventProbe& probe, const SampledTrace& f) {
  require_probe(probe, "resolvent_apply");
  require_trace(f, "resolvent_apply");
  const auto m = f.size();
  const double root_mu = std::sqrt(probe.mu);
  const Complex c = probe.lambda / root_mu;
  const Complex z = c * f.dt;
  const auto [s0, s1] = exponential_moments(z);
  const Complex alpha = f.dt * (s0 - s1);
  const Complex beta = f.dt * s1;
  const Complex decay = std::exp(-z);

  // g_k = integral over [t_k, t_{k+1}] of the interpolant against e^{-c(s - t_k)}.
  Eigen::VectorXcd g(m);
  for (Eigen::Index k = 0; k < m; ++k) g(k) = alpha * f.values(k) + beta * f.values((k + 1) % m);

  const Complex period_decay = std::pow(decay, static_cast<double>(m));
  if (std::abs(1.0 - period_decay) < 1e-12)
    throw QuadratureError("resolvent_apply", "lambda",
                          "tail does not decay over the sample window");
  Complex head = 0.0, weight = 1.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    head += weight * g(k);
    weight *= decay;
  }
  head /= (1.0 - period_decay);

  SampledTrace u{f.t0, f.dt, Eigen::VectorXcd(m)};
  Complex next = head;  // tail integral from t_m == t_0 (periodic)
  for (Eigen::Index k = m - 1; k >= 0; --k) {
    next = g(k) + decay * next;
    u.values(k) = next;
  }
  u.values /= root_mu;
  return u;
}

double resolvent_equation_residual(const ResolventProbe& probe, const SampledTrace& u,
                                   const SampledTrace& f) {
  if (u.size() != f.size()) throw ShapeError("resolvent_apply", "u", "length mismatch");
  const auto m = u.size();
  const double root_mu = std::sqrt(probe.mu);
  double worst = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const Complex du = (u.values((k + 1) % m) - u.values((k + m - 1) % m)) / (2.0 * u.dt);
    worst = std::max(worst, std::abs(probe.lambda * u.values(k) - root_mu * du - f.values(k)));
  }
  return worst;
}

double subordination_density(double x, double lambda) {
  if (!(lambda > 0.0)) return 0.0;
  return x / (2.0 * std::sqrt(kPi)) * std::pow(lambda, -1.5) * std::exp(-x * x / (4.0 * lambda));
}

Complex subordinator_laplace(double x, Complex k) {
  require_positive(x, "subordinator_laplace", "x");
  if (k.real() < 0.0) throw DomainError("subordinator_laplace", "k", "Re k must be >= 0");
  const double theta = k == Complex(0.0) ? 0.0 : -0.5 * std::arg(k);
  const Complex ray = std::polar(1.0, theta);
  const Complex c2 = std::conj(ray);        // coefficient of s^2
  const Complex c0 = k * x * x * ray / 4.0;  // coefficient of 1/s^2
  auto integrand = [&](double s) -> Complex {
    if (s == 0.0) return 0.0;
    if (!std::isfinite(s)) return 0.0;
    return std::exp(-c2 * s * s - c0 / (s * s));
  };
  const Complex integral =
      integrate_complex(integrand, 0.0, std::numeric_limits<double>::infinity(), 1e-12,
                        "subordinator_laplace");
  return 2.0 / std::sqrt(kPi) * std::polar(1.0, -0.5 * theta) * integral;
}

VerificationReport subordination_density_check(double x, std::span<const double> ks,
                                               double tolerance) {
  require_positive(x, "subordination_density_check", "x");
  VerificationReport report;
  report.name = "subordination_laplace_x=" + format_number(x);
  report.at_most("mass", std::abs(subordinator_laplace(x, 0.0) - 1.0), tolerance);
  for (double k : ks) {
    require_positive(k, "subordination_density_check", "k");
    const Complex value = subordinator_laplace(x, k);
    report.at_most("laplace_k=" + format_number(k),
                   std::abs(value - std::exp(-x * std::sqrt(k))), tolerance);
  }
  return report;
}

Complex fractional_multiplier(double x, double mu, double omega) {
  return std::exp(-x * std::sqrt(Complex(0.0, -std::sqrt(mu) * omega)));
}

Complex subordination_multiplier(double x, double mu, double omega) {
  require_positive(mu, "subordination_multiplier", "mu");
  return subordinator_laplace(x, Complex(0.0, -std::sqrt(mu) * omega));
}

Eigen::VectorXcd subordination_multipliers(double x, double mu, const FrequencyGrid& grid) {
  const auto m = grid.size();
  Eigen::VectorXcd out(m);
  // The density is real, so the multiplier at -omega is the conjugate.
  for (Eigen::Index j = m / 2; j < m; ++j) {
    out(j) = subordination_multiplier(x, mu, grid.omega(j));
    if (j > m / 2) out(m - j) = std::conj(out(j));
  }
  out(0) = subordination_multiplier(x, mu, grid.omega(0));
  return out;
}

SampledTrace subordinated_semigroup_apply(double x, double mu, const SampledTrace& w0) {
  require_positive(x, "subordinated_semigroup_apply", "x");
  require_positive(mu, "subordinated_semigroup_apply", "mu");
  auto field = fourier_forward(w0);
  field.coeffs.array() *= subordination_multipliers(x, mu, field.grid).array();
  return fourier_inverse(field, w0.t0, w0.dt);
}

}  // namespace sglab
