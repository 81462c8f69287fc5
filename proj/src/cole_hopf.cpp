#include "sglab/cole_hopf.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Sparse>

#include "sglab/error.hpp"
#include "sglab/quadrature.hpp"

namespace sglab {

Grid1D::Grid1D(double half_width, Eigen::Index n) : half_width_(half_width), n_(n) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw DomainError("Grid1D", "L", "half-width must be positive and finite");
  if (n < 8) throw DomainError("Grid1D", "n", "grid needs at least 8 interior points");
}

Eigen::VectorXd Grid1D::nodes() const {
  Eigen::VectorXd x(n_);
  for (Eigen::Index k = 0; k < n_; ++k) x(k) = node(k);
  return x;
}

namespace {

void require_mu(double mu, const char* op) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError(op, "mu", "mu must be positive");
}

std::size_t step_count(double dt, double t_end, const char* op) {
  if (!(dt > 0.0)) throw DomainError(op, "dt", "time step must be positive");
  if (!(t_end > 0.0)) throw DomainError(op, "t_end", "final time must be positive");
  return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

}  // namespace

TimeSeries1D solve_heat_dirichlet(const RealField& u0, const HeatParams& params,
                                  const DirichletData& boundary) {
  require_mu(params.mu, "solve_heat_dirichlet");
  if (!u0.values.allFinite())
    throw DomainError("solve_heat_dirichlet", "u0", "initial data must be finite");
  const auto steps = step_count(params.dt, params.t_end, "solve_heat_dirichlet");
  const double dt = params.t_end / static_cast<double>(steps);
  const auto n = u0.grid.size();
  const double dx = u0.grid.dx();
  const double r = 0.5 * dt / (std::sqrt(params.mu) * dx * dx);

  using Sparse = Eigen::SparseMatrix<double>;
  std::vector<Eigen::Triplet<double>> implicit, explicit_part;
  for (Eigen::Index k = 0; k < n; ++k) {
    implicit.emplace_back(k, k, 1.0 + 2.0 * r);
    explicit_part.emplace_back(k, k, 1.0 - 2.0 * r);
    if (k > 0) {
      implicit.emplace_back(k, k - 1, -r);
      explicit_part.emplace_back(k, k - 1, r);
    }
    if (k + 1 < n) {
      implicit.emplace_back(k, k + 1, -r);
      explicit_part.emplace_back(k, k + 1, r);
    }
  }
  Sparse lhs(n, n), rhs(n, n);
  lhs.setFromTriplets(implicit.begin(), implicit.end());
  rhs.setFromTriplets(explicit_part.begin(), explicit_part.end());
  Eigen::SimplicialLDLT<Sparse> solver(lhs);
  if (solver.info() != Eigen::Success)
    throw StabilityError("solve_heat_dirichlet", "dt", "Crank-Nicolson factorisation failed");

  auto left = [&](double t) { return boundary.left ? boundary.left(t) : 0.0; };
  auto right = [&](double t) { return boundary.right ? boundary.right(t) : 0.0; };

  TimeSeries1D out{u0.grid, {0.0}, {u0.values}};
  Eigen::VectorXd u = u0.values;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t0 = static_cast<double>(i) * dt;
    const double t1 = static_cast<double>(i + 1) * dt;
    Eigen::VectorXd b = rhs * u;
    b(0) += r * (left(t0) + left(t1));
    b(n - 1) += r * (right(t0) + right(t1));
    u = solver.solve(b);
    if (!u.allFinite())
      throw StabilityError("solve_heat_dirichlet", "dt", "non-finite values in heat solution");
    out.times.push_back(t1);
    out.values.push_back(u);
  }
  return out;
}

Eigen::VectorXd first_derivative(const Eigen::VectorXd& f, double dx) {
  const auto n = f.size();
  if (n < 5) throw ShapeError("first_derivative", "f", "needs at least 5 samples");
  Eigen::VectorXd d(n);
  const double s = 1.0 / (12.0 * dx);
  d(0) = (-25 * f(0) + 48 * f(1) - 36 * f(2) + 16 * f(3) - 3 * f(4)) * s;
  d(1) = (-3 * f(0) - 10 * f(1) + 18 * f(2) - 6 * f(3) + f(4)) * s;
  for (Eigen::Index k = 2; k < n - 2; ++k)
    d(k) = (f(k - 2) - 8 * f(k - 1) + 8 * f(k + 1) - f(k + 2)) * s;
  d(n - 2) = (3 * f(n - 1) + 10 * f(n - 2) - 18 * f(n - 3) + 6 * f(n - 4) - f(n - 5)) * s;
  d(n - 1) = (25 * f(n - 1) - 48 * f(n - 2) + 36 * f(n - 3) - 16 * f(n - 4) + 3 * f(n - 5)) * s;
  return d;
}

Eigen::VectorXd second_derivative(const Eigen::VectorXd& f, double dx) {
  const auto n = f.size();
  if (n < 6) throw ShapeError("second_derivative", "f", "needs at least 6 samples");
  Eigen::VectorXd d(n);
  const double s = 1.0 / (12.0 * dx * dx);
  d(0) = (45 * f(0) - 154 * f(1) + 214 * f(2) - 156 * f(3) + 61 * f(4) - 10 * f(5)) * s;
  d(1) = (10 * f(0) - 15 * f(1) - 4 * f(2) + 14 * f(3) - 6 * f(4) + f(5)) * s;
  for (Eigen::Index k = 2; k < n - 2; ++k)
    d(k) = (-f(k - 2) + 16 * f(k - 1) - 30 * f(k) + 16 * f(k + 1) - f(k + 2)) * s;
  d(n - 2) = (10 * f(n - 1) - 15 * f(n - 2) - 4 * f(n - 3) + 14 * f(n - 4) - 6 * f(n - 5) +
              f(n - 6)) * s;
  d(n - 1) = (45 * f(n - 1) - 154 * f(n - 2) + 214 * f(n - 3) - 156 * f(n - 4) +
              61 * f(n - 5) - 10 * f(n - 6)) * s;
  return d;
}

RealField cole_hopf_transform(const RealField& u, double mu, TransformRoute route) {
  require_mu(mu, "cole_hopf_transform");
  if (u.values.size() != u.grid.size())
    throw ShapeError("cole_hopf_transform", "u", "values do not match grid");
  for (Eigen::Index k = 0; k < u.values.size(); ++k)
    if (!(u.values(k) > kPositivityFloor))
      throw PositivityError("cole_hopf_transform", "u",
                            "u must be strictly positive for log u to exist");
  const double scale = -2.0 / std::sqrt(mu);
  const double dx = u.grid.dx();
  RealField psi{u.grid, {}};
  if (route == TransformRoute::Ratio)
    psi.values = scale * first_derivative(u.values, dx).cwiseQuotient(u.values);
  else
    psi.values = scale * first_derivative(u.values.array().log().matrix(), dx);
  return psi;
}

TimeSeries1D cole_hopf_transform(const TimeSeries1D& u, double mu, TransformRoute route) {
  TimeSeries1D psi{u.grid, u.times, {}};
  psi.values.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    psi.values.push_back(cole_hopf_transform(u.slice(i), mu, route).values);
  return psi;
}

Eigen::MatrixXd burgers_residual_field(const TimeSeries1D& psi, double mu, double dt) {
  require_mu(mu, "burgers_residual");
  if (psi.size() < 3 || psi.values.size() != psi.times.size())
    throw ShapeError("burgers_residual", "psi", "need at least 3 time slices");
  if (!(dt > 0.0)) throw DomainError("burgers_residual", "dt", "dt must be positive");
  const auto n = psi.grid.size();
  for (const auto& v : psi.values)
    if (v.size() != n) throw ShapeError("burgers_residual", "psi", "slice does not match grid");
  for (std::size_t i = 1; i < psi.size(); ++i)
    if (std::abs(psi.times[i] - psi.times[i - 1] - dt) > 1e-9 * dt)
      throw ShapeError("burgers_residual", "dt", "slices are not uniformly spaced by dt");

  const double dx = psi.grid.dx();
  const double nu = 1.0 / std::sqrt(mu);
  const auto slices = static_cast<Eigen::Index>(psi.size());
  Eigen::MatrixXd r(slices - 2, n - 4);
  for (Eigen::Index i = 1; i + 1 < slices; ++i) {
    const auto& p = psi.values[i];
    const Eigen::VectorXd dt_psi = (psi.values[i + 1] - psi.values[i - 1]) / (2.0 * dt);
    const Eigen::VectorXd d1 = first_derivative(p, dx);
    const Eigen::VectorXd d2 = second_derivative(p, dx);
    for (Eigen::Index k = 2; k < n - 2; ++k)
      r(i - 1, k - 2) = dt_psi(k) + p(k) * d1(k) - nu * d2(k);
  }
  return r;
}

VerificationReport burgers_residual(const TimeSeries1D& psi, double mu, double dt,
                                    double tolerance_constant) {
  const Eigen::MatrixXd r = burgers_residual_field(psi, mu, dt);
  const double dx = psi.grid.dx();
  VerificationReport report;
  report.name = "burgers_residual";
  report.at_most("linf", r.cwiseAbs().maxCoeff(), tolerance_constant * (dx * dx + dt * dt))
      .metric("l2", std::sqrt(r.squaredNorm() * dx * dt))
      .metric("dx", dx)
      .metric("dt", dt);
  return report;
}

RealField inverse_cole_hopf(const RealField& psi, double mu, double anchor) {
  require_mu(mu, "inverse_cole_hopf");
  if (!(anchor > 0.0)) throw DomainError("inverse_cole_hopf", "anchor", "anchor must be positive");
  if (!psi.values.allFinite()) throw DomainError("inverse_cole_hopf", "psi", "psi must be finite");
  const auto n = psi.grid.size();
  const double h = psi.grid.dx();

  // g(0) is psi at x = -L by cubic extrapolation; g(j) = psi(x_{j-1}).
  Eigen::VectorXd g(n + 1);
  g(0) = 4 * psi.values(0) - 6 * psi.values(1) + 4 * psi.values(2) - psi.values(3);
  g.tail(n) = psi.values;

  auto simpson = [&](Eigen::Index a, Eigen::Index b) {  // even number of intervals
    double acc = 0.0;
    for (Eigen::Index j = a; j < b; j += 2) acc += g(j) + 4 * g(j + 1) + g(j + 2);
    return acc * h / 3.0;
  };
  auto three_eighths = [&](Eigen::Index a) {
    return 3.0 * h / 8.0 * (g(a) + 3 * g(a + 1) + 3 * g(a + 2) + g(a + 3));
  };

  const double factor = -0.5 * std::sqrt(mu);
  RealField u{psi.grid, Eigen::VectorXd(n)};
  for (Eigen::Index j = 1; j <= n; ++j) {
    double integral;
    if (j % 2 == 0)
      integral = simpson(0, j);
    else if (j == 1)
      integral = h / 12.0 * (5 * g(0) + 8 * g(1) - g(2));
    else
      integral = simpson(0, j - 3) + three_eighths(j - 3);
    const double exponent = factor * integral + std::log(anchor);
    if (exponent > 709.0)
      throw OverflowError("inverse_cole_hopf", "psi", "exponent exceeds floating-point range");
    u.values(j - 1) = std::exp(exponent);
  }
  return u;
}

VerificationReport gauge_check(const TimeSeries1D& u, const CatalogueFunction& gauge, double mu,
                               double tolerance) {
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double t = u.times[i];
    const double exponent =
        integrate([&gauge](double tau) { return gauge(tau); }, 0.0, t, 1e-12, "gauge_check");
    const RealField base = u.slice(i);
    const RealField gauged{u.grid, u.values[i] * std::exp(exponent)};
    const Eigen::VectorXd diff =
        cole_hopf_transform(gauged, mu).values - cole_hopf_transform(base, mu).values;
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  VerificationReport report;
  report.name = "gauge_" + gauge.label();
  report.at_most("max_psi_change", worst, tolerance);
  return report;
}

TimeSeries1D solve_burgers_direct(const RealField& psi0, double mu, double dt, double t_end) {
  require_mu(mu, "solve_burgers_direct");
  if (!psi0.values.allFinite())
    throw DomainError("solve_burgers_direct", "psi0", "initial data must be finite");
  const auto steps = step_count(dt, t_end, "solve_burgers_direct");
  const double dx = psi0.grid.dx();
  const double nu = 1.0 / std::sqrt(mu);
  const double peak = psi0.values.cwiseAbs().maxCoeff();
  if (dt > dx / (2.0 * peak + 1.0))
    throw CFLError("solve_burgers_direct", "dt", "advective CFL bound dt <= dx/(2 max|psi0|+1)");
  if (dt > dx * dx / (4.0 * nu))
    throw CFLError("solve_burgers_direct", "dt", "diffusive bound dt <= dx^2 mu^{1/2}/4");
  const double step = t_end / static_cast<double>(steps);

  const auto n = psi0.grid.size();
  Eigen::VectorXd p = psi0.values;
  Eigen::VectorXd ext(n + 2), flux(n + 1);
  TimeSeries1D out{psi0.grid, {0.0}, {p}};
  for (std::size_t i = 0; i < steps; ++i) {
    ext(0) = p(0);
    ext.segment(1, n) = p;
    ext(n + 1) = p(n - 1);
    for (Eigen::Index k = 0; k <= n; ++k) {
      const double a = ext(k), b = ext(k + 1);
      flux(k) = 0.25 * (a * a + b * b) - 0.5 * std::max(std::abs(a), std::abs(b)) * (b - a);
    }
    for (Eigen::Index k = 0; k < n; ++k)
      p(k) = ext(k + 1) - step / dx * (flux(k + 1) - flux(k)) +
             nu * step / (dx * dx) * (ext(k + 2) - 2.0 * ext(k + 1) + ext(k));
    if (!p.allFinite())
      throw StabilityError("solve_burgers_direct", "dt", "non-finite values in Burgers solution");
    out.times.push_back(static_cast<double>(i + 1) * step);
    out.values.push_back(p);
  }
  return out;
}

double interior_l1_gap(const RealField& a, const RealField& b) {
  if (!(a.grid == b.grid)) throw ShapeError("interior_l1_gap", "grid", "grids differ");
  const double half = 0.5 * a.grid.half_width();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < a.grid.size(); ++k)
    if (std::abs(a.grid.node(k)) <= half) acc += std::abs(a.values(k) - b.values(k));
  return acc * a.grid.dx();
}

}  // namespace sglab
