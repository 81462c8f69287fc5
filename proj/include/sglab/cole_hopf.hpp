#pragma once

// The classical linear-to-nonlinear pipeline on a uniform 1-D grid:
// heat solve, psi = -2 mu^{-1/2} d_x log u, Burgers residual, gauge check,
// and an independent direct Burgers solver.

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "sglab/catalogue.hpp"
#include "sglab/error.hpp"
#include "sglab/report.hpp"

namespace sglab {

inline constexpr double kPositivityFloor = 1e-300;

/// Interior nodes x_k = -L + (k+1) dx, dx = 2L / (n+1); boundaries at +-L.
class Grid1D {
 public:
  Grid1D(double half_width, Eigen::Index n);

  double half_width() const { return half_width_; }
  Eigen::Index size() const { return n_; }
  double dx() const { return 2.0 * half_width_ / static_cast<double>(n_ + 1); }
  double node(Eigen::Index k) const { return -half_width_ + static_cast<double>(k + 1) * dx(); }
  Eigen::VectorXd nodes() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double half_width_;
  Eigen::Index n_;
};

template <class Scalar>
struct GridFunction1D {
  Grid1D grid;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;
};
using RealField = GridFunction1D<double>;

template <class F>
RealField sample(const Grid1D& grid, F&& f) {
  RealField out{grid, Eigen::VectorXd(grid.size())};
  for (Eigen::Index k = 0; k < grid.size(); ++k) out.values(k) = f(grid.node(k));
  return out;
}

/// Slices of one field on a fixed grid at increasing times.
struct TimeSeries1D {
  Grid1D grid;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> values;

  std::size_t size() const { return times.size(); }
  RealField slice(std::size_t i) const { return {grid, values.at(i)}; }
  RealField back() const { return slice(size() - 1); }
};

template <class F>
TimeSeries1D sample_series(const Grid1D& grid, const std::vector<double>& times, F&& f) {
  TimeSeries1D s{grid, times, {}};
  for (double t : times) s.values.push_back(sample(grid, [&](double x) { return f(t, x); }).values);
  return s;
}

struct HeatParams {
  double mu = 1.0;
  double dt = 1e-2;
  double t_end = 1.0;
};

/// Boundary values u(t, -L), u(t, L). Empty functions mean zero.
struct DirichletData {
  std::function<double(double)> left;
  std::function<double(double)> right;
};

/// Crank-Nicolson for d_t u = mu^{-1/2} d_x^2 u with Dirichlet data.
/// If dt does not divide t_end, the step is shrunk to t_end / ceil(t_end/dt).
TimeSeries1D solve_heat_dirichlet(const RealField& u0, const HeatParams& params,
                                  const DirichletData& boundary = {});

/// Fourth-order differences (central inside, one-sided at the two nodes
/// nearest each end).
Eigen::VectorXd first_derivative(const Eigen::VectorXd& f, double dx);
Eigen::VectorXd second_derivative(const Eigen::VectorXd& f, double dx);

enum class TransformRoute {
  Ratio,          ///< -2 mu^{-1/2} (D1 u) / u
  LogDerivative,  ///< -2 mu^{-1/2} D1 (log u)
};

RealField cole_hopf_transform(const RealField& u, double mu,
                              TransformRoute route = TransformRoute::Ratio);
TimeSeries1D cole_hopf_transform(const TimeSeries1D& u, double mu,
                                 TransformRoute route = TransformRoute::Ratio);

/// R = D_t psi + psi D1 psi - mu^{-1/2} D2 psi on interior times
/// (rows) and interior nodes (columns, k = 2 .. n-3).
Eigen::MatrixXd burgers_residual_field(const TimeSeries1D& psi, double mu, double dt);

/// Max and L2 norms of the residual field; passes iff the max norm is
/// within tolerance_constant * (dx^2 + dt^2).
VerificationReport burgers_residual(const TimeSeries1D& psi, double mu, double dt,
                                    double tolerance_constant = 10.0);

/// u(x) = anchor exp(-(mu^{1/2}/2) int_{-L}^x psi), cumulative Simpson.
RealField inverse_cole_hopf(const RealField& psi, double mu, double anchor);

/// Max over slices of ||CH(u e^{int_0^t f}) - CH(u)||_inf.
VerificationReport gauge_check(const TimeSeries1D& u, const CatalogueFunction& gauge, double mu,
                               double tolerance = 1e-12);

/// Explicit conservative finite-volume (Rusanov flux) scheme for
/// d_t psi + d_x(psi^2/2) = mu^{-1/2} d_x^2 psi with zero-gradient ghosts.
/// Requires dt <= dx / (2 max|psi0| + 1) and dt <= dx^2 mu^{1/2} / 4.
TimeSeries1D solve_burgers_direct(const RealField& psi0, double mu, double dt, double t_end);

/// sum |a - b| dx over nodes with |x| <= L/2.
double interior_l1_gap(const RealField& a, const RealField& b);

}  // namespace sglab
