#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "sglab/spectral_x.hpp"

using namespace sglab;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

template <class F>
SampledTrace trace(Eigen::Index m, double period, F&& f, double t0 = 0.0) {
  SampledTrace s{t0, period / static_cast<double>(m), Eigen::VectorXcd(m)};
  for (Eigen::Index k = 0; k < m; ++k) s.values(k) = f(s.time(k));
  return s;
}

}  // namespace

TEST_CASE("frequency grid layout") {
  const auto g = FrequencyGrid::for_samples(8, kPi / 4.0);  // d_omega = 1
  CHECK(g.spacing() == doctest::Approx(1.0));
  CHECK(g.omega(0) == doctest::Approx(-4.0));
  CHECK(g.omega(g.zero_index()) == 0.0);
  CHECK(g.max_abs() == doctest::Approx(4.0));
  CHECK_THROWS_AS(FrequencyGrid(7, 1.0), ShapeError);
  CHECK_THROWS_AS(FrequencyGrid(8, 0.0), DomainError);
}

TEST_CASE("a sampled mode transforms to one bin") {
  const Eigen::Index m = 32;
  const double period = 3.0, t0 = -0.4;
  const auto grid = FrequencyGrid::for_samples(m, period / m);
  const Eigen::Index j = 19;
  const auto f = trace(m, period, [&](double t) { return std::exp(kI * grid.omega(j) * t); }, t0);
  const auto field = fourier_forward(f);
  for (Eigen::Index i = 0; i < m; ++i)
    CHECK(std::abs(field.coeffs(i) - (i == j ? Complex(period) : Complex(0.0))) < 1e-12);
}

TEST_CASE("forward and inverse are mutually inverse and preserve the L2 norm") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  const auto f = trace(64, 5.0, [&](double) { return Complex(g(rng), g(rng)); }, 1.25);
  const auto field = fourier_forward(f);
  const auto back = fourier_inverse(field, f.t0, f.dt);
  CHECK((back.values - f.values).cwiseAbs().maxCoeff() < 1e-14);
  const double spectral = std::sqrt(field.coeffs.squaredNorm() * field.grid.spacing() / (2 * kPi));
  CHECK(spectral == doctest::Approx(f.l2_norm()).epsilon(1e-13));
  CHECK_THROWS_AS(fourier_inverse(field, 0.0, 2.0 * f.dt), ShapeError);
}

TEST_CASE("x-direction: boundary data is reproduced at x = -L") {
  const double L = 2.0, mu = 2.0;
  const XBoundaryData data{trace(64, 2 * kPi, [](double t) { return std::exp(std::cos(t)); }),
                           trace(64, 2 * kPi, [](double t) { return std::sin(2 * t) + 0.5; })};
  const double x = -L;
  const auto sol = solve_x_direction(data, mu, L, {&x, 1}).front();
  CHECK((sol.trace.values - data.v0.values).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((sol.derivative_trace.values - data.v1.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("x-direction: omega = 0 is the linear profile") {
  const double L = 1.0;
  const XBoundaryData data{trace(16, 1.0, [](double) { return 2.0; }),
                           trace(16, 1.0, [](double) { return -0.5; })};
  const std::vector<double> xs = {-1.0, 0.0, 1.0};
  const auto sols = solve_x_direction(data, 1.0, L, xs);
  for (const auto& s : sols)
    CHECK((s.trace.values.array() - (2.0 - 0.5 * (s.x + L))).abs().maxCoeff() < 1e-14);
}

TEST_CASE("x-direction: single modes for both signs of omega") {
  const double L = 1.0, mu = 0.5;
  const Eigen::Index m = 32;
  const auto grid = FrequencyGrid::for_samples(m, 2 * kPi / m);
  for (Eigen::Index j : {13, 20}) {
    const double w = grid.omega(j);
    const Complex r = std::sqrt(kI * std::sqrt(mu) * w);
    const XBoundaryData data{trace(m, 2 * kPi, [&](double t) { return std::exp(kI * w * t); }),
                             trace(m, 2 * kPi, [&](double t) { return r * std::exp(kI * w * t); })};
    const std::vector<double> xs = {-0.3, 0.8};
    for (const auto& s : solve_x_direction(data, mu, L, xs))
      for (Eigen::Index k = 0; k < m; ++k) {
        const Complex expect = std::exp(kI * w * s.trace.time(k) + r * (s.x + L));
        CHECK(std::abs(s.trace.values(k) - expect) < 1e-12 * std::abs(expect));
        CHECK(std::abs(s.derivative_trace.values(k) - r * expect) < 1e-12 * std::abs(expect));
      }
  }
}

TEST_CASE("x-direction errors") {
  const XBoundaryData data{trace(32, 1.0, [](double) { return 1.0; }),
                           trace(32, 1.0, [](double) { return 1.0; })};
  const double outside = 2.0;
  CHECK_THROWS_AS(solve_x_direction(data, 1.0, 1.0, {&outside, 1}), DomainError);
  const double x = 0.0;
  CHECK_THROWS_AS(solve_x_direction(data, 0.0, 1.0, {&x, 1}), DomainError);
  const XBoundaryData mismatched{data.v0, trace(16, 1.0, [](double) { return 1.0; })};
  CHECK_THROWS_AS(solve_x_direction(mismatched, 1.0, 1.0, {&x, 1}), ShapeError);
  // |exp(r (x + L))| > 1e300 at the highest frequency
  const XBoundaryData fast{trace(512, 0.01, [](double) { return 1.0; }),
                           trace(512, 0.01, [](double) { return 1.0; })};
  const double far = 10.0;
  CHECK_THROWS_AS(solve_x_direction(fast, 1.0, 10.0, {&far, 1}), OverflowError);
}

TEST_CASE("diagonalized symbols are the eigenvalues of the system symbol") {
  const double mu = 3.0;
  const auto grid = FrequencyGrid::for_samples(16, 0.3);
  const auto [plus, minus] = diagonalized_symbols(mu, grid);
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    CHECK(plus.coeffs(j) == -minus.coeffs(j));
    const Complex r = plus.coeffs(j);
    CHECK(std::abs(r * r - kI * std::sqrt(mu) * grid.omega(j)) < 1e-13);
    CHECK(r.real() >= 0.0);
    const auto a = operator_matrix_symbol(mu, grid.omega(j));
    CHECK(max_abs(a * a - (r * r) * DenseOperator::Identity(2, 2)) < 1e-13);
  }
}

TEST_CASE("resolvent bound on the grid") {
  const auto grid = FrequencyGrid::for_samples(64, 0.1);
  const auto real = resolvent_supremum({Complex(2.5, 0.0), 1.0}, grid);
  CHECK(real.powers[0] == 1.0 / 2.5);
  CHECK(real.attained_at == 0.0);
  const auto report = resolvent_bound_check({Complex(0.3, 4.0), 2.0}, grid);
  CHECK(report.pass);
  CHECK(report.residuals.size() == 4);
  CHECK_THROWS_AS(resolvent_bound_check({Complex(0.0, 1.0), 1.0}, grid), PreconditionError);
  CHECK_THROWS_AS(resolvent_bound_check({Complex(-1.0, 0.0), 1.0}, grid), PreconditionError);
}

TEST_CASE("resolvent bound: random lambda, exact power bounds") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> re(0.1, 10.0), im(-10.0, 10.0);
  const auto grid = FrequencyGrid::for_samples(128, 0.05);
  for (int i = 0; i < 200; ++i) {
    const ResolventProbe p{Complex(re(rng), im(rng)), 1.5};
    const auto s = resolvent_supremum(p, grid);
    double b = 1.0;
    for (int n = 0; n < 4; ++n) {
      b *= 1.0 / p.lambda.real();
      CHECK(s.powers[n] <= b);
    }
  }
}

TEST_CASE("resolvent_apply inverts lambda - mu^{1/2} d_t on modes") {
  const double mu = 4.0;
  const Complex lambda(0.7, -0.3);
  auto err = [&](Eigen::Index m) {
    const double w = 3.0;
    const auto f = trace(m, 2 * kPi, [&](double t) { return std::exp(kI * w * t); });
    const auto u = resolvent_apply({lambda, mu}, f);
    const Complex symbol = lambda - kI * std::sqrt(mu) * w;
    return (u.values * symbol - f.values).cwiseAbs().maxCoeff();
  };
  CHECK(err(256) < 1e-3);
  CHECK(err(256) / err(512) == doctest::Approx(4.0).epsilon(0.05));

  const auto f = trace(256, 2 * kPi, [](double t) { return Complex(std::exp(std::sin(t)), 0.0); });
  const auto u = resolvent_apply({lambda, mu}, f);
  CHECK(resolvent_equation_residual({lambda, mu}, u, f) < 1e-2);
}

TEST_CASE("resolvent_apply refuses a kernel that does not decay over the window") {
  const auto f = trace(16, 1.0, [](double) { return 1.0; });
  CHECK_THROWS_AS(resolvent_apply({Complex(1e-14, 0.0), 1.0}, f), QuadratureError);
  CHECK_THROWS_AS(resolvent_apply({Complex(0.0, 0.0), 1.0}, f), PreconditionError);
}

TEST_CASE("subordination density: mass and Laplace identity") {
  // midpoint rule in lambda = x^2 / (4 s^2) coordinates checks the mass
  const double x = 1.3;
  double mass = 0.0;
  const int n = 200000;
  const double h = 40.0 / n;
  for (int i = 0; i < n; ++i) {
    const double s = (i + 0.5) * h;
    const double lambda = x * x / (4.0 * s * s);
    mass += subordination_density(x, lambda) * x * x / (2.0 * s * s * s) * h;
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(subordination_density(x, 0.0) == 0.0);
  CHECK(subordination_density(x, -1.0) == 0.0);

  for (double xi : {0.5, 1.0, 2.0})
    for (double k : {0.25, 1.0, 4.0})
      CHECK(std::abs(subordinator_laplace(xi, k) - std::exp(-xi * std::sqrt(k))) < 1e-8);
  const std::vector<double> ks = {0.25, 1.0, 4.0};
  CHECK(subordination_density_check(2.0, ks).pass);
  CHECK_THROWS_AS(subordinator_laplace(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(subordinator_laplace(1.0, Complex(-1.0, 0.0)), DomainError);
}

TEST_CASE("subordination multipliers: quadrature, closed form, symmetry") {
  const auto grid = FrequencyGrid::for_samples(32, 0.2);
  const auto q = subordination_multipliers(0.8, 2.0, grid);
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    CHECK(std::abs(q(j) - fractional_multiplier(0.8, 2.0, grid.omega(j))) < 1e-10);
    CHECK(std::abs(q(j)) <= 1.0 + 1e-15);
  }
  CHECK(std::abs(q(grid.zero_index()) - 1.0) < 1e-12);
  CHECK(std::abs(subordination_multiplier(1.0, 1.0, -3.0) -
                 std::conj(subordination_multiplier(1.0, 1.0, 3.0))) < 1e-13);
}

TEST_CASE("subordinated semigroup law; the mean is preserved") {
  const auto w0 = trace(64, 2 * kPi, [](double t) { return Complex(2.0 + std::cos(3 * t), 0.0); });
  const auto a = subordinated_semigroup_apply(0.4, 1.0, subordinated_semigroup_apply(0.9, 1.0, w0));
  const auto b = subordinated_semigroup_apply(1.3, 1.0, w0);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 2e-6);
  CHECK(b.values.mean().real() == doctest::Approx(2.0));
  CHECK_THROWS_AS(subordinated_semigroup_apply(0.0, 1.0, w0), DomainError);
}
