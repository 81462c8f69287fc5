// Acceptance checks, one line per criterion. Exit status is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "sglab/cole_hopf.hpp"
#include "sglab/logrep.hpp"
#include "sglab/nonlinear_emergence.hpp"
#include "sglab/spectral_x.hpp"

#ifndef SEMIGROUP_LAB_EXE
#error "SEMIGROUP_LAB_EXE must name the command-line executable"
#endif

using namespace sglab;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

DenseOperator random_operator(std::mt19937_64& rng, Eigen::Index dim, double norm) {
  std::normal_distribution<double> g;
  DenseOperator m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) m(i, j) = Complex(g(rng), g(rng));
  return m * (norm / op_norm(m));
}

std::vector<EvolutionFamily> random_families(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_real_distribution<double> norm(0.1, 2.0);
  std::vector<EvolutionFamily> out;
  for (int i = 0; i < count; ++i)
    out.push_back(build_family({ConstantGenerator{random_operator(rng, dim(rng), norm(rng))}}, 1.0));
  return out;
}

Outcome generator_recovery() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> point(-0.9, 0.9);
  double worst = 0.0;
  for (const auto& family : random_families(1, 20)) {
    const double t = point(rng);
    const auto r = log_representation(family, {t, "t"}, {0.0, "t"}, KappaShift(1.0),
                                      {.step = 1e-4});
    worst = std::max(worst, max_abs(r.generator_estimate - family.generator_at(t)));
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-6 && elapsed <= 5.0,
          "max error " + sci(worst) + " (<= 1e-6), " + sci(elapsed) + " s (<= 5 s)"};
}

Outcome kappa_independence() {
  const std::vector<Complex> shifts = {0.3, 1.0, 2.0, Complex(1.0, 1.0)};
  double worst = 0.0;
  int compared = 0;
  for (const auto& family : random_families(2, 20)) {
    const CoordinatePoint t{0.5, "t"}, s{0.0, "t"};
    std::vector<DenseOperator> estimates;
    for (const auto& k : shifts) {
      try {
        estimates.push_back(
            log_representation(family, t, s, KappaShift(k), {.step = 1e-4}).generator_estimate);
      } catch (const BranchCutError&) {
        // inadmissible shift for this family
      }
    }
    for (std::size_t a = 0; a < estimates.size(); ++a)
      for (std::size_t b = a + 1; b < estimates.size(); ++b, ++compared)
        worst = std::max(worst, max_abs(estimates[a] - estimates[b]));
  }
  return {compared > 0 && worst <= 1e-8,
          "max pairwise gap " + sci(worst) + " over " + std::to_string(compared) +
              " pairs (<= 1e-8)"};
}

Outcome group_axioms() {
  std::vector<EvolutionFamily> families = random_families(3, 10);
  std::mt19937_64 rng(303);
  for (const char* c : {"const:0.7", "linear:1", "sin:2", "poly:0.5"})
    families.push_back(build_family(
        {ModulatedGenerator{CatalogueFunction::parse(c), random_operator(rng, 4, 1.0)}}, 1.0));
  std::uniform_real_distribution<double> point(-1.0, 1.0);
  double worst = 0.0;
  bool pass = true;
  for (const auto& family : families) {
    std::vector<CoordinateTriple> triples;
    for (int i = 0; i < 50; ++i) triples.emplace_back(point(rng), point(rng), point(rng));
    const auto report = check_group_axioms(family, triples, 1e-10);
    pass = pass && report.pass;
    for (const auto& [_, v] : report.residuals) worst = std::max(worst, v);
  }
  return {pass, "max residual " + sci(worst) + " over " + std::to_string(families.size()) +
                    " families x 50 triples (<= 1e-10)"};
}

double shock_u(double t, double x) { return 1.0 + std::exp(x + t); }
double shock_psi(double t, double x) {
  const double e = std::exp(x + t);
  return -2.0 * e / (1.0 + e);
}

double burgers_linf(Eigen::Index n, double t_end, double* tolerance) {
  const Grid1D grid(8.0, n);
  const double dt = grid.dx();
  std::vector<double> times;
  for (int k = 0; k * dt <= t_end + 1e-12; ++k) times.push_back(k * dt);
  const auto psi = cole_hopf_transform(sample_series(grid, times, shock_u), 1.0);
  const auto report = burgers_residual(psi, 1.0, dt);
  *tolerance = report.tolerances.at("linf");
  return report.residuals.at("linf");
}

Outcome cole_hopf_forward() {
  const auto start = std::chrono::steady_clock::now();
  double tol = 0.0, tol_half = 0.0;
  const double coarse = burgers_linf(256, 0.5, &tol);
  const double fine = burgers_linf(513, 0.5, &tol_half);
  const double ratio = coarse / fine;
  const double elapsed = seconds_since(start);
  return {coarse <= tol && ratio >= 3.5 && elapsed <= 10.0,
          "Linf " + sci(coarse) + " (<= " + sci(tol) + "), halving ratio " + sci(ratio) +
              " (>= 3.5), " + sci(elapsed) + " s"};
}

Outcome gauge_invariance() {
  const Grid1D grid(8.0, 256);
  std::vector<double> times;
  for (int k = 0; k <= 8; ++k) times.push_back(k * grid.dx());
  const auto u = sample_series(grid, times, shock_u);
  double worst = 0.0;
  bool pass = true;
  for (const char* f : {"const:0", "const:5", "sin:1"}) {
    const auto r = gauge_check(u, CatalogueFunction::parse(f), 1.0, 1e-12);
    pass = pass && r.pass;
    worst = std::max(worst, r.residuals.at("max_psi_change"));
  }
  return {pass, "max psi change " + sci(worst) + " (<= 1e-12)"};
}

Outcome cross_solver() {
  const double t_end = 0.5;
  const Grid1D grid(8.0, 512);
  const double dx = grid.dx();
  const auto u0 = sample(grid, [](double x) { return shock_u(0.0, x); });
  const DirichletData edges{[](double t) { return shock_u(t, -8.0); },
                            [](double t) { return shock_u(t, 8.0); }};
  const auto pipeline =
      cole_hopf_transform(solve_heat_dirichlet(u0, {1.0, dx, t_end}, edges).back(), 1.0);
  const auto psi0 = cole_hopf_transform(u0, 1.0);
  const double speed = psi0.values.cwiseAbs().maxCoeff();
  const double dt = 0.9 * std::min(dx / (2.0 * speed + 1.0), dx * dx / 4.0);
  const auto direct = solve_burgers_direct(psi0, 1.0, dt, t_end).back();
  const double gap = interior_l1_gap(pipeline, direct);
  const auto exact = sample(grid, [&](double x) { return shock_psi(t_end, x); });
  return {gap <= 0.05, "interior L1 gap " + sci(gap) + " (<= 0.05); pipeline vs exact " +
                           sci(interior_l1_gap(pipeline, exact))};
}

Outcome resolvent_bound() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(0.1, 10.0), im(-20.0, 20.0);
  const auto grid = FrequencyGrid::for_samples(256, 2.0 * kPi / 256.0);
  bool pass = true;
  double slack = -1.0, real_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    const ResolventProbe probe{Complex(re(rng), im(rng)), 1.0};
    const auto sup = resolvent_supremum(probe, grid);
    pass = pass && sup.powers[0] <= 1.0 / probe.lambda.real() + 1e-14;
    double bound = 1.0;
    for (int n = 0; n < 4; ++n) {
      bound *= 1.0 / probe.lambda.real();
      if (n > 0) pass = pass && sup.powers[n] <= bound;
    }
    slack = std::max(slack, sup.powers[0] - 1.0 / probe.lambda.real());
    const auto real = resolvent_supremum({Complex(probe.lambda.real(), 0.0), 1.0}, grid);
    real_gap = std::max(real_gap, std::abs(real.powers[0] - 1.0 / probe.lambda.real()));
  }
  pass = pass && real_gap <= 1e-14;
  return {pass, "max(sup - 1/Re) " + sci(slack) + ", real-lambda gap " + sci(real_gap) +
                    " (<= 1e-14)"};
}

Outcome subordination() {
  double laplace = 0.0, mass = 0.0;
  for (double x : {0.5, 1.0, 2.0}) {
    mass = std::max(mass, std::abs(subordinator_laplace(x, 0.0) - 1.0));
    for (double k : {0.25, 1.0, 4.0})
      laplace = std::max(laplace, std::abs(subordinator_laplace(x, k) - std::exp(-x * std::sqrt(k))));
  }

  const Eigen::Index m = 128;
  SampledTrace w0{0.0, 2.0 * kPi / m, Eigen::VectorXcd(m)};
  for (Eigen::Index k = 0; k < m; ++k)
    w0.values(k) = std::exp(std::cos(w0.time(k))) + 0.25 * std::sin(5.0 * w0.time(k));
  const auto grid = FrequencyGrid::for_samples(m, w0.dt);
  double multiplier = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double w = grid.omega(j);
    const Complex closed = std::exp(-1.0 * std::sqrt(Complex(0.0, -w)));
    multiplier = std::max(multiplier, std::abs(subordination_multiplier(1.0, 1.0, w) - closed));
  }
  const auto composed = subordinated_semigroup_apply(1.0, 1.0, subordinated_semigroup_apply(0.5, 1.0, w0));
  const auto direct = subordinated_semigroup_apply(1.5, 1.0, w0);
  const double law = (composed.values - direct.values).cwiseAbs().maxCoeff();
  return {laplace <= 1e-8 && mass <= 1e-8 && multiplier <= 1e-6 && law <= 2e-6,
          "Laplace " + sci(laplace) + ", mass " + sci(mass) + " (<= 1e-8); multiplier " +
              sci(multiplier) + " (<= 1e-6); semigroup " + sci(law) + " (<= 2e-6)"};
}

Outcome x_boundary() {
  const Eigen::Index m = 128;
  const double dt = 2.0 * kPi / m, half_width = 1.0;
  XBoundaryData data{{0.0, dt, Eigen::VectorXcd(m)}, {0.0, dt, Eigen::VectorXcd(m)}};
  for (Eigen::Index k = 0; k < m; ++k) {
    const double t = k * dt;
    data.v0.values(k) = std::exp(std::sin(t)) + 0.3 * std::cos(3 * t);
    data.v1.values(k) = 0.2 + std::cos(t) - 0.5 * std::sin(2 * t);
  }
  const double target = -half_width;
  const auto sol = solve_x_direction(data, 1.0, half_width, {&target, 1}).front();
  const auto v0 = fourier_forward(data.v0), v1 = fourier_forward(data.v1);
  const auto z = v0.grid.zero_index();
  double per_frequency = 0.0;
  for (Eigen::Index j = 0; j < m; ++j)
    per_frequency = std::max({per_frequency, std::abs(sol.value.coeffs(j) - v0.coeffs(j)),
                              std::abs(sol.derivative.coeffs(j) - v1.coeffs(j))});
  const double zero_row = std::max(std::abs(sol.value.coeffs(z) - v0.coeffs(z)),
                                   std::abs(sol.derivative.coeffs(z) - v1.coeffs(z)));
  return {per_frequency <= 1e-10 && zero_row <= 1e-12,
          "per-frequency " + sci(per_frequency) + " (<= 1e-10), omega=0 " + sci(zero_row) +
              " (<= 1e-12)"};
}

Outcome identities() {
  bool pass = true;
  double worst_rel = 0.0, weakest_control = 1e300;
  int conforming = 0, controls = 0;
  for (const auto& c : identity_catalogue(11)) {
    const auto r = evaluate_identity(c.kind, c.pair, c.window);
    if (c.conforming) {
      ++conforming;
      pass = pass && r.max_abs <= 1e-12 * r.scale;
      if (c.kind == IdentityKind::Advection) pass = pass && r.advection_max > 0.0;
      worst_rel = std::max(worst_rel, r.relative());
    } else {
      ++controls;
      pass = pass && r.max_abs >= 1e-3 * r.scale;
      weakest_control = std::min(weakest_control, r.relative());
    }
  }
  return {pass && controls >= 2,
          std::to_string(conforming) + " conforming, worst " + sci(worst_rel) +
              " x scale (<= 1e-12); " + std::to_string(controls) + " controls, weakest " +
              sci(weakest_control) + " x scale (>= 1e-3)"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome end_to_end() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / ("sglab_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  double slowest = 0.0;
  int codes[2] = {-1, -1};
  for (int run = 0; run < 2; ++run) {
    const auto start = std::chrono::steady_clock::now();
    const std::string cmd = std::string("\"") + SEMIGROUP_LAB_EXE + "\" suite --out \"" +
                            (root / std::to_string(run)).string() + "\" > /dev/null";
    const int status = std::system(cmd.c_str());
    codes[run] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    slowest = std::max(slowest, seconds_since(start));
  }
  int files = 0, differing = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "0")) {
    if (entry.path().extension() != ".csv") continue;
    ++files;
    const auto twin = root / "1" / fs::relative(entry.path(), root / "0");
    if (!fs::exists(twin) || slurp(entry.path()) != slurp(twin)) ++differing;
  }
  fs::remove_all(root);
  return {codes[0] == 0 && codes[1] == 0 && slowest <= 60.0 && files > 0 && differing == 0,
          "exit codes " + std::to_string(codes[0]) + "," + std::to_string(codes[1]) +
              "; slowest run " + sci(slowest) + " s (<= 60 s); " + std::to_string(files) +
              " CSVs, " + std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"generator recovery", generator_recovery},
      {"kappa independence", kappa_independence},
      {"group axioms", group_axioms},
      {"Cole-Hopf forward check", cole_hopf_forward},
      {"gauge invariance", gauge_invariance},
      {"cross-solver agreement", cross_solver},
      {"resolvent bound", resolvent_bound},
      {"subordination", subordination},
      {"x-direction boundary reproduction", x_boundary},
      {"emergence identities", identities},
      {"end-to-end suite", end_to_end},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].first
              << ": " << o.detail << std::endl;
  }
  return failures;
}
