#include "studies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "sglab/cole_hopf.hpp"
#include "sglab/error.hpp"
#include "sglab/logrep.hpp"
#include "sglab/nonlinear_emergence.hpp"
#include "sglab/spectral_x.hpp"

namespace sglab::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

template <class F>
VerificationReport timed(F&& build) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport r = build();
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

DenseOperator random_operator(std::mt19937_64& rng, Eigen::Index dim, double norm) {
  std::normal_distribution<double> gauss;
  DenseOperator m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m * (norm / op_norm(m));
}

std::vector<EvolutionFamily> logrep_families(const Params& p, std::mt19937_64& rng) {
  const std::string kind = p.text("family");
  const double half_width = p.number("L");
  const long dim = p.integer("dim");
  const long count = p.integer("count");
  if (dim < 1) throw DomainError("logrep", "dim", "dimension must be >= 1");
  if (count < 1) throw DomainError("logrep", "count", "count must be >= 1");

  std::vector<EvolutionFamily> out;
  if (kind == "identity") {
    out.push_back(build_family({ConstantGenerator{DenseOperator::Zero(dim, dim)}}, half_width));
  } else if (kind == "rotation") {
    out.push_back(build_family({ConstantGenerator{rotation(0.5 * kPi)}}, half_width));
  } else if (kind == "random" || kind == "modulated") {
    std::uniform_int_distribution<long> dims(1, dim);
    std::uniform_real_distribution<double> norms(0.5, 2.0);
    const auto coefficient = CatalogueFunction::parse(p.text("coefficient"));
    for (long i = 0; i < count; ++i) {
      const auto m = random_operator(rng, dims(rng), norms(rng));
      if (kind == "random")
        out.push_back(build_family({ConstantGenerator{m}}, half_width));
      else
        out.push_back(build_family({ModulatedGenerator{coefficient, m * 0.5}}, half_width));
    }
  } else {
    throw DomainError("logrep", "family", "unknown family '" + kind + "'");
  }
  return out;
}

VerificationReport merge_max(const std::string& name, const std::vector<VerificationReport>& rs) {
  VerificationReport out;
  out.name = name;
  for (const auto& r : rs)
    for (const auto& [k, v] : r.residuals) {
      const double tol = r.tolerances.at(k);
      const double prev = out.residuals.count(k) ? out.residuals[k] : 0.0;
      out.at_most(k, std::max(prev, v), tol);
    }
  out.metric("families", static_cast<double>(rs.size()));
  return out;
}

}  // namespace

RunResult run_logrep(const Params& p) {
  std::mt19937_64 rng(p.seed());
  const auto families = logrep_families(p, rng);
  const CoordinatePoint t{p.number("t"), "t"};
  const CoordinatePoint s{p.number("s"), "t"};
  const Complex kappa(p.number("kappa"), p.number("kappa_im"));
  LogRepOptions options;
  options.step = p.number("h");
  options.richardson = p.integer("richardson") != 0;

  RunResult result;
  CsvTable table({"family", "dim", "t", "s", "kappa_re", "kappa_im", "h", "residual"});

  result.reports.push_back(timed([&] {
    double worst = 0.0;
    for (std::size_t i = 0; i < families.size(); ++i) {
      const auto r = log_representation(families[i], t, s, KappaShift(kappa), options);
      worst = std::max(worst, *r.residual_vs_true);
      table.add_row(std::vector<double>{static_cast<double>(i), static_cast<double>(families[i].dim()),
                                        t.value, s.value, kappa.real(), kappa.imag(), r.fd_step,
                                        *r.residual_vs_true});
    }
    VerificationReport r;
    r.name = "logrep_recovery";
    r.at_most("max_abs_error", worst, 1e-6).metric("h", *options.step);
    return r;
  }));

  result.reports.push_back(timed([&] {
    const std::vector<Complex> shifts = {0.3, 1.0, 2.0, Complex(1.0, 1.0)};
    double spread = 0.0;
    double used = 0.0;
    for (const auto& family : families) {
      std::vector<DenseOperator> estimates;
      for (const auto& k : shifts)
        if (kappa_admissible(family, t, s, KappaShift(k)) &&
            kappa_admissible(family, {t.value + *options.step, "t"}, s, KappaShift(k)) &&
            kappa_admissible(family, {t.value - *options.step, "t"}, s, KappaShift(k)))
          estimates.push_back(log_representation(family, t, s, KappaShift(k), options).generator_estimate);
      used += static_cast<double>(estimates.size());
      for (std::size_t a = 0; a < estimates.size(); ++a)
        for (std::size_t b = a + 1; b < estimates.size(); ++b)
          spread = std::max(spread, max_abs(estimates[a] - estimates[b]));
    }
    VerificationReport r;
    r.name = "logrep_kappa_independence";
    r.at_most("max_pairwise_gap", spread, 1e-8).metric("estimates", used);
    return r;
  }));

  result.reports.push_back(timed([&] {
    const double half_width = p.number("L");
    std::uniform_real_distribution<double> point(-half_width, half_width);
    std::vector<VerificationReport> parts;
    for (const auto& family : families) {
      std::vector<CoordinateTriple> triples;
      for (int i = 0; i < 50; ++i) {
        const double a = point(rng), b = point(rng), c = point(rng);
        triples.emplace_back(a, b, c);
      }
      parts.push_back(check_group_axioms(family, triples));
    }
    return merge_max("group_axioms", parts);
  }));

  result.reports.push_back(timed([&] {
    double worst = 0.0;
    for (const auto& family : families) {
      const DenseOperator lhs = generator_times_evolution(family, t, s, KappaShift(kappa), options);
      worst = std::max(worst, max_abs(lhs - family.generator_at(t.value) * family(t.value, s.value)));
    }
    VerificationReport r;
    r.name = "logrep_operator_form";
    r.at_most("max_abs_error", worst, 1e-6);
    return r;
  }));

  CsvTable convergence({"h", "residual"});
  for (double h : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5}) {
    LogRepOptions o = options;
    o.step = h;
    const auto r = log_representation(families.front(), t, s, KappaShift(kappa), o);
    convergence.add_row(std::vector<double>{h, *r.residual_vs_true});
  }
  result.tables.emplace_back("logrep.csv", std::move(table));
  result.tables.emplace_back("plotdata/logrep_h_convergence.csv", std::move(convergence));
  return result;
}

namespace {

/// 1 + e^{x + t / mu^{1/2}} and its exact Cole-Hopf image.
struct ShockSolution {
  double nu;
  double u(double t, double x) const { return 1.0 + std::exp(x + nu * t); }
  double psi(double t, double x) const {
    const double e = std::exp(x + nu * t);
    return -2.0 * nu * e / (1.0 + e);
  }
};

std::vector<double> time_levels(double dt, double t_end) {
  const auto steps = static_cast<long>(std::floor(t_end / dt + 1e-9));
  if (steps < 2) throw DomainError("colehopf", "t_end", "need at least two time steps before t_end");
  std::vector<double> times;
  for (long k = 0; k <= steps; ++k) times.push_back(static_cast<double>(k) * dt);
  return times;
}

double resolve_dt(const Params& p, double dx) {
  if (p.text("dt") == "auto") return dx;
  const double dt = p.number("dt");
  if (!(dt > 0.0)) throw DomainError("colehopf", "dt", "dt must be positive");
  return dt;
}

}  // namespace

RunResult run_colehopf(const Params& p) {
  const double mu = p.number("mu");
  if (!(mu > 0.0)) throw DomainError("colehopf", "mu", "mu must be positive");
  const double half_width = p.number("L");
  const double t_end = p.number("t_end");
  const double c = p.number("tol_constant");
  const ShockSolution exact{1.0 / std::sqrt(mu)};

  const Grid1D grid(half_width, p.integer("n"));
  const double dt = resolve_dt(p, grid.dx());
  const auto times = time_levels(dt, t_end);
  const auto u = sample_series(grid, times, [&](double t, double x) { return exact.u(t, x); });
  const auto psi = cole_hopf_transform(u, mu);

  RunResult result;
  VerificationReport coarse = timed([&] { return burgers_residual(psi, mu, dt, c); });
  result.reports.push_back(coarse);

  VerificationReport fine = timed([&] {
    const Grid1D half(half_width, 2 * grid.size() + 1);
    const auto u2 = sample_series(half, time_levels(0.5 * dt, times.back()),
                                  [&](double t, double x) { return exact.u(t, x); });
    auto r = burgers_residual(cole_hopf_transform(u2, mu), mu, 0.5 * dt, c);
    r.name = "burgers_residual_halved";
    return r;
  });
  result.reports.push_back(fine);

  result.reports.push_back(timed([&] {
    VerificationReport r;
    r.name = "burgers_convergence";
    r.at_least("ratio", coarse.residuals.at("linf") / fine.residuals.at("linf"), 3.5);
    return r;
  }));

  for (const char* g : {"const:0", "const:5", "sin:1"})
    result.reports.push_back(
        timed([&] { return gauge_check(u, CatalogueFunction::parse(g), mu); }));

  result.reports.push_back(timed([&] {
    double gap = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto a = cole_hopf_transform(u.slice(i), mu, TransformRoute::Ratio);
      const auto b = cole_hopf_transform(u.slice(i), mu, TransformRoute::LogDerivative);
      gap = std::max(gap, (a.values - b.values).cwiseAbs().maxCoeff());
    }
    const double dx = grid.dx();
    VerificationReport r;
    r.name = "transform_routes";
    r.at_most("max_route_gap", gap, c * dx * dx * dx * dx).metric("dx", dx);
    return r;
  }));

  const Grid1D cross(half_width, p.integer("n_cross"));
  result.reports.push_back(timed([&] {
    const auto psi0 = sample(cross, [&](double x) { return exact.psi(0.0, x); });
    const auto back = inverse_cole_hopf(psi0, mu, exact.u(0.0, -half_width));
    const auto truth = sample(cross, [&](double x) { return exact.u(0.0, x); });
    VerificationReport r;
    r.name = "inverse_round_trip";
    r.at_most("max_rel_error",
              ((back.values - truth.values).array() / truth.values.array()).abs().maxCoeff(), 1e-6);
    return r;
  }));

  CsvTable cross_table({"x", "psi_pipeline", "psi_direct", "psi_exact"});
  result.reports.push_back(timed([&] {
    const double dx = cross.dx();
    const auto u0 = sample(cross, [&](double x) { return exact.u(0.0, x); });
    DirichletData edges{[&](double t) { return exact.u(t, -half_width); },
                        [&](double t) { return exact.u(t, half_width); }};
    const auto heat = solve_heat_dirichlet(u0, {mu, dx, t_end}, edges);
    const auto pipeline = cole_hopf_transform(heat.back(), mu);

    const auto psi0 = cole_hopf_transform(u0, mu);
    const double speed = psi0.values.cwiseAbs().maxCoeff();
    const double step = 0.9 * std::min(dx / (2.0 * speed + 1.0), dx * dx * std::sqrt(mu) / 4.0);
    const auto direct = solve_burgers_direct(psi0, mu, step, t_end).back();
    const auto truth = sample(cross, [&](double x) { return exact.psi(t_end, x); });
    for (Eigen::Index k = 0; k < cross.size(); k += 4)
      cross_table.add_row(std::vector<double>{cross.node(k), pipeline.values(k), direct.values(k),
                                              truth.values(k)});

    VerificationReport r;
    r.name = "cross_solver";
    r.at_most("interior_l1_gap", interior_l1_gap(pipeline, direct), 0.05)
        .metric("pipeline_vs_exact", interior_l1_gap(pipeline, truth))
        .metric("direct_vs_exact", interior_l1_gap(direct, truth));
    return r;
  }));

  CsvTable final_slice({"x", "u", "psi", "psi_exact"});
  const auto last = psi.back();
  for (Eigen::Index k = 0; k < grid.size(); ++k)
    final_slice.add_row(std::vector<double>{grid.node(k), u.values.back()(k), last.values(k),
                                            exact.psi(times.back(), grid.node(k))});
  result.tables.emplace_back("colehopf.csv", std::move(final_slice));
  result.tables.emplace_back("plotdata/colehopf_cross_solver.csv", std::move(cross_table));
  return result;
}

namespace {

SampledTrace make_trace(long m, double period, auto&& f) {
  if (m < 2) throw DomainError("xevolve", "n", "need at least 2 samples");
  if (!(period > 0.0)) throw DomainError("xevolve", "period", "period must be positive");
  SampledTrace s{0.0, period / static_cast<double>(m), Eigen::VectorXcd(m)};
  for (Eigen::Index k = 0; k < m; ++k) s.values(k) = f(s.time(k));
  return s;
}

double max_gap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

RunResult run_xevolve(const Params& p) {
  const double mu = p.number("mu");
  const long m = p.integer("n");
  const double period = p.number("period");
  const double half_width = p.number("L");
  const double base = 2.0 * kPi / period;
  std::mt19937_64 rng(p.seed());

  const XBoundaryData data{
      make_trace(m, period,
                 [&](double t) {
                   return Complex(std::exp(std::sin(base * t)) + 0.3 * std::cos(3 * base * t), 0);
                 }),
      make_trace(m, period, [&](double t) {
        return Complex(0.2 + std::cos(base * t) - 0.5 * std::sin(2 * base * t), 0);
      })};
  const std::vector<double> targets = {-half_width, -0.5 * half_width, 0.0, 0.5 * half_width,
                                       half_width};

  RunResult result;
  std::vector<XDirectionSolution> solution;
  result.reports.push_back(timed([&] {
    solution = solve_x_direction(data, mu, half_width, targets);
    const auto v0 = fourier_forward(data.v0);
    const auto v1 = fourier_forward(data.v1);
    const auto& edge = solution.front();
    const auto z = v0.grid.zero_index();
    VerificationReport r;
    r.name = "x_boundary";
    r.at_most("value_coeffs", max_gap(edge.value.coeffs, v0.coeffs), 1e-10)
        .at_most("derivative_coeffs", max_gap(edge.derivative.coeffs, v1.coeffs), 1e-10)
        .at_most("value_trace", max_gap(edge.trace.values, data.v0.values), 1e-10)
        .at_most("derivative_trace", max_gap(edge.derivative_trace.values, data.v1.values), 1e-10)
        .at_most("omega0_value", std::abs(edge.value.coeffs(z) - v0.coeffs(z)), 1e-12)
        .at_most("omega0_derivative", std::abs(edge.derivative.coeffs(z) - v1.coeffs(z)), 1e-12);
    return r;
  }));

  result.reports.push_back(timed([&] {
    // Single modes e^{i omega t} e^{r (x + L)} are exact solutions.
    double worst = 0.0;
    for (int harmonic : {-2, 3}) {
      const double omega = harmonic * base;
      const Complex r = std::sqrt(kI * std::sqrt(mu) * omega);
      const XBoundaryData mode{
          make_trace(m, period, [&](double t) { return std::exp(kI * omega * t); }),
          make_trace(m, period, [&](double t) { return r * std::exp(kI * omega * t); })};
      for (const auto& sol : solve_x_direction(mode, mu, half_width, targets))
        for (Eigen::Index k = 0; k < m; ++k) {
          const double t = sol.trace.time(k);
          const Complex expect = std::exp(kI * omega * t + r * (sol.x + half_width));
          worst = std::max(worst, std::abs(sol.trace.values(k) - expect) / std::abs(expect));
        }
    }
    VerificationReport rep;
    rep.name = "x_mode_oracle";
    rep.at_most("max_rel_error", worst, 1e-10);
    return rep;
  }));

  const auto grid = FrequencyGrid::for_samples(m, period / static_cast<double>(m));
  result.reports.push_back(timed([&] {
    const auto [plus, minus] = diagonalized_symbols(mu, grid);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
      const auto eig = spectrum_of(operator_matrix_symbol(mu, grid.omega(j))).eigenvalues;
      const Complex a = eig(0), b = eig(1);
      const double direct = std::max(std::abs(a - plus.coeffs(j)), std::abs(b - minus.coeffs(j)));
      const double swapped = std::max(std::abs(b - plus.coeffs(j)), std::abs(a - minus.coeffs(j)));
      worst = std::max(worst, std::min(direct, swapped) / std::max(1.0, std::abs(plus.coeffs(j))));
    }
    VerificationReport r;
    r.name = "diagonalization";
    r.at_most("max_rel_eigen_gap", worst, 1e-12);
    return r;
  }));

  const ResolventProbe probe{Complex(p.number("lambda_re"), p.number("lambda_im")), mu};
  result.reports.push_back(timed([&] { return resolvent_bound_check(probe, grid); }));

  CsvTable resolvent({"lambda_re", "lambda_im", "sup", "bound", "attained_omega"});
  result.reports.push_back(timed([&] {
    std::uniform_real_distribution<double> re(0.1, 10.0), im(-10.0, 10.0);
    const long count = p.integer("count");
    double violation = 0.0, real_gap = 0.0;
    for (long i = 0; i < count; ++i) {
      const ResolventProbe q{Complex(re(rng), im(rng)), mu};
      const auto sup = resolvent_supremum(q, grid);
      violation = std::max(violation, sup.powers[0] - (sup.bounds[0] + 1e-14));
      for (std::size_t n = 1; n < 4; ++n)
        violation = std::max(violation, sup.powers[n] - sup.bounds[n]);
      resolvent.add_row(std::vector<double>{q.lambda.real(), q.lambda.imag(), sup.powers[0],
                                            sup.bounds[0], sup.attained_at});
      const auto real = resolvent_supremum({Complex(q.lambda.real(), 0.0), mu}, grid);
      real_gap = std::max(real_gap, std::abs(real.powers[0] - real.bounds[0]));
    }
    VerificationReport r;
    r.name = "resolvent_bound_random";
    r.at_most("max_violation", std::max(violation, 0.0), 0.0)
        .at_most("real_lambda_gap", real_gap, 1e-14)
        .metric("samples", static_cast<double>(count));
    return r;
  }));

  result.reports.push_back(timed([&] {
    const double omega = 2.0 * base;
    const auto f = make_trace(m, period, [&](double t) { return std::exp(kI * omega * t); });
    const auto u = resolvent_apply(probe, f);
    const Complex symbol = probe.lambda - kI * std::sqrt(mu) * omega;
    double worst = 0.0;
    for (Eigen::Index k = 0; k < m; ++k)
      worst = std::max(worst, std::abs(u.values(k) * symbol - f.values(k)));
    // Linear interpolation error of the mode, |f - I f| <= (omega dt)^2 / 8,
    // integrated against the kernel of mass 1 / Re lambda.
    const double wdt = omega * f.dt;
    VerificationReport r;
    r.name = "resolvent_equation";
    r.at_most("mode_error", worst, wdt * wdt / 8.0 * std::abs(symbol) / probe.lambda.real())
        .metric("discrete_residual", resolvent_equation_residual(probe, u, f));
    return r;
  }));

  std::vector<std::string> header = {"t"};
  for (const auto& s : solution) {
    header.push_back("re_u(x=" + format_double(s.x) + ")");
    header.push_back("im_u(x=" + format_double(s.x) + ")");
  }
  CsvTable traces(header);
  for (Eigen::Index k = 0; k < m; ++k) {
    std::vector<double> row = {data.v0.time(k)};
    for (const auto& s : solution) {
      row.push_back(s.trace.values(k).real());
      row.push_back(s.trace.values(k).imag());
    }
    traces.add_row(row);
  }
  CsvTable spectrum({"omega", "abs_v0", "abs_u_mid", "abs_u_right"});
  for (Eigen::Index j = 0; j < grid.size(); ++j)
    spectrum.add_row(std::vector<double>{grid.omega(j), std::abs(solution[0].value.coeffs(j)),
                                         std::abs(solution[2].value.coeffs(j)),
                                         std::abs(solution[4].value.coeffs(j))});
  result.tables.emplace_back("xevolve_traces.csv", std::move(traces));
  result.tables.emplace_back("resolvent.csv", std::move(resolvent));
  result.tables.emplace_back("plotdata/xevolve_spectrum.csv", std::move(spectrum));
  return result;
}

RunResult run_subordinate(const Params& p) {
  const double x = p.number("x");
  const double x2 = p.number("x2");
  const double mu = p.number("mu");
  const long m = p.integer("n");
  const double period = p.number("period");
  const double base = 2.0 * kPi / period;

  RunResult result;
  const std::vector<double> ks = {0.25, 1.0, 4.0};
  for (double xi : {0.5 * x, x, 2.0 * x})
    result.reports.push_back(timed([&] { return subordination_density_check(xi, ks); }));

  const auto w0 = make_trace(m, period, [&](double t) {
    return Complex(std::exp(std::cos(base * t)) + 0.25 * std::sin(5 * base * t), 0);
  });
  const auto grid = FrequencyGrid::for_samples(m, w0.dt);

  CsvTable multipliers({"omega", "re_quadrature", "im_quadrature", "re_closed", "im_closed"});
  result.reports.push_back(timed([&] {
    const auto quad = subordination_multipliers(x, mu, grid);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
      const Complex closed = fractional_multiplier(x, mu, grid.omega(j));
      worst = std::max(worst, std::abs(quad(j) - closed));
      multipliers.add_row(std::vector<double>{grid.omega(j), quad(j).real(), quad(j).imag(),
                                              closed.real(), closed.imag()});
    }
    VerificationReport r;
    r.name = "subordination_multiplier";
    r.at_most("max_abs_gap", worst, 1e-6);
    return r;
  }));

  CsvTable semigroup({"t", "w0", "composed", "direct"});
  result.reports.push_back(timed([&] {
    const auto composed = subordinated_semigroup_apply(x, mu, subordinated_semigroup_apply(x2, mu, w0));
    const auto direct = subordinated_semigroup_apply(x + x2, mu, w0);
    for (Eigen::Index k = 0; k < m; ++k)
      semigroup.add_row(std::vector<double>{w0.time(k), w0.values(k).real(),
                                            composed.values(k).real(), direct.values(k).real()});
    VerificationReport r;
    r.name = "subordination_semigroup";
    r.at_most("max_abs_gap", max_gap(composed.values, direct.values), 2e-6);
    return r;
  }));

  CsvTable density({"lambda", "x=" + format_double(0.5 * x), "x=" + format_double(x),
                    "x=" + format_double(2.0 * x)});
  for (int i = 1; i <= 200; ++i) {
    const double lambda = 0.02 * i;
    density.add_row(std::vector<double>{lambda, subordination_density(0.5 * x, lambda),
                                        subordination_density(x, lambda),
                                        subordination_density(2.0 * x, lambda)});
  }
  result.tables.emplace_back("subordination_multipliers.csv", std::move(multipliers));
  result.tables.emplace_back("subordination_semigroup.csv", std::move(semigroup));
  result.tables.emplace_back("plotdata/subordination_density.csv", std::move(density));
  return result;
}

RunResult run_identities(const Params& p) {
  const long nt = p.integer("nt"), nx = p.integer("nx");
  RunResult result;
  CsvTable table({"name", "pair", "max_abs", "scale", "pass"});
  for (auto c : identity_catalogue(p.seed())) {
    c.window.nt = static_cast<int>(nt);
    c.window.nx = static_cast<int>(nx);
    IdentityResidual residual;
    auto report = timed([&] {
      residual = evaluate_identity(c.kind, c.pair, c.window);
      return identity_report(c, residual);
    });
    table.add_row(std::vector<std::string>{residual.identity_name + (c.conforming ? "" : "_negative"),
                                           residual.pair_label,
                                           format_double(residual.max_abs),
                                           format_double(residual.scale),
                                           report.pass ? "true" : "false"});
    result.reports.push_back(std::move(report));
  }
  result.tables.emplace_back("identities.csv", std::move(table));
  return result;
}

}  // namespace sglab::cli
