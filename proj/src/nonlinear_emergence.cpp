#include "sglab/nonlinear_emergence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sglab/error.hpp"

namespace sglab {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << v;
  return os.str();
}

struct Lattice {
  std::vector<Derivatives> u, v;
  int nt = 0, nx = 0;
};

Lattice sample(const SmoothPair& p, const Window& w, const char* op) {
  if (w.nt < 2 || w.nx < 2) throw ShapeError(op, "window", "lattice needs nt, nx >= 2");
  if (!(w.t1 > w.t0) || !(w.x1 > w.x0))
    throw DomainError(op, "window", "window bounds must be increasing");
  Lattice l{{}, {}, w.nt, w.nx};
  l.u.reserve(static_cast<std::size_t>(w.samples()));
  l.v.reserve(static_cast<std::size_t>(w.samples()));
  for (int i = 0; i < w.nt; ++i)
    for (int j = 0; j < w.nx; ++j) {
      l.u.push_back(p.u(w.t(i), w.x(j)));
      l.v.push_back(p.v(w.t(i), w.x(j)));
    }
  return l;
}

/// Rejects a denominator that is tiny anywhere or changes sign between
/// neighbouring lattice points (so it vanishes inside the window).
void require_nonvanishing(const std::vector<double>& d, int nt, int nx, const char* op,
                          const char* param) {
  double largest = 0.0;
  for (double x : d) {
    if (!std::isfinite(x)) throw DomainError(op, param, "non-finite sample");
    largest = std::max(largest, std::abs(x));
  }
  for (double x : d)
    if (std::abs(x) <= kDivisionFloor * largest || largest == 0.0)
      throw DivisionWindowError(op, param, "denominator vanishes on the window");
  auto at = [&](int i, int j) { return d[static_cast<std::size_t>(i * nx + j)]; };
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nx; ++j) {
      if (j + 1 < nx && at(i, j) * at(i, j + 1) < 0.0)
        throw DivisionWindowError(op, param, "denominator changes sign inside the window");
      if (i + 1 < nt && at(i, j) * at(i + 1, j) < 0.0)
        throw DivisionWindowError(op, param, "denominator changes sign inside the window");
    }
}

template <class Get>
std::vector<double> collect(const std::vector<Derivatives>& s, Get get) {
  std::vector<double> out;
  out.reserve(s.size());
  for (const auto& d : s) out.push_back(get(d));
  return out;
}

struct Accumulator {
  double max_abs = 0.0;
  double scale = 0.0;

  void add(double lhs, std::initializer_list<double> rhs_terms) {
    double rhs = 0.0;
    scale = std::max(scale, std::abs(lhs));
    for (double term : rhs_terms) {
      rhs += term;
      scale = std::max(scale, std::abs(term));
    }
    const double r = std::abs(lhs - rhs);
    max_abs = std::isnan(r) ? r : std::max(max_abs, r);
  }
};

IdentityResidual finish(const char* name, const SmoothPair& p, const Window& w,
                        const Accumulator& acc) {
  IdentityResidual r;
  r.identity_name = name;
  r.pair_label = p.label;
  r.max_abs = acc.max_abs;
  r.scale = acc.scale;
  r.sample_count = w.samples();
  return r;
}

}  // namespace

SmoothFunction ExpSum::function() const {
  return SmoothFunction(
      [s = *this](double t, double x) {
        Derivatives d;
        d.f = s.constant;
        for (const auto& term : s.terms) {
          const double e = term.c * std::exp(term.a * x + term.b * t);
          d.f += e;
          d.ft += term.b * e;
          d.fx += term.a * e;
          d.ftt += term.b * term.b * e;
          d.ftx += term.a * term.b * e;
          d.fxx += term.a * term.a * e;
        }
        return d;
      },
      label());
}

ExpSum ExpSum::dx() const {
  ExpSum out;
  for (const auto& term : terms)
    if (term.a != 0.0) out.terms.push_back({term.c * term.a, term.a, term.b});
  return out;
}

ExpSum ExpSum::scaled(double s) const {
  ExpSum out{constant * s, terms};
  for (auto& term : out.terms) term.c *= s;
  return out;
}

bool ExpSum::solves_heat() const {
  return std::all_of(terms.begin(), terms.end(),
                     [](const ExpTerm& term) { return term.b == term.a * term.a; });
}

std::string ExpSum::label() const {
  auto linear = [](double a, const char* var) -> std::string {
    if (a == 0.0) return {};
    if (a == 1.0) return var;
    if (a == -1.0) return std::string("-") + var;
    return num(a) + var;
  };
  std::string s = constant != 0.0 || terms.empty() ? num(constant) : "";
  for (const auto& term : terms) {
    std::string exponent = linear(term.a, "x");
    const std::string bt = linear(term.b, "t");
    if (!exponent.empty() && !bt.empty() && bt.front() != '-') exponent += "+";
    exponent += bt;
    const double c = std::abs(term.c);
    if (!s.empty() || term.c < 0) s += term.c < 0 ? "-" : "+";
    s += (c == 1.0 ? "" : num(c) + "*") + "e^(" + (exponent.empty() ? "0" : exponent) + ")";
  }
  return s;
}

ExpSum shifted_cosh(double a, double x0) {
  return {0.0, {{0.5 * std::exp(-a * x0), a, a * a}, {0.5 * std::exp(a * x0), -a, a * a}}};
}

ExpSum random_heat_sum(std::mt19937_64& rng, int terms) {
  std::uniform_real_distribution<double> coef(0.2, 1.0), rate(0.3, 1.5);
  ExpSum s{1.0, {}};
  for (int k = 0; k < terms; ++k) {
    const double c = coef(rng);
    const double a = rate(rng);
    s.terms.push_back({c, a, a * a});
  }
  return s;
}

ExpSum random_exp_sum(std::mt19937_64& rng, int terms) {
  std::uniform_real_distribution<double> coef(0.2, 1.0), rate(-1.5, 1.5);
  ExpSum s{1.0, {}};
  for (int k = 0; k < terms; ++k) {
    const double c = coef(rng);
    const double a = rate(rng);
    s.terms.push_back({c, a, rate(rng)});
  }
  return s;
}

SmoothFunction poly_t(std::vector<double> coeffs) {
  std::string label = "poly_t(";
  for (std::size_t k = 0; k < coeffs.size(); ++k) label += (k ? "," : "") + num(coeffs[k]);
  label += ")";
  return SmoothFunction(
      [c = std::move(coeffs)](double t, double) {
        Derivatives d;
        // Horner for f, f', f''.
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
          d.ftt = d.ftt * t + 2.0 * d.ft;
          d.ft = d.ft * t + d.f;
          d.f = d.f * t + *it;
        }
        return d;
      },
      label);
}

SmoothFunction exp_x_gauss_t() {
  return SmoothFunction(
      [](double t, double x) {
        const double e = std::exp(x + t * t);
        return Derivatives{e, 2.0 * t * e, e, (2.0 + 4.0 * t * t) * e, 2.0 * t * e, e};
      },
      "e^x*e^(t^2)");
}

SmoothPair gradient_pair(const ExpSum& v, std::string label) {
  const ExpSum u = v.dx().scaled(-1.0);
  if (label.empty()) label = "v=" + v.label();
  return {u.function(), v.function(), v.solves_heat(), true, std::move(label)};
}

SmoothPair free_pair(SmoothFunction u, SmoothFunction v, std::string label) {
  if (label.empty()) label = "u=" + u.label() + ",v=" + v.label();
  return {std::move(u), std::move(v), false, false, std::move(label)};
}

double Window::t(int i) const { return t0 + (t1 - t0) * i / (nt - 1); }
double Window::x(int j) const { return x0 + (x1 - x0) * j / (nx - 1); }

IdentityResidual leibniz_residual(const SmoothPair& p, const Window& w) {
  constexpr const char* op = "leibniz_residual";
  const auto l = sample(p, w, op);
  require_nonvanishing(collect(l.v, [](const Derivatives& d) { return d.f; }), l.nt, l.nx, op,
                       "v");
  Accumulator acc;
  for (std::size_t k = 0; k < l.u.size(); ++k) {
    const auto& u = l.u[k];
    const auto& v = l.v[k];
    const double lhs = (Jet::of(u) / Jet::of(v)).t;
    const double v2 = v.f * v.f;
    acc.add(lhs, {u.ft * v.f / v2, -v.ft * u.f / v2});
  }
  return finish("leibniz", p, w, acc);
}

IdentityResidual factorization_residual(const SmoothPair& p, const Window& w, IdentityForm form) {
  constexpr const char* op = "factorization_residual";
  const auto l = sample(p, w, op);
  require_nonvanishing(collect(l.v, [](const Derivatives& d) { return d.f; }), l.nt, l.nx, op,
                       "v");
  require_nonvanishing(collect(l.u, [](const Derivatives& d) { return d.f; }), l.nt, l.nx, op,
                       "u");
  const double sign = form == IdentityForm::Consistent ? 1.0 : -1.0;
  Accumulator acc;
  for (std::size_t k = 0; k < l.u.size(); ++k) {
    const auto& u = l.u[k];
    const auto& v = l.v[k];
    const Jet psi = -(Jet::of(u) / Jet::of(v));
    acc.add(psi.t, {sign * (u.ft / u.f) * psi.f, -sign * (v.ft / v.f) * psi.f});
  }
  return finish(form == IdentityForm::Consistent ? "factorization" : "factorization_printed", p,
                w, acc);
}

IdentityResidual advection_identity_residual(const SmoothPair& p, const Window& w,
                                             IdentityForm form) {
  constexpr const char* op = "advection_identity_residual";
  const auto l = sample(p, w, op);
  require_nonvanishing(collect(l.v, [](const Derivatives& d) { return d.f; }), l.nt, l.nx, op,
                       "v");
  require_nonvanishing(collect(l.v, [](const Derivatives& d) { return d.fx; }), l.nt, l.nx, op,
                       "d_x v");
  const double sign = form == IdentityForm::Consistent ? 1.0 : -1.0;
  Accumulator acc;
  double advection = 0.0;
  for (std::size_t k = 0; k < l.u.size(); ++k) {
    const auto& v = l.v[k];
    const Jet psi = -(Jet::of(l.u[k]) / Jet::of(v));
    const double transport = sign * (v.ftx / v.fx) * psi.f;
    const double advect = -psi.f * psi.x;
    const double cubic = -sign * (v.fx / v.f) * psi.f * psi.f;
    acc.add(psi.t, {transport, advect, cubic});
    advection = std::max(advection, std::abs(advect));
  }
  auto r = finish(form == IdentityForm::Consistent ? "advection" : "advection_printed", p, w,
                  acc);
  r.advection_max = advection;
  return r;
}

IdentityResidual gradient_square_identity(const SmoothPair& p, const Window& w) {
  constexpr const char* op = "gradient_square_identity";
  const auto l = sample(p, w, op);
  require_nonvanishing(collect(l.v, [](const Derivatives& d) { return d.fx; }), l.nt, l.nx, op,
                       "d_x v");
  Accumulator acc;
  for (std::size_t k = 0; k < l.u.size(); ++k) {
    const auto& v = l.v[k];
    const Jet u = Jet::of(l.u[k]);
    acc.add((u * u).x, {2.0 * (v.fxx / v.fx) * u.f * u.f});
  }
  return finish("gradient_square", p, w, acc);
}

double emergent_field(const SmoothPair& p, double t, double x) {
  const auto v = p.v(t, x);
  if (v.f == 0.0) throw DivisionWindowError("emergent_field", "v", "v vanishes");
  return -p.u(t, x).f / v.f;
}

std::string identity_name(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::Leibniz: return "leibniz";
    case IdentityKind::Factorization: return "factorization";
    case IdentityKind::Advection: return "advection";
    case IdentityKind::GradientSquare: return "gradient_square";
  }
  return "unknown";
}

IdentityResidual evaluate_identity(IdentityKind kind, const SmoothPair& p, const Window& w) {
  switch (kind) {
    case IdentityKind::Leibniz: return leibniz_residual(p, w);
    case IdentityKind::Factorization: return factorization_residual(p, w);
    case IdentityKind::Advection: return advection_identity_residual(p, w);
    case IdentityKind::GradientSquare: return gradient_square_identity(p, w);
  }
  throw DomainError("evaluate_identity", "kind", "unknown identity");
}

std::vector<IdentityCase> identity_catalogue(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Window unit{};
  const Window later{1.0, 2.0, -1.0, 1.0};
  const ExpSum shock{1.0, {{1.0, 1.0, 1.0}}};
  const ExpSum steep{1.0, {{1.0, 2.0, 4.0}}};
  const ExpSum single{0.0, {{1.0, 1.0, 1.0}}};
  const ExpSum random_v = random_exp_sum(rng, 3);
  const ExpSum random_u = random_exp_sum(rng, 3);
  const ExpSum random_heat = random_heat_sum(rng, 3);

  using K = IdentityKind;
  std::vector<IdentityCase> cases = {
      {K::Leibniz, free_pair(shock.function(), shock.function(), "u=v"), unit},
      {K::Leibniz, free_pair(poly_t({0, 0, 1}), poly_t({0, 1})), later},
      {K::Leibniz, free_pair(random_u.function(), random_v.function(), "random_exp_sum"), unit},
      {K::Factorization, free_pair(shock.scaled(3.0).function(), shock.function(), "u=3v"),
       unit},
      {K::Factorization,
       free_pair(ExpSum{0.0, {{1.0, 0.0, 2.0}}}.function(), ExpSum{0.0, {{1.0, 0.0, 1.0}}}.function(),
                 "u=e^(2t),v=e^t"),
       unit},
      {K::Factorization, gradient_pair(shock), unit},
      {K::Factorization, gradient_pair(random_heat, "random_heat_sum"), unit},
      {K::Advection, gradient_pair(shock), unit},
      {K::Advection, gradient_pair(steep), unit},
      {K::Advection, gradient_pair(random_heat, "random_heat_sum"), unit},
      {K::GradientSquare, gradient_pair(single), unit},
      {K::GradientSquare, gradient_pair(shock), unit},
      {K::GradientSquare, gradient_pair(random_heat, "random_heat_sum"), unit},
  };

  // Negative controls: the constraint each identity relies on is dropped.
  SmoothFunction gauss = exp_x_gauss_t();
  SmoothFunction minus_gauss(
      [gauss](double t, double x) {
        const auto d = gauss(t, x);  // d_x of e^{x + t^2} is itself
        return Derivatives{-d.f, -d.ft, -d.fx, -d.ftt, -d.ftx, -d.fxx};
      },
      "-e^x*e^(t^2)");
  SmoothPair heat_off{minus_gauss, gauss, false, true, "heat_off:v=e^x*e^(t^2)"};
  cases.push_back({K::Advection, heat_off, unit, false});
  cases.push_back({K::GradientSquare, free_pair(shock.function(), shock.function(), "u=v"),
                   unit, false});
  return cases;
}

VerificationReport identity_report(const IdentityCase& c, const IdentityResidual& r) {
  VerificationReport report;
  report.name = "identity_" + r.identity_name + (c.conforming ? "" : "_negative") + ":" +
                r.pair_label;
  if (c.conforming) {
    report.at_most("max_abs", r.max_abs, kIdentityTolerance * r.scale);
    if (c.kind == IdentityKind::Advection)
      report.at_least("advection_max", r.advection_max, kNegativeControlFloor * r.scale);
  } else {
    report.at_least("max_abs", r.max_abs, kNegativeControlFloor * r.scale);
  }
  report.metric("scale", r.scale).metric("samples", r.sample_count);
  return report;
}

}  // namespace sglab
