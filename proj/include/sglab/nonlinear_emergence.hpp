#pragma once

// Lattice checks of the quotient identities behind the emergence of the
// Burgers advection term from a pair (u, v) with u = -d_x v and v' = d_x^2 v.
// All derivatives are closed form; left-hand sides are differentiated by
// forward-mode jets so they do not reuse the right-hand-side algebra.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sglab/error.hpp"
#include "sglab/report.hpp"

namespace sglab {

/// Value and partial derivatives up to second order at one (t, x).
struct Derivatives {
  double f = 0.0;
  double ft = 0.0;
  double fx = 0.0;
  double ftt = 0.0;
  double ftx = 0.0;
  double fxx = 0.0;
};

/// First-order jet in (t, x).
struct Jet {
  double f = 0.0;
  double t = 0.0;
  double x = 0.0;

  static Jet of(const Derivatives& d) { return {d.f, d.ft, d.fx}; }
  static Jet constant(double c) { return {c, 0.0, 0.0}; }
};

inline Jet operator-(const Jet& a) { return {-a.f, -a.t, -a.x}; }
inline Jet operator+(const Jet& a, const Jet& b) { return {a.f + b.f, a.t + b.t, a.x + b.x}; }
inline Jet operator-(const Jet& a, const Jet& b) { return {a.f - b.f, a.t - b.t, a.x - b.x}; }
inline Jet operator*(const Jet& a, const Jet& b) {
  return {a.f * b.f, a.t * b.f + a.f * b.t, a.x * b.f + a.f * b.x};
}
inline Jet operator/(const Jet& a, const Jet& b) {
  const double q = a.f / b.f;
  return {q, (a.t - q * b.t) / b.f, (a.x - q * b.x) / b.f};
}

/// A closed-form scalar function of (t, x) carrying its own derivatives.
class SmoothFunction {
 public:
  using Evaluator = std::function<Derivatives(double t, double x)>;

  SmoothFunction(Evaluator eval, std::string label)
      : eval_(std::move(eval)), label_(std::move(label)) {}

  Derivatives operator()(double t, double x) const { return eval_(t, x); }
  const std::string& label() const { return label_; }

 private:
  Evaluator eval_;
  std::string label_;
};

struct ExpTerm {
  double c = 1.0;
  double a = 0.0;  // x rate
  double b = 0.0;  // t rate
};

/// constant + sum c e^{a x + b t}.
struct ExpSum {
  double constant = 0.0;
  std::vector<ExpTerm> terms;

  SmoothFunction function() const;
  ExpSum dx() const;
  ExpSum scaled(double s) const;
  /// Every term has b == a^2, so f' = d_x^2 f exactly.
  bool solves_heat() const;
  std::string label() const;
};

/// cosh(a (x - x0)) e^{a^2 t}, written as two exponentials.
ExpSum shifted_cosh(double a, double x0);
/// Random heat solution 1 + sum c e^{a x + a^2 t} with c in [0.2, 1], |a| in [0.3, 1.5].
ExpSum random_heat_sum(std::mt19937_64& rng, int terms);
/// Random positive exponential sum with unconstrained rates.
ExpSum random_exp_sum(std::mt19937_64& rng, int terms);

/// sum c_k t^k.
SmoothFunction poly_t(std::vector<double> coeffs);
/// e^{x} e^{t^2}: separable, not a heat solution.
SmoothFunction exp_x_gauss_t();

struct SmoothPair {
  SmoothFunction u;
  SmoothFunction v;
  /// v' = d_x^2 v analytically and u = -d_x v.
  bool heat_constrained = false;
  /// u = -d_x v (needed by the gradient-square identity).
  bool gradient_constrained = false;
  std::string label;
};

/// u = -d_x v; the heat flag follows v.
SmoothPair gradient_pair(const ExpSum& v, std::string label = {});
SmoothPair free_pair(SmoothFunction u, SmoothFunction v, std::string label = {});

struct Window {
  double t0 = 0.0;
  double t1 = 1.0;
  double x0 = -1.0;
  double x1 = 1.0;
  int nt = 21;
  int nx = 21;

  int samples() const { return nt * nx; }
  double t(int i) const;
  double x(int j) const;
};

struct IdentityResidual {
  std::string identity_name;
  std::string pair_label;
  double max_abs = 0.0;
  /// Largest lattice magnitude of the left side or any right-side term.
  double scale = 0.0;
  int sample_count = 0;
  /// Largest |advection term|; only set by the advection identity.
  double advection_max = 0.0;

  double relative() const { return scale > 0.0 ? max_abs / scale : max_abs; }
};

inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr double kNegativeControlFloor = 1e-3;
inline constexpr double kDivisionFloor = 1e-12;

enum class IdentityForm { Consistent, AsPrinted };

/// (u v^-1)' = (u'v - v'u) v^-2.
IdentityResidual leibniz_residual(const SmoothPair& p, const Window& w);
/// (-u v^-1)' = [u'u^-1 - v'v^-1](-u v^-1); AsPrinted swaps the bracket.
IdentityResidual factorization_residual(const SmoothPair& p, const Window& w,
                                        IdentityForm form = IdentityForm::Consistent);
/// With psi = -u v^-1: psi' = (d_x v)'(d_x v)^-1 psi - psi d_x psi - (d_x v) v^-1 psi^2.
IdentityResidual advection_identity_residual(const SmoothPair& p, const Window& w,
                                             IdentityForm form = IdentityForm::Consistent);
/// d_x u^2 = 2 (d_x^2 v)(d_x v)^-1 u^2.
IdentityResidual gradient_square_identity(const SmoothPair& p, const Window& w);

/// -u v^-1 at one point (the Cole-Hopf field at mu = 1, up to -1/2).
double emergent_field(const SmoothPair& p, double t, double x);

enum class IdentityKind { Leibniz, Factorization, Advection, GradientSquare };
std::string identity_name(IdentityKind kind);
IdentityResidual evaluate_identity(IdentityKind kind, const SmoothPair& p, const Window& w);

struct IdentityCase {
  IdentityKind kind;
  SmoothPair pair;
  Window window;
  /// false for negative controls, which must miss by kNegativeControlFloor * scale.
  bool conforming = true;
};

/// Conforming pairs for every identity plus one negative control per constrained identity.
std::vector<IdentityCase> identity_catalogue(std::uint64_t seed);

VerificationReport identity_report(const IdentityCase& c, const IdentityResidual& r);

}  // namespace sglab
