#include "sglab/evolution_family.hpp"

#include <algorithm>
#include <cmath>

#include "sglab/quadrature.hpp"

namespace sglab {

EvolutionFamily::EvolutionFamily(GeneratorSpec spec, double half_width)
    : spec_(std::move(spec)), half_width_(half_width) {
  if (!(half_width_ > 0.0) || !std::isfinite(half_width_))
    throw DomainError("build_family", "T", "half-width must be positive and finite");
  require_operator(matrix(), "build_family");
}

const DenseOperator& EvolutionFamily::matrix() const {
  return std::visit([](const auto& k) -> const DenseOperator& { return k.matrix; }, spec_.kind);
}

double EvolutionFamily::exponent(double t, double s) const {
  if (const auto* mod = std::get_if<ModulatedGenerator>(&spec_.kind)) {
    const auto& a = mod->coefficient;
    return integrate([&a](double tau) { return a(tau); }, s, t, 1e-12, "build_family");
  }
  return t - s;
}

DenseOperator EvolutionFamily::operator()(double t, double s) const {
  if (!contains(t)) throw DomainError("EvolutionFamily::evaluate", "t", "outside [-T, T]");
  if (!contains(s)) throw DomainError("EvolutionFamily::evaluate", "s", "outside [-T, T]");
  if (t == s) return DenseOperator::Identity(dim(), dim());
  return mat_exp(exponent(t, s) * matrix());
}

void EvolutionFamily::require_label(const CoordinatePoint& p, const char* param) const {
  if (p.label != spec_.coordinate_label)
    throw DomainError("EvolutionFamily::evaluate", param,
                      "coordinate label '" + p.label + "' does not match family direction '" +
                          spec_.coordinate_label + "'");
}

DenseOperator EvolutionFamily::evaluate(const CoordinatePoint& t, const CoordinatePoint& s) const {
  require_label(t, "t");
  require_label(s, "s");
  return (*this)(t.value, s.value);
}

DenseOperator EvolutionFamily::generator_at(double t) const {
  if (const auto* mod = std::get_if<ModulatedGenerator>(&spec_.kind))
    return mod->coefficient(t) * mod->matrix;
  return matrix();
}

EvolutionFamily build_family(GeneratorSpec spec, double half_width) {
  return EvolutionFamily(std::move(spec), half_width);
}

VerificationReport check_group_axioms(const EvolutionFamily& family,
                                      const std::vector<CoordinateTriple>& triples,
                                      double tolerance) {
  const auto n = family.dim();
  const DenseOperator id = DenseOperator::Identity(n, n);
  double composition = 0.0, identity = 0.0, inverse = 0.0;
  for (const auto& [t, r, s] : triples) {
    const DenseOperator uts = family(t, s);
    composition = std::max(composition, op_norm(family(t, r) * family(r, s) - uts));
    identity = std::max(identity, op_norm(family(s, s) - id));
    inverse = std::max(inverse, op_norm(family(s, t) * uts - id));
  }
  VerificationReport report;
  report.name = "group_axioms";
  report.at_most("composition", composition, tolerance)
      .at_most("identity", identity, tolerance)
      .at_most("inverse", inverse, tolerance)
      .metric("triples", static_cast<double>(triples.size()));
  return report;
}

DenseOperator pre_generator(const EvolutionFamily& family, const CoordinatePoint& t, double h,
                            DifferenceScheme scheme) {
  if (!(h > 0.0)) throw DomainError("pre_generator", "h", "step must be positive");
  const CoordinatePoint ahead{t.value + h, t.label};
  const CoordinatePoint behind{t.value - h, t.label};
  if (!family.contains(ahead.value) ||
      (scheme == DifferenceScheme::Central && !family.contains(behind.value)))
    throw DomainError("pre_generator", "h", "t +- h leaves [-T, T]");

  if (scheme == DifferenceScheme::Forward) {
    const auto n = family.dim();
    return (family.evaluate(ahead, t) - DenseOperator::Identity(n, n)) / h;
  }
  return (family.evaluate(ahead, t) - family.evaluate(behind, t)) / (2.0 * h);
}

}  // namespace sglab
