#pragma once

#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "sglab/catalogue.hpp"
#include "sglab/operator_core.hpp"
#include "sglab/report.hpp"

namespace sglab {

inline constexpr double kSemigroupTolerance = 1e-10;

/// K(x) = M for every x.
struct ConstantGenerator {
  DenseOperator matrix;
};

/// K(x) = a(x) M. All values are multiples of one fixed M, so K(x) commutes
/// with every U(x, xi).
struct ModulatedGenerator {
  CatalogueFunction coefficient;
  DenseOperator matrix;
};

struct GeneratorSpec {
  std::variant<ConstantGenerator, ModulatedGenerator> kind;
  /// Evolution direction ("t", "x1", ...). Never enters any computation.
  std::string coordinate_label = "t";
};

struct CoordinatePoint {
  double value = 0.0;
  std::string label = "t";
};

/// Two-parameter group U(t, s) on [-T, T] generated by a commuting generator.
class EvolutionFamily {
 public:
  EvolutionFamily(GeneratorSpec spec, double half_width);

  /// U(t, s); exactly I when t == s. Throws DomainError outside [-T, T].
  DenseOperator operator()(double t, double s) const;
  DenseOperator evaluate(const CoordinatePoint& t, const CoordinatePoint& s) const;

  /// The exact generator K(t) (M, or a(t) M).
  DenseOperator generator_at(double t) const;

  const GeneratorSpec& spec() const { return spec_; }
  double half_width() const { return half_width_; }
  Eigen::Index dim() const { return matrix().rows(); }
  bool contains(double t) const { return t >= -half_width_ && t <= half_width_; }
  const std::string& label() const { return spec_.coordinate_label; }

 private:
  const DenseOperator& matrix() const;
  /// The scalar tau such that U(t, s) = exp(tau M).
  double exponent(double t, double s) const;
  void require_label(const CoordinatePoint& p, const char* param) const;

  GeneratorSpec spec_;
  double half_width_;
};

EvolutionFamily build_family(GeneratorSpec spec, double half_width);

using CoordinateTriple = std::tuple<double, double, double>;

/// Max over triples (t, r, s) of ||U(t,r)U(r,s) - U(t,s)||, ||U(s,s) - I||
/// and ||U(s,t)U(t,s) - I|| (spectral norm). Failures are reported.
VerificationReport check_group_axioms(const EvolutionFamily& family,
                                      const std::vector<CoordinateTriple>& triples,
                                      double tolerance = kSemigroupTolerance);

enum class DifferenceScheme { Central, Forward };

/// Difference quotient of U(. , t) at t: (U(t+h,t) - U(t-h,t)) / 2h, or the
/// one-sided (U(t+h,t) - I) / h.
DenseOperator pre_generator(const EvolutionFamily& family, const CoordinatePoint& t, double h,
                            DifferenceScheme scheme = DifferenceScheme::Central);

}  // namespace sglab
