#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "sglab/logrep.hpp"

using namespace sglab;

namespace {

DenseOperator skew(double w) {
  DenseOperator m(2, 2);
  m << 0.0, -w, w, 0.0;
  return m;
}

DenseOperator random_operator(std::mt19937_64& rng, Eigen::Index n, double norm) {
  std::normal_distribution<double> g;
  DenseOperator m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = Complex(g(rng), g(rng));
  return m * (norm / op_norm(m));
}

CoordinatePoint T(double v) { return {v, "t"}; }

}  // namespace

TEST_CASE("default step scales with |t|") {
  CHECK(default_step(0.5) == 1e-4);
  CHECK(default_step(-20.0) == doctest::Approx(2e-3));
}

TEST_CASE("identity family recovers the zero generator") {
  const auto family = build_family({ConstantGenerator{DenseOperator::Zero(3, 3)}}, 1.0);
  const auto r = log_representation(family, T(0.2), T(0.0), KappaShift(1.0));
  CHECK(max_abs(r.generator_estimate) == 0.0);
  CHECK(*r.residual_vs_true == 0.0);
  // kappa = 0 is fine while U itself stays off the cut
  CHECK(max_abs(log_representation(family, T(0.2), T(0.0), KappaShift(0.0)).generator_estimate) == 0.0);
}

TEST_CASE("kappa = -1 on the identity family hits the branch cut") {
  const auto family = build_family({ConstantGenerator{DenseOperator::Zero(2, 2)}}, 1.0);
  CHECK_FALSE(kappa_admissible(family, T(0.0), T(0.0), KappaShift(-1.0)));
  try {
    log_representation(family, T(0.0), T(0.0), KappaShift(-1.0));
    FAIL("expected BranchCutError");
  } catch (const BranchCutError& e) {
    CHECK(e.param() == "kappa");
    CHECK(e.op() == "log_representation");
  }
}

TEST_CASE("kappa = 0 with a rotation through pi is rejected with a hint") {
  const auto family = build_family({ConstantGenerator{skew(std::numbers::pi)}}, 2.0);
  try {
    log_representation(family, T(1.0), T(0.0), KappaShift(0.0));
    FAIL("expected BranchCutError");
  } catch (const BranchCutError& e) {
    CHECK(std::string(e.what()).find("kappa != 0") != std::string::npos);
  }
  // a shift moves the spectrum off the cut
  const auto r = log_representation(family, T(1.0), T(0.0), KappaShift(Complex(0.0, 1.0)));
  CHECK(*r.residual_vs_true < 1e-6);
}

TEST_CASE("rotation generator is recovered to second order in h") {
  const auto family = build_family({ConstantGenerator{skew(1.0)}}, 1.0);
  auto err = [&](double h) {
    return *log_representation(family, T(0.3), T(-0.2), KappaShift(1.0), {.step = h})
                .residual_vs_true;
  };
  CHECK(err(1e-2) / err(5e-3) == doctest::Approx(4.0).epsilon(0.02));
  CHECK(err(1e-4) < 1e-8);
  const double rich = *log_representation(family, T(0.3), T(-0.2), KappaShift(1.0),
                                          {.step = 1e-2, .richardson = true})
                           .residual_vs_true;
  CHECK(rich < 1e-3 * err(1e-2));
}

TEST_CASE("random families: recovery and kappa independence") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = random_operator(rng, 1 + trial % 5, 1.8);
    const auto family = build_family({ConstantGenerator{m}}, 1.0);
    std::vector<DenseOperator> estimates;
    for (Complex k : {Complex(0.3), Complex(1.0), Complex(2.0), Complex(1.0, 1.0)}) {
      const auto r = log_representation(family, T(0.4), T(-0.1), KappaShift(k));
      CHECK(*r.residual_vs_true < 1e-6);
      estimates.push_back(r.generator_estimate);
    }
    for (std::size_t a = 1; a < estimates.size(); ++a)
      CHECK(max_abs(estimates[a] - estimates[0]) < 1e-8);
  }
}

TEST_CASE("modulated family recovers a(t) M") {
  const auto c = CatalogueFunction::parse("sin:2");
  const auto family = build_family({ModulatedGenerator{c, skew(0.5)}}, 1.0);
  const auto r = log_representation(family, T(0.6), T(0.0), KappaShift(1.0));
  CHECK(max_abs(r.generator_estimate - 2.0 * std::sin(0.6) * skew(0.5)) < 1e-7);
}

TEST_CASE("normalized and operator forms") {
  std::mt19937_64 rng(3);
  const auto m = random_operator(rng, 3, 1.0);
  const auto family = build_family({ConstantGenerator{m}}, 1.0);
  const KappaShift k(1.5);
  const DenseOperator n = normalized_generator(family, T(0.5), T(0.1), k);
  CHECK(max_abs(n - m) < 1e-7);
  const DenseOperator g = generator_times_evolution(family, T(0.5), T(0.1), k);
  CHECK(max_abs(g - m * family(0.5, 0.1)) < 1e-7);
  const DenseOperator ch = generalized_cole_hopf(family, T(0.5), T(0.1), k, 4.0);
  CHECK(max_abs(ch + m) < 1e-7);  // -2 / sqrt(4) = -1
}

TEST_CASE("domain errors") {
  const auto family = build_family({ConstantGenerator{skew(1.0)}}, 1.0);
  CHECK_THROWS_AS(log_representation(family, T(0.99995), T(0.0), KappaShift()), DomainError);
  CHECK_THROWS_AS(log_representation(family, T(0.5), T(0.0), KappaShift(), {.step = -1e-3}),
                  DomainError);
  CHECK_THROWS_AS(log_representation(family, {0.5, "x"}, T(0.0), KappaShift()), DomainError);
  CHECK_THROWS_AS(KappaShift(Complex(std::nan(""), 0.0)), DomainError);
}
