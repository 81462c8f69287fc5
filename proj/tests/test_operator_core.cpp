#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "sglab/operator_core.hpp"

using namespace sglab;

namespace {

DenseOperator random_operator(std::mt19937_64& rng, Eigen::Index n, double norm) {
  std::normal_distribution<double> g;
  DenseOperator m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = Complex(g(rng), g(rng));
  return m * (norm / op_norm(m));
}

}  // namespace

TEST_CASE("exp of the zero matrix is exactly the identity") {
  const DenseOperator z = DenseOperator::Zero(4, 4);
  CHECK(mat_exp(z) == DenseOperator::Identity(4, 4));
}

TEST_CASE("exp and log of diagonal matrices act entrywise") {
  Eigen::VectorXcd d(3);
  d << Complex(0.5, 0), Complex(-1, 2), Complex(0, -0.25);
  const DenseOperator m = d.asDiagonal();
  const DenseOperator e = mat_exp(m);
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(e(i, i) == std::exp(d(i)));
  const DenseOperator l = mat_log_principal(e);
  CHECK(max_abs(l - m) < 1e-15);
}

TEST_CASE("exp of a skew generator is a rotation") {
  const double theta = 0.7;
  DenseOperator k(2, 2);
  k << 0.0, -theta, theta, 0.0;
  CHECK(max_abs(mat_exp(k) - rotation(theta)) < 1e-14);
}

TEST_CASE("exp of a Jordan block uses the fallback and stays exact") {
  DenseOperator n(2, 2);
  n << 0.0, 1.0, 0.0, 0.0;
  DenseOperator expect(2, 2);
  expect << 1.0, 1.0, 0.0, 1.0;
  CHECK(max_abs(mat_exp(n) - expect) < 1e-14);

  DenseOperator j(2, 2);
  j << 2.0, 1.0, 0.0, 2.0;
  DenseOperator l = mat_log_principal(j);
  DenseOperator lexpect(2, 2);
  lexpect << std::log(2.0), 0.5, 0.0, std::log(2.0);
  CHECK(max_abs(l - lexpect) < 1e-13);
}

TEST_CASE("log inverts exp on random matrices of norm below pi") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const auto m = random_operator(rng, 1 + trial % 6, 2.0);
    CHECK(max_abs(mat_log_principal(mat_exp(m)) - m) < 1e-12);
    CHECK(max_abs(mat_exp(m) * mat_exp(-m) - DenseOperator::Identity(m.rows(), m.cols())) < 1e-12);
  }
}

TEST_CASE("log refuses spectra on or near the closed negative axis") {
  DenseOperator neg = DenseOperator::Identity(2, 2) * -1.0;
  CHECK_THROWS_AS(mat_log_principal(neg), BranchCutError);
  CHECK_THROWS_AS(mat_log_principal(rotation(std::numbers::pi)), BranchCutError);
  DenseOperator zero = DenseOperator::Zero(2, 2);
  CHECK_THROWS_AS(mat_log_principal(zero), BranchCutError);
  DenseOperator near(1, 1);
  near(0, 0) = Complex(-1.0, 1e-9);
  CHECK_THROWS_AS(mat_log_principal(near), BranchCutError);
  near(0, 0) = Complex(-1.0, 1e-6);
  CHECK_NOTHROW(mat_log_principal(near));
  CHECK(distance_to_branch_cut(Complex(2.0, -1.0)) == doctest::Approx(std::sqrt(5.0)));
  CHECK(distance_to_branch_cut(Complex(-3.0, -0.5)) == 0.5);
}

TEST_CASE("inverse, norm and spectrum") {
  DenseOperator m(2, 2);
  m << 2.0, 1.0, 1.0, 3.0;
  CHECK(max_abs(mat_inv(m) * m - DenseOperator::Identity(2, 2)) < 1e-15);
  CHECK(op_norm(m) == doctest::Approx((5.0 + std::sqrt(5.0)) / 2.0));
  const auto s = spectrum_of(m);
  std::vector<double> ev = {s.eigenvalues(0).real(), s.eigenvalues(1).real()};
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx((5.0 - std::sqrt(5.0)) / 2.0));
  CHECK(ev[1] == doctest::Approx((5.0 + std::sqrt(5.0)) / 2.0));
  CHECK(s.conditioning < 10.0);

  DenseOperator singular(2, 2);
  singular << 1.0, 2.0, 2.0, 4.0;
  CHECK_THROWS_AS(mat_inv(singular), SingularError);
}

TEST_CASE("shape, domain and overflow errors") {
  DenseOperator rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(mat_exp(rect), ShapeError);
  CHECK_THROWS_AS(mat_exp(DenseOperator(0, 0)), ShapeError);
  DenseOperator bad = DenseOperator::Identity(2, 2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(mat_exp(bad), DomainError);
  CHECK_THROWS_AS(mat_exp(DenseOperator::Identity(2, 2) * 1000.0), OverflowError);
  try {
    mat_inv(DenseOperator::Zero(2, 2));
  } catch (const Error& e) {
    CHECK(e.op() == "mat_inv");
    CHECK(e.param() == "M");
  }
}

TEST_CASE("real input is accepted and promoted") {
  Eigen::Matrix2d r;
  r << 0.0, 1.0, -1.0, 0.0;
  const auto e = mat_exp(r);
  CHECK(std::abs(e(0, 0) - std::cos(1.0)) < 1e-15);
  CHECK(std::abs(e(0, 1) - std::sin(1.0)) < 1e-15);
}
