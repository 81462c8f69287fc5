#pragma once

// Dense complex matrix kernel: exponential, principal logarithm, inverse,
// spectral norm and spectrum. Matrix functions go through a complex
// eigendecomposition f(M) = V f(D) V^-1 while the eigenvector basis is well
// conditioned, and through Schur-based scaling-and-squaring otherwise.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <limits>
#include <string_view>

#include "sglab/error.hpp"

namespace sglab {

using Complex = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;

inline constexpr double kBranchTolerance = 1e-8;
inline constexpr double kSingularRelTolerance = 1e-12;
inline constexpr double kEigenConditionLimit = 1e8;

template <class Derived>
using ComplexMatrixOf =
    Eigen::Matrix<std::complex<typename Derived::RealScalar>, Eigen::Dynamic,
                  Eigen::Dynamic>;

template <class Real>
struct BasicSpectrum {
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> eigenvalues;
  /// sigma_max / sigma_min of the eigenvector matrix (infinite if singular).
  Real conditioning = Real(1);
};
using Spectrum = BasicSpectrum<double>;

template <class Derived>
void require_operator(const Eigen::MatrixBase<Derived>& m, std::string_view op) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw ShapeError(op, "M", "operator must be square with dim >= 1");
  if (!m.allFinite()) throw DomainError(op, "M", "operator has non-finite entries");
}

template <class Derived>
ComplexMatrixOf<Derived> identity_like(const Eigen::MatrixBase<Derived>& m) {
  return ComplexMatrixOf<Derived>::Identity(m.rows(), m.cols());
}

/// Distance of z to the closed half-line (-inf, 0].
template <class Real>
Real distance_to_branch_cut(std::complex<Real> z) {
  return z.real() <= Real(0) ? std::abs(z.imag()) : std::abs(z);
}

template <class Derived>
typename Derived::RealScalar op_norm(const Eigen::MatrixBase<Derived>& m) {
  require_operator(m, "op_norm");
  ComplexMatrixOf<Derived> c = m.template cast<std::complex<typename Derived::RealScalar>>();
  Eigen::JacobiSVD<ComplexMatrixOf<Derived>> svd(c);
  return svd.singularValues()(0);
}

template <class Derived>
typename Derived::RealScalar max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

namespace detail {

template <class Matrix>
typename Matrix::RealScalar condition_number(const Matrix& v) {
  using Real = typename Matrix::RealScalar;
  Eigen::JacobiSVD<Matrix> svd(v);
  const auto& sv = svd.singularValues();
  const Real smin = sv(sv.size() - 1);
  return smin > Real(0) ? sv(0) / smin : std::numeric_limits<Real>::infinity();
}

template <class Matrix>
bool is_diagonal(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != typename Matrix::Scalar(0)) return false;
  return true;
}

template <class Matrix>
struct EigenBasis {
  Eigen::ComplexEigenSolver<Matrix> solver;
  typename Matrix::RealScalar conditioning;
};

template <class Matrix>
EigenBasis<Matrix> eigen_basis(const Matrix& m, std::string_view op) {
  EigenBasis<Matrix> basis{Eigen::ComplexEigenSolver<Matrix>(m, true), 0};
  if (basis.solver.info() != Eigen::Success)
    throw ConvergenceError(op, "M", "eigensolver did not converge");
  basis.conditioning = condition_number(Matrix(basis.solver.eigenvectors()));
  return basis;
}

template <class Matrix, class F>
Matrix apply_in_basis(const EigenBasis<Matrix>& basis, F&& f) {
  const auto& v = basis.solver.eigenvectors();
  const auto fd = basis.solver.eigenvalues().unaryExpr(f).eval();
  return v * fd.asDiagonal() * v.partialPivLu().inverse();
}

template <class Matrix>
void require_finite_result(const Matrix& r, std::string_view op) {
  if (!r.allFinite()) throw OverflowError(op, "M", "result exceeds floating-point range");
}

}  // namespace detail

template <class Derived>
BasicSpectrum<typename Derived::RealScalar> spectrum_of(const Eigen::MatrixBase<Derived>& m) {
  require_operator(m, "spectrum_of");
  using Matrix = ComplexMatrixOf<Derived>;
  const Matrix c = m.template cast<typename Matrix::Scalar>();
  auto basis = detail::eigen_basis(c, "spectrum_of");
  return {basis.solver.eigenvalues(), basis.conditioning};
}

template <class Derived>
ComplexMatrixOf<Derived> mat_exp(const Eigen::MatrixBase<Derived>& m) {
  require_operator(m, "mat_exp");
  using Matrix = ComplexMatrixOf<Derived>;
  using Scalar = typename Matrix::Scalar;
  const Matrix c = m.template cast<Scalar>();
  if (c.isZero(0)) return identity_like(m);

  Matrix result;
  if (detail::is_diagonal(c)) {
    result = c.diagonal().array().exp().matrix().asDiagonal();
  } else {
    auto basis = detail::eigen_basis(c, "mat_exp");
    if (basis.conditioning <= kEigenConditionLimit)
      result = detail::apply_in_basis(basis, [](Scalar z) { return std::exp(z); });
    else
      result = c.exp();
  }
  detail::require_finite_result(result, "mat_exp");
  return result;
}

/// Principal logarithm. Refuses inputs with an eigenvalue within
/// `branch_tolerance` of (-inf, 0].
template <class Derived>
ComplexMatrixOf<Derived> mat_log_principal(const Eigen::MatrixBase<Derived>& m,
                                           double branch_tolerance = kBranchTolerance) {
  require_operator(m, "mat_log_principal");
  using Matrix = ComplexMatrixOf<Derived>;
  using Scalar = typename Matrix::Scalar;
  const Matrix c = m.template cast<Scalar>();

  if (detail::is_diagonal(c)) {
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      if (distance_to_branch_cut(c(i, i)) <= branch_tolerance)
        throw BranchCutError("mat_log_principal", "M",
                             "eigenvalue on or near the closed negative real axis");
    Matrix result = c.diagonal().array().log().matrix().asDiagonal();
    return result;
  }

  auto basis = detail::eigen_basis(c, "mat_log_principal");
  for (const Scalar& z : basis.solver.eigenvalues())
    if (distance_to_branch_cut(z) <= branch_tolerance)
      throw BranchCutError("mat_log_principal", "M",
                           "eigenvalue on or near the closed negative real axis");
  if (basis.conditioning <= kEigenConditionLimit)
    return detail::apply_in_basis(basis, [](Scalar z) { return std::log(z); });
  Matrix result = c.log();
  detail::require_finite_result(result, "mat_log_principal");
  return result;
}

template <class Derived>
ComplexMatrixOf<Derived> mat_inv(const Eigen::MatrixBase<Derived>& m) {
  require_operator(m, "mat_inv");
  using Matrix = ComplexMatrixOf<Derived>;
  const Matrix c = m.template cast<typename Matrix::Scalar>();
  Eigen::JacobiSVD<Matrix> svd(c);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= kSingularRelTolerance * sv(0))
    throw SingularError("mat_inv", "M", "smallest singular value below threshold");
  return c.partialPivLu().inverse();
}

/// Real-angle rotation [[cos, -sin], [sin, cos]].
inline DenseOperator rotation(double theta) {
  DenseOperator r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

}  // namespace sglab
