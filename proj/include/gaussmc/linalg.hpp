#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "gaussmc/common.hpp"

namespace gaussmc {

/// Smallest eigenvalue of a self-adjoint (real symmetric or complex Hermitian)
/// matrix. Only the lower triangle is read.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real min_eigenvalue(
    const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  if (m.rows() == 0) return std::numeric_limits<typename Eigen::NumTraits<typename Derived::Scalar>::Real>::infinity();
  Eigen::SelfAdjointEigenSolver<Plain> es(m.eval(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

/// Largest absolute entry of m - m^T.
template <typename Derived>
typename Derived::RealScalar max_asymmetry(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

/// Operator norm (largest singular value).
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real spectral_norm(
    const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(m.eval());
  return svd.singularValues()(0);
}

/// Symmetric inverse square root through an eigendecomposition. Eigenvalues
/// below `floor` are rejected.
template <typename Derived>
typename Derived::PlainObject inverse_sqrt_psd(
    const Eigen::MatrixBase<Derived>& m, double floor = tol::kInverseSqrtFloor) {
  using Plain = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<Plain> es(m.eval());
  const auto& w = es.eigenvalues();
  if (w.size() > 0 && w(0) <= floor) {
    throw UnphysicalError("matrix is singular or indefinite (min eigenvalue " +
                          std::to_string(static_cast<double>(w(0))) + ")");
  }
  return es.eigenvectors() * w.cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().adjoint();
}

/// Phase-space coordinate indices (2j, 2j+1) of the given modes, in order.
inline std::vector<Eigen::Index> coordinate_indices(std::span<const int> modes) {
  std::vector<Eigen::Index> out;
  out.reserve(modes.size() * 2);
  for (int j : modes) {
    out.push_back(2 * static_cast<Eigen::Index>(j));
    out.push_back(2 * static_cast<Eigen::Index>(j) + 1);
  }
  return out;
}

/// Block-diagonal direct sum of square blocks.
template <typename Scalar>
Matrix<Scalar> direct_sum(std::span<const Matrix<Scalar>> blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

template <typename Scalar>
Matrix<Scalar> direct_sum(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  const Matrix<Scalar> blocks[] = {a, b};
  return direct_sum<Scalar>(std::span<const Matrix<Scalar>>(blocks));
}

}  // namespace gaussmc
