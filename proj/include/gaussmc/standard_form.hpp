#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "gaussmc/common.hpp"
#include "gaussmc/gaussian_ops.hpp"
#include "gaussmc/phase_space.hpp"

namespace gaussmc {

/// Standardized state together with the local unitary that produced it.
///
/// `standardized == apply_unitary(input, unitary())` holds for every mode that
/// is not flagged decoupled. For decoupled modes (lambda within 1e-9 of 1) the
/// correlation rows are zeroed after the transformation and the largest value
/// removed this way is kept in `decoupled_residual`.
template <typename Scalar = double>
struct StandardFormResult {
  GaussianState<Scalar> standardized;
  std::vector<Matrix2<Scalar>> local_symplectics;
  /// Displacement r of the witness unitary, r = S * mean(input).
  Vector<Scalar> displacement;
  std::vector<Scalar> lambdas;
  std::vector<bool> decoupled;
  Scalar decoupled_residual = 0;
  /// Rotation angles and squeezing parameters of the per-mode reduction
  /// S_j = squeeze(z_j) * rotation(theta_j), before any bipartite rotation.
  std::vector<Scalar> rotation_angles;
  std::vector<Scalar> squeezings;
  /// Diagonal cross block (nu1, nu2) for two-mode states, |nu1| >= |nu2|, nu1 >= 0.
  std::optional<Vector2<Scalar>> nu;

  GaussianUnitary<Scalar> unitary() const {
    return GaussianUnitary<Scalar>::local(std::span<const Matrix2<Scalar>>(local_symplectics), displacement);
  }

  bool any_decoupled() const {
    for (bool d : decoupled)
      if (d) return true;
    return false;
  }
};

namespace detail {

/// Angle in (-pi/4, pi/4] whose rotation diagonalizes the symmetric 2x2 block.
template <typename Scalar>
Scalar diagonalizing_angle(const Matrix2<Scalar>& g) {
  const Scalar b = Scalar(0.5) * (g(0, 1) + g(1, 0));
  if (b == Scalar(0)) return Scalar(0);
  constexpr Scalar kQuarter = std::numbers::pi_v<Scalar> / 4;
  Scalar theta = Scalar(0.5) * std::atan2(Scalar(2) * b, g(0, 0) - g(1, 1));
  if (theta > kQuarter) theta -= 2 * kQuarter;
  if (theta <= -kQuarter) theta += 2 * kQuarter;
  return theta;
}

template <typename Scalar>
void zero_decoupled_rows(Matrix<Scalar>& cov, const std::vector<bool>& decoupled, Scalar& residual) {
  const int m = static_cast<int>(decoupled.size());
  for (int j = 0; j < m; ++j) {
    if (!decoupled[j]) continue;
    for (int k = 0; k < m; ++k) {
      if (k == j) continue;
      auto blk = cov.template block<2, 2>(2 * j, 2 * k);
      residual = std::max(residual, blk.cwiseAbs().maxCoeff());
      blk.setZero();
      cov.template block<2, 2>(2 * k, 2 * j).setZero();
    }
  }
}

}  // namespace detail

/// Per-mode reduction: each diagonal block becomes lambda_j * I and the mean
/// is moved to zero by local rotations, squeezers and displacements.
template <typename Scalar>
StandardFormResult<Scalar> local_standard_form(const GaussianState<Scalar>& state) {
  require_physical(state);
  const int m = state.modes();
  std::vector<Matrix2<Scalar>> blocks(m);
  std::vector<Scalar> angles(m), zs(m), lambdas(m);
  std::vector<bool> decoupled(m, false);
  for (int j = 0; j < m; ++j) {
    const Matrix2<Scalar> g = state.block(j, j);
    const Scalar theta = detail::diagonalizing_angle(g);
    const Matrix2<Scalar> r = rotation(theta);
    const Matrix2<Scalar> d = r * g * r.transpose();
    const Scalar g1 = d(0, 0), g2 = d(1, 1);
    // squeeze(z) scales the diagonal by (e^{2z}, e^{-2z}).
    const Scalar z = std::log(g2 / g1) / Scalar(4);
    angles[j] = theta;
    zs[j] = z;
    blocks[j] = squeeze(z) * r;
    lambdas[j] = std::sqrt(g1 * g2);
    decoupled[j] = std::abs(lambdas[j] - Scalar(1)) <= Scalar(tol::kDecoupled);
  }
  const auto u0 = GaussianUnitary<Scalar>::local(std::span<const Matrix2<Scalar>>(blocks), Vector<Scalar>::Zero(2 * m));
  Vector<Scalar> shift = u0.symplectic() * state.mean();

  GaussianState<Scalar> moved = apply_unitary(state, GaussianUnitary<Scalar>(u0.symplectic(), shift));
  Matrix<Scalar> cov = moved.cov();
  for (int j = 0; j < m; ++j) {
    // Remove round-off on the thermal blocks.
    cov.template block<2, 2>(2 * j, 2 * j) = lambdas[j] * Matrix2<Scalar>::Identity();
  }
  Scalar residual = 0;
  detail::zero_decoupled_rows(cov, decoupled, residual);

  return StandardFormResult<Scalar>{
      .standardized = GaussianState<Scalar>(Vector<Scalar>::Zero(2 * m), std::move(cov)),
      .local_symplectics = std::move(blocks),
      .displacement = std::move(shift),
      .lambdas = std::move(lambdas),
      .decoupled = std::move(decoupled),
      .decoupled_residual = residual,
      .rotation_angles = std::move(angles),
      .squeezings = std::move(zs),
      .nu = std::nullopt,
  };
}

/// Two-mode standard form [[lA I, diag(nu1, nu2)], [diag(nu1, nu2), lB I]].
/// The cross block is diagonalized with proper rotations R_A, R_B so that
/// R_A nu' R_B^T = diag(nu1, nu2) with nu1 >= |nu2|; the sign of nu2 is
/// sign(det nu').
template <typename Scalar>
StandardFormResult<Scalar> bipartite_standard_form(const GaussianState<Scalar>& state) {
  if (state.modes() != 2) {
    throw StructuralError("bipartite standard form needs exactly 2 modes, got " + std::to_string(state.modes()));
  }
  StandardFormResult<Scalar> out = local_standard_form(state);
  const Matrix2<Scalar> cross = out.standardized.block(0, 1);

  Eigen::JacobiSVD<Matrix2<Scalar>> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix2<Scalar> u = svd.matrixU(), v = svd.matrixV();
  Scalar sign = 1;
  if (u.determinant() < 0) {
    u.col(1) *= Scalar(-1);
    sign = -sign;
  }
  if (v.determinant() < 0) {
    v.col(1) *= Scalar(-1);
    sign = -sign;
  }
  const Scalar nu1 = svd.singularValues()(0);
  const Scalar nu2 = sign * svd.singularValues()(1);
  const Matrix2<Scalar> ra = u.transpose(), rb = v.transpose();

  out.local_symplectics[0] = ra * out.local_symplectics[0];
  out.local_symplectics[1] = rb * out.local_symplectics[1];
  out.displacement.template head<2>() = ra * out.displacement.template head<2>();
  out.displacement.template tail<2>() = rb * out.displacement.template tail<2>();

  Matrix<Scalar> cov = out.standardized.cov();
  cov.template block<2, 2>(0, 2) = Vector2<Scalar>(nu1, nu2).asDiagonal();
  cov.template block<2, 2>(2, 0) = Vector2<Scalar>(nu1, nu2).asDiagonal();
  out.standardized = GaussianState<Scalar>(Vector<Scalar>::Zero(4), std::move(cov));
  out.nu = Vector2<Scalar>(nu1, nu2);
  return out;
}

}  // namespace gaussmc
