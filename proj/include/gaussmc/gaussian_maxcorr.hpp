#pragma once

#include <algorithm>
#include <cmath>

#include "gaussmc/common.hpp"
#include "gaussmc/linalg.hpp"
#include "gaussmc/phase_space.hpp"

namespace gaussmc {

/// Gaussian maximal correlation with optimal homodyne directions:
/// r_A^T gamma_A r_A = r_B^T gamma_B r_B = 1 and r_A^T nu_AB r_B = mu_g.
template <typename Scalar = double>
struct GaussianCorrelationReport {
  Scalar mu_g = 0;
  Vector<Scalar> r_a;
  Vector<Scalar> r_b;
  /// At least one party holds more than one mode.
  bool multimode = false;
};

namespace detail {

template <typename Scalar>
void require_bipartite(const GaussianState<Scalar>& state, const ModePartition& partition) {
  if (partition.size() != 2) {
    throw StructuralError("Gaussian maximal correlation needs exactly 2 parties, got " +
                          std::to_string(partition.size()));
  }
  if (partition.modes() != state.modes()) {
    throw StructuralError("partition covers " + std::to_string(partition.modes()) + " modes, state has " +
                          std::to_string(state.modes()));
  }
}

}  // namespace detail

/// mu_G = || gamma_A^{-1/2} nu_AB gamma_B^{-1/2} ||.
template <typename Scalar>
GaussianCorrelationReport<Scalar> gaussian_maximal_correlation(const GaussianState<Scalar>& state,
                                                               const ModePartition& partition) {
  detail::require_bipartite(state, partition);
  require_physical(state);
  const auto ia = partition.coordinates(0), ib = partition.coordinates(1);
  const Matrix<Scalar> ga = state.cov()(ia, ia), gb = state.cov()(ib, ib), nu = state.cov()(ia, ib);
  const Matrix<Scalar> wa = inverse_sqrt_psd(ga), wb = inverse_sqrt_psd(gb);

  Eigen::JacobiSVD<Matrix<Scalar>> svd(wa * nu * wb, Eigen::ComputeFullU | Eigen::ComputeFullV);
  GaussianCorrelationReport<Scalar> out;
  out.mu_g = svd.singularValues()(0);
  out.r_a = wa * svd.matrixU().col(0);
  out.r_b = wb * svd.matrixV().col(0);
  Eigen::Index lead = 0;
  for (; lead < out.r_a.size() - 1; ++lead)
    if (std::abs(out.r_a(lead)) > Scalar(1e-12)) break;
  if (out.r_a(lead) < Scalar(0)) {
    out.r_a = -out.r_a;
    out.r_b = -out.r_b;
  }
  out.multimode = partition[0].size() > 1 || partition[1].size() > 1;
  return out;
}

template <typename Scalar>
GaussianCorrelationReport<Scalar> gaussian_maximal_correlation(const GaussianState<Scalar>& state) {
  return gaussian_maximal_correlation(state, ModePartition::single_modes(state.modes()));
}

/// V = max{q <= 1 : gamma >= q (gamma_A + gamma_B)} by bisection on [0, 1].
template <typename Scalar>
Scalar v_parameter(const GaussianState<Scalar>& state, const ModePartition& partition,
                   Scalar psd_tol = Scalar(1e-10), Scalar bisection_tol = Scalar(1e-10)) {
  detail::require_bipartite(state, partition);
  require_physical(state);
  const auto ia = partition.coordinates(0), ib = partition.coordinates(1);
  std::vector<Eigen::Index> order(ia);
  order.insert(order.end(), ib.begin(), ib.end());
  const Matrix<Scalar> g = state.cov()(order, order);
  const auto na = static_cast<Eigen::Index>(ia.size());
  Matrix<Scalar> d = Matrix<Scalar>::Zero(g.rows(), g.cols());
  d.topLeftCorner(na, na) = g.topLeftCorner(na, na);
  d.bottomRightCorner(g.rows() - na, g.rows() - na) = g.bottomRightCorner(g.rows() - na, g.rows() - na);

  const auto feasible = [&](Scalar q) { return min_eigenvalue(g - q * d) >= -psd_tol; };
  if (feasible(Scalar(1))) return Scalar(1);
  Scalar lo = 0, hi = 1;
  while (hi - lo > bisection_tol) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return Scalar(0.5) * (lo + hi);
}

template <typename Scalar>
Scalar v_parameter(const GaussianState<Scalar>& state) {
  return v_parameter(state, ModePartition::single_modes(state.modes()));
}

/// Closed form in standard form: max(|nu1|, |nu2|) / sqrt(lambda_A lambda_B).
template <typename Scalar>
Scalar mu_g_standard_form(Scalar lambda_a, Scalar lambda_b, Scalar nu1, Scalar nu2) {
  return std::max(std::abs(nu1), std::abs(nu2)) / std::sqrt(lambda_a * lambda_b);
}

}  // namespace gaussmc
