#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "gaussmc/common.hpp"
#include "gaussmc/linalg.hpp"
#include "gaussmc/phase_space.hpp"
#include "gaussmc/standard_form.hpp"

namespace gaussmc {

/// A tuple (theta_1, ..., theta_m) in [0, 1]^m.
template <typename Scalar = double>
class ThetaPoint {
 public:
  explicit ThetaPoint(Vector<Scalar> theta) : theta_(std::move(theta)) {
    for (Eigen::Index j = 0; j < theta_.size(); ++j) {
      if (!(theta_(j) >= Scalar(0) && theta_(j) <= Scalar(1))) {
        throw ParameterError("theta components must lie in [0, 1]");
      }
    }
  }
  ThetaPoint(std::initializer_list<Scalar> theta)
      : ThetaPoint(Eigen::Map<const Vector<Scalar>>(theta.begin(), static_cast<Eigen::Index>(theta.size()))) {}

  Eigen::Index size() const { return theta_.size(); }
  Scalar operator()(Eigen::Index j) const { return theta_(j); }
  const Vector<Scalar>& values() const { return theta_; }

 private:
  Vector<Scalar> theta_;
};

/// Degree-one Gram matrix of the thermal operator bases of all modes,
/// (1/2) L^{-1} conj(U_m) (gamma + i Omega) U_m^T L^{-1}, evaluated in local
/// standard form. Decoupled (vacuum-marginal) modes are dropped; `modes` lists
/// the original indices of the modes that remain, two rows each.
template <typename Scalar = double>
struct RibbonGram {
  ComplexMatrix<Scalar> g1;
  std::vector<int> modes;
};

/// Membership verdict; `margin` is the smallest eigenvalue of the tested
/// matrix (negative outside, about zero on the boundary).
template <typename Scalar = double>
struct RibbonVerdict {
  bool accepted = false;
  Scalar margin = 0;
  explicit operator bool() const { return accepted; }
};

/// U = [[1, -i], [1, i]] / sqrt(2).
template <typename Scalar = double>
Matrix2<std::complex<Scalar>> upsilon() {
  using C = std::complex<Scalar>;
  const Scalar h = Scalar(1) / std::numbers::sqrt2_v<Scalar>;
  Matrix2<C> u;
  u << C(h, 0), C(0, -h), C(h, 0), C(0, h);
  return u;
}

template <typename Scalar>
RibbonGram<Scalar> ribbon_gram(const GaussianState<Scalar>& state) {
  using C = std::complex<Scalar>;
  const auto sf = local_standard_form(state);
  if (sf.any_decoupled() && sf.decoupled_residual > Scalar(tol::kDecoupledResidual)) {
    throw DecoupledModeError("vacuum marginal carries correlations of size " +
                             std::to_string(static_cast<double>(sf.decoupled_residual)));
  }
  RibbonGram<Scalar> out;
  for (int j = 0; j < state.modes(); ++j)
    if (!sf.decoupled[j]) out.modes.push_back(j);
  const auto k = static_cast<Eigen::Index>(out.modes.size());
  if (k == 0) return out;

  const ComplexMatrix<Scalar> h = uncertainty_matrix(marginal(sf.standardized, out.modes));
  const Matrix2<C> u = upsilon<Scalar>();
  ComplexMatrix<Scalar> um = ComplexMatrix<Scalar>::Zero(2 * k, 2 * k);
  Vector<Scalar> lambda_inv(2 * k);
  for (Eigen::Index j = 0; j < k; ++j) {
    um.template block<2, 2>(2 * j, 2 * j) = u;
    const Scalar l = sf.lambdas[out.modes[j]];
    lambda_inv(2 * j) = Scalar(1) / std::sqrt((l + Scalar(1)) / Scalar(2));
    lambda_inv(2 * j + 1) = Scalar(1) / std::sqrt((l - Scalar(1)) / Scalar(2));
  }
  const auto li = lambda_inv.template cast<C>().asDiagonal();
  out.g1 = Scalar(0.5) * (li * (um.conjugate() * h * um.transpose()) * li);
  out.g1 = (out.g1 + out.g1.adjoint().eval()) / Scalar(2);
  return out;
}

namespace detail {

/// Smallest eigenvalue of diag(1/theta_j) (x) I_2 - G1 over the modes with
/// theta_j > 0; +inf when none remain.
template <typename Scalar>
Scalar ribbon_margin(const RibbonGram<Scalar>& gram, const Vector<Scalar>& theta) {
  std::vector<Eigen::Index> keep;
  std::vector<Scalar> inv;
  for (std::size_t j = 0; j < gram.modes.size(); ++j) {
    const Scalar t = theta(gram.modes[j]);
    if (t == Scalar(0)) continue;
    for (Eigen::Index r : {2 * static_cast<Eigen::Index>(j), 2 * static_cast<Eigen::Index>(j) + 1}) {
      keep.push_back(r);
      inv.push_back(Scalar(1) / t);
    }
  }
  if (keep.empty()) return std::numeric_limits<Scalar>::infinity();
  ComplexMatrix<Scalar> m = -gram.g1(keep, keep);
  for (std::size_t i = 0; i < keep.size(); ++i) m(i, i) += inv[i];
  return min_eigenvalue(m);
}

}  // namespace detail

/// theta in the maximal-correlation ribbon iff diag(1/theta_j) (x) I_2 >= G1.
/// Parties with theta_j = 0 drop out of the test (the constraint vanishes as
/// 1/theta_j -> inf).
template <typename Scalar>
RibbonVerdict<Scalar> in_ribbon(const GaussianState<Scalar>& state, const ThetaPoint<Scalar>& theta,
                                Scalar tol = Scalar(tol::kPsd)) {
  if (theta.size() != state.modes()) {
    throw StructuralError("theta has " + std::to_string(theta.size()) + " components, state has " +
                          std::to_string(state.modes()) + " modes");
  }
  RibbonVerdict<Scalar> out;
  out.margin = detail::ribbon_margin(ribbon_gram(state), theta.values());
  out.accepted = out.margin >= -tol;
  return out;
}

/// Closed-form bipartite ribbon: (1/theta1 - 1)(1/theta2 - 1) >= mu^2.
template <typename Scalar>
bool bipartite_ribbon_check(Scalar mu, Scalar theta1, Scalar theta2, Scalar tol = Scalar(tol::kPsd)) {
  if (!(mu >= Scalar(0) && mu <= Scalar(1) + Scalar(tol::kPsd))) throw ParameterError("mu must lie in [0, 1]");
  if (!(theta1 >= Scalar(0) && theta1 <= Scalar(1) && theta2 >= Scalar(0) && theta2 <= Scalar(1))) {
    throw ParameterError("theta components must lie in [0, 1]");
  }
  if (theta1 == Scalar(0) || theta2 == Scalar(0)) return true;
  return (Scalar(1) / theta1 - Scalar(1)) * (Scalar(1) / theta2 - Scalar(1)) >= mu * mu - tol;
}

/// Gaussian ribbon: blockdiag(gamma_{A_j} / theta_j) >= gamma. Parties may
/// hold several modes.
template <typename Scalar>
RibbonVerdict<Scalar> in_gaussian_ribbon(const GaussianState<Scalar>& state, const ModePartition& partition,
                                         const ThetaPoint<Scalar>& theta, Scalar tol = Scalar(tol::kPsd)) {
  if (partition.modes() != state.modes()) throw StructuralError("partition does not match the state's mode count");
  if (theta.size() != static_cast<Eigen::Index>(partition.size())) {
    throw StructuralError("theta has " + std::to_string(theta.size()) + " components, partition has " +
                          std::to_string(partition.size()) + " parties");
  }
  require_physical(state);
  std::vector<Eigen::Index> keep;
  std::vector<std::size_t> owner;
  for (std::size_t p = 0; p < partition.size(); ++p) {
    if (theta(static_cast<Eigen::Index>(p)) == Scalar(0)) continue;
    for (Eigen::Index c : partition.coordinates(p)) {
      keep.push_back(c);
      owner.push_back(p);
    }
  }
  RibbonVerdict<Scalar> out;
  if (keep.empty()) {
    out.accepted = true;
    out.margin = std::numeric_limits<Scalar>::infinity();
    return out;
  }
  const Matrix<Scalar> g = state.cov()(keep, keep);
  Matrix<Scalar> m = -g;
  for (std::size_t r = 0; r < keep.size(); ++r) {
    for (std::size_t c = 0; c < keep.size(); ++c) {
      if (owner[r] == owner[c]) m(r, c) += g(r, c) / theta(static_cast<Eigen::Index>(owner[r]));
    }
  }
  out.margin = min_eigenvalue(m);
  out.accepted = out.margin >= -tol;
  return out;
}

template <typename Scalar>
RibbonVerdict<Scalar> in_gaussian_ribbon(const GaussianState<Scalar>& state, const ThetaPoint<Scalar>& theta,
                                         Scalar tol = Scalar(tol::kPsd)) {
  return in_gaussian_ribbon(state, ModePartition::single_modes(state.modes()), theta, tol);
}

/// Largest s with s * direction still accepted by in_ribbon (tol 0), found by
/// bisection. Acceptance along a ray from the origin is an interval.
template <typename Scalar>
Scalar ribbon_boundary_scale(const GaussianState<Scalar>& state, const Vector<Scalar>& direction,
                             Scalar bisection_tol = Scalar(1e-13)) {
  if (direction.size() != state.modes() || (direction.array() < Scalar(0)).any() || direction.maxCoeff() <= Scalar(0)) {
    throw ParameterError("ray direction must be nonnegative, nonzero and match the mode count");
  }
  const auto gram = ribbon_gram(state);
  const auto accepted = [&](Scalar s) { return detail::ribbon_margin(gram, Vector<Scalar>(s * direction)) >= Scalar(0); };
  Scalar hi = Scalar(1) / direction.maxCoeff();
  if (accepted(hi)) return hi;
  Scalar lo = 0;
  while (hi - lo > bisection_tol) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    (accepted(mid) ? lo : hi) = mid;
  }
  return Scalar(0.5) * (lo + hi);
}

}  // namespace gaussmc
