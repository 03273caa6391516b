#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "gaussmc/common.hpp"
#include "gaussmc/linalg.hpp"
#include "gaussmc/phase_space.hpp"

namespace gaussmc {

/// max |S Omega S^T - Omega|.
template <typename Derived>
typename Derived::RealScalar symplectic_defect(const Eigen::MatrixBase<Derived>& s) {
  using Scalar = typename Derived::Scalar;
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) {
    throw StructuralError("symplectic matrix must be square with even dimension");
  }
  const auto w = symplectic_form<Scalar>(static_cast<int>(s.rows() / 2));
  return (s * w * s.transpose() - w).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_symplectic(const Eigen::MatrixBase<Derived>& s, double tol = tol::kSymplectic) {
  return symplectic_defect(s) <= tol;
}

/// Phase rotation [[cos t, sin t], [-sin t, cos t]].
template <typename Scalar = double>
Matrix2<Scalar> rotation(Scalar theta) {
  const Scalar c = std::cos(theta), s = std::sin(theta);
  Matrix2<Scalar> r;
  r << c, s, -s, c;
  return r;
}

/// Single-mode squeezer diag(e^z, e^-z).
template <typename Scalar = double>
Matrix2<Scalar> squeeze(Scalar z) {
  Matrix2<Scalar> s = Matrix2<Scalar>::Zero();
  s(0, 0) = std::exp(z);
  s(1, 1) = std::exp(-z);
  return s;
}

/// Gaussian unitary acting on moments as d -> S d - r, cov -> S cov S^T.
/// The symplectic part is applied first, then the displacement.
template <typename Scalar = double>
class GaussianUnitary {
 public:
  GaussianUnitary(Matrix<Scalar> symplectic, Vector<Scalar> displacement)
      : symplectic_(std::move(symplectic)), displacement_(std::move(displacement)) {
    if (displacement_.size() != symplectic_.rows()) {
      throw StructuralError("displacement length does not match symplectic dimension");
    }
    const auto defect = symplectic_defect(symplectic_);
    if (!(defect <= Scalar(tol::kSymplectic))) {
      throw ParameterError("matrix is not symplectic (max |S Omega S^T - Omega| = " +
                           std::to_string(static_cast<double>(defect)) + ")");
    }
  }

  static GaussianUnitary identity(int modes) {
    return GaussianUnitary(Matrix<Scalar>::Identity(2 * modes, 2 * modes), Vector<Scalar>::Zero(2 * modes));
  }

  static GaussianUnitary displacement(Vector<Scalar> r) {
    const auto n = r.size();
    return GaussianUnitary(Matrix<Scalar>::Identity(n, n), std::move(r));
  }

  /// Local unitary: block-diagonal symplectic from one 2x2 block per mode.
  static GaussianUnitary local(std::span<const Matrix2<Scalar>> blocks, Vector<Scalar> r) {
    const auto m = static_cast<Eigen::Index>(blocks.size());
    Matrix<Scalar> s = Matrix<Scalar>::Zero(2 * m, 2 * m);
    for (Eigen::Index j = 0; j < m; ++j) s.template block<2, 2>(2 * j, 2 * j) = blocks[j];
    return GaussianUnitary(std::move(s), std::move(r));
  }

  int modes() const { return static_cast<int>(symplectic_.rows() / 2); }
  const Matrix<Scalar>& symplectic() const { return symplectic_; }
  const Vector<Scalar>& displacement() const { return displacement_; }

 private:
  Matrix<Scalar> symplectic_;
  Vector<Scalar> displacement_;
};

/// `second` after `first`: S = S2 S1, r = S2 r1 + r2.
template <typename Scalar>
GaussianUnitary<Scalar> compose(const GaussianUnitary<Scalar>& second, const GaussianUnitary<Scalar>& first) {
  return GaussianUnitary<Scalar>(second.symplectic() * first.symplectic(),
                                 second.symplectic() * first.displacement() + second.displacement());
}

template <typename Scalar>
GaussianState<Scalar> apply_unitary(const GaussianState<Scalar>& state, const GaussianUnitary<Scalar>& u) {
  if (u.modes() != state.modes()) throw StructuralError("unitary and state have different mode counts");
  const auto& s = u.symplectic();
  Matrix<Scalar> cov = s * state.cov() * s.transpose();
  cov = (cov + cov.transpose().eval()) / Scalar(2);
  return GaussianState<Scalar>(s * state.mean() - u.displacement(), std::move(cov));
}

/// Covariance-level Gaussian channel on a subset of modes:
/// cov_S -> X cov_S X^T + Y, cross blocks -> X cov_{S,rest}, mean_S -> X mean_S.
template <typename Scalar = double>
class GaussianChannel {
 public:
  GaussianChannel(Matrix<Scalar> x, Matrix<Scalar> y, std::vector<int> acting_modes, Scalar tol = Scalar(tol::kPsd))
      : x_(std::move(x)), y_(std::move(y)), modes_(std::move(acting_modes)) {
    const auto n = 2 * static_cast<Eigen::Index>(modes_.size());
    if (modes_.empty() || x_.rows() != n || x_.cols() != n || y_.rows() != n || y_.cols() != n) {
      throw StructuralError("channel matrices must be (2k)x(2k) for k acting modes");
    }
    if (max_asymmetry(y_) > Scalar(tol::kSymmetry)) throw ParameterError("channel noise matrix Y is not symmetric");
    using C = std::complex<Scalar>;
    const auto w = symplectic_form<Scalar>(static_cast<int>(modes_.size()));
    ComplexMatrix<Scalar> h = y_.template cast<C>() + C(0, 1) * (w - x_ * w * x_.transpose()).template cast<C>();
    h = (h + h.adjoint().eval()) / Scalar(2);
    const Scalar lo = min_eigenvalue(h);
    if (lo < -tol) {
      throw ParameterError("channel (X, Y) is not completely positive: min eigenvalue of Y + i(Omega - X Omega X^T) is " +
                           std::to_string(static_cast<double>(lo)));
    }
  }

  /// Pure-loss channel with transmissivity tau on the given modes.
  static GaussianChannel lossy(std::vector<int> acting_modes, Scalar tau) {
    if (!(tau >= Scalar(0) && tau <= Scalar(1))) {
      throw ParameterError("lossy channel transmissivity must lie in [0, 1]");
    }
    const auto n = 2 * static_cast<Eigen::Index>(acting_modes.size());
    return GaussianChannel(std::sqrt(tau) * Matrix<Scalar>::Identity(n, n),
                           (Scalar(1) - tau) * Matrix<Scalar>::Identity(n, n), std::move(acting_modes));
  }

  const Matrix<Scalar>& x() const { return x_; }
  const Matrix<Scalar>& y() const { return y_; }
  const std::vector<int>& acting_modes() const { return modes_; }

 private:
  Matrix<Scalar> x_;
  Matrix<Scalar> y_;
  std::vector<int> modes_;
};

template <typename Scalar>
GaussianState<Scalar> apply_channel(const GaussianState<Scalar>& state, const GaussianChannel<Scalar>& channel) {
  const int m = state.modes();
  std::vector<int> seen(m, 0);
  for (int j : channel.acting_modes()) {
    if (j < 0 || j >= m) throw StructuralError("channel acts on mode " + std::to_string(j) + " outside the state");
    if (seen[j]++) throw StructuralError("channel lists mode " + std::to_string(j) + " twice");
  }
  const auto idx = coordinate_indices(channel.acting_modes());
  const auto n = state.cov().rows();
  Matrix<Scalar> t = Matrix<Scalar>::Identity(n, n);
  Matrix<Scalar> noise = Matrix<Scalar>::Zero(n, n);
  t(idx, idx) = channel.x();
  noise(idx, idx) = channel.y();
  Matrix<Scalar> cov = t * state.cov() * t.transpose() + noise;
  cov = (cov + cov.transpose().eval()) / Scalar(2);
  return GaussianState<Scalar>(t * state.mean(), std::move(cov));
}

template <typename Scalar>
GaussianState<Scalar> lossy_channel(const GaussianState<Scalar>& state, std::vector<int> modes, Scalar tau) {
  return apply_channel(state, GaussianChannel<Scalar>::lossy(std::move(modes), tau));
}

}  // namespace gaussmc
