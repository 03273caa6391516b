#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gaussmc/common.hpp"
#include "gaussmc/linalg.hpp"

namespace gaussmc {

/// Block-diagonal symplectic form with m copies of [[0, 1], [-1, 0]].
template <typename Scalar = double>
Matrix<Scalar> symplectic_form(int modes) {
  if (modes < 1) throw StructuralError("symplectic_form: mode count must be positive");
  Matrix<Scalar> w = Matrix<Scalar>::Zero(2 * modes, 2 * modes);
  for (int j = 0; j < modes; ++j) {
    w(2 * j, 2 * j + 1) = Scalar(1);
    w(2 * j + 1, 2 * j) = Scalar(-1);
  }
  return w;
}

/// First and second moments of an m-mode Gaussian state, quadratures ordered
/// x1, p1, ..., xm, pm. The constructor checks shapes and finiteness only;
/// symmetry and physicality are queried with validate_physical().
template <typename Scalar = double>
class GaussianState {
 public:
  GaussianState(Vector<Scalar> mean, Matrix<Scalar> cov)
      : mean_(std::move(mean)), cov_(std::move(cov)) {
    if (cov_.rows() == 0 || cov_.rows() % 2 != 0 || cov_.rows() != cov_.cols()) {
      throw StructuralError("covariance matrix must be square with even positive dimension, got " +
                            std::to_string(cov_.rows()) + "x" + std::to_string(cov_.cols()));
    }
    if (mean_.size() != cov_.rows()) {
      throw StructuralError("mean has length " + std::to_string(mean_.size()) + ", expected " +
                            std::to_string(cov_.rows()));
    }
    if (!mean_.allFinite() || !cov_.allFinite()) {
      throw StructuralError("state moments contain NaN or Inf");
    }
  }

  /// Zero-mean state with the given covariance.
  static GaussianState from_cov(Matrix<Scalar> cov) {
    Vector<Scalar> mean = Vector<Scalar>::Zero(cov.rows());
    return GaussianState(std::move(mean), std::move(cov));
  }

  static GaussianState vacuum(int modes) {
    return from_cov(Matrix<Scalar>::Identity(2 * modes, 2 * modes));
  }

  /// Product of single-mode thermal states with covariance lambda_j * I.
  static GaussianState thermal(std::span<const Scalar> lambdas) {
    const auto m = static_cast<Eigen::Index>(lambdas.size());
    Matrix<Scalar> cov = Matrix<Scalar>::Zero(2 * m, 2 * m);
    for (Eigen::Index j = 0; j < m; ++j) {
      cov(2 * j, 2 * j) = lambdas[j];
      cov(2 * j + 1, 2 * j + 1) = lambdas[j];
    }
    return from_cov(std::move(cov));
  }

  int modes() const { return static_cast<int>(cov_.rows() / 2); }
  const Vector<Scalar>& mean() const { return mean_; }
  const Matrix<Scalar>& cov() const { return cov_; }

  /// 2x2 covariance block between modes j and k.
  Matrix2<Scalar> block(int j, int k) const { return cov_.template block<2, 2>(2 * j, 2 * k); }

 private:
  Vector<Scalar> mean_;
  Matrix<Scalar> cov_;
};

/// Ordered assignment of modes to parties. Parties are disjoint, non-empty and
/// together cover 0..m-1.
class ModePartition {
 public:
  ModePartition(std::vector<std::vector<int>> parties, int modes) : parties_(std::move(parties)) {
    if (modes < 1) throw StructuralError("partition over a non-positive number of modes");
    std::vector<int> seen(modes, 0);
    for (const auto& party : parties_) {
      if (party.empty()) throw StructuralError("partition contains an empty party");
      for (int j : party) {
        if (j < 0 || j >= modes) {
          throw StructuralError("partition mode index " + std::to_string(j) + " out of range [0, " +
                                std::to_string(modes) + ")");
        }
        if (seen[j]++) throw StructuralError("mode " + std::to_string(j) + " assigned twice");
      }
    }
    for (int j = 0; j < modes; ++j) {
      if (!seen[j]) throw StructuralError("mode " + std::to_string(j) + " not assigned to any party");
    }
    modes_ = modes;
  }

  /// One party per mode.
  static ModePartition single_modes(int modes) {
    std::vector<std::vector<int>> parties(modes);
    for (int j = 0; j < modes; ++j) parties[j] = {j};
    return ModePartition(std::move(parties), modes);
  }

  /// Parses "0,1;2,3": parties separated by ';', modes by ','.
  static ModePartition parse(std::string_view text, int modes) {
    std::vector<std::vector<int>> parties(1);
    std::string token;
    auto flush = [&] {
      if (token.empty()) throw StructuralError("malformed partition string '" + std::string(text) + "'");
      std::size_t used = 0;
      int value = 0;
      try {
        value = std::stoi(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw StructuralError("bad mode index '" + token + "' in partition");
      parties.back().push_back(value);
      token.clear();
    };
    for (char c : text) {
      if (c == ' ') continue;
      if (c == ',') {
        flush();
      } else if (c == ';') {
        flush();
        parties.emplace_back();
      } else {
        token.push_back(c);
      }
    }
    flush();
    return ModePartition(std::move(parties), modes);
  }

  const std::vector<std::vector<int>>& parties() const { return parties_; }
  std::size_t size() const { return parties_.size(); }
  int modes() const { return modes_; }
  const std::vector<int>& operator[](std::size_t i) const { return parties_[i]; }

  /// Phase-space coordinate indices of party i.
  std::vector<Eigen::Index> coordinates(std::size_t i) const { return coordinate_indices(parties_[i]); }

 private:
  std::vector<std::vector<int>> parties_;
  int modes_ = 0;
};

template <typename Scalar>
struct PhysicalityCheck {
  bool physical = false;
  bool symmetric = false;
  /// Smallest eigenvalue of the Hermitian matrix cov + i*Omega.
  Scalar min_eigenvalue = 0;
  Scalar asymmetry = 0;
  /// cov + i*Omega is singular within tolerance: accepted, but sits on the
  /// boundary of the physical set.
  bool boundary = false;

  explicit operator bool() const { return physical; }
};

/// cov + i*Omega as a complex Hermitian matrix.
template <typename Scalar>
ComplexMatrix<Scalar> uncertainty_matrix(const GaussianState<Scalar>& state) {
  using C = std::complex<Scalar>;
  return state.cov().template cast<C>() + C(0, 1) * symplectic_form<Scalar>(state.modes()).template cast<C>();
}

template <typename Scalar>
PhysicalityCheck<Scalar> validate_physical(const GaussianState<Scalar>& state, Scalar tol = Scalar(tol::kPsd)) {
  PhysicalityCheck<Scalar> out;
  out.asymmetry = max_asymmetry(state.cov());
  out.symmetric = out.asymmetry <= Scalar(tol::kSymmetry);
  ComplexMatrix<Scalar> h = uncertainty_matrix(state);
  // Symmetrize so the eigen solver sees exactly the Hermitian part.
  h = (h + h.adjoint().eval()) / Scalar(2);
  out.min_eigenvalue = min_eigenvalue(h);
  out.physical = out.symmetric && out.min_eigenvalue >= -tol;
  out.boundary = out.physical && out.min_eigenvalue <= tol;
  return out;
}

/// Throws UnphysicalError unless validate_physical() accepts the state.
template <typename Scalar>
void require_physical(const GaussianState<Scalar>& state, Scalar tol = Scalar(tol::kPsd)) {
  const auto check = validate_physical(state, tol);
  if (!check.symmetric) {
    throw UnphysicalError("covariance matrix is not symmetric (max asymmetry " +
                          std::to_string(static_cast<double>(check.asymmetry)) + ")");
  }
  if (!check.physical) {
    throw UnphysicalError("state violates the uncertainty relation: min eigenvalue of cov + i*Omega is " +
                          std::to_string(static_cast<double>(check.min_eigenvalue)));
  }
}

/// tr(rho^2) = 1 / sqrt(det cov).
template <typename Scalar>
Scalar purity(const GaussianState<Scalar>& state) {
  const Scalar det = state.cov().determinant();
  if (!(det > Scalar(0))) {
    throw UnphysicalError("covariance determinant is not positive (" + std::to_string(static_cast<double>(det)) + ")");
  }
  return Scalar(1) / std::sqrt(det);
}

/// cov - I >= 0: nonnegative P-function, hence classical and separable.
template <typename Scalar>
bool is_classical(const GaussianState<Scalar>& state, Scalar tol = Scalar(tol::kPsd)) {
  const auto n = state.cov().rows();
  return min_eigenvalue(state.cov() - Matrix<Scalar>::Identity(n, n)) >= -tol;
}

/// Restriction to the given modes, in the given order.
template <typename Scalar>
GaussianState<Scalar> marginal(const GaussianState<Scalar>& state, std::span<const int> modes) {
  if (modes.empty()) throw StructuralError("marginal: empty mode set");
  std::vector<int> sorted(modes.begin(), modes.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw StructuralError("marginal: repeated mode index");
  }
  for (int j : modes) {
    if (j < 0 || j >= state.modes()) {
      throw StructuralError("marginal: mode index " + std::to_string(j) + " out of range");
    }
  }
  const auto idx = coordinate_indices(modes);
  return GaussianState<Scalar>(state.mean()(idx), state.cov()(idx, idx));
}

template <typename Scalar>
GaussianState<Scalar> marginal(const GaussianState<Scalar>& state, std::initializer_list<int> modes) {
  return marginal(state, std::span<const int>(modes.begin(), modes.size()));
}

/// Moments of rho (x) sigma: modes of `a` first, then modes of `b`.
template <typename Scalar>
GaussianState<Scalar> tensor_product(const GaussianState<Scalar>& a, const GaussianState<Scalar>& b) {
  Vector<Scalar> mean(a.mean().size() + b.mean().size());
  mean << a.mean(), b.mean();
  return GaussianState<Scalar>(std::move(mean), direct_sum<Scalar>(a.cov(), b.cov()));
}

/// Reorders modes: mode `order[k]` of the input becomes mode k of the output.
template <typename Scalar>
GaussianState<Scalar> permute_modes(const GaussianState<Scalar>& state, std::span<const int> order) {
  if (static_cast<int>(order.size()) != state.modes()) {
    throw StructuralError("permute_modes: permutation length does not match mode count");
  }
  return marginal(state, order);
}

}  // namespace gaussmc
