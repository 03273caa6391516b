#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>

#include "gaussmc/common.hpp"
#include "gaussmc/phase_space.hpp"
#include "gaussmc/standard_form.hpp"

namespace gaussmc {

inline constexpr int kMaxBlockDegree = 12;

/// zeta0(lambda) = sqrt((lambda + 1) / 2).
template <typename Scalar>
Scalar zeta0(Scalar lambda) {
  return std::sqrt((lambda + Scalar(1)) / Scalar(2));
}

/// zeta1(lambda) = sqrt((lambda - 1) / 2).
template <typename Scalar>
Scalar zeta1(Scalar lambda) {
  return std::sqrt((lambda - Scalar(1)) / Scalar(2));
}

/// Expansion coefficients of the thermal-state operator basis for both parties,
/// and the cross-correlation matrix omega = (1/2) conj(U) nu U^T, where
/// U = [[1, -i], [1, i]] / sqrt(2).
template <typename Scalar = double>
struct CorrelationCoefficients {
  Scalar zeta0_a = 0, zeta1_a = 0, zeta0_b = 0, zeta1_b = 0;
  Matrix2<Scalar> omega = Matrix2<Scalar>::Zero();
};

template <typename Scalar>
CorrelationCoefficients<Scalar> correlation_coefficients(Scalar lambda_a, Scalar lambda_b, Scalar nu1, Scalar nu2) {
  CorrelationCoefficients<Scalar> c;
  c.zeta0_a = zeta0(lambda_a);
  c.zeta1_a = zeta1(lambda_a);
  c.zeta0_b = zeta0(lambda_b);
  c.zeta1_b = zeta1(lambda_b);
  c.omega << nu1 + nu2, nu1 - nu2, nu1 - nu2, nu1 + nu2;
  c.omega /= Scalar(4);
  return c;
}

namespace detail {

template <typename Scalar>
void require_coupled(Scalar lambda_a, Scalar lambda_b, Scalar nu1, Scalar nu2) {
  if (!(lambda_a > Scalar(1) + Scalar(tol::kDecoupled)) || !(lambda_b > Scalar(1) + Scalar(tol::kDecoupled))) {
    if (nu1 != Scalar(0) || nu2 != Scalar(0)) {
      throw DecoupledModeError("lambda <= 1 + 1e-9 (vacuum marginal) with nonzero correlations (" +
                               std::to_string(static_cast<double>(nu1)) + ", " +
                               std::to_string(static_cast<double>(nu2)) + ")");
    }
    throw DecoupledModeError("lambda <= 1 + 1e-9: the thermal operator basis is undefined on a vacuum marginal");
  }
}

}  // namespace detail

/// Degree-one block of the cross Gram matrix between the thermal operator
/// bases of A and B. Rows index A's (H10, H01), columns B's.
template <typename Scalar>
Matrix2<Scalar> q1_matrix(Scalar lambda_a, Scalar lambda_b, Scalar nu1, Scalar nu2) {
  const bool coupled_a = lambda_a > Scalar(1) + Scalar(tol::kDecoupled);
  const bool coupled_b = lambda_b > Scalar(1) + Scalar(tol::kDecoupled);
  if ((!coupled_a || !coupled_b) && nu1 == Scalar(0) && nu2 == Scalar(0)) return Matrix2<Scalar>::Zero();
  detail::require_coupled(lambda_a, lambda_b, nu1, nu2);
  const auto c = correlation_coefficients(lambda_a, lambda_b, nu1, nu2);
  Matrix2<Scalar> q;
  q << c.omega(0, 0) / (c.zeta0_a * c.zeta0_b), c.omega(0, 1) / (c.zeta0_a * c.zeta1_b),
      c.omega(1, 0) / (c.zeta1_a * c.zeta0_b), c.omega(1, 1) / (c.zeta1_a * c.zeta1_b);
  return q;
}

/// Degree-t block of the cross Gram matrix, (t+1)x(t+1), indexed by the
/// number l of "1" factors in H_{t-l,l}. Each entry is the constrained
/// multinomial sum over (p00, p01, p10, p11) with p10 + p11 = l,
/// p01 + p11 = l', p00 + p01 + p10 + p11 = t. Terms are evaluated in log space.
template <typename Scalar>
Matrix<Scalar> qt_block(Scalar lambda_a, Scalar lambda_b, Scalar nu1, Scalar nu2, int t) {
  if (t < 1 || t > kMaxBlockDegree) {
    throw ParameterError("block degree t must lie in [1, " + std::to_string(kMaxBlockDegree) + "], got " +
                         std::to_string(t));
  }
  detail::require_coupled(lambda_a, lambda_b, nu1, nu2);
  const auto c = correlation_coefficients(lambda_a, lambda_b, nu1, nu2);
  const std::array<Scalar, 4> w = {c.omega(0, 0), c.omega(0, 1), c.omega(1, 0), c.omega(1, 1)};
  const auto lf = [](int n) { return std::lgamma(Scalar(n + 1)); };
  const Scalar la0 = std::log(c.zeta0_a), la1 = std::log(c.zeta1_a);
  const Scalar lb0 = std::log(c.zeta0_b), lb1 = std::log(c.zeta1_b);

  Matrix<Scalar> q = Matrix<Scalar>::Zero(t + 1, t + 1);
  for (int l = 0; l <= t; ++l) {
    for (int lp = 0; lp <= t; ++lp) {
      const Scalar prefactor = Scalar(0.5) * (lf(t - l) + lf(l) + lf(t - lp) + lf(lp)) -
                               (Scalar(t - l) * la0 + Scalar(l) * la1 + Scalar(t - lp) * lb0 + Scalar(lp) * lb1);
      Scalar sum = 0;
      for (int p11 = std::max(0, l + lp - t); p11 <= std::min(l, lp); ++p11) {
        const std::array<int, 4> p = {t - l - lp + p11, lp - p11, l - p11, p11};
        Scalar log_mag = prefactor;
        Scalar sign = 1;
        bool vanishes = false;
        for (int k = 0; k < 4; ++k) {
          log_mag -= lf(p[k]);
          if (p[k] == 0) continue;
          if (w[k] == Scalar(0)) {
            vanishes = true;
            break;
          }
          log_mag += Scalar(p[k]) * std::log(std::abs(w[k]));
          if (w[k] < Scalar(0) && (p[k] % 2 == 1)) sign = -sign;
        }
        if (!vanishes) sum += sign * std::exp(log_mag);
      }
      q(l, lp) = sum;
    }
  }
  return q;
}

/// (t+1) x 2^t matrix with s_{l,b} = [l == |b|] sqrt(l! (t-l)! / t!), where
/// column b is read as a t-bit string. Rows are orthonormal.
template <typename Scalar = double>
Matrix<Scalar> s_matrix(int t) {
  if (t < 1 || t > kMaxBlockDegree) {
    throw ParameterError("S matrix degree must lie in [1, " + std::to_string(kMaxBlockDegree) + "]");
  }
  const std::uint32_t cols = std::uint32_t{1} << t;
  Matrix<Scalar> s = Matrix<Scalar>::Zero(t + 1, cols);
  const auto lf = [](int n) { return std::lgamma(Scalar(n + 1)); };
  for (std::uint32_t b = 0; b < cols; ++b) {
    const int l = std::popcount(b);
    s(l, b) = std::exp(Scalar(0.5) * (lf(l) + lf(t - l) - lf(t)));
  }
  return s;
}

/// Maximal correlation with its optimal linear witnesses.
///
/// X = f0 H10 + f1 H01 on A and Y = g0 H10 + g1 H01 on B, with
/// H10 = (x - ip)/sqrt(lambda+1), H01 = (x + ip)/sqrt(lambda-1) in the
/// standardized frame. `alpha`, `beta` hold the same operators in the
/// original frame: X = alpha^T (R_A - d_A), Y = beta^T (R_B - d_B).
template <typename Scalar = double>
struct CorrelationReport {
  Scalar mu = 0;
  ComplexVector2<Scalar> f = ComplexVector2<Scalar>::Zero();
  ComplexVector2<Scalar> g = ComplexVector2<Scalar>::Zero();
  ComplexVector2<Scalar> alpha = ComplexVector2<Scalar>::Zero();
  ComplexVector2<Scalar> beta = ComplexVector2<Scalar>::Zero();
  Matrix2<Scalar> q1 = Matrix2<Scalar>::Zero();
  StandardFormResult<Scalar> standard_form;
  /// A vacuum marginal was found; mu is 0 and the witnesses are placeholders.
  bool decoupled = false;
};

namespace detail {

/// Quadrature coefficients (a_x, a_p) of c0 H10 + c1 H01 for thermal parameter lambda.
template <typename Scalar>
ComplexVector2<Scalar> linear_coefficients(const ComplexVector2<Scalar>& c, Scalar lambda) {
  using C = std::complex<Scalar>;
  const Scalar n0 = Scalar(1) / std::sqrt(lambda + Scalar(1));
  const Scalar n1 = Scalar(1) / std::sqrt(lambda - Scalar(1));
  ComplexVector2<Scalar> a;
  a(0) = c(0) * n0 + c(1) * n1;
  a(1) = C(0, -1) * c(0) * n0 + C(0, 1) * c(1) * n1;
  return a;
}

}  // namespace detail

/// Quantum maximal correlation of a two-mode Gaussian state: the operator norm
/// of the degree-one block in standard form.
template <typename Scalar>
CorrelationReport<Scalar> maximal_correlation(const GaussianState<Scalar>& state) {
  if (state.modes() != 2) {
    throw StructuralError("maximal correlation is defined here for one mode per party (2 modes), got " +
                          std::to_string(state.modes()));
  }
  CorrelationReport<Scalar> out{.standard_form = bipartite_standard_form(state)};
  const auto& sf = out.standard_form;
  if (sf.any_decoupled()) {
    if (sf.decoupled_residual > Scalar(tol::kDecoupledResidual)) {
      throw DecoupledModeError("vacuum marginal carries correlations of size " +
                               std::to_string(static_cast<double>(sf.decoupled_residual)));
    }
    out.decoupled = true;
    out.f(0) = out.g(0) = Scalar(1);
    return out;
  }
  const Scalar la = sf.lambdas[0], lb = sf.lambdas[1];
  const Scalar nu1 = (*sf.nu)(0), nu2 = (*sf.nu)(1);
  out.q1 = q1_matrix(la, lb, nu1, nu2);

  Eigen::JacobiSVD<Matrix2<Scalar>> svd(out.q1, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.mu = svd.singularValues()(0);
  Vector2<Scalar> f = svd.matrixU().col(0), g = svd.matrixV().col(0);
  // First nonzero component of f real and nonnegative.
  const int lead = std::abs(f(0)) > Scalar(1e-12) ? 0 : 1;
  if (f(lead) < Scalar(0)) {
    f = -f;
    g = -g;
  }
  out.f = f.template cast<std::complex<Scalar>>();
  out.g = g.template cast<std::complex<Scalar>>();

  // Operators transform covariantly: a_std^T R_std = (S_A^T a_std)^T R_orig.
  const auto a_std = detail::linear_coefficients(out.f, la);
  const auto b_std = detail::linear_coefficients(out.g, lb);
  out.alpha = sf.local_symplectics[0].transpose().template cast<std::complex<Scalar>>() * a_std;
  out.beta = sf.local_symplectics[1].transpose().template cast<std::complex<Scalar>>() * b_std;
  return out;
}

}  // namespace gaussmc
