#pragma once

#include <cmath>
#include <string>

#include "gaussmc/common.hpp"
#include "gaussmc/gaussian_maxcorr.hpp"
#include "gaussmc/gaussian_ops.hpp"
#include "gaussmc/maxcorr.hpp"
#include "gaussmc/phase_space.hpp"

namespace gaussmc {

namespace detail {

template <typename Scalar>
GaussianState<Scalar> two_mode_symmetric(Scalar lambda, Scalar nu_x, Scalar nu_p) {
  Matrix<Scalar> cov = lambda * Matrix<Scalar>::Identity(4, 4);
  cov(0, 2) = cov(2, 0) = nu_x;
  cov(1, 3) = cov(3, 1) = nu_p;
  return GaussianState<Scalar>::from_cov(std::move(cov));
}

}  // namespace detail

/// Correlated-anticorrelated state, cross block diag(nu, -nu).
template <typename Scalar>
GaussianState<Scalar> ca_state(Scalar lambda, Scalar nu) {
  if (!(lambda > Scalar(1))) throw ParameterError("CA state needs lambda > 1");
  const Scalar bound = std::sqrt(lambda * lambda - Scalar(1));
  if (!(nu >= Scalar(0) && nu <= bound + Scalar(1e-12))) {
    throw ParameterError("CA state needs 0 <= nu <= sqrt(lambda^2 - 1) = " + std::to_string(static_cast<double>(bound)));
  }
  return detail::two_mode_symmetric(lambda, nu, -nu);
}

/// Correlated-correlated state, cross block nu I.
template <typename Scalar>
GaussianState<Scalar> cc_state(Scalar lambda, Scalar nu) {
  if (!(lambda > Scalar(1))) throw ParameterError("CC state needs lambda > 1");
  if (!(nu >= Scalar(0) && nu <= lambda - Scalar(1) + Scalar(1e-12))) {
    throw ParameterError("CC state needs 0 <= nu <= lambda - 1 = " + std::to_string(static_cast<double>(lambda - 1)));
  }
  return detail::two_mode_symmetric(lambda, nu, nu);
}

/// Two-mode squeezed vacuum; lambda = 1 is the two-mode vacuum.
template <typename Scalar>
GaussianState<Scalar> tmsv_state(Scalar lambda) {
  if (!(lambda >= Scalar(1))) throw ParameterError("TMSV needs lambda >= 1");
  const Scalar nu = std::sqrt(lambda * lambda - Scalar(1));
  return detail::two_mode_symmetric(lambda, nu, -nu);
}

/// Maximal correlation of the noisy Bell state kappa |Phi><Phi| + (1 - kappa) I/4.
template <typename Scalar>
Scalar werner_mu(Scalar kappa) {
  if (!(kappa >= Scalar(0) && kappa <= Scalar(1))) throw ParameterError("kappa must lie in [0, 1]");
  return kappa;
}

enum class Verdict { Infeasible, Undecided };

enum class Measure { Mu, MuG, Ribbon };

inline const char* to_string(Verdict v) { return v == Verdict::Infeasible ? "INFEASIBLE" : "UNDECIDED"; }

inline const char* to_string(Measure m) {
  switch (m) {
    case Measure::Mu:
      return "mu";
    case Measure::MuG:
      return "mu_g";
    case Measure::Ribbon:
      return "ribbon";
  }
  return "?";
}

template <typename Scalar = double>
struct FeasibilityVerdict {
  Verdict verdict = Verdict::Undecided;
  Measure measure = Measure::Mu;
  Scalar resource_value = 0;
  Scalar target_value = 0;

  bool infeasible() const { return verdict == Verdict::Infeasible; }
};

/// Monotone test: resource -> target is impossible under local operations,
/// with any number of resource copies, once target exceeds resource.
template <typename Scalar>
FeasibilityVerdict<Scalar> lst_infeasibility(Scalar resource, Scalar target, Measure measure = Measure::Mu,
                                             Scalar tol = Scalar(tol::kVerdict)) {
  const Scalar slack = Scalar(1e-12);
  if (!(resource >= -slack && resource <= Scalar(1) + slack && target >= -slack && target <= Scalar(1) + slack)) {
    throw ParameterError("correlation measures must lie in [0, 1]");
  }
  return {target > resource + tol ? Verdict::Infeasible : Verdict::Undecided, measure, resource, target};
}

/// Both directions between CC(lambda, nu) and CA(lambda, nu), plus the
/// Gaussian measure values, which coincide.
template <typename Scalar = double>
struct CcCaComparison {
  Scalar mu_cc = 0, mu_ca = 0, mu_g_cc = 0, mu_g_ca = 0;
  FeasibilityVerdict<Scalar> cc_to_ca;
  FeasibilityVerdict<Scalar> ca_to_cc;
  FeasibilityVerdict<Scalar> cc_to_ca_gaussian;
};

template <typename Scalar>
CcCaComparison<Scalar> cc_to_ca_verdict(Scalar lambda, Scalar nu) {
  if (!(lambda > Scalar(1) && nu > Scalar(0) && nu <= lambda - Scalar(1) + Scalar(1e-12))) {
    throw ParameterError("need lambda > 1 and 0 < nu <= lambda - 1");
  }
  const auto cc = cc_state(lambda, nu), ca = ca_state(lambda, nu);
  CcCaComparison<Scalar> out;
  out.mu_cc = maximal_correlation(cc).mu;
  out.mu_ca = maximal_correlation(ca).mu;
  out.mu_g_cc = gaussian_maximal_correlation(cc).mu_g;
  out.mu_g_ca = gaussian_maximal_correlation(ca).mu_g;
  out.cc_to_ca = lst_infeasibility(out.mu_cc, out.mu_ca);
  out.ca_to_cc = lst_infeasibility(out.mu_ca, out.mu_cc);
  out.cc_to_ca_gaussian = lst_infeasibility(out.mu_g_cc, out.mu_g_ca, Measure::MuG);
  return out;
}

/// Can CA(lambda, nu) be recovered after losses tau_a, tau_b on the two
/// modes? Decided with mu_G.
template <typename Scalar>
FeasibilityVerdict<Scalar> lossy_retrieval_verdict(Scalar lambda, Scalar nu, Scalar tau_a, Scalar tau_b) {
  const auto initial = ca_state(lambda, nu);
  const auto shared = lossy_channel(lossy_channel(initial, {0}, tau_a), {1}, tau_b);
  return lst_infeasibility(gaussian_maximal_correlation(shared).mu_g, gaussian_maximal_correlation(initial).mu_g,
                           Measure::MuG);
}

}  // namespace gaussmc
