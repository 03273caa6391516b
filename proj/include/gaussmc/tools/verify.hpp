#pragma once

#include <cstdint>
#include <string>

#include "gaussmc/phase_space.hpp"
#include "gaussmc/tools/json.hpp"

namespace gaussmc {

/// Outcome of one randomized property suite. `max_error` is the largest
/// deviation seen on the quantity the suite compares.
struct SuiteResult {
  std::string name;
  long cases = 0;
  long failures = 0;
  long skipped = 0;
  double max_error = 0;
  Json counterexample = nullptr;

  bool passed() const { return failures == 0; }
  Json to_json() const;
};

/// Reference computations that avoid the standard-form machinery.
namespace oracle {

/// q (x) q (x) ... (x) q, t factors.
Matrix<double> kron_power(const Matrix<double>& q, int t);

/// Degree-one maximal correlation of a two-mode state by whitening the complex
/// Gram matrix (1/2)(gamma + i Omega) directly in the input frame.
double mu_linear(const GaussianState<double>& state);

}  // namespace oracle

SuiteResult suite_closed_forms(std::uint64_t seed, int trials);
SuiteResult suite_qt_identity(std::uint64_t seed, int trials, int t_max = 5);
SuiteResult suite_mu_oracle(std::uint64_t seed, int trials);
SuiteResult suite_local_invariance(std::uint64_t seed, int trials);
SuiteResult suite_mu_g_tensorization(std::uint64_t seed, int trials);
SuiteResult suite_lossy_monotonicity(std::uint64_t seed, int trials);
SuiteResult suite_ribbon_consistency(std::uint64_t seed, int trials, int samples = 50);
SuiteResult suite_ribbon_structure(std::uint64_t seed, int trials, int samples = 100, int probes_per_trial = 10);
SuiteResult suite_gaussian_ribbon_tensorization(std::uint64_t seed, int trials);

/// Every suite with `trials` trials each; deterministic for a given seed.
Json run_verify(std::uint64_t seed, int trials);

}  // namespace gaussmc
