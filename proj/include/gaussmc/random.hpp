#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "gaussmc/common.hpp"
#include "gaussmc/gaussian_ops.hpp"
#include "gaussmc/phase_space.hpp"

namespace gaussmc {

/// Deterministic stream for one (seed, stream, trial) triple. Uniform draws are built
/// from the top 53 bits of the engine so values agree across standard libraries.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream,
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    engine_.seed(seq);
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

/// Largest s with the cross blocks scaled by s still physical.
inline double physical_scale(const Matrix<double>& diag, const Matrix<double>& cross) {
  const auto physical = [&](double s) {
    return validate_physical(GaussianState<double>::from_cov(diag + s * cross)).physical;
  };
  double lo = 0, hi = 1;
  while (physical(hi)) {
    lo = hi;
    hi *= 2;
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (physical(mid) ? lo : hi) = mid;
  }
  return lo;
}

inline Matrix<double> random_thermal_blocks(RandomSource& rng, int modes) {
  Matrix<double> d = Matrix<double>::Zero(2 * modes, 2 * modes);
  for (int j = 0; j < modes; ++j) d.block<2, 2>(2 * j, 2 * j) = rng.uniform(1.05, 6.0) * Matrix2<double>::Identity();
  return d;
}

}  // namespace detail

/// Standard-form parameters (lambda_a, lambda_b, nu1, nu2) at 0.95 of the
/// physical boundary along a random direction of the cross block.
struct StandardFormParameters {
  double lambda_a, lambda_b, nu1, nu2;
};

inline StandardFormParameters random_standard_form(RandomSource& rng) {
  const Matrix<double> d = detail::random_thermal_blocks(rng, 2);
  const double c1 = rng.uniform(-1, 1), c2 = rng.uniform(-1, 1);
  Matrix<double> cross = Matrix<double>::Zero(4, 4);
  cross(0, 2) = cross(2, 0) = c1;
  cross(1, 3) = cross(3, 1) = c2;
  const double s = 0.95 * detail::physical_scale(d, cross);
  return {d(0, 0), d(2, 2), s * c1, s * c2};
}

/// Random local Gaussian unitary: rotation * squeeze(|z| <= 1) * rotation per
/// mode, plus a displacement in [-2, 2].
inline GaussianUnitary<double> random_local_unitary(RandomSource& rng, int modes) {
  constexpr double pi = std::numbers::pi;
  std::vector<Matrix2<double>> blocks(modes);
  for (auto& b : blocks) {
    b = rotation(rng.uniform(-pi, pi)) * squeeze(rng.uniform(-1, 1)) * rotation(rng.uniform(-pi, pi));
  }
  Vector<double> r(2 * modes);
  for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = rng.uniform(-2, 2);
  return GaussianUnitary<double>::local(std::span<const Matrix2<double>>(blocks), std::move(r));
}

/// Random physical state: thermal marginals with random cross blocks scaled to
/// 0.95 of the physical boundary, then scrambled by a random local unitary.
inline GaussianState<double> random_state(RandomSource& rng, int modes) {
  const Matrix<double> d = detail::random_thermal_blocks(rng, modes);
  Matrix<double> cross = Matrix<double>::Zero(2 * modes, 2 * modes);
  for (int j = 0; j < modes; ++j) {
    for (int k = j + 1; k < modes; ++k) {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) cross(2 * j + a, 2 * k + b) = cross(2 * k + b, 2 * j + a) = rng.uniform(-1, 1);
    }
  }
  const double s = modes > 1 ? 0.95 * detail::physical_scale(d, cross) : 0.0;
  const auto base = GaussianState<double>::from_cov(d + s * cross);
  return apply_unitary(base, random_local_unitary(rng, modes));
}

inline GaussianState<double> random_two_mode_state(RandomSource& rng) { return random_state(rng, 2); }

}  // namespace gaussmc
