#include "gaussmc/tools/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <unsupported/Eigen/KroneckerProduct>

#include "gaussmc/catalog.hpp"
#include "gaussmc/gaussian_maxcorr.hpp"
#include "gaussmc/linalg.hpp"
#include "gaussmc/maxcorr.hpp"
#include "gaussmc/random.hpp"
#include "gaussmc/ribbon.hpp"
#include "gaussmc/standard_form.hpp"
#include "gaussmc/tools/io.hpp"

namespace gaussmc {

Json SuiteResult::to_json() const {
  Json j;
  j["name"] = name;
  j["passed"] = passed();
  j["cases"] = cases;
  j["failures"] = failures;
  j["skipped"] = skipped;
  j["max_error"] = max_error;
  j["counterexample"] = counterexample;
  return j;
}

namespace oracle {

Matrix<double> kron_power(const Matrix<double>& q, int t) {
  Matrix<double> out = Matrix<double>::Ones(1, 1);
  for (int i = 0; i < t; ++i) out = Eigen::kroneckerProduct(out, q).eval();
  return out;
}

double mu_linear(const GaussianState<double>& state) {
  using C = std::complex<double>;
  if (state.modes() != 2) throw StructuralError("mu_linear needs a two-mode state");
  const ComplexMatrix<double> g = 0.5 * uncertainty_matrix(state);
  const ComplexMatrix<double> ga = g.topLeftCorner(2, 2), gb = g.bottomRightCorner(2, 2);
  const ComplexMatrix<double> c = g.topRightCorner(2, 2);
  const auto isqrt = [](const ComplexMatrix<double>& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<double>> es(h);
    const Vector<double> w = es.eigenvalues().cwiseMax(0.0);
    return ComplexMatrix<double>(es.eigenvectors() * w.cwiseSqrt().cwiseInverse().cast<C>().asDiagonal() *
                                 es.eigenvectors().adjoint());
  };
  return spectral_norm(isqrt(ga) * c * isqrt(gb));
}

}  // namespace oracle

namespace {

enum Stream : std::uint32_t {
  kClosedForms = 1,
  kQt,
  kMuOracle,
  kInvariance,
  kMuGTensor,
  kLossy,
  kRibbonConsistency,
  kRibbonStructure,
  kGaussianRibbonTensor,
};

class Recorder {
 public:
  explicit Recorder(std::string name) { r_.name = std::move(name); }

  void check(bool ok, double error, const std::function<Json()>& detail) {
    ++r_.cases;
    if (std::isfinite(error)) r_.max_error = std::max(r_.max_error, error);
    if (!ok) {
      ++r_.failures;
      if (r_.counterexample.is_null()) r_.counterexample = detail();
    }
  }

  void fail(const std::string& what, const Json& context) {
    ++r_.cases;
    ++r_.failures;
    if (r_.counterexample.is_null()) r_.counterexample = Json{{"error", what}, {"context", context}};
  }

  void skip() { ++r_.skipped; }

  SuiteResult result() const { return r_; }

 private:
  SuiteResult r_;
};

/// Runs body(trial, rng) for every trial, turning library errors into failures.
template <typename Body>
SuiteResult run_trials(const char* name, std::uint64_t seed, int trials, Stream stream, Body body) {
  Recorder rec(name);
  for (int trial = 0; trial < trials; ++trial) {
    RandomSource rng(seed, static_cast<std::uint64_t>(trial), stream);
    try {
      body(trial, rng, rec);
    } catch (const Error& e) {
      rec.fail(e.what(), Json{{"trial", trial}});
    }
  }
  return rec.result();
}

Json theta_json(const Vector<double>& theta) { return to_json(theta); }

Vector<double> random_theta(RandomSource& rng, int m) {
  Vector<double> t(m);
  for (int j = 0; j < m; ++j) t(j) = rng.uniform();
  return t;
}

/// Smallest positive s with (1/(s d1) - 1)(1/(s d2) - 1) = mu^2.
double closed_form_boundary_scale(double mu, double d1, double d2) {
  const double a = (1 - mu * mu) * d1 * d2, b = d1 + d2;
  const double s = 2 / (b + std::sqrt(std::max(0.0, b * b - 4 * a)));
  return std::min(s, 1 / std::max(d1, d2));
}

}  // namespace

SuiteResult suite_closed_forms(std::uint64_t seed, int trials) {
  return run_trials("closed_forms", seed, trials, kClosedForms, [](int trial, RandomSource& rng, Recorder& rec) {
    const double lambda = rng.uniform(1.05, 6), u = rng.uniform();
    const double nu_ca = u * std::sqrt(lambda * lambda - 1), nu_cc = u * (lambda - 1);
    const double e_ca = std::abs(maximal_correlation(ca_state(lambda, nu_ca)).mu - nu_ca / std::sqrt(lambda * lambda - 1));
    const double e_cc = std::abs(maximal_correlation(cc_state(lambda, nu_cc)).mu - nu_cc / (lambda - 1));
    const double e_g = std::max(std::abs(gaussian_maximal_correlation(ca_state(lambda, nu_ca)).mu_g - nu_ca / lambda),
                                std::abs(gaussian_maximal_correlation(cc_state(lambda, nu_cc)).mu_g - nu_cc / lambda));
    const double err = std::max({e_ca, e_cc, e_g});
    rec.check(err <= 1e-10, err, [&] {
      return Json{{"trial", trial}, {"lambda", lambda}, {"nu_ca", nu_ca}, {"nu_cc", nu_cc}, {"error", err}};
    });
  });
}

SuiteResult suite_qt_identity(std::uint64_t seed, int trials, int t_max) {
  return run_trials("qt_identity", seed, trials, kQt, [t_max](int trial, RandomSource& rng, Recorder& rec) {
    const auto p = random_standard_form(rng);
    const Matrix<double> q1 = q1_matrix(p.lambda_a, p.lambda_b, p.nu1, p.nu2);
    const double q1_norm = spectral_norm(q1);
    for (int t = 2; t <= t_max; ++t) {
      const Matrix<double> s = s_matrix<double>(t);
      const Matrix<double> lifted = s * oracle::kron_power(q1, t) * s.transpose();
      const Matrix<double> qt = qt_block(p.lambda_a, p.lambda_b, p.nu1, p.nu2, t);
      const double err = (lifted - qt).cwiseAbs().maxCoeff();
      const double qt_norm = spectral_norm(qt);
      rec.check(err <= 1e-9 && qt_norm <= q1_norm + 1e-10, err, [&] {
        return Json{{"trial", trial},          {"t", t},           {"lambda_a", p.lambda_a}, {"lambda_b", p.lambda_b},
                    {"nu1", p.nu1},            {"nu2", p.nu2},     {"entry_error", err},     {"qt_norm", qt_norm},
                    {"q1_norm", q1_norm}};
      });
    }
  });
}

SuiteResult suite_mu_oracle(std::uint64_t seed, int trials) {
  return run_trials("mu_oracle", seed, trials, kMuOracle, [](int trial, RandomSource& rng, Recorder& rec) {
    using C = std::complex<double>;
    const auto state = random_two_mode_state(rng);
    const auto rep = maximal_correlation(state);
    const double ref = oracle::mu_linear(state);

    // The witnesses, mapped back to the input frame, must be normalized and
    // reach the correlation value.
    const ComplexMatrix<double> g = 0.5 * uncertainty_matrix(state);
    const C inner = (rep.alpha.adjoint() * g.topRightCorner(2, 2) * rep.beta)(0, 0);
    const C norm_a = (rep.alpha.adjoint() * g.topLeftCorner(2, 2) * rep.alpha)(0, 0);
    const C norm_b = (rep.beta.adjoint() * g.bottomRightCorner(2, 2) * rep.beta)(0, 0);
    const double err = std::max({std::abs(rep.mu - ref), std::abs(inner - rep.mu), std::abs(norm_a - 1.0),
                                 std::abs(norm_b - 1.0)});
    rec.check(err <= 1e-8, err, [&] {
      return Json{{"trial", trial}, {"mu", rep.mu}, {"oracle", ref}, {"error", err}, {"state", io::state_to_json(state)}};
    });
  });
}

SuiteResult suite_local_invariance(std::uint64_t seed, int trials) {
  return run_trials("local_unitary_invariance", seed, trials, kInvariance,
                    [](int trial, RandomSource& rng, Recorder& rec) {
                      const auto state = random_two_mode_state(rng);
                      const auto moved = apply_unitary(state, random_local_unitary(rng, 2));
                      const auto invariants = [](const GaussianState<double>& s) {
                        const auto sf = bipartite_standard_form(s);
                        Vector<double> v(6);
                        v << maximal_correlation(s).mu, gaussian_maximal_correlation(s).mu_g, sf.lambdas[0],
                            sf.lambdas[1], std::abs((*sf.nu)(0)), std::abs((*sf.nu)(1));
                        return v;
                      };
                      const Vector<double> a = invariants(state), b = invariants(moved);
                      const double err = (a - b).cwiseAbs().maxCoeff();
                      rec.check(err <= 1e-8, err, [&] {
                        return Json{{"trial", trial}, {"before", to_json(a)}, {"after", to_json(b)}};
                      });
                    });
}

SuiteResult suite_mu_g_tensorization(std::uint64_t seed, int trials) {
  const auto merged = ModePartition::parse("0,2;1,3", 4);
  return run_trials("mu_g_tensorization", seed, trials, kMuGTensor, [&](int trial, RandomSource& rng, Recorder& rec) {
    const auto rho = random_two_mode_state(rng), sigma = random_two_mode_state(rng);
    const double a = gaussian_maximal_correlation(rho).mu_g, b = gaussian_maximal_correlation(sigma).mu_g;
    const double ab = gaussian_maximal_correlation(tensor_product(rho, sigma), merged).mu_g;
    const double err = std::abs(ab - std::max(a, b));
    rec.check(err <= 1e-9, err, [&] {
      return Json{{"trial", trial}, {"mu_g_rho", a}, {"mu_g_sigma", b}, {"mu_g_product", ab}};
    });
  });
}

SuiteResult suite_lossy_monotonicity(std::uint64_t seed, int trials) {
  return run_trials("lossy_monotonicity", seed, trials, kLossy, [](int trial, RandomSource& rng, Recorder& rec) {
    const auto initial = random_two_mode_state(rng);
    const double tau_a = rng.uniform(0, 0.99), tau_b = rng.uniform(0, 0.99);
    const auto shared = lossy_channel(lossy_channel(initial, {0}, tau_a), {1}, tau_b);
    const double g0 = gaussian_maximal_correlation(initial).mu_g, g1 = gaussian_maximal_correlation(shared).mu_g;
    const double m0 = maximal_correlation(initial).mu, m1 = maximal_correlation(shared).mu;
    rec.check(g1 < g0 && m1 <= m0 + 1e-9, std::max(0.0, std::max(g1 - g0, m1 - m0)), [&] {
      return Json{{"trial", trial}, {"tau_a", tau_a}, {"tau_b", tau_b}, {"mu_g", {g0, g1}}, {"mu", {m0, m1}}};
    });
  });
}

SuiteResult suite_ribbon_consistency(std::uint64_t seed, int trials, int samples) {
  return run_trials("ribbon_consistency", seed, trials, kRibbonConsistency,
                    [samples](int trial, RandomSource& rng, Recorder& rec) {
                      const auto state = random_two_mode_state(rng);
                      const double mu = maximal_correlation(state).mu;
                      for (int k = 0; k < samples; ++k) {
                        const double t1 = rng.uniform(), t2 = rng.uniform();
                        const double gap = (1 / t1 - 1) * (1 / t2 - 1) - mu * mu;
                        if (std::abs(gap) <= 1e-6) {
                          rec.skip();
                          continue;
                        }
                        const bool psd = in_ribbon(state, ThetaPoint<double>{t1, t2}).accepted;
                        const bool closed = bipartite_ribbon_check(mu, t1, t2);
                        rec.check(psd == closed, 0.0, [&] {
                          return Json{{"trial", trial}, {"theta", {t1, t2}}, {"mu", mu}, {"psd", psd}, {"closed_form", closed}};
                        });
                      }
                      const double d1 = rng.uniform(0.05, 1), d2 = rng.uniform(0.05, 1);
                      Vector<double> dir(2);
                      dir << d1, d2;
                      const double s = ribbon_boundary_scale(state, dir);
                      const double ref = closed_form_boundary_scale(mu, d1, d2);
                      const double err = std::abs(s - ref) * std::max(d1, d2);
                      rec.check(err <= 1e-8, err, [&] {
                        return Json{{"trial", trial}, {"direction", {d1, d2}}, {"mu", mu}, {"bisection", s}, {"closed_form", ref}};
                      });
                    });
}

SuiteResult suite_ribbon_structure(std::uint64_t seed, int trials, int samples, int probes_per_trial) {
  return run_trials(
      "ribbon_structure", seed, trials, kRibbonStructure,
      [samples, probes_per_trial](int trial, RandomSource& rng, Recorder& rec) {
        const int m = 2 + trial % 2;
        auto product = random_state(rng, 1);
        for (int j = 1; j < m; ++j) product = tensor_product(product, random_state(rng, 1));
        const auto state = random_state(rng, m);
        const auto detail = [&](const char* what, const Vector<double>& theta) {
          return Json{{"trial", trial}, {"check", what}, {"theta", theta_json(theta)}};
        };

        std::vector<Vector<double>> accepted;
        for (int k = 0; k < samples; ++k) {
          const Vector<double> theta = random_theta(rng, m);
          const auto p = in_ribbon(product, ThetaPoint<double>(theta));
          rec.check(p.accepted, 0.0, [&] { return detail("product_state", theta); });

          const Vector<double> small = theta * (rng.uniform() / theta.sum());
          rec.check(in_ribbon(state, ThetaPoint<double>(small)).accepted, 0.0,
                    [&] { return detail("trivial_region", small); });
          accepted.push_back(small);

          const auto q = in_ribbon(state, ThetaPoint<double>(theta));
          if (q.margin >= 1e-6) {
            rec.check(in_gaussian_ribbon(state, ThetaPoint<double>(theta)).accepted, 0.0,
                      [&] { return detail("containment", theta); });
          } else if (q.margin > -1e-6) {
            rec.skip();
          }
          if (q.margin >= 0) {
            accepted.push_back(theta);
            Vector<double> lower = theta;
            for (int j = 0; j < m; ++j) lower(j) *= rng.uniform();
            rec.check(in_ribbon(state, ThetaPoint<double>(lower)).accepted, 0.0,
                      [&] { return detail("monotone", lower); });
          }
        }
        for (int k = 0; k < probes_per_trial && !accepted.empty(); ++k) {
          const auto pick = [&] {
            const auto i = static_cast<std::size_t>(rng.uniform() * static_cast<double>(accepted.size()));
            return accepted[std::min(i, accepted.size() - 1)];
          };
          const Vector<double> a = pick(), b = pick();
          const double w = rng.uniform();
          const Vector<double> mix = w * a + (1 - w) * b;
          rec.check(in_ribbon(state, ThetaPoint<double>(mix)).accepted, 0.0, [&] { return detail("convexity", mix); });
        }
      });
}

SuiteResult suite_gaussian_ribbon_tensorization(std::uint64_t seed, int trials) {
  const auto merged = ModePartition::parse("0,2;1,3", 4);
  constexpr double kTol = 1e-8;
  return run_trials(
      "gaussian_ribbon_tensorization", seed, trials, kGaussianRibbonTensor,
      [&](int trial, RandomSource& rng, Recorder& rec) {
        const auto rho = random_two_mode_state(rng), sigma = random_two_mode_state(rng);
        const auto product = tensor_product(rho, sigma);
        for (double t1 : {0.2, 0.4, 0.6, 0.8, 1.0}) {
          for (double t2 : {0.25, 0.5, 0.75, 1.0}) {
            const ThetaPoint<double> theta{t1, t2};
            const auto a = in_gaussian_ribbon(rho, theta, kTol), b = in_gaussian_ribbon(sigma, theta, kTol);
            const auto ab = in_gaussian_ribbon(product, merged, theta, kTol);
            const double err = std::abs(ab.margin - std::min(a.margin, b.margin));
            rec.check(ab.accepted == (a.accepted && b.accepted) && err <= kTol, err, [&] {
              return Json{{"trial", trial},         {"theta", {t1, t2}},      {"rho", a.accepted},
                          {"sigma", b.accepted},    {"product", ab.accepted}, {"margin_error", err}};
            });
          }
        }
      });
}

Json run_verify(std::uint64_t seed, int trials) {
  const SuiteResult suites[] = {
      suite_closed_forms(seed, trials),       suite_qt_identity(seed, trials),
      suite_mu_oracle(seed, trials),          suite_local_invariance(seed, trials),
      suite_mu_g_tensorization(seed, trials), suite_lossy_monotonicity(seed, trials),
      suite_ribbon_consistency(seed, trials), suite_ribbon_structure(seed, trials),
      suite_gaussian_ribbon_tensorization(seed, trials),
  };
  Json out;
  out["seed"] = seed;
  out["trials"] = trials;
  bool all = true;
  Json list = Json::array();
  for (const auto& s : suites) {
    all = all && s.passed();
    list.push_back(s.to_json());
  }
  out["passed"] = all;
  out["suites"] = list;
  return out;
}

}  // namespace gaussmc
