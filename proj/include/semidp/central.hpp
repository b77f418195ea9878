// Copyright 2026 The SemiDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Central-model mean estimators that are DP only with respect to the
// private subset of the data: throw-away, Laplace, Gaussian, and the
// weighted-Gaussian family with closed-form optimal weighting.
#pragma once

#include <cmath>
#include <cstddef>

#include "semidp/core.hpp"
#include "semidp/rng.hpp"
#include "semidp/vec.hpp"

namespace semidp {

namespace detail {

// The noise calibrations assume the stated norm bound; data outside it
// would void the privacy guarantee, so it is rejected.
inline void require_norm_bound(const SplitDataset& data, double bound,
                               const char* who) {
  if (data.max_sample_norm() > bound * (1.0 + 1e-9)) {
    throw invalid_config_error(std::string(who) +
                               ": samples exceed the stated norm bound");
  }
}

}  // namespace detail

// Mean of the public samples. Consumes no privacy budget.
inline Vec throwaway_mean(const SplitDataset& data) {
  if (data.n_pub() == 0) {
    throw invalid_config_error("throwaway_mean: no public samples");
  }
  Vec out = zeros(data.dim());
  for (std::size_t i = 0; i < data.n(); ++i) {
    if (!data.is_private(i)) add_scaled(out, 1.0, data.sample(i));
  }
  scale(out, 1.0 / static_cast<double>(data.n_pub()));
  return out;
}

// Worst-case MSE of throw-away over P(B, V).
inline double throwaway_mse(std::size_t n_pub, const BoundedDistSpec& spec) {
  if (n_pub == 0) throw invalid_config_error("throwaway_mse: n_pub = 0");
  return spec.stddev_v * spec.stddev_v / static_cast<double>(n_pub);
}

// Per-coordinate Laplace scale for the epsilon-DP mean of n samples bounded
// by B: l1 sensitivity of the average is at most 2 sqrt(d) B / n.
inline double laplace_mean_scale(std::size_t n, std::size_t d, double eps,
                                 double bound_b = 1.0) {
  return 2.0 * std::sqrt(static_cast<double>(d)) * bound_b /
         (static_cast<double>(n) * eps);
}

// Average of all samples plus i.i.d. Laplace noise; epsilon-DP, hence
// epsilon-semi-DP. Samples must lie in the ball of radius bound_b
// (unit ball by default).
inline Vec laplace_mean(const SplitDataset& data, const PrivacyBudget& budget,
                        RngStream& rng, double bound_b = 1.0) {
  if (!(budget.epsilon > 0.0)) {
    throw invalid_config_error("laplace_mean: epsilon must be > 0");
  }
  if (budget.delta != 0.0) {
    throw invalid_config_error("laplace_mean: pure DP requires delta = 0");
  }
  detail::require_norm_bound(data, bound_b, "laplace_mean");
  const double scale_b =
      laplace_mean_scale(data.n(), data.dim(), budget.epsilon, bound_b);
  Vec out = zeros(data.dim());
  for (std::size_t i = 0; i < data.n(); ++i) {
    add_scaled(out, 1.0, data.sample(i));
  }
  scale(out, 1.0 / static_cast<double>(data.n()));
  for (double& x : out) x += rng.laplace(scale_b);
  return out;
}

// Noise variance of the (eps, delta)-DP Gaussian mean: 8 B^2 ln(2/delta) /
// (eps^2 n^2), from l2 sensitivity 2B/n.
inline double gaussian_mean_sigma2(std::size_t n, const PrivacyBudget& budget,
                                   double bound_b = 1.0) {
  const double n_d = static_cast<double>(n);
  return 8.0 * bound_b * bound_b * std::log(2.0 / budget.delta) /
         (budget.epsilon * budget.epsilon * n_d * n_d);
}

inline Vec gaussian_mean_approx_dp(const SplitDataset& data,
                                   const PrivacyBudget& budget, RngStream& rng,
                                   double bound_b = 1.0) {
  if (!(budget.epsilon > 0.0)) {
    throw invalid_config_error("gaussian_mean_approx_dp: epsilon must be > 0");
  }
  if (!(budget.delta > 0.0)) {
    throw invalid_config_error(
        "gaussian_mean_approx_dp: the Gaussian mechanism needs delta > 0");
  }
  detail::require_norm_bound(data, bound_b, "gaussian_mean_approx_dp");
  const double sigma = std::sqrt(gaussian_mean_sigma2(data.n(), budget, bound_b));
  Vec out = zeros(data.dim());
  for (std::size_t i = 0; i < data.n(); ++i) {
    add_scaled(out, 1.0, data.sample(i));
  }
  scale(out, 1.0 / static_cast<double>(data.n()));
  for (double& x : out) x += sigma * rng.normal();
  return out;
}

// rho-zCDP Gaussian mean: noise variance 2 B^2 / (rho n^2) per coordinate.
inline double gaussian_zcdp_sigma2(std::size_t n, const ZcdpBudget& budget,
                                   const BoundedDistSpec& spec) {
  const double n_d = static_cast<double>(n);
  return 2.0 * spec.bound_b * spec.bound_b / (budget.rho * n_d * n_d);
}

inline Vec gaussian_mean_zcdp(const SplitDataset& data, const ZcdpBudget& budget,
                              const BoundedDistSpec& spec, RngStream& rng) {
  detail::require_norm_bound(data, spec.bound_b, "gaussian_mean_zcdp");
  const double sigma = std::sqrt(gaussian_zcdp_sigma2(data.n(), budget, spec));
  Vec out = zeros(data.dim());
  for (std::size_t i = 0; i < data.n(); ++i) {
    add_scaled(out, 1.0, data.sample(i));
  }
  scale(out, 1.0 / static_cast<double>(data.n()));
  for (double& x : out) x += sigma * rng.normal();
  return out;
}

// Minimax MSE of the rho-zCDP Gaussian mechanism over P(B, V):
// 2 d B^2 / (rho n^2) + V^2 / n.
inline double gaussian_zcdp_mse(std::size_t n, std::size_t d,
                                const BoundedDistSpec& spec,
                                const ZcdpBudget& budget) {
  const double n_d = static_cast<double>(n);
  return 2.0 * static_cast<double>(d) * spec.bound_b * spec.bound_b /
             (budget.rho * n_d * n_d) +
         spec.stddev_v * spec.stddev_v / n_d;
}

// Smallest noise variance making the weighted estimator rho-semi-zCDP:
// the private part has l2 sensitivity 2 r B, so sigma_r^2 = 2 B^2 r^2 / rho.
inline double weighted_gauss_noise_floor(double r, const BoundedDistSpec& spec,
                                         const ZcdpBudget& rho) {
  return 2.0 * spec.bound_b * spec.bound_b * r * r / rho.rho;
}

// Parameters of the weighted-Gaussian estimator: private samples weighted
// by r, public samples by (1 - n_priv r) / n_pub, Gaussian noise with
// variance sigma_r_sq calibrated to the private weight.
struct WeightedGaussConfig {
  double r = 0.0;
  double sigma_r = 0.0;
  double sigma_r_sq = 0.0;
  BoundedDistSpec spec;
  ZcdpBudget rho;

  // Calibrated constructor: sigma_r^2 = 2 B^2 r^2 / rho with equality.
  static WeightedGaussConfig calibrated(double r, const BoundedDistSpec& spec,
                                        const ZcdpBudget& rho) {
    if (!(r >= 0.0)) {
      throw invalid_config_error("WeightedGaussConfig: r must be >= 0");
    }
    WeightedGaussConfig cfg;
    cfg.r = r;
    cfg.sigma_r_sq = weighted_gauss_noise_floor(r, spec, rho);
    cfg.sigma_r = std::sqrt(cfg.sigma_r_sq);
    cfg.spec = spec;
    cfg.rho = rho;
    return cfg;
  }

  // Raw constructor for sweeping; rejects noise below the privacy floor.
  static WeightedGaussConfig raw(double r, double sigma_r,
                                 const BoundedDistSpec& spec,
                                 const ZcdpBudget& rho) {
    if (!(r >= 0.0)) {
      throw invalid_config_error("WeightedGaussConfig: r must be >= 0");
    }
    const double floor2 = weighted_gauss_noise_floor(r, spec, rho);
    if (sigma_r * sigma_r < floor2 * (1.0 - 1e-12)) {
      throw calibration_error(
          "WeightedGaussConfig: sigma_r^2 below the 2 B^2 r^2 / rho floor");
    }
    WeightedGaussConfig cfg;
    cfg.r = r;
    cfg.sigma_r = sigma_r;
    cfg.sigma_r_sq = sigma_r * sigma_r;
    cfg.spec = spec;
    cfg.rho = rho;
    return cfg;
  }
};

// Worst-case MSE J(r) of the calibrated weighted-Gaussian estimator over
// P(B, V): 2 d B^2 r^2 / rho + n_priv r^2 V^2 + (1 - n_priv r)^2 V^2 / n_pub.
inline double weighted_gauss_mse(double r, std::size_t n_priv,
                                 std::size_t n_pub, std::size_t d,
                                 const BoundedDistSpec& spec,
                                 const ZcdpBudget& rho) {
  if (n_pub == 0) throw invalid_config_error("weighted_gauss_mse: n_pub = 0");
  const double b2 = spec.bound_b * spec.bound_b;
  const double v2 = spec.stddev_v * spec.stddev_v;
  const double np = static_cast<double>(n_priv);
  const double residual = 1.0 - np * r;
  return 2.0 * static_cast<double>(d) * b2 * r * r / rho.rho +
         np * r * r * v2 +
         residual * residual * v2 / static_cast<double>(n_pub);
}

inline Vec weighted_gaussian_mean(const SplitDataset& data,
                                  const WeightedGaussConfig& cfg,
                                  RngStream& rng) {
  if (data.n_pub() == 0) {
    throw invalid_config_error("weighted_gaussian_mean: no public samples");
  }
  detail::require_norm_bound(data, cfg.spec.bound_b, "weighted_gaussian_mean");
  // With no private samples the estimator collapses to throw-away and the
  // weight r is ignored.
  if (data.n_priv() == 0) return throwaway_mean(data);
  const double np = static_cast<double>(data.n_priv());
  if (!(cfg.r >= 0.0 && cfg.r <= 1.0 / np)) {
    throw invalid_config_error(
        "weighted_gaussian_mean: r must lie in [0, 1/n_priv]");
  }
  const double w_pub = (1.0 - np * cfg.r) / static_cast<double>(data.n_pub());
  Vec out = zeros(data.dim());
  for (std::size_t i = 0; i < data.n(); ++i) {
    add_scaled(out, data.is_private(i) ? cfg.r : w_pub, data.sample(i));
  }
  if (cfg.sigma_r > 0.0) {
    for (double& x : out) x += cfg.sigma_r * rng.normal();
  }
  return out;
}

// Minimizer r* of J(r):
// r* = (n_priv V^2 / n_pub) / (2 d B^2 / rho + n_priv V^2 + n_priv^2 V^2 / n_pub).
inline double optimal_weight(std::size_t n_priv, std::size_t n_pub,
                             const BoundedDistSpec& spec, const ZcdpBudget& rho,
                             std::size_t d) {
  if (n_pub == 0) throw invalid_config_error("optimal_weight: n_pub = 0");
  if (n_priv == 0) return 0.0;
  const double b2 = spec.bound_b * spec.bound_b;
  const double v2 = spec.stddev_v * spec.stddev_v;
  const double np = static_cast<double>(n_priv);
  const double npub = static_cast<double>(n_pub);
  const double numer = np * v2 / npub;
  const double denom =
      2.0 * static_cast<double>(d) * b2 / rho.rho + np * v2 + np * np * v2 / npub;
  return numer / denom;
}

// Convenience form: weighted-Gaussian mean at the optimal weight r*.
inline Vec weighted_gaussian_mean(const SplitDataset& data,
                                  const BoundedDistSpec& spec,
                                  const ZcdpBudget& rho, RngStream& rng) {
  const double r =
      optimal_weight(data.n_priv(), data.n_pub(), spec, rho, data.dim());
  return weighted_gaussian_mean(
      data, WeightedGaussConfig::calibrated(r, spec, rho), rng);
}

// Guaranteed MSE ratio of the weighted-Gaussian estimator against the best
// baseline, valid in the regime V^2/n_pub <= 2 d B^2 / (rho n^2):
// (q^2 + q s^2) / (q^2 + 2 q s^2 + s^4) with
// q = 2 + n_priv rho V^2 / (d B^2) and s = V n_priv sqrt(rho) / (B sqrt(d n_pub)).
inline double advantage_ratio(std::size_t n_priv, std::size_t n_pub,
                              const BoundedDistSpec& spec, const ZcdpBudget& rho,
                              std::size_t d) {
  if (n_pub == 0) throw invalid_config_error("advantage_ratio: n_pub = 0");
  const double b2 = spec.bound_b * spec.bound_b;
  const double v2 = spec.stddev_v * spec.stddev_v;
  const double n = static_cast<double>(n_priv + n_pub);
  const double lhs = v2 / static_cast<double>(n_pub);
  const double rhs = 2.0 * static_cast<double>(d) * b2 / (rho.rho * n * n);
  // Small relative slack: paper configurations sit exactly on the boundary.
  if (lhs > rhs * (1.0 + 1e-9)) {
    throw invalid_config_error(
        "advantage_ratio: outside the V^2/n_pub <= 2dB^2/(rho n^2) regime");
  }
  const double np = static_cast<double>(n_priv);
  const double q = 2.0 + np * rho.rho * v2 / (static_cast<double>(d) * b2);
  const double s = spec.stddev_v * np * std::sqrt(rho.rho) /
                   (spec.bound_b *
                    std::sqrt(static_cast<double>(d) * static_cast<double>(n_pub)));
  const double s2 = s * s;
  return (q * q + q * s2) / (q * q + 2.0 * q * s2 + s2 * s2);
}

// Weighted estimator with per-coordinate Laplace noise of scale
// 2 r sqrt(d) B / eps (l1 sensitivity of the private part); eps-semi-DP.
inline Vec weighted_laplace_mean(const SplitDataset& data, double r,
                                 const PrivacyBudget& budget,
                                 const BoundedDistSpec& spec, RngStream& rng) {
  if (!(budget.epsilon > 0.0)) {
    throw invalid_config_error("weighted_laplace_mean: epsilon must be > 0");
  }
  if (budget.delta != 0.0) {
    throw invalid_config_error("weighted_laplace_mean: requires delta = 0");
  }
  if (data.n_pub() == 0) {
    throw invalid_config_error("weighted_laplace_mean: no public samples");
  }
  detail::require_norm_bound(data, spec.bound_b, "weighted_laplace_mean");
  if (data.n_priv() == 0) return throwaway_mean(data);
  const double np = static_cast<double>(data.n_priv());
  if (!(r >= 0.0 && r <= 1.0 / np)) {
    throw invalid_config_error(
        "weighted_laplace_mean: r must lie in [0, 1/n_priv]");
  }
  const double w_pub = (1.0 - np * r) / static_cast<double>(data.n_pub());
  Vec out = zeros(data.dim());
  for (std::size_t i = 0; i < data.n(); ++i) {
    add_scaled(out, data.is_private(i) ? r : w_pub, data.sample(i));
  }
  if (r > 0.0) {
    const double scale_b = 2.0 * r *
                           std::sqrt(static_cast<double>(data.dim())) *
                           spec.bound_b / budget.epsilon;
    for (double& x : out) x += rng.laplace(scale_b);
  }
  return out;
}

inline double weighted_laplace_scale(double r, std::size_t d, double eps,
                                     const BoundedDistSpec& spec) {
  return 2.0 * r * std::sqrt(static_cast<double>(d)) * spec.bound_b / eps;
}

}  // namespace semidp
