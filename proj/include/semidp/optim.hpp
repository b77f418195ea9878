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
// Training algorithms: semi-DP SGD with weighted-Gaussian gradient
// estimates and without-replacement zCDP accounting, its DP-SGD and
// throw-away baselines, and the one-pass semi-local variant that privatizes
// gradient directions with the cap randomizer.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "semidp/central.hpp"
#include "semidp/core.hpp"
#include "semidp/local.hpp"
#include "semidp/rng.hpp"
#include "semidp/vec.hpp"

namespace semidp {

enum class LossKind { kSquared, kLogistic };

// Per-sample loss with gradient evaluator. Squared loss is
// f(w, (x, y)) = (<w, x> - y)^2; logistic expects labels y in {-1, +1}.
struct LossModel {
  LossKind kind = LossKind::kSquared;
  double lipschitz_hint = std::numeric_limits<double>::quiet_NaN();
  double strong_convexity_hint = 0.0;

  static LossModel squared() { return LossModel{LossKind::kSquared}; }
  static LossModel logistic() { return LossModel{LossKind::kLogistic}; }

  double value(const Vec& w, const Vec& x, double y) const {
    const double z = dot(w, x);
    switch (kind) {
      case LossKind::kSquared: {
        const double r = z - y;
        return r * r;
      }
      case LossKind::kLogistic: {
        const double t = y * z;
        if (t < -30.0) return -t;
        return std::log1p(std::exp(-t));
      }
    }
    return 0.0;
  }

  // out += coeff * grad f(w, (x, y))
  void add_gradient(const Vec& w, const Vec& x, double y, double coeff,
                    Vec& out) const {
    const double z = dot(w, x);
    switch (kind) {
      case LossKind::kSquared:
        add_scaled(out, coeff * 2.0 * (z - y), x);
        return;
      case LossKind::kLogistic: {
        const double t = y * z;
        const double sig = (t > 30.0) ? std::exp(-t) : 1.0 / (1.0 + std::exp(t));
        add_scaled(out, -coeff * y * sig, x);
        return;
      }
    }
  }

  Vec gradient(const Vec& w, const Vec& x, double y) const {
    Vec g = zeros(w.size());
    add_gradient(w, x, y, 1.0, g);
    return g;
  }
};

inline double mean_loss(const LossModel& loss, const Vec& w,
                        const SplitDataset& data) {
  double s = 0.0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    s += loss.value(w, data.sample(i), data.target(i));
  }
  return s / static_cast<double>(data.n());
}

inline double mean_public_loss(const LossModel& loss, const Vec& w,
                               const SplitDataset& data) {
  double s = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    if (data.is_private(i)) continue;
    s += loss.value(w, data.sample(i), data.target(i));
    ++count;
  }
  if (count == 0) throw invalid_config_error("mean_public_loss: no public samples");
  return s / static_cast<double>(count);
}

// Euclidean projection onto the centered l2-ball of radius c.
inline Vec clip(const Vec& g, double c) {
  if (!(c > 0.0)) throw invalid_config_error("clip: threshold must be > 0");
  const double n = norm(g);
  if (n <= c) return g;
  return scaled(g, c / n);
}

// Projection onto the domain ball; an infinite radius disables it.
inline Vec project(const Vec& w, double r) {
  if (std::isinf(r)) return w;
  if (!(r > 0.0)) throw invalid_config_error("project: radius must be > 0");
  const double n = norm(w);
  if (n <= r) return w;
  return scaled(w, r / n);
}

enum class IterateAveraging { kLast, kUniform };

// Shared configuration for the SGD family.
//
// iterations_t counts the updates of a single epoch (one without-replacement
// pass over the private pool); multi-epoch runs repeat the pass and compose
// the attached zCDP budget additively.
struct SgdConfig {
  std::size_t iterations_t = 0;
  std::size_t epochs = 1;
  double clip_c = 1.0;
  std::vector<double> step_sizes;  // singleton = constant schedule
  std::size_t k_priv = 0;
  std::size_t k_pub = 0;
  double alpha = 0.0;
  double noise_sigma2 = 0.0;
  double domain_radius_r = std::numeric_limits<double>::infinity();
  bool warm_start = false;
  bool rescale_public = true;
  IterateAveraging averaging = IterateAveraging::kLast;
  bool record_trace = true;
  double report_delta = 1e-5;

  double step_at(std::size_t t) const {
    if (step_sizes.size() == 1) return step_sizes.front();
    return step_sizes.at(t);
  }
};

struct PrivacyReport {
  double rho = 0.0;                                        // total zCDP
  double eps = 0.0;                                        // converted
  double delta = 0.0;
  double pure_eps = std::numeric_limits<double>::quiet_NaN();  // local model
};

struct TrainResult {
  Vec weights;
  std::vector<Vec> trace;  // w_0 followed by every post-update iterate
  // Per-iteration dataset indices of the private samples whose gradients
  // entered the update; proves the once-per-epoch touch invariant.
  std::vector<std::vector<std::size_t>> private_batches;
  PrivacyReport privacy;
};

namespace detail {

// Cyclic Jacobi eigendecomposition of a symmetric matrix (row-major d x d).
// Small fixed-dimension problems only; returns eigenvalues and column
// eigenvectors.
inline void jacobi_eig(std::vector<double> a, std::size_t d,
                       std::vector<double>& eigvals,
                       std::vector<double>& eigvecs) {
  eigvecs.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) eigvecs[i * d + i] = 1.0;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) off += a[p * d + q] * a[p * d + q];
    }
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double apq = a[p * d + q];
        if (std::fabs(apq) < 1e-300) continue;
        const double app = a[p * d + p];
        const double aqq = a[q * d + q];
        const double theta = 0.5 * (aqq - app) / apq;
        const double t = ((theta >= 0.0) ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < d; ++k) {
          const double akp = a[k * d + p];
          const double akq = a[k * d + q];
          a[k * d + p] = c * akp - s * akq;
          a[k * d + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double apk = a[p * d + k];
          const double aqk = a[q * d + k];
          a[p * d + k] = c * apk - s * aqk;
          a[q * d + k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double vkp = eigvecs[k * d + p];
          const double vkq = eigvecs[k * d + q];
          eigvecs[k * d + p] = c * vkp - s * vkq;
          eigvecs[k * d + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  eigvals.resize(d);
  for (std::size_t i = 0; i < d; ++i) eigvals[i] = a[i * d + i];
}

// Minimum-norm solution of the (possibly rank-deficient) normal equations
// A w = b with A symmetric PSD, via pseudo-inverse.
inline Vec pinv_solve(const std::vector<double>& a, const Vec& b,
                      std::size_t d) {
  std::vector<double> eigvals, eigvecs;
  jacobi_eig(a, d, eigvals, eigvecs);
  double max_eig = 0.0;
  for (double l : eigvals) max_eig = std::max(max_eig, std::fabs(l));
  const double tol = max_eig * static_cast<double>(d) * 1e-14;
  Vec w = zeros(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (std::fabs(eigvals[j]) <= tol) continue;
    double proj = 0.0;
    for (std::size_t i = 0; i < d; ++i) proj += eigvecs[i * d + j] * b[i];
    proj /= eigvals[j];
    for (std::size_t i = 0; i < d; ++i) w[i] += eigvecs[i * d + j] * proj;
  }
  return w;
}

}  // namespace detail

// Minimizer of the public empirical loss; consumes zero privacy budget.
// Squared loss solves the normal equations exactly (minimum-norm solution
// when the public design matrix is rank-deficient); logistic loss runs
// plain gradient descent to gradient-norm tolerance 1e-8.
inline Vec throwaway_erm(const SplitDataset& data, const LossModel& loss,
                         const SgdConfig& cfg) {
  if (data.n_pub() == 0) {
    throw invalid_config_error("throwaway_erm: no public samples");
  }
  if (!data.has_targets()) {
    throw invalid_config_error("throwaway_erm: loss requires targets");
  }
  const std::size_t d = data.dim();
  if (loss.kind == LossKind::kSquared) {
    std::vector<double> gram(d * d, 0.0);
    Vec rhs = zeros(d);
    for (std::size_t i = 0; i < data.n(); ++i) {
      if (data.is_private(i)) continue;
      const Vec& x = data.sample(i);
      const double y = data.target(i);
      for (std::size_t r = 0; r < d; ++r) {
        rhs[r] += x[r] * y;
        for (std::size_t c = r; c < d; ++c) gram[r * d + c] += x[r] * x[c];
      }
    }
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < r; ++c) gram[r * d + c] = gram[c * d + r];
    }
    return detail::pinv_solve(gram, rhs, d);
  }

  // Logistic: step 1/L with the trace bound on the Hessian.
  double smooth = 0.0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    if (!data.is_private(i)) smooth += 0.25 * norm_sq(data.sample(i));
  }
  smooth /= static_cast<double>(data.n_pub());
  const double step = (smooth > 0.0) ? 1.0 / smooth : 1.0;
  Vec w = zeros(d);
  const double inv_pub = 1.0 / static_cast<double>(data.n_pub());
  for (int it = 0; it < 200000; ++it) {
    Vec g = zeros(d);
    for (std::size_t i = 0; i < data.n(); ++i) {
      if (data.is_private(i)) continue;
      loss.add_gradient(w, data.sample(i), data.target(i), inv_pub, g);
    }
    const double gn = norm(g);
    if (gn <= 1e-8) break;
    add_scaled(w, -step, g);
    w = project(w, cfg.domain_radius_r);
    if (step * gn < 1e-15) break;
  }
  return w;
}

// Zero vector unless warm starting, in which case the public minimizer.
inline Vec warm_start_init(const SplitDataset& data, const LossModel& loss,
                           const SgdConfig& cfg) {
  if (!cfg.warm_start) return zeros(data.dim());
  if (data.n_pub() == 0) {
    throw invalid_config_error("warm_start_init: warm start needs public data");
  }
  return project(throwaway_erm(data, loss, cfg), cfg.domain_radius_r);
}

// Validates a central-model config against a dataset and zCDP budget.
// Privacy-calibration violations (noise floor, parallel-composition
// iteration cap) raise calibration_error; structural problems raise
// invalid_config_error.
inline void validate_central_sgd(const SgdConfig& cfg, const SplitDataset& data,
                                 const ZcdpBudget& budget) {
  if (cfg.iterations_t == 0) {
    throw invalid_config_error("SgdConfig: iterations must be >= 1");
  }
  if (cfg.epochs == 0) throw invalid_config_error("SgdConfig: epochs must be >= 1");
  if (!(cfg.clip_c > 0.0)) {
    throw invalid_config_error("SgdConfig: clip threshold must be > 0");
  }
  if (cfg.step_sizes.empty()) {
    throw invalid_config_error("SgdConfig: step size schedule is empty");
  }
  if (cfg.step_sizes.size() > 1 &&
      cfg.step_sizes.size() < cfg.iterations_t * cfg.epochs) {
    throw invalid_config_error("SgdConfig: step schedule shorter than the run");
  }
  for (double s : cfg.step_sizes) {
    if (!(s > 0.0)) throw invalid_config_error("SgdConfig: step sizes must be > 0");
  }
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) {
    throw invalid_config_error("SgdConfig: alpha must lie in [0, 1]");
  }
  if (!(cfg.domain_radius_r > 0.0)) {
    throw invalid_config_error("SgdConfig: domain radius must be > 0");
  }
  if (!data.has_targets()) {
    throw invalid_config_error("SgdConfig: training requires targets");
  }
  if (cfg.k_priv > data.n_priv()) {
    throw invalid_config_error("SgdConfig: K_priv exceeds the private pool");
  }
  if (cfg.k_pub > data.n_pub()) {
    throw invalid_config_error("SgdConfig: K_pub exceeds the public pool");
  }
  if (cfg.k_priv == 0 && cfg.alpha != 0.0) {
    throw invalid_config_error("SgdConfig: K_priv = 0 requires alpha = 0");
  }
  if (cfg.alpha < 1.0 && cfg.k_pub == 0) {
    throw invalid_config_error("SgdConfig: alpha < 1 needs a public batch");
  }
  if (cfg.k_priv > 0) {
    // Parallel composition in without-replacement mode: T <= n / K_priv.
    if (cfg.iterations_t * cfg.k_priv > data.n()) {
      throw calibration_error(
          "SgdConfig: T > n / K_priv breaks parallel composition in "
          "without-replacement mode");
    }
    if (cfg.iterations_t * cfg.k_priv > data.n_priv()) {
      throw invalid_config_error(
          "SgdConfig: an epoch needs T * K_priv <= n_priv disjoint private "
          "samples");
    }
    const double kp = static_cast<double>(cfg.k_priv);
    const double floor2 =
        2.0 * cfg.clip_c * cfg.clip_c / (budget.rho * kp * kp);
    if (cfg.noise_sigma2 < floor2 * (1.0 - 1e-12)) {
      throw calibration_error(
          "SgdConfig: sigma^2 below the 2 C^2 / (rho K_priv^2) floor");
    }
  }
}

namespace detail {

inline TrainResult run_central_sgd(const SplitDataset& data,
                                   const LossModel& loss, const SgdConfig& cfg,
                                   const ZcdpBudget& budget, RngStream& rng,
                                   Vec w0) {
  const std::size_t d = data.dim();
  RngStream shuffle_rng = rng.substream(0);
  RngStream pub_rng = rng.substream(1);
  RngStream noise_rng = rng.substream(2);
  const std::vector<std::size_t> priv_idx = data.private_indices();
  const std::vector<std::size_t> pub_idx = data.public_indices();
  const double sigma = std::sqrt(cfg.noise_sigma2);

  TrainResult result;
  Vec w = project(std::move(w0), cfg.domain_radius_r);
  if (cfg.record_trace) result.trace.push_back(w);
  Vec iterate_sum = zeros(d);
  std::size_t update_count = 0;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<std::size_t> pool = priv_idx;
    shuffle(pool, shuffle_rng);
    std::size_t cursor = 0;
    for (std::size_t t = 0; t < cfg.iterations_t; ++t) {
      Vec grad_est = zeros(d);
      std::vector<std::size_t> batch;
      if (cfg.k_priv > 0) {
        batch.assign(pool.begin() + static_cast<std::ptrdiff_t>(cursor),
                     pool.begin() + static_cast<std::ptrdiff_t>(cursor + cfg.k_priv));
        cursor += cfg.k_priv;
        Vec noise = noise_rng.normal_vec(d, sigma);
        if (cfg.alpha > 0.0) {
          Vec priv_mean = zeros(d);
          const double inv_k = 1.0 / static_cast<double>(cfg.k_priv);
          for (std::size_t i : batch) {
            Vec g = loss.gradient(w, data.sample(i), data.target(i));
            g = clip(g, cfg.clip_c);
            add_scaled(priv_mean, inv_k, g);
          }
          add_scaled(grad_est, cfg.alpha, priv_mean);
          add_scaled(grad_est, cfg.alpha, noise);
        }
      }
      result.private_batches.push_back(std::move(batch));
      if (cfg.alpha < 1.0) {
        const std::vector<std::size_t> picks =
            sample_without_replacement(pub_idx.size(), cfg.k_pub, pub_rng);
        const double inv_k = 1.0 / static_cast<double>(cfg.k_pub);
        for (std::size_t pick : picks) {
          const std::size_t i = pub_idx[pick];
          Vec g = loss.gradient(w, data.sample(i), data.target(i));
          if (cfg.rescale_public) {
            const double gn = norm(g);
            if (gn > 0.0) scale(g, cfg.clip_c / gn);
          }
          add_scaled(grad_est, (1.0 - cfg.alpha) * inv_k, g);
        }
      }
      const std::size_t global_t = epoch * cfg.iterations_t + t;
      add_scaled(w, -cfg.step_at(global_t), grad_est);
      w = project(w, cfg.domain_radius_r);
      if (cfg.record_trace) result.trace.push_back(w);
      add_scaled(iterate_sum, 1.0, w);
      ++update_count;
    }
  }

  if (cfg.averaging == IterateAveraging::kUniform && update_count > 0) {
    scale(iterate_sum, 1.0 / static_cast<double>(update_count));
    result.weights = std::move(iterate_sum);
  } else {
    result.weights = std::move(w);
  }
  if (cfg.k_priv > 0 && cfg.alpha > 0.0) {
    result.privacy.rho = budget.rho * static_cast<double>(cfg.epochs);
    const PrivacyBudget approx =
        zcdp_to_approx_dp(ZcdpBudget(result.privacy.rho), cfg.report_delta);
    result.privacy.eps = approx.epsilon;
    result.privacy.delta = approx.delta;
  } else {
    // No private gradient ever leaves the run.
    result.privacy.rho = 0.0;
    result.privacy.eps = 0.0;
    result.privacy.delta = cfg.report_delta;
  }
  return result;
}

inline SplitDataset relabel_all_private(const SplitDataset& data) {
  return SplitDataset(data.samples(), std::vector<bool>(data.n(), true),
                      data.targets());
}

}  // namespace detail

// Algorithm: per iteration, mix the noisy clipped private batch gradient
// with the raw (optionally sphere-rescaled) public batch gradient,
//   g = alpha [mean clip_C(grad) + N(0, sigma^2 I)] + (1-alpha) mean grad_pub,
// and take a projected step. Private batches are disjoint across an epoch,
// so the run is rho-semi-zCDP per epoch and epochs compose additively.
inline TrainResult semi_dp_sgd(const SplitDataset& data, const LossModel& loss,
                               const SgdConfig& cfg, const ZcdpBudget& budget,
                               RngStream& rng) {
  validate_central_sgd(cfg, data, budget);
  Vec w0 = warm_start_init(data, loss, cfg);
  return detail::run_central_sgd(data, loss, cfg, budget, rng, std::move(w0));
}

// DP-SGD on the entire data: every sample is treated as private, the batch
// is K_priv + K_pub, and the noise floor uses the combined batch size.
// Warm start still comes from the original public split.
inline TrainResult dp_sgd_baseline(const SplitDataset& data,
                                   const LossModel& loss, const SgdConfig& cfg,
                                   const ZcdpBudget& budget, RngStream& rng) {
  SplitDataset all_private = detail::relabel_all_private(data);
  SgdConfig folded = cfg;
  folded.k_priv = cfg.k_priv + cfg.k_pub;
  folded.k_pub = 0;
  folded.alpha = 1.0;
  validate_central_sgd(folded, all_private, budget);
  Vec w0 = warm_start_init(data, loss, cfg);
  return detail::run_central_sgd(all_private, loss, folded, budget, rng,
                                 std::move(w0));
}

inline void validate_local_sgd(const SgdConfig& cfg, const SplitDataset& data,
                               const PrivUnitConfig& pu) {
  if (cfg.epochs != 1 || cfg.iterations_t != data.n()) {
    throw invalid_config_error(
        "local SGD is one-pass: epochs = 1 and T = n required");
  }
  if (!(cfg.clip_c > 0.0)) {
    throw invalid_config_error("SgdConfig: clip threshold must be > 0");
  }
  if (cfg.step_sizes.empty()) {
    throw invalid_config_error("SgdConfig: step size schedule is empty");
  }
  if (cfg.step_sizes.size() > 1 && cfg.step_sizes.size() < data.n()) {
    throw invalid_config_error("SgdConfig: step schedule shorter than the run");
  }
  if (!(cfg.domain_radius_r > 0.0)) {
    throw invalid_config_error("SgdConfig: domain radius must be > 0");
  }
  if (!data.has_targets()) {
    throw invalid_config_error("SgdConfig: training requires targets");
  }
  if (pu.d != data.dim()) {
    throw invalid_config_error("local SGD: randomizer dimension mismatch");
  }
  if (!(pu.eps_certified > 0.0) ||
      !privunit_audit(pu, pu.eps_certified, 1024).pass) {
    throw invalid_config_error(
        "local SGD: randomizer config is not certified at its claimed eps");
  }
}

namespace detail {

inline TrainResult run_local_sgd(const SplitDataset& data, const LossModel& loss,
                                 const SgdConfig& cfg, const PrivUnitConfig& pu,
                                 RngStream& rng, Vec w0) {
  const std::size_t d = data.dim();
  RngStream order_rng = rng.substream(0);
  // Randomizer draws are keyed by iteration index, not consumed
  // sequentially: runs that share a parent stream see identical draws at
  // identical positions in the pass, so paired comparisons between the
  // semi and all-private variants isolate the treatment of the public
  // samples.
  const RngStream randomizer_parent = rng.substream(1);

  std::vector<std::size_t> order(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) order[i] = i;
  shuffle(order, order_rng);

  TrainResult result;
  Vec w = project(std::move(w0), cfg.domain_radius_r);
  if (cfg.record_trace) result.trace.push_back(w);
  Vec iterate_sum = zeros(d);
  double l_pub = -1.0;  // norm of the first private randomized gradient

  for (std::size_t t = 0; t < data.n(); ++t) {
    const std::size_t i = order[t];
    Vec g = loss.gradient(w, data.sample(i), data.target(i));
    Vec step_dir;
    if (data.is_private(i)) {
      Vec gc = clip(g, cfg.clip_c);
      const double gn = norm(gc);
      Vec dir;
      if (gn > 1e-15) {
        dir = scaled(gc, 1.0 / gn);
      } else {
        dir = zeros(d);
        dir[0] = 1.0;  // zero gradient: any fixed direction is data-independent
      }
      RngStream step_rng = randomizer_parent.substream(t);
      step_dir = privunit_randomize(dir, pu, step_rng);
      // Direction is privatized; the magnitude is the public bound C.
      scale(step_dir, cfg.clip_c);
      if (l_pub < 0.0) l_pub = norm(step_dir);
      result.private_batches.push_back({i});
    } else {
      step_dir = std::move(g);
      if (cfg.rescale_public && l_pub > 0.0) {
        const double gn = norm(step_dir);
        if (gn > 0.0) scale(step_dir, l_pub / gn);
      }
    }
    add_scaled(w, -cfg.step_at(t), step_dir);
    w = project(w, cfg.domain_radius_r);
    if (cfg.record_trace) result.trace.push_back(w);
    add_scaled(iterate_sum, 1.0, w);
  }

  // Algorithm output is the uniform average of the post-update iterates.
  scale(iterate_sum, 1.0 / static_cast<double>(data.n()));
  result.weights = std::move(iterate_sum);
  result.privacy.pure_eps = pu.eps_certified;
  result.privacy.eps = pu.eps_certified;
  result.privacy.delta = 0.0;
  result.privacy.rho = std::numeric_limits<double>::quiet_NaN();
  return result;
}

}  // namespace detail

// One-pass semi-local SGD: private gradients are released as
// C * randomize(direction of the clipped gradient), public gradients pass
// through (optionally rescaled to the first private noisy-gradient norm).
// Returns the uniform iterate average.
inline TrainResult semi_ldp_sgd(const SplitDataset& data, const LossModel& loss,
                                const SgdConfig& cfg, const PrivUnitConfig& pu,
                                RngStream& rng) {
  validate_local_sgd(cfg, data, pu);
  Vec w0 = warm_start_init(data, loss, cfg);
  return detail::run_local_sgd(data, loss, cfg, pu, rng, std::move(w0));
}

// LDP-SGD baseline: identical pass, but every sample is privatized.
inline TrainResult ldp_sgd_baseline(const SplitDataset& data,
                                    const LossModel& loss, const SgdConfig& cfg,
                                    const PrivUnitConfig& pu, RngStream& rng) {
  SplitDataset all_private = detail::relabel_all_private(data);
  validate_local_sgd(cfg, all_private, pu);
  Vec w0 = warm_start_init(data, loss, cfg);
  return detail::run_local_sgd(all_private, loss, cfg, pu, rng, std::move(w0));
}

}  // namespace semidp
