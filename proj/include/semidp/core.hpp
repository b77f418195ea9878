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
// Domain types shared by every mechanism: datasets with a private/public
// split, privacy budgets, and bounded-distribution specifications.
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semidp/vec.hpp"

namespace semidp {

// Raised for malformed inputs and infeasible configurations (CLI exit 1).
class invalid_config_error : public std::runtime_error {
 public:
  explicit invalid_config_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Raised when a requested run would violate its privacy calibration
// (noise below the certified floor, too many iterations for parallel
// composition, ...). Mapped to CLI exit 2.
class calibration_error : public std::runtime_error {
 public:
  explicit calibration_error(const std::string& what)
      : std::runtime_error(what) {}
};

// File and parse failures (CLI exit 3).
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// (epsilon, delta) pair for approximate differential privacy.
struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;

  PrivacyBudget() = default;
  PrivacyBudget(double eps, double del) : epsilon(eps), delta(del) {
    if (!(epsilon >= 0.0)) {
      throw invalid_config_error("PrivacyBudget: epsilon must be >= 0");
    }
    if (!(delta >= 0.0 && delta < 1.0)) {
      throw invalid_config_error("PrivacyBudget: delta must be in [0, 1)");
    }
  }
};

// Budget for zero-concentrated DP.
struct ZcdpBudget {
  double rho = 0.0;

  ZcdpBudget() = default;
  explicit ZcdpBudget(double rho_in) : rho(rho_in) {
    if (!(rho > 0.0)) {
      throw invalid_config_error("ZcdpBudget: rho must be > 0");
    }
  }
};

// Distribution class P(B, V): l2 norm bounded by B, per-sample standard
// deviation V (l2 sense). The variance of a B-bounded vector cannot exceed
// B^2, so V <= B.
struct BoundedDistSpec {
  double bound_b = 1.0;
  double stddev_v = 0.0;

  BoundedDistSpec() = default;
  BoundedDistSpec(double b, double v) : bound_b(b), stddev_v(v) {
    if (!(bound_b > 0.0)) {
      throw invalid_config_error("BoundedDistSpec: bound B must be > 0");
    }
    if (!(stddev_v >= 0.0 && stddev_v <= bound_b)) {
      throw invalid_config_error(
          "BoundedDistSpec: stddev V must satisfy 0 <= V <= B");
    }
  }
};

// n sample vectors in R^d, each flagged private or public, with optional
// scalar targets. Immutable after construction and safe to share across
// threads.
class SplitDataset {
 public:
  SplitDataset(std::vector<Vec> samples, std::vector<bool> is_private,
               std::vector<double> targets = {})
      : samples_(std::move(samples)),
        is_private_(std::move(is_private)),
        targets_(std::move(targets)) {
    if (samples_.empty()) {
      throw invalid_config_error("SplitDataset: need at least one sample");
    }
    if (is_private_.size() != samples_.size()) {
      throw invalid_config_error(
          "SplitDataset: privacy flags must match sample count");
    }
    if (!targets_.empty() && targets_.size() != samples_.size()) {
      throw invalid_config_error(
          "SplitDataset: targets must match sample count");
    }
    dim_ = samples_.front().size();
    if (dim_ == 0) {
      throw invalid_config_error("SplitDataset: dimension must be >= 1");
    }
    for (const Vec& x : samples_) {
      if (x.size() != dim_) {
        throw invalid_config_error(
            "SplitDataset: all samples must share one dimension");
      }
    }
    n_priv_ = 0;
    for (bool f : is_private_) n_priv_ += f ? 1 : 0;
  }

  std::size_t n() const { return samples_.size(); }
  std::size_t n_priv() const { return n_priv_; }
  std::size_t n_pub() const { return samples_.size() - n_priv_; }
  std::size_t dim() const { return dim_; }

  const Vec& sample(std::size_t i) const { return samples_[i]; }
  bool is_private(std::size_t i) const { return is_private_[i]; }
  bool has_targets() const { return !targets_.empty(); }
  double target(std::size_t i) const { return targets_[i]; }
  const std::vector<Vec>& samples() const { return samples_; }
  const std::vector<double>& targets() const { return targets_; }

  std::vector<std::size_t> private_indices() const {
    std::vector<std::size_t> out;
    out.reserve(n_priv_);
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (is_private_[i]) out.push_back(i);
    }
    return out;
  }

  std::vector<std::size_t> public_indices() const {
    std::vector<std::size_t> out;
    out.reserve(n_pub());
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (!is_private_[i]) out.push_back(i);
    }
    return out;
  }

  double max_sample_norm() const {
    double m = 0.0;
    for (const Vec& x : samples_) m = std::max(m, norm(x));
    return m;
  }

 private:
  std::vector<Vec> samples_;
  std::vector<bool> is_private_;
  std::vector<double> targets_;
  std::size_t dim_ = 0;
  std::size_t n_priv_ = 0;
};

struct SplitCounts {
  std::size_t n_priv = 0;
  std::size_t n_pub = 0;
  std::size_t n = 0;
};

inline SplitCounts split_counts(const SplitDataset& data) {
  return SplitCounts{data.n_priv(), data.n_pub(), data.n()};
}

// rho-zCDP implies (rho + 2 sqrt(rho ln(1/delta)), delta)-DP.
inline PrivacyBudget zcdp_to_approx_dp(const ZcdpBudget& budget, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw invalid_config_error("zcdp_to_approx_dp: delta must be in (0, 1)");
  }
  const double eps =
      budget.rho + 2.0 * std::sqrt(budget.rho * std::log(1.0 / delta));
  return PrivacyBudget(eps, delta);
}

// Largest rho whose conversion at the given delta stays within epsilon.
// Solving rho + 2 sqrt(rho L) = eps for L = ln(1/delta) gives
// sqrt(rho) = sqrt(L + eps) - sqrt(L).
inline ZcdpBudget approx_dp_to_zcdp(const PrivacyBudget& budget) {
  if (!(budget.epsilon > 0.0)) {
    throw invalid_config_error("approx_dp_to_zcdp: epsilon must be > 0");
  }
  if (!(budget.delta > 0.0 && budget.delta < 1.0)) {
    throw invalid_config_error("approx_dp_to_zcdp: delta must be in (0, 1)");
  }
  const double log_term = std::log(1.0 / budget.delta);
  const double root = std::sqrt(log_term + budget.epsilon) - std::sqrt(log_term);
  return ZcdpBudget(root * root);
}

}  // namespace semidp
