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
// Pure evaluators of the minimax rate envelopes, used to overlay theory
// curves on empirical results. Values are reported with constant 1 (the
// known rates fix the shape, not the absolute constants), so overlays are
// shape-only. The lower family exposes the lower-bound expressions, which
// differ from the upper ones in some delta > 0 and strongly convex cases.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "semidp/core.hpp"

namespace semidp {

enum class RateProblem {
  kMeanCentral,
  kMeanLocal,
  kErm,
  kScoCentral,
  kScoLocal,
};

enum class RateBound { kUpper, kLower };

struct RateQuery {
  RateProblem problem = RateProblem::kMeanCentral;
  double eps = 1.0;
  double delta = 0.0;
  std::size_t n_priv = 0;
  std::size_t n = 1;
  std::size_t d = 1;
  double lipschitz_l = 1.0;
  double diameter_d = 1.0;
  double mu = 0.0;  // 0 means convex

  std::size_t n_pub() const { return n - n_priv; }

  void validate() const {
    if (n_priv > n) throw invalid_config_error("RateQuery: n_priv > n");
    if (n == 0) throw invalid_config_error("RateQuery: n must be >= 1");
    if (d == 0) throw invalid_config_error("RateQuery: d must be >= 1");
    if (!(eps > 0.0)) throw invalid_config_error("RateQuery: eps must be > 0");
    if (!(delta >= 0.0 && delta < 1.0)) {
      throw invalid_config_error("RateQuery: delta must be in [0, 1)");
    }
    if (!(lipschitz_l > 0.0) || !(diameter_d > 0.0)) {
      throw invalid_config_error("RateQuery: L and D must be > 0");
    }
    if (!(mu >= 0.0)) throw invalid_config_error("RateQuery: mu must be >= 0");
  }
};

namespace detail {

// min{1/n_pub, private_term}; with no public data only the private term
// remains.
inline double public_or(double private_term, std::size_t n_pub) {
  if (n_pub == 0) return private_term;
  return std::min(1.0 / static_cast<double>(n_pub), private_term);
}

inline double eps_local(double eps) { return std::min(eps, eps * eps); }

}  // namespace detail

inline double rate_mean_central(const RateQuery& q,
                                RateBound bound = RateBound::kUpper) {
  q.validate();
  const double n = static_cast<double>(q.n);
  const double d = static_cast<double>(q.d);
  double priv_term;
  if (q.delta == 0.0) {
    priv_term = d * d / (n * n * q.eps * q.eps) + 1.0 / n;
  } else if (bound == RateBound::kUpper) {
    priv_term = d * std::log(1.0 / q.delta) / (n * n * q.eps * q.eps) + 1.0 / n;
  } else {
    priv_term = 1.0 / (n * n * q.eps * q.eps) + 1.0 / n;
  }
  return detail::public_or(priv_term, q.n_pub());
}

inline double rate_erm(const RateQuery& q, RateBound bound = RateBound::kUpper) {
  q.validate();
  const double n = static_cast<double>(q.n);
  const double d = static_cast<double>(q.d);
  const double ld = q.lipschitz_l * q.diameter_d;
  const double frac_priv = static_cast<double>(q.n_priv) / n;
  if (q.mu == 0.0) {
    return ld * std::min(frac_priv, d / (n * q.eps));
  }
  if (bound == RateBound::kUpper) {
    const double inner =
        std::min(frac_priv, d * std::sqrt(std::log(n)) / (n * q.eps));
    return (q.lipschitz_l * q.lipschitz_l / q.mu) * inner * inner;
  }
  const double inner = std::min(frac_priv, d / (n * q.eps));
  return ld * inner * inner;
}

inline double rate_sco_central(const RateQuery& q,
                               RateBound bound = RateBound::kUpper) {
  q.validate();
  const double n = static_cast<double>(q.n);
  const double d = static_cast<double>(q.d);
  const double ld = q.lipschitz_l * q.diameter_d;
  const double n_pub = static_cast<double>(q.n_pub());
  if (q.mu == 0.0) {
    double priv_term;
    if (q.delta == 0.0) {
      priv_term = d / (n * q.eps) + 1.0 / std::sqrt(n);
    } else if (bound == RateBound::kUpper) {
      priv_term =
          std::sqrt(d * std::log(1.0 / q.delta)) / (n * q.eps) + 1.0 / std::sqrt(n);
    } else {
      priv_term = 1.0 / (n * q.eps) + 1.0 / std::sqrt(n);
    }
    const double pub_term =
        (q.n_pub() == 0) ? priv_term : std::min(1.0 / std::sqrt(n_pub), priv_term);
    return ld * pub_term;
  }
  // Strongly convex envelopes.
  double priv_term;
  double constant;
  if (q.delta == 0.0) {
    if (bound == RateBound::kUpper) {
      priv_term = d * d * std::log(n) / (n * n * q.eps * q.eps) + 1.0 / n;
      constant = q.lipschitz_l * q.lipschitz_l / q.mu;
    } else {
      priv_term = d * d / (n * n * q.eps * q.eps) + 1.0 / n;
      constant = ld;
    }
  } else {
    if (bound == RateBound::kUpper) {
      priv_term = d * std::log(1.0 / q.delta) / (n * n * q.eps * q.eps) + 1.0 / n;
      constant = q.lipschitz_l * q.lipschitz_l / q.mu;
    } else {
      priv_term = 1.0 / (n * n * q.eps * q.eps) + 1.0 / n;
      constant = ld;
    }
  }
  return constant * detail::public_or(priv_term, q.n_pub());
}

inline double rate_mean_local(const RateQuery& q,
                              RateBound /*bound*/ = RateBound::kUpper) {
  q.validate();
  const double n = static_cast<double>(q.n);
  const double d = static_cast<double>(q.d);
  const double priv_term = d / (n * detail::eps_local(q.eps)) + 1.0 / n;
  return detail::public_or(priv_term, q.n_pub());
}

inline double rate_sco_local(const RateQuery& q,
                             RateBound bound = RateBound::kUpper) {
  q.validate();
  const double n = static_cast<double>(q.n);
  const double d = static_cast<double>(q.d);
  const double ld = q.lipschitz_l * q.diameter_d;
  const double n_pub = static_cast<double>(q.n_pub());
  if (q.mu == 0.0) {
    const double priv_term =
        std::sqrt(d / (n * detail::eps_local(q.eps))) + 1.0 / std::sqrt(n);
    const double term =
        (q.n_pub() == 0) ? priv_term : std::min(1.0 / std::sqrt(n_pub), priv_term);
    return ld * term;
  }
  const double priv_term = d / (n * detail::eps_local(q.eps)) + 1.0 / n;
  const double constant = (bound == RateBound::kUpper)
                              ? q.lipschitz_l * q.lipschitz_l / q.mu
                              : ld;
  return constant * detail::public_or(priv_term, q.n_pub());
}

inline double evaluate_rate(const RateQuery& q,
                            RateBound bound = RateBound::kUpper) {
  switch (q.problem) {
    case RateProblem::kMeanCentral:
      return rate_mean_central(q, bound);
    case RateProblem::kMeanLocal:
      return rate_mean_local(q, bound);
    case RateProblem::kErm:
      return rate_erm(q, bound);
    case RateProblem::kScoCentral:
      return rate_sco_central(q, bound);
    case RateProblem::kScoLocal:
      return rate_sco_local(q, bound);
  }
  throw invalid_config_error("evaluate_rate: unknown problem");
}

inline RateProblem rate_problem_from_string(const std::string& name) {
  if (name == "mean_central") return RateProblem::kMeanCentral;
  if (name == "mean_local") return RateProblem::kMeanLocal;
  if (name == "erm") return RateProblem::kErm;
  if (name == "sco_central") return RateProblem::kScoCentral;
  if (name == "sco_local") return RateProblem::kScoLocal;
  throw invalid_config_error("unknown rate problem: " + name);
}

}  // namespace semidp
