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
// Incomplete beta function, its regularized form and inverse. These drive
// the spherical-cap normalization constants and the cap samplers.
#pragma once

#include <cmath>
#include <limits>

#include "semidp/core.hpp"

namespace semidp {

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace detail {

// Continued fraction for the regularized incomplete beta (modified Lentz).
inline double beta_cont_frac(double x, double a, double b) {
  constexpr int kMaxIter = 400;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m_d = static_cast<double>(m);
    const double m2 = 2.0 * m_d;
    double aa = m_d * (b - m_d) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m_d) * (qab + m_d) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

// I_x(a, b) = B(x; a, b) / B(a, b).
inline double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) {
    throw invalid_config_error("incomplete beta: a, b must be > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw invalid_config_error("incomplete beta: x must be in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  // Closed forms when one shape parameter is 1; these keep the small-d
  // normalization constants exact.
  if (a == 1.0 && b == 1.0) return x;
  if (a == 1.0) return -std::expm1(b * std::log1p(-x));
  if (b == 1.0) return std::pow(x, a);
  const double log_front =
      a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * detail::beta_cont_frac(x, a, b) / a;
  }
  return 1.0 -
         std::exp(log_front) * detail::beta_cont_frac(1.0 - x, b, a) / b;
}

// Non-regularized B(x; a, b) = integral of t^{a-1} (1-t)^{b-1} over [0, x].
inline double incomplete_beta(double x, double a, double b) {
  return regularized_incomplete_beta(x, a, b) * std::exp(log_beta(a, b));
}

// Solves I_x(a, b) = y for x by safeguarded Newton iteration.
inline double inverse_regularized_incomplete_beta(double y, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) {
    throw invalid_config_error("inverse incomplete beta: a, b must be > 0");
  }
  if (!(y >= 0.0 && y <= 1.0)) {
    throw invalid_config_error("inverse incomplete beta: y must be in [0, 1]");
  }
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 1.0;
  if (a == 1.0 && b == 1.0) return y;
  if (a == 1.0) return -std::expm1(std::log1p(-y) / b);
  if (b == 1.0) return std::pow(y, 1.0 / a);

  const double log_b_ab = log_beta(a, b);
  double lo = 0.0, hi = 1.0;
  double x = 0.5;
  for (int it = 0; it < 200; ++it) {
    const double f = regularized_incomplete_beta(x, a, b) - y;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double log_pdf =
        (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_b_ab;
    double x_next;
    if (std::isfinite(log_pdf) && log_pdf > -700.0) {
      x_next = x - f * std::exp(-log_pdf);
    } else {
      x_next = 0.5 * (lo + hi);
    }
    // Fall back to bisection whenever Newton leaves the bracket.
    if (!(x_next > lo && x_next < hi)) x_next = 0.5 * (lo + hi);
    if (std::fabs(x_next - x) < 1e-15 * (1.0 + std::fabs(x))) {
      return x_next;
    }
    x = x_next;
  }
  return x;
}

}  // namespace semidp
