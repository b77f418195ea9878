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
#include "semidp/optim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "semidp/bench.hpp"
#include "testutil.hpp"

namespace semidp {
namespace {

SplitDataset random_regression(std::size_t n_priv, std::size_t n_pub,
                               std::size_t d, RngStream& rng,
                               double noise = 0.3) {
  Vec w_star = rng.normal_vec(d);
  std::vector<Vec> xs;
  std::vector<double> ys;
  std::vector<bool> flags;
  for (std::size_t i = 0; i < n_priv + n_pub; ++i) {
    Vec x = rng.normal_vec(d);
    ys.push_back(dot(w_star, x) + noise * rng.normal());
    xs.push_back(std::move(x));
    flags.push_back(i < n_priv);
  }
  return SplitDataset(xs, flags, ys);
}

TEST(Clip, NormalizesOutsideBall) {
  const Vec out = clip({3.0, 4.0}, 1.0);
  EXPECT_DOUBLE_EQ(out[0], 0.6);
  EXPECT_DOUBLE_EQ(out[1], 0.8);
}

TEST(Clip, IdentityInsideBall) {
  const Vec out = clip({3.0, 4.0}, 10.0);
  EXPECT_DOUBLE_EQ(out[0], 3.0);
  EXPECT_DOUBLE_EQ(out[1], 4.0);
}

TEST(Clip, ZeroIsFixedPoint) {
  const Vec out = clip({0.0, 0.0}, 2.0);
  EXPECT_DOUBLE_EQ(out[0], 0.0);
  EXPECT_DOUBLE_EQ(out[1], 0.0);
}

TEST(Project, BallProjection) {
  const Vec out = project({3.0, 4.0}, 1.0);
  EXPECT_DOUBLE_EQ(out[0], 0.6);
  EXPECT_DOUBLE_EQ(out[1], 0.8);
  const Vec same = project({0.1, 0.2}, 1.0);
  EXPECT_DOUBLE_EQ(same[0], 0.1);
  const Vec zero = project({0.0}, 1.0);
  EXPECT_DOUBLE_EQ(zero[0], 0.0);
}

TEST(Project, InfiniteRadiusIsIdentity) {
  const Vec out = project({100.0, -5.0},
                          std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(out[0], 100.0);
}

TEST(LossModel, GradientsMatchFiniteDifferences) {
  RngStream rng(3, 0);
  for (const LossModel& loss : {LossModel::squared(), LossModel::logistic()}) {
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t d = 1 + rng.uniform_below(6);
      const Vec w = rng.normal_vec(d);
      const Vec x = rng.normal_vec(d);
      const double y = (loss.kind == LossKind::kLogistic)
                           ? (rng.uniform() < 0.5 ? -1.0 : 1.0)
                           : rng.normal();
      const Vec g = loss.gradient(w, x, y);
      for (std::size_t j = 0; j < d; ++j) {
        const double h = 1e-6 * (1.0 + std::fabs(w[j]));
        Vec wp = w, wm = w;
        wp[j] += h;
        wm[j] -= h;
        const double fd = (loss.value(wp, x, y) - loss.value(wm, x, y)) / (2 * h);
        const double scale = std::max({1.0, std::fabs(g[j]), std::fabs(fd)});
        ASSERT_NEAR(g[j], fd, 1e-6 * scale);
      }
    }
  }
}

TEST(ThrowawayErm, ExactLeastSquaresOnFullRankPublicData) {
  RngStream rng(5, 0);
  const SplitDataset data = random_regression(10, 40, 6, rng);
  SgdConfig cfg;
  const Vec w = throwaway_erm(data, LossModel::squared(), cfg);
  // Residual orthogonal to the public column space.
  Vec resid_grad = zeros(6);
  for (std::size_t i = 0; i < data.n(); ++i) {
    if (data.is_private(i)) continue;
    LossModel::squared().add_gradient(w, data.sample(i), data.target(i), 1.0,
                                      resid_grad);
  }
  EXPECT_LT(norm(resid_grad), 1e-8);
}

TEST(ThrowawayErm, SingleSampleOneDim) {
  const SplitDataset data({{2.0}, {4.0}}, {true, false}, {0.0, 3.0});
  SgdConfig cfg;
  const Vec w = throwaway_erm(data, LossModel::squared(), cfg);
  EXPECT_NEAR(w[0], 3.0 / 4.0, 1e-12);
}

TEST(ThrowawayErm, RankDeficientGivesMinimumNormSolution) {
  // Two public samples in R^3 spanning a 2-dim row space; compare against a
  // gradient-descent-to-convergence oracle started at zero, which converges
  // to the minimum-norm least-squares solution.
  const std::vector<Vec> xs = {{1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}, {9.0, 9.0, 9.0}};
  const std::vector<bool> flags = {false, false, true};
  const std::vector<double> ys = {2.0, -1.0, 0.0};
  const SplitDataset data(xs, flags, ys);
  SgdConfig cfg;
  const Vec w = throwaway_erm(data, LossModel::squared(), cfg);

  Vec oracle = zeros(3);
  for (int it = 0; it < 200000; ++it) {
    Vec g = zeros(3);
    for (std::size_t i = 0; i < 2; ++i) {
      LossModel::squared().add_gradient(oracle, xs[i], ys[i], 0.5, g);
    }
    if (norm(g) < 1e-12) break;
    add_scaled(oracle, -0.1, g);
  }
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(w[j], oracle[j], 1e-8);

  Vec resid_grad = zeros(3);
  for (std::size_t i = 0; i < 2; ++i) {
    LossModel::squared().add_gradient(w, xs[i], ys[i], 1.0, resid_grad);
  }
  EXPECT_LT(norm(resid_grad), 1e-8);
}

TEST(ThrowawayErm, LogisticReachesGradientTolerance) {
  RngStream rng(7, 0);
  std::vector<Vec> xs;
  std::vector<double> ys;
  std::vector<bool> flags;
  for (int i = 0; i < 60; ++i) {
    Vec x = rng.normal_vec(3);
    // Non-separable labels keep the minimizer finite.
    ys.push_back(rng.uniform() < 0.75 ? (x[0] > 0 ? 1.0 : -1.0)
                                      : (x[0] > 0 ? -1.0 : 1.0));
    xs.push_back(std::move(x));
    flags.push_back(false);
  }
  const SplitDataset data(xs, flags, ys);
  SgdConfig cfg;
  const Vec w = throwaway_erm(data, LossModel::logistic(), cfg);
  Vec g = zeros(3);
  for (std::size_t i = 0; i < data.n(); ++i) {
    LossModel::logistic().add_gradient(w, data.sample(i), data.target(i),
                                       1.0 / data.n(), g);
  }
  EXPECT_LT(norm(g), 1e-8);
}

TEST(ThrowawayErm, RejectsNoPublicData) {
  const SplitDataset data({{1.0}}, {true}, {1.0});
  SgdConfig cfg;
  EXPECT_THROW(throwaway_erm(data, LossModel::squared(), cfg),
               invalid_config_error);
}

TEST(WarmStart, DisabledGivesZeroVector) {
  RngStream rng(9, 0);
  const SplitDataset data = random_regression(5, 5, 4, rng);
  SgdConfig cfg;
  cfg.warm_start = false;
  const Vec w = warm_start_init(data, LossModel::squared(), cfg);
  EXPECT_EQ(w, zeros(4));
}

TEST(WarmStart, EnabledDelegatesToThrowAway) {
  RngStream rng(10, 0);
  const SplitDataset data = random_regression(5, 20, 4, rng);
  SgdConfig cfg;
  cfg.warm_start = true;
  const Vec w = warm_start_init(data, LossModel::squared(), cfg);
  const Vec erm = throwaway_erm(data, LossModel::squared(), cfg);
  EXPECT_EQ(w, erm);
}

TEST(WarmStart, LowersInitialPublicLoss) {
  RngStream rng(11, 0);
  const SplitDataset data = random_regression(5, 20, 4, rng);
  SgdConfig cfg;
  cfg.warm_start = true;
  const Vec warm = warm_start_init(data, LossModel::squared(), cfg);
  const double warm_loss = mean_public_loss(LossModel::squared(), warm, data);
  const double zero_loss =
      mean_public_loss(LossModel::squared(), zeros(4), data);
  EXPECT_LT(warm_loss, zero_loss);
}

SgdConfig base_config(std::size_t t, std::size_t k_priv, std::size_t k_pub,
                      double alpha, double sigma2) {
  SgdConfig cfg;
  cfg.iterations_t = t;
  cfg.clip_c = 1.0;
  cfg.step_sizes = {0.05};
  cfg.k_priv = k_priv;
  cfg.k_pub = k_pub;
  cfg.alpha = alpha;
  cfg.noise_sigma2 = sigma2;
  cfg.warm_start = false;
  cfg.rescale_public = false;
  return cfg;
}

double sigma_floor(double clip_c, double rho, std::size_t k) {
  return 2.0 * clip_c * clip_c / (rho * static_cast<double>(k * k));
}

TEST(SemiDpSgdValidation, RejectsNoiseBelowFloor) {
  RngStream rng(13, 0);
  const SplitDataset data = random_regression(40, 20, 3, rng);
  const ZcdpBudget rho(1.0);
  SgdConfig cfg = base_config(4, 10, 5, 0.5, 0.5 * sigma_floor(1.0, 1.0, 10));
  EXPECT_THROW(semi_dp_sgd(data, LossModel::squared(), cfg, rho, rng),
               calibration_error);
  cfg.noise_sigma2 = sigma_floor(1.0, 1.0, 10);
  EXPECT_NO_THROW(semi_dp_sgd(data, LossModel::squared(), cfg, rho, rng));
}

TEST(SemiDpSgdValidation, RejectsTooManyIterations) {
  RngStream rng(14, 0);
  const SplitDataset data = random_regression(40, 20, 3, rng);
  const ZcdpBudget rho(1.0);
  // T * K_priv > n.
  SgdConfig cfg = base_config(7, 10, 5, 0.5, sigma_floor(1.0, 1.0, 10));
  EXPECT_THROW(semi_dp_sgd(data, LossModel::squared(), cfg, rho, rng),
               calibration_error);
}

TEST(SemiDpSgdValidation, RejectsEpochExceedingPrivatePool) {
  RngStream rng(15, 0);
  const SplitDataset data = random_regression(40, 20, 3, rng);
  const ZcdpBudget rho(1.0);
  // T * K_priv = 50 <= n = 60 but > n_priv = 40.
  SgdConfig cfg = base_config(5, 10, 5, 0.5, sigma_floor(1.0, 1.0, 10));
  EXPECT_THROW(semi_dp_sgd(data, LossModel::squared(), cfg, rho, rng),
               invalid_config_error);
}

TEST(SemiDpSgdValidation, ZeroPrivateBatchNeedsZeroAlpha) {
  RngStream rng(16, 0);
  const SplitDataset data = random_regression(40, 20, 3, rng);
  const ZcdpBudget rho(1.0);
  SgdConfig cfg = base_config(4, 0, 5, 0.5, 0.0);
  EXPECT_THROW(semi_dp_sgd(data, LossModel::squared(), cfg, rho, rng),
               invalid_config_error);
  cfg.alpha = 0.0;
  EXPECT_NO_THROW(semi_dp_sgd(data, LossModel::squared(), cfg, rho, rng));
}

TEST(SemiDpSgdValidation, RejectsOversizedBatches) {
  RngStream rng(17, 0);
  const SplitDataset data = random_regression(8, 4, 3, rng);
  const ZcdpBudget rho(1.0);
  SgdConfig cfg = base_config(1, 9, 2, 0.5, sigma_floor(1.0, 1.0, 9));
  EXPECT_THROW(semi_dp_sgd(data, LossModel::squared(), cfg, rho, rng),
               invalid_config_error);
  cfg = base_config(1, 4, 5, 0.5, sigma_floor(1.0, 1.0, 4));
  EXPECT_THROW(semi_dp_sgd(data, LossModel::squared(), cfg, rho, rng),
               invalid_config_error);
}

TEST(SemiDpSgd, AlphaZeroMatchesPublicOnlySgd) {
  // alpha = 0 multiplies the noisy private term by zero, leaving exactly
  // non-private SGD on the public batches. The oracle loop replays the
  // public batch substream.
  RngStream data_rng(19, 0);
  const SplitDataset data = random_regression(40, 30, 4, data_rng);
  const ZcdpBudget rho(1.0);
  SgdConfig cfg = base_config(4, 8, 6, 0.0, sigma_floor(1.0, 1.0, 8));
  RngStream run_rng(77, 5);
  const TrainResult result =
      semi_dp_sgd(data, LossModel::squared(), cfg, rho, run_rng);

  RngStream oracle_parent(77, 5);
  RngStream pub_rng = oracle_parent.substream(1);
  const std::vector<std::size_t> pub_idx = data.public_indices();
  Vec w = zeros(4);
  for (std::size_t t = 0; t < 4; ++t) {
    const std::vector<std::size_t> picks =
        sample_without_replacement(pub_idx.size(), cfg.k_pub, pub_rng);
    Vec g = zeros(4);
    for (std::size_t pick : picks) {
      const std::size_t i = pub_idx[pick];
      LossModel::squared().add_gradient(w, data.sample(i), data.target(i),
                                        1.0 / cfg.k_pub, g);
    }
    add_scaled(w, -0.05, g);
  }
  ASSERT_EQ(result.weights.size(), w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    EXPECT_DOUBLE_EQ(result.weights[j], w[j]);
  }
}

TEST(SemiDpSgd, AlphaOneMatchesNoisyClippedPrivateSgd) {
  RngStream data_rng(21, 0);
  const SplitDataset data = random_regression(40, 30, 4, data_rng);
  const double sigma2 = sigma_floor(1.0, 1.0, 8);
  SgdConfig cfg = base_config(5, 8, 6, 1.0, sigma2);
  RngStream run_rng(78, 2);
  const TrainResult result =
      semi_dp_sgd(data, LossModel::squared(), cfg, ZcdpBudget(1.0), run_rng);

  RngStream oracle_parent(78, 2);
  RngStream shuffle_rng = oracle_parent.substream(0);
  RngStream noise_rng = oracle_parent.substream(2);
  std::vector<std::size_t> pool = data.private_indices();
  shuffle(pool, shuffle_rng);
  Vec w = zeros(4);
  for (std::size_t t = 0; t < 5; ++t) {
    Vec noise = noise_rng.normal_vec(4, std::sqrt(sigma2));
    Vec g = zeros(4);
    for (std::size_t b = 0; b < cfg.k_priv; ++b) {
      const std::size_t i = pool[t * cfg.k_priv + b];
      Vec gi = LossModel::squared().gradient(w, data.sample(i), data.target(i));
      gi = clip(gi, 1.0);
      add_scaled(g, 1.0 / cfg.k_priv, gi);
    }
    add_scaled(g, 1.0, noise);
    add_scaled(w, -0.05, g);
  }
  for (std::size_t j = 0; j < w.size(); ++j) {
    EXPECT_DOUBLE_EQ(result.weights[j], w[j]);
  }
}

TEST(SemiDpSgd, GradientEstimateConditionallyUnbiased) {
  // Full batches pin the sampled sets, so over repeated noise draws the
  // one-step estimate averages to the noiseless weighted combination.
  RngStream data_rng(23, 0);
  const SplitDataset data = random_regression(12, 10, 3, data_rng);
  const double alpha = 0.6, eta = 0.05, clip_c = 0.4;
  const double sigma2 = sigma_floor(clip_c, 2.0, 12);
  SgdConfig cfg = base_config(1, 12, 10, alpha, sigma2);
  cfg.clip_c = clip_c;
  cfg.step_sizes = {eta};

  Vec expected = zeros(3);
  for (std::size_t i = 0; i < data.n(); ++i) {
    Vec g = LossModel::squared().gradient(zeros(3), data.sample(i),
                                          data.target(i));
    if (data.is_private(i)) {
      g = clip(g, clip_c);
      add_scaled(expected, alpha / 12.0, g);
    } else {
      add_scaled(expected, (1.0 - alpha) / 10.0, g);
    }
  }

  const std::size_t trials = 20000;
  Vec sum = zeros(3), sum_sq = zeros(3);
  for (std::size_t s = 0; s < trials; ++s) {
    RngStream rng(900, s);
    const TrainResult r =
        semi_dp_sgd(data, LossModel::squared(), cfg, ZcdpBudget(2.0), rng);
    for (int j = 0; j < 3; ++j) {
      const double g_j = -r.weights[j] / eta;  // single step from zero
      sum[j] += g_j;
      sum_sq[j] += g_j * g_j;
    }
  }
  for (int j = 0; j < 3; ++j) {
    const double mean = sum[j] / trials;
    const double var = sum_sq[j] / trials - mean * mean;
    const double se = std::sqrt(var / trials);
    EXPECT_NEAR(mean, expected[j], 4.0 * se);
  }
}

TEST(SemiDpSgd, ProjectionKeepsIteratesInDomain) {
  RngStream data_rng(25, 0);
  const SplitDataset data = random_regression(40, 30, 4, data_rng, 2.0);
  SgdConfig cfg = base_config(5, 8, 6, 0.5, sigma_floor(1.0, 1.0, 8));
  cfg.domain_radius_r = 0.2;
  cfg.step_sizes = {2.0};
  RngStream rng(26, 0);
  const TrainResult r =
      semi_dp_sgd(data, LossModel::squared(), cfg, ZcdpBudget(1.0), rng);
  ASSERT_FALSE(r.trace.empty());
  for (const Vec& w : r.trace) {
    ASSERT_LE(norm(w), 0.2 + 1e-12);
  }
}

TEST(SemiDpSgd, DeterministicGivenSeed) {
  RngStream data_rng(27, 0);
  const SplitDataset data = random_regression(40, 30, 4, data_rng);
  SgdConfig cfg = base_config(4, 8, 6, 0.7, sigma_floor(1.0, 1.0, 8));
  RngStream rng_a(5000, 3);
  RngStream rng_b(5000, 3);
  const TrainResult a =
      semi_dp_sgd(data, LossModel::squared(), cfg, ZcdpBudget(1.0), rng_a);
  const TrainResult b =
      semi_dp_sgd(data, LossModel::squared(), cfg, ZcdpBudget(1.0), rng_b);
  EXPECT_EQ(a.weights, b.weights);
}

TEST(SemiDpSgd, SamplingLogDisjointWithinEachEpoch) {
  RngStream data_rng(29, 0);
  const SplitDataset data = random_regression(40, 30, 4, data_rng);
  SgdConfig cfg = base_config(4, 10, 6, 0.5, sigma_floor(1.0, 0.5, 10));
  cfg.epochs = 3;
  RngStream rng(30, 0);
  const TrainResult r =
      semi_dp_sgd(data, LossModel::squared(), cfg, ZcdpBudget(0.5), rng);
  ASSERT_EQ(r.private_batches.size(), 12u);
  for (std::size_t epoch = 0; epoch < 3; ++epoch) {
    std::set<std::size_t> seen;
    for (std::size_t t = 0; t < 4; ++t) {
      for (std::size_t idx : r.private_batches[epoch * 4 + t]) {
        ASSERT_TRUE(data.is_private(idx));
        ASSERT_TRUE(seen.insert(idx).second)
            << "sample " << idx << " reused within epoch " << epoch;
      }
    }
  }
  // Multi-epoch runs compose the per-epoch budget additively.
  EXPECT_DOUBLE_EQ(r.privacy.rho, 1.5);
}

TEST(DpSgdBaseline, HugeBudgetApproachesPlainSgd) {
  RngStream data_rng(31, 0);
  const SplitDataset data = random_regression(30, 30, 3, data_rng);
  const double rho_huge = 1e18;
  SgdConfig cfg = base_config(3, 10, 10, 1.0, sigma_floor(100.0, rho_huge, 20));
  cfg.clip_c = 100.0;  // no gradient reaches the clip threshold
  RngStream rng(32, 0);
  const TrainResult noisy =
      dp_sgd_baseline(data, LossModel::squared(), cfg, ZcdpBudget(rho_huge), rng);

  // Noise-free oracle on the same batch draws.
  RngStream oracle_parent(32, 0);
  RngStream shuffle_rng = oracle_parent.substream(0);
  std::vector<std::size_t> pool(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) pool[i] = i;
  shuffle(pool, shuffle_rng);
  Vec w = zeros(3);
  for (std::size_t t = 0; t < 3; ++t) {
    Vec g = zeros(3);
    for (std::size_t b = 0; b < 20; ++b) {
      const std::size_t i = pool[t * 20 + b];
      LossModel::squared().add_gradient(w, data.sample(i), data.target(i),
                                        1.0 / 20.0, g);
    }
    add_scaled(w, -0.05, g);
  }
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(noisy.weights[j], w[j], 1e-5);
  }
}

TEST(DpSgdBaseline, MatchesFoldedSemiDpSgd) {
  // With full batches, a huge clip threshold, and noise at the calibrated
  // floors, DP-SGD equals semi-DP-SGD at alpha = K_priv / (K_priv + K_pub):
  // alpha * sigma_semi = sigma_dp holds exactly at the floors.
  RngStream data_rng(33, 0);
  const std::size_t n_priv = 12, n_pub = 6, d = 3;
  const SplitDataset data = random_regression(n_priv, n_pub, d, data_rng);
  const double rho = 0.8, clip_c = 1e6;
  const std::size_t k_total = n_priv + n_pub;

  SgdConfig semi_cfg = base_config(1, n_priv, n_pub,
                                   static_cast<double>(n_priv) / k_total,
                                   sigma_floor(clip_c, rho, n_priv));
  semi_cfg.clip_c = clip_c;
  semi_cfg.epochs = 3;
  SgdConfig dp_cfg = base_config(1, n_priv, n_pub, 1.0,
                                 sigma_floor(clip_c, rho, k_total));
  dp_cfg.clip_c = clip_c;
  dp_cfg.epochs = 3;

  RngStream rng_a(404, 7);
  RngStream rng_b(404, 7);
  const TrainResult semi =
      semi_dp_sgd(data, LossModel::squared(), semi_cfg, ZcdpBudget(rho), rng_a);
  const TrainResult dp =
      dp_sgd_baseline(data, LossModel::squared(), dp_cfg, ZcdpBudget(rho), rng_b);
  for (std::size_t j = 0; j < d; ++j) {
    EXPECT_NEAR(semi.weights[j], dp.weights[j],
                1e-12 * (1.0 + std::fabs(dp.weights[j])));
  }
}

TEST(DpSgdBaseline, NoiseFloorUsesCombinedBatch) {
  RngStream data_rng(35, 0);
  const SplitDataset data = random_regression(30, 30, 3, data_rng);
  const ZcdpBudget rho(1.0);
  SgdConfig cfg = base_config(3, 10, 10, 1.0, 0.0);
  cfg.noise_sigma2 = 0.999 * sigma_floor(1.0, 1.0, 20);
  EXPECT_THROW(dp_sgd_baseline(data, LossModel::squared(), cfg, rho, data_rng),
               calibration_error);
  cfg.noise_sigma2 = sigma_floor(1.0, 1.0, 20);
  EXPECT_NO_THROW(
      dp_sgd_baseline(data, LossModel::squared(), cfg, rho, data_rng));
}

SgdConfig local_config(std::size_t n, double step) {
  SgdConfig cfg;
  cfg.iterations_t = n;
  cfg.epochs = 1;
  cfg.clip_c = 1.0;
  cfg.step_sizes = {step};
  cfg.warm_start = false;
  cfg.rescale_public = true;
  return cfg;
}

TEST(SemiLdpSgd, AllPublicIsPlainOnePassSgd) {
  RngStream data_rng(37, 0);
  const SplitDataset data = random_regression(0, 30, 3, data_rng);
  const PrivUnitConfig pu = select_privunit_params(2.0, 3);
  SgdConfig cfg = local_config(data.n(), 0.03);
  cfg.rescale_public = false;
  RngStream rng(38, 4);
  const TrainResult r = semi_ldp_sgd(data, LossModel::squared(), cfg, pu, rng);

  RngStream oracle_parent(38, 4);
  RngStream order_rng = oracle_parent.substream(0);
  std::vector<std::size_t> order(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) order[i] = i;
  shuffle(order, order_rng);
  Vec w = zeros(3), avg = zeros(3);
  for (std::size_t t = 0; t < data.n(); ++t) {
    const std::size_t i = order[t];
    Vec g = LossModel::squared().gradient(w, data.sample(i), data.target(i));
    add_scaled(w, -0.03, g);
    add_scaled(avg, 1.0, w);
  }
  scale(avg, 1.0 / data.n());
  for (int j = 0; j < 3; ++j) {
    EXPECT_DOUBLE_EQ(r.weights[j], avg[j]);
  }
}

TEST(SemiLdpSgd, AllPrivateMatchesLdpBaseline) {
  RngStream data_rng(39, 0);
  const SplitDataset data = random_regression(30, 0, 3, data_rng);
  const PrivUnitConfig pu = select_privunit_params(4.0, 3);
  const SgdConfig cfg = local_config(data.n(), 0.03);
  RngStream rng_a(40, 1);
  RngStream rng_b(40, 1);
  const TrainResult semi =
      semi_ldp_sgd(data, LossModel::squared(), cfg, pu, rng_a);
  const TrainResult base =
      ldp_sgd_baseline(data, LossModel::squared(), cfg, pu, rng_b);
  EXPECT_EQ(semi.weights, base.weights);
}

TEST(SemiLdpSgd, RejectsMultiPassConfigs) {
  RngStream data_rng(41, 0);
  const SplitDataset data = random_regression(10, 10, 3, data_rng);
  const PrivUnitConfig pu = select_privunit_params(2.0, 3);
  SgdConfig cfg = local_config(data.n(), 0.03);
  cfg.epochs = 2;
  RngStream rng(42, 0);
  EXPECT_THROW(semi_ldp_sgd(data, LossModel::squared(), cfg, pu, rng),
               invalid_config_error);
  cfg.epochs = 1;
  cfg.iterations_t = data.n() + 1;
  EXPECT_THROW(semi_ldp_sgd(data, LossModel::squared(), cfg, pu, rng),
               invalid_config_error);
}

TEST(SemiLdpSgd, RejectsUncertifiedRandomizer) {
  RngStream data_rng(43, 0);
  const SplitDataset data = random_regression(10, 10, 3, data_rng);
  const SgdConfig cfg = local_config(data.n(), 0.03);
  RngStream rng(44, 0);
  // No certified eps at all.
  const PrivUnitConfig uncertified = PrivUnitConfig::make(0.9, 0.5, 3);
  EXPECT_THROW(semi_ldp_sgd(data, LossModel::squared(), cfg, uncertified, rng),
               invalid_config_error);
  // Claims an eps the density ratio does not meet.
  PrivUnitConfig overclaimed = select_privunit_params(4.0, 3);
  overclaimed.eps_certified = 2.0;
  EXPECT_THROW(semi_ldp_sgd(data, LossModel::squared(), cfg, overclaimed, rng),
               invalid_config_error);
}

TEST(SemiLdpSgd, PrivacyReportCarriesPureEps) {
  RngStream data_rng(45, 0);
  const SplitDataset data = random_regression(10, 10, 3, data_rng);
  const PrivUnitConfig pu = select_privunit_params(8.0, 3);
  const SgdConfig cfg = local_config(data.n(), 0.03);
  RngStream rng(46, 0);
  const TrainResult r = semi_ldp_sgd(data, LossModel::squared(), cfg, pu, rng);
  EXPECT_DOUBLE_EQ(r.privacy.pure_eps, 8.0);
  EXPECT_DOUBLE_EQ(r.privacy.delta, 0.0);
}

TEST(SemiLdpSgd, NearInfiniteBudgetTracksNormalizedGradientSgd) {
  // At eps = 1e4 the randomizer's direction noise is ~1%, so the run lands
  // near the deterministic loop that steps C times the clipped-gradient
  // direction.
  RngStream data_rng(47, 0);
  const SplitDataset data = random_regression(150, 50, 3, data_rng);
  const double eps = 1e4;
  const PrivUnitConfig pu = select_privunit_params(eps, 3);
  SgdConfig cfg = local_config(data.n(), 0.01);
  cfg.rescale_public = false;
  RngStream rng(48, 0);
  const TrainResult r = semi_ldp_sgd(data, LossModel::squared(), cfg, pu, rng);

  RngStream oracle_parent(48, 0);
  RngStream order_rng = oracle_parent.substream(0);
  std::vector<std::size_t> order(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) order[i] = i;
  shuffle(order, order_rng);
  Vec w = zeros(3), avg = zeros(3);
  for (std::size_t t = 0; t < data.n(); ++t) {
    const std::size_t i = order[t];
    Vec g = LossModel::squared().gradient(w, data.sample(i), data.target(i));
    if (data.is_private(i)) {
      Vec gc = clip(g, 1.0);
      const double gn = norm(gc);
      if (gn > 1e-15) {
        g = scaled(gc, 1.0 / gn);
      } else {
        g = zeros(3);
        g[0] = 1.0;
      }
    }
    add_scaled(w, -0.01, g);
    add_scaled(avg, 1.0, w);
  }
  scale(avg, 1.0 / data.n());
  const double loss_run = mean_loss(LossModel::squared(), r.weights, data);
  const double loss_oracle = mean_loss(LossModel::squared(), avg, data);
  EXPECT_NEAR(loss_run, loss_oracle, 0.05 * (1.0 + loss_oracle));
}

TEST(TrainResult, UniformAveragingMatchesTrace) {
  RngStream data_rng(49, 0);
  const SplitDataset data = random_regression(40, 30, 4, data_rng);
  SgdConfig cfg = base_config(4, 8, 6, 0.5, sigma_floor(1.0, 1.0, 8));
  cfg.averaging = IterateAveraging::kUniform;
  RngStream rng(50, 0);
  const TrainResult r =
      semi_dp_sgd(data, LossModel::squared(), cfg, ZcdpBudget(1.0), rng);
  ASSERT_EQ(r.trace.size(), 5u);  // w_0 plus four updates
  Vec avg = zeros(4);
  for (std::size_t t = 1; t < r.trace.size(); ++t) {
    add_scaled(avg, 1.0, r.trace[t]);
  }
  scale(avg, 0.25);
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(r.weights[j], avg[j], 1e-15);
  }
}

}  // namespace
}  // namespace semidp
