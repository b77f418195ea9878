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
// Synthetic data generation, experiment orchestration (algorithm x eps x
// public-ratio sweeps with seed replication and grid tuning), and CSV /
// plot-script reporting.
#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "semidp/core.hpp"
#include "semidp/local.hpp"
#include "semidp/optim.hpp"
#include "semidp/rng.hpp"
#include "semidp/vec.hpp"

namespace semidp {

namespace detail {

// Shortest decimal form that parses back to the same double; keeps emitted
// CSV files byte-stable and round-trip exact.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || *end != '\0') {
    throw io_error("cannot parse number: '" + t + "'");
  }
  return v;
}

inline std::uint64_t parse_u64(const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end == t.c_str() || *end != '\0') {
    throw io_error("cannot parse integer: '" + t + "'");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dataset CSV format: header row, column `public` in {0,1}, feature columns
// f0..f{d-1}, optional trailing column `y`.
// ---------------------------------------------------------------------------

inline void write_dataset_csv(const SplitDataset& data, std::ostream& os) {
  os << "public";
  for (std::size_t j = 0; j < data.dim(); ++j) os << ",f" << j;
  if (data.has_targets()) os << ",y";
  os << '\n';
  for (std::size_t i = 0; i < data.n(); ++i) {
    os << (data.is_private(i) ? '0' : '1');
    for (std::size_t j = 0; j < data.dim(); ++j) {
      os << ',' << detail::format_double(data.sample(i)[j]);
    }
    if (data.has_targets()) os << ',' << detail::format_double(data.target(i));
    os << '\n';
  }
}

inline void write_dataset_csv(const SplitDataset& data, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot open for writing: " + path);
  write_dataset_csv(data, os);
  if (!os) throw io_error("write failed: " + path);
}

inline SplitDataset read_dataset_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw io_error("dataset CSV: empty input");
  const std::vector<std::string> cols = detail::split(detail::trim(header), ',');
  if (cols.empty() || detail::trim(cols[0]) != "public") {
    throw io_error("dataset CSV: first column must be 'public'");
  }
  bool has_y = !cols.empty() && detail::trim(cols.back()) == "y";
  const std::size_t d = cols.size() - 1 - (has_y ? 1 : 0);
  if (d == 0) throw io_error("dataset CSV: no feature columns");
  for (std::size_t j = 0; j < d; ++j) {
    if (detail::trim(cols[1 + j]) != "f" + std::to_string(j)) {
      throw io_error("dataset CSV: expected column f" + std::to_string(j));
    }
  }
  std::vector<Vec> samples;
  std::vector<bool> is_private;
  std::vector<double> targets;
  std::string line;
  while (std::getline(is, line)) {
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::vector<std::string> parts = detail::split(line, ',');
    if (parts.size() != cols.size()) {
      throw io_error("dataset CSV: row has wrong column count");
    }
    const double pub = detail::parse_double(parts[0]);
    if (pub != 0.0 && pub != 1.0) {
      throw io_error("dataset CSV: 'public' column must be 0 or 1");
    }
    Vec x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = detail::parse_double(parts[1 + j]);
    samples.push_back(std::move(x));
    is_private.push_back(pub == 0.0);
    if (has_y) targets.push_back(detail::parse_double(parts.back()));
  }
  if (samples.empty()) throw io_error("dataset CSV: no data rows");
  return SplitDataset(std::move(samples), std::move(is_private),
                      std::move(targets));
}

inline SplitDataset read_dataset_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open: " + path);
  return read_dataset_csv(is);
}

// ---------------------------------------------------------------------------
// Synthetic linear regression generator.
// ---------------------------------------------------------------------------

struct LinRegProblem {
  SplitDataset train;
  SplitDataset val;
  SplitDataset test;
  Vec w_star;  // generating parameter, for diagnostics
};

// Features and the generating parameter are standard Gaussian; targets carry
// Gaussian noise with standard deviation noise_std, so the best attainable
// squared-error test loss is noise_std^2. A uniformly random ratio_pub
// fraction of the training samples is flagged public; validation and test
// samples are evaluation-only and carry the public flag.
inline LinRegProblem gen_linreg(std::size_t d, std::size_t n_train,
                                std::size_t n_val, std::size_t n_test,
                                double noise_std, double ratio_pub,
                                RngStream& rng) {
  if (d == 0 || n_train == 0 || n_val == 0 || n_test == 0) {
    throw invalid_config_error("gen_linreg: sizes must be >= 1");
  }
  if (!(noise_std >= 0.0)) {
    throw invalid_config_error("gen_linreg: noise_std must be >= 0");
  }
  if (!(ratio_pub > 0.0 && ratio_pub <= 1.0)) {
    throw invalid_config_error("gen_linreg: ratio_pub must be in (0, 1]");
  }
  RngStream param_rng = rng.substream(0);
  RngStream sample_rng = rng.substream(1);
  RngStream flag_rng = rng.substream(2);

  Vec w_star = param_rng.normal_vec(d);
  auto make_split = [&](std::size_t count, const std::vector<bool>& flags) {
    std::vector<Vec> xs;
    std::vector<double> ys;
    xs.reserve(count);
    ys.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      Vec x = sample_rng.normal_vec(d);
      const double y = dot(w_star, x) + noise_std * sample_rng.normal();
      xs.push_back(std::move(x));
      ys.push_back(y);
    }
    return SplitDataset(std::move(xs), flags, std::move(ys));
  };

  std::size_t n_pub = static_cast<std::size_t>(
      std::llround(ratio_pub * static_cast<double>(n_train)));
  n_pub = std::max<std::size_t>(1, std::min(n_pub, n_train));
  std::vector<std::size_t> order(n_train);
  for (std::size_t i = 0; i < n_train; ++i) order[i] = i;
  shuffle(order, flag_rng);
  std::vector<bool> train_flags(n_train, true);
  for (std::size_t i = 0; i < n_pub; ++i) train_flags[order[i]] = false;

  LinRegProblem problem{
      make_split(n_train, train_flags),
      make_split(n_val, std::vector<bool>(n_val, false)),
      make_split(n_test, std::vector<bool>(n_test, false)),
      std::move(w_star)};
  return problem;
}

// ---------------------------------------------------------------------------
// Experiment configuration and results.
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  std::size_t d = 50;
  std::size_t n_train = 5000;
  std::size_t n_val = 1250;
  std::size_t n_test = 1000;
  double noise_std = 0.5;
  std::vector<std::string> algorithms;
  std::vector<double> eps_list;
  double delta = 1e-5;
  std::vector<double> ratio_list;
  std::vector<std::uint64_t> seeds;
  std::vector<double> step_sizes;
  std::vector<std::size_t> epoch_list{1};
  std::vector<double> alphas{0.5};
  std::vector<double> clip_list{1.0};
  std::size_t k_priv = 50;
  std::size_t k_pub = 50;
  bool warm_start = true;
  bool rescale_public = true;
  bool measure_wall_time = true;
  std::string output_path = "results.csv";

  void validate() const {
    if (algorithms.empty()) throw invalid_config_error("bench: no algorithms");
    for (const std::string& a : algorithms) {
      if (a != "semi-dp-sgd" && a != "dp-sgd" && a != "throwaway" &&
          a != "semi-ldp-sgd" && a != "ldp-sgd") {
        throw invalid_config_error("bench: unknown algorithm '" + a + "'");
      }
    }
    if (eps_list.empty()) throw invalid_config_error("bench: eps list empty");
    for (double e : eps_list) {
      if (!(e > 0.0)) throw invalid_config_error("bench: eps must be > 0");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
      throw invalid_config_error("bench: delta must be in (0, 1)");
    }
    if (ratio_list.empty()) throw invalid_config_error("bench: ratio list empty");
    for (double r : ratio_list) {
      if (!(r > 0.0 && r <= 1.0)) {
        throw invalid_config_error("bench: ratios must be in (0, 1]");
      }
    }
    if (seeds.empty()) throw invalid_config_error("bench: seed list empty");
    if (step_sizes.empty()) throw invalid_config_error("bench: step grid empty");
    if (epoch_list.empty()) throw invalid_config_error("bench: epoch grid empty");
    if (alphas.empty()) throw invalid_config_error("bench: alpha grid empty");
    for (double a : alphas) {
      if (!(a >= 0.0 && a <= 1.0)) {
        throw invalid_config_error("bench: alphas must be in [0, 1]");
      }
    }
    if (clip_list.empty()) throw invalid_config_error("bench: clip grid empty");
    if (d == 0 || n_train == 0 || n_val == 0 || n_test == 0) {
      throw invalid_config_error("bench: sizes must be >= 1");
    }
    if (k_priv == 0 && k_pub == 0) {
      throw invalid_config_error("bench: need a nonzero batch size");
    }
  }

  static ExperimentConfig from_file(const std::string& path);
};

struct ResultRow {
  std::string algorithm;
  double eps = 0.0;
  double delta = 0.0;
  std::size_t n = 0;
  double n_pub_ratio = 0.0;
  std::uint64_t seed = 0;
  double step_size = 0.0;
  std::size_t epochs = 0;
  double alpha = 0.0;
  double clip_c = 0.0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double test_loss = 0.0;
  double wall_time_ms = 0.0;
};

// Retained tuning log: one entry per grid candidate, so the winner
// selection is auditable after the fact.
struct GridLogEntry {
  std::string algorithm;
  double eps = 0.0;
  double ratio = 0.0;
  std::uint64_t seed = 0;
  double step_size = 0.0;
  std::size_t epochs = 0;
  double alpha = 0.0;
  double clip_c = 0.0;
  double val_loss = 0.0;
};

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  std::vector<GridLogEntry> grid_log;
};

inline constexpr const char* kResultCsvHeader =
    "algorithm,eps,delta,n,n_pub_ratio,seed,step_size,epochs,alpha,clip_c,"
    "train_loss,val_loss,test_loss,wall_time_ms";

inline std::string csv_string(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw invalid_config_error("emit_csv: no rows");
  std::ostringstream os;
  os << kResultCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    os << r.algorithm << ',' << detail::format_double(r.eps) << ','
       << detail::format_double(r.delta) << ',' << r.n << ','
       << detail::format_double(r.n_pub_ratio) << ',' << r.seed << ','
       << detail::format_double(r.step_size) << ',' << r.epochs << ','
       << detail::format_double(r.alpha) << ','
       << detail::format_double(r.clip_c) << ','
       << detail::format_double(r.train_loss) << ','
       << detail::format_double(r.val_loss) << ','
       << detail::format_double(r.test_loss) << ','
       << detail::format_double(r.wall_time_ms) << '\n';
  }
  return os.str();
}

inline void emit_csv(const std::vector<ResultRow>& rows,
                     const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  os << csv_string(rows);
  if (!os) throw io_error("write failed: " + path);
}

inline std::vector<ResultRow> parse_result_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw io_error("result CSV: empty input");
  if (detail::trim(header) != kResultCsvHeader) {
    throw io_error("result CSV: unexpected header");
  }
  std::vector<ResultRow> rows;
  std::string line;
  while (std::getline(is, line)) {
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::vector<std::string> p = detail::split(line, ',');
    if (p.size() != 14) throw io_error("result CSV: wrong column count");
    ResultRow r;
    r.algorithm = p[0];
    r.eps = detail::parse_double(p[1]);
    r.delta = detail::parse_double(p[2]);
    r.n = static_cast<std::size_t>(detail::parse_u64(p[3]));
    r.n_pub_ratio = detail::parse_double(p[4]);
    r.seed = detail::parse_u64(p[5]);
    r.step_size = detail::parse_double(p[6]);
    r.epochs = static_cast<std::size_t>(detail::parse_u64(p[7]));
    r.alpha = detail::parse_double(p[8]);
    r.clip_c = detail::parse_double(p[9]);
    r.train_loss = detail::parse_double(p[10]);
    r.val_loss = detail::parse_double(p[11]);
    r.test_loss = detail::parse_double(p[12]);
    r.wall_time_ms = detail::parse_double(p[13]);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<ResultRow> parse_result_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open: " + path);
  return parse_result_csv(is);
}

namespace detail {

struct GridPoint {
  double step_size = 0.0;
  std::size_t epochs = 1;
  double alpha = 0.0;
  double clip_c = 1.0;
};

inline std::vector<GridPoint> grid_for_algorithm(const ExperimentConfig& cfg,
                                                 const std::string& alg,
                                                 bool has_private) {
  std::vector<GridPoint> grid;
  if (alg == "throwaway") {
    grid.push_back(GridPoint{0.0, 0, 0.0, 0.0});
    return grid;
  }
  const bool wants_alpha = (alg == "semi-dp-sgd") && has_private;
  const bool wants_epochs = (alg == "semi-dp-sgd" || alg == "dp-sgd");
  const std::vector<std::size_t> epoch_grid =
      wants_epochs ? cfg.epoch_list : std::vector<std::size_t>{1};
  for (double step : cfg.step_sizes) {
    for (std::size_t ep : epoch_grid) {
      for (double clip_c : cfg.clip_list) {
        if (wants_alpha) {
          for (double a : cfg.alphas) {
            grid.push_back(GridPoint{step, ep, a, clip_c});
          }
        } else {
          const double a = (alg == "dp-sgd" || alg == "ldp-sgd") ? 1.0 : 0.0;
          grid.push_back(GridPoint{step, ep, a, clip_c});
        }
      }
    }
  }
  return grid;
}

// One grid candidate trained on one (ratio, seed) dataset.
inline Vec run_candidate(const ExperimentConfig& cfg, const std::string& alg,
                         const LinRegProblem& problem, double eps,
                         const GridPoint& gp, RngStream& rng) {
  const LossModel loss = LossModel::squared();
  const SplitDataset& train = problem.train;
  SgdConfig sgd;
  sgd.clip_c = (gp.clip_c > 0.0) ? gp.clip_c : 1.0;
  sgd.step_sizes = {gp.step_size > 0.0 ? gp.step_size : 1.0};
  sgd.warm_start = cfg.warm_start;
  sgd.rescale_public = cfg.rescale_public;
  sgd.record_trace = false;
  sgd.report_delta = cfg.delta;

  if (alg == "throwaway") {
    return throwaway_erm(train, loss, sgd);
  }
  if (alg == "semi-dp-sgd" || alg == "dp-sgd") {
    const ZcdpBudget rho_total = approx_dp_to_zcdp(PrivacyBudget(eps, cfg.delta));
    const double rho_epoch = rho_total.rho / static_cast<double>(gp.epochs);
    sgd.epochs = gp.epochs;
    sgd.k_priv = std::min(cfg.k_priv, train.n_priv());
    sgd.k_pub = std::min(cfg.k_pub, train.n_pub());
    if (alg == "semi-dp-sgd") {
      sgd.alpha = (train.n_priv() == 0 || sgd.k_priv == 0) ? 0.0 : gp.alpha;
      if (sgd.alpha == 0.0) sgd.k_priv = 0;
      if (sgd.k_priv > 0) {
        sgd.iterations_t = train.n_priv() / sgd.k_priv;
        sgd.noise_sigma2 = 2.0 * sgd.clip_c * sgd.clip_c /
                           (rho_epoch * static_cast<double>(sgd.k_priv) *
                            static_cast<double>(sgd.k_priv));
      } else {
        sgd.iterations_t = train.n() / std::max<std::size_t>(1, sgd.k_pub);
        sgd.noise_sigma2 = 0.0;
      }
      return semi_dp_sgd(train, loss, sgd, ZcdpBudget(rho_epoch), rng).weights;
    }
    const std::size_t k_total = sgd.k_priv + sgd.k_pub;
    sgd.iterations_t = train.n() / k_total;
    sgd.noise_sigma2 = 2.0 * sgd.clip_c * sgd.clip_c /
                       (rho_epoch * static_cast<double>(k_total) *
                        static_cast<double>(k_total));
    return dp_sgd_baseline(train, loss, sgd, ZcdpBudget(rho_epoch), rng).weights;
  }
  // Local algorithms: one pass over the data.
  sgd.epochs = 1;
  sgd.iterations_t = train.n();
  const PrivUnitConfig pu = select_privunit_params(eps, train.dim());
  if (alg == "semi-ldp-sgd") {
    return semi_ldp_sgd(train, loss, sgd, pu, rng).weights;
  }
  return ldp_sgd_baseline(train, loss, sgd, pu, rng).weights;
}

}  // namespace detail

// Runs the configured sweep. For each (algorithm, eps, ratio, seed) the
// hyperparameter grid is scored on the validation split and the winning
// candidate is evaluated on the test split; one row per point and seed.
// Datasets depend only on (ratio, seed), so algorithms compete on identical
// data; every random draw flows from derived streams, making the output a
// pure function of the config. Failed runs become rows with NaN losses
// instead of aborting the sweep.
inline ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  struct TaskOut {
    std::vector<ResultRow> rows;
    std::vector<GridLogEntry> log;
  };

  auto run_point = [&cfg](std::size_t ratio_i, std::size_t seed_i) {
    TaskOut out;
    const double ratio = cfg.ratio_list[ratio_i];
    const std::uint64_t seed = cfg.seeds[seed_i];
    RngStream data_rng(seed, (1ULL << 40) + ratio_i);
    const LinRegProblem problem =
        gen_linreg(cfg.d, cfg.n_train, cfg.n_val, cfg.n_test, cfg.noise_std,
                   ratio, data_rng);
    const LossModel loss = LossModel::squared();
    for (std::size_t alg_i = 0; alg_i < cfg.algorithms.size(); ++alg_i) {
      const std::string& alg = cfg.algorithms[alg_i];
      const std::vector<detail::GridPoint> grid =
          detail::grid_for_algorithm(cfg, alg, problem.train.n_priv() > 0);
      for (std::size_t eps_i = 0; eps_i < cfg.eps_list.size(); ++eps_i) {
        const double eps = cfg.eps_list[eps_i];
        double best_val = std::numeric_limits<double>::infinity();
        Vec best_w;
        detail::GridPoint best_gp;
        double best_ms = 0.0;
        bool any_ok = false;
        for (std::size_t g_i = 0; g_i < grid.size(); ++g_i) {
          const detail::GridPoint& gp = grid[g_i];
          // The run stream is shared across algorithms at matching grid
          // slots (common random numbers), which sharpens the paired
          // algorithm comparisons the sweeps exist for.
          const std::uint64_t run_index =
              (1ULL << 41) + ((eps_i * 64 + ratio_i) * 4096 + g_i);
          RngStream run_rng(seed, run_index);
          double val = std::numeric_limits<double>::quiet_NaN();
          double ms = 0.0;
          Vec w;
          bool ok = true;
          const auto t0 = std::chrono::steady_clock::now();
          try {
            w = detail::run_candidate(cfg, alg, problem, eps, gp, run_rng);
            val = mean_loss(loss, w, problem.val);
          } catch (const std::exception&) {
            ok = false;
          }
          if (cfg.measure_wall_time) {
            ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
          }
          out.log.push_back(GridLogEntry{alg, eps, ratio, seed, gp.step_size,
                                         gp.epochs, gp.alpha, gp.clip_c,
                                         ok ? val
                                            : std::numeric_limits<double>::quiet_NaN()});
          if (ok && val < best_val) {
            best_val = val;
            best_w = std::move(w);
            best_gp = gp;
            best_ms = ms;
            any_ok = true;
          }
        }
        ResultRow row;
        row.algorithm = alg;
        row.eps = eps;
        row.delta = cfg.delta;
        row.n = cfg.n_train;
        row.n_pub_ratio = ratio;
        row.seed = seed;
        if (any_ok) {
          row.step_size = best_gp.step_size;
          row.epochs = best_gp.epochs;
          row.alpha = best_gp.alpha;
          row.clip_c = best_gp.clip_c;
          row.train_loss = mean_loss(loss, best_w, problem.train);
          row.val_loss = best_val;
          row.test_loss = mean_loss(loss, best_w, problem.test);
          row.wall_time_ms = best_ms;
        } else {
          // Error row: the sweep continues, the failure stays visible.
          row.train_loss = std::numeric_limits<double>::quiet_NaN();
          row.val_loss = std::numeric_limits<double>::quiet_NaN();
          row.test_loss = std::numeric_limits<double>::quiet_NaN();
        }
        out.rows.push_back(std::move(row));
      }
    }
    return out;
  };

  // Sweep points and seeds execute in parallel; the merge below is a fixed
  // single-writer order, so scheduling cannot perturb the output.
  std::vector<std::future<TaskOut>> futures;
  futures.reserve(cfg.ratio_list.size() * cfg.seeds.size());
  for (std::size_t ratio_i = 0; ratio_i < cfg.ratio_list.size(); ++ratio_i) {
    for (std::size_t seed_i = 0; seed_i < cfg.seeds.size(); ++seed_i) {
      futures.push_back(std::async(std::launch::async, run_point, ratio_i,
                                   seed_i));
    }
  }
  ExperimentOutput output;
  for (auto& f : futures) {
    TaskOut t = f.get();
    output.rows.insert(output.rows.end(),
                       std::make_move_iterator(t.rows.begin()),
                       std::make_move_iterator(t.rows.end()));
    output.grid_log.insert(output.grid_log.end(),
                           std::make_move_iterator(t.log.begin()),
                           std::make_move_iterator(t.log.end()));
  }
  std::stable_sort(output.rows.begin(), output.rows.end(),
                   [](const ResultRow& a, const ResultRow& b) {
                     if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
                     if (a.eps != b.eps) return a.eps < b.eps;
                     if (a.n_pub_ratio != b.n_pub_ratio) {
                       return a.n_pub_ratio < b.n_pub_ratio;
                     }
                     return a.seed < b.seed;
                   });
  return output;
}

// Emits a self-contained matplotlib script with one series per algorithm:
// mean test loss with standard-error bars over seeds, against the chosen
// x-axis ("ratio" or "eps").
inline std::string plot_script_string(const std::vector<ResultRow>& rows,
                                      const std::string& x_axis) {
  if (rows.empty()) throw invalid_config_error("emit_plot_script: no rows");
  if (x_axis != "ratio" && x_axis != "eps") {
    throw invalid_config_error("emit_plot_script: x_axis must be ratio or eps");
  }
  std::vector<std::string> algorithms;
  for (const ResultRow& r : rows) {
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) ==
        algorithms.end()) {
      algorithms.push_back(r.algorithm);
    }
  }
  std::sort(algorithms.begin(), algorithms.end());

  std::ostringstream os;
  os << "#!/usr/bin/env python3\n"
     << "# Generated benchmark plot: mean test loss with standard-error bars\n"
     << "# over seeds, one series per algorithm.\n"
     << "import math\n"
     << "import matplotlib\n"
     << "matplotlib.use(\"Agg\")\n"
     << "import matplotlib.pyplot as plt\n\n"
     << "series = {\n";
  for (const std::string& alg : algorithms) {
    // Collect x -> list of test losses.
    std::vector<double> xs;
    for (const ResultRow& r : rows) {
      if (r.algorithm != alg) continue;
      const double x = (x_axis == "ratio") ? r.n_pub_ratio : r.eps;
      if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    os << "    \"" << alg << "\": {\n";
    for (double x : xs) {
      os << "        " << detail::format_double(x) << ": [";
      bool first = true;
      for (const ResultRow& r : rows) {
        if (r.algorithm != alg) continue;
        const double rx = (x_axis == "ratio") ? r.n_pub_ratio : r.eps;
        if (rx != x) continue;
        if (!first) os << ", ";
        os << detail::format_double(r.test_loss);
        first = false;
      }
      os << "],\n";
    }
    os << "    },\n";
  }
  os << "}\n\n"
     << "plt.figure(figsize=(6, 4))\n"
     << "for alg, points in series.items():\n"
     << "    xs = sorted(points)\n"
     << "    means = [sum(points[x]) / len(points[x]) for x in xs]\n"
     << "    errs = []\n"
     << "    for x in xs:\n"
     << "        vals = points[x]\n"
     << "        mu = sum(vals) / len(vals)\n"
     << "        var = sum((v - mu) ** 2 for v in vals) / max(1, len(vals) - 1)\n"
     << "        errs.append(math.sqrt(var / len(vals)))\n"
     << "    plt.errorbar(xs, means, yerr=errs, marker=\"o\", capsize=3, "
        "label=alg)\n"
     << "plt.xlabel(\"" << (x_axis == "ratio" ? "public fraction" : "epsilon")
     << "\")\n"
     << "plt.ylabel(\"test loss\")\n"
     << "plt.legend()\n"
     << "plt.tight_layout()\n"
     << "plt.savefig(\"benchmark_" << x_axis << ".png\", dpi=150)\n";
  return os.str();
}

inline void emit_plot_script(const std::vector<ResultRow>& rows,
                             const std::string& x_axis,
                             const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  os << plot_script_string(rows, x_axis);
  if (!os) throw io_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Flat key = value config files (lists comma-separated, no nesting).
// ---------------------------------------------------------------------------

inline ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot open: " + path);
  ExperimentConfig cfg;
  cfg.alphas.clear();
  std::string line;
  std::size_t line_no = 0;
  auto parse_bool = [](const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw invalid_config_error("bench config: expected on/off, got '" + v + "'");
  };
  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw invalid_config_error("bench config line " + std::to_string(line_no) +
                                 ": expected key = value");
    }
    const std::string key = detail::trim(t.substr(0, eq));
    const std::string value = detail::trim(t.substr(eq + 1));
    auto doubles = [&value]() {
      std::vector<double> out;
      for (const std::string& s : detail::split(value, ',')) {
        out.push_back(detail::parse_double(s));
      }
      return out;
    };
    if (key == "d") {
      cfg.d = static_cast<std::size_t>(detail::parse_u64(value));
    } else if (key == "n_train") {
      cfg.n_train = static_cast<std::size_t>(detail::parse_u64(value));
    } else if (key == "n_val") {
      cfg.n_val = static_cast<std::size_t>(detail::parse_u64(value));
    } else if (key == "n_test") {
      cfg.n_test = static_cast<std::size_t>(detail::parse_u64(value));
    } else if (key == "noise_std") {
      cfg.noise_std = detail::parse_double(value);
    } else if (key == "algorithms") {
      cfg.algorithms.clear();
      for (const std::string& s : detail::split(value, ',')) {
        cfg.algorithms.push_back(detail::trim(s));
      }
    } else if (key == "eps") {
      cfg.eps_list = doubles();
    } else if (key == "delta") {
      cfg.delta = detail::parse_double(value);
    } else if (key == "ratios") {
      cfg.ratio_list = doubles();
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const std::string& s : detail::split(value, ',')) {
        cfg.seeds.push_back(detail::parse_u64(s));
      }
    } else if (key == "step_sizes") {
      cfg.step_sizes = doubles();
    } else if (key == "epochs") {
      cfg.epoch_list.clear();
      for (const std::string& s : detail::split(value, ',')) {
        cfg.epoch_list.push_back(static_cast<std::size_t>(detail::parse_u64(s)));
      }
    } else if (key == "alphas") {
      cfg.alphas = doubles();
    } else if (key == "clip") {
      cfg.clip_list = doubles();
    } else if (key == "k_priv") {
      cfg.k_priv = static_cast<std::size_t>(detail::parse_u64(value));
    } else if (key == "k_pub") {
      cfg.k_pub = static_cast<std::size_t>(detail::parse_u64(value));
    } else if (key == "warm_start") {
      cfg.warm_start = parse_bool(value);
    } else if (key == "rescale_public") {
      cfg.rescale_public = parse_bool(value);
    } else if (key == "wall_time") {
      if (value == "measured") {
        cfg.measure_wall_time = true;
      } else if (value == "zero") {
        cfg.measure_wall_time = false;
      } else {
        throw invalid_config_error("bench config: wall_time must be measured or zero");
      }
    } else if (key == "output") {
      cfg.output_path = value;
    } else {
      throw invalid_config_error("bench config: unknown key '" + key + "'");
    }
  }
  if (cfg.alphas.empty()) cfg.alphas = {0.5};
  return cfg;
}

}  // namespace semidp
