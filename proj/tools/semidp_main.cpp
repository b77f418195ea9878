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
// Command line front end. Subcommands:
//   mean           one-shot mean estimation on a dataset CSV
//   train          run a training algorithm and dump the weights
//   bench          run a sweep described by a config file
//   rates          evaluate a minimax rate formula
//   audit-privunit check the randomizer's density-ratio constraint
//
// Exit codes: 0 success, 1 invalid config, 2 privacy-calibration violation,
// 3 I/O error.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semidp/semidp.hpp"

namespace {

using semidp::Vec;

std::string join_csv(const Vec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out.push_back(',');
    out += semidp::detail::format_double(v[i]);
  }
  return out;
}

// FNV-1a over the canonical config text, reported in the model dump.
std::uint64_t config_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct MeanOptions {
  std::string data_path;
  std::string method;
  double eps = 1.0;
  double delta = 0.0;
  double rho = 1.0;
  double bound_b = 1.0;
  double stddev_v = 0.0;
  std::uint64_t seed = 0;
};

int run_mean(const MeanOptions& opt) {
  const semidp::SplitDataset data = semidp::read_dataset_csv(opt.data_path);
  semidp::RngStream rng(opt.seed, 0);
  const semidp::BoundedDistSpec spec(opt.bound_b, opt.stddev_v);
  Vec result;
  if (opt.method == "throwaway") {
    result = semidp::throwaway_mean(data);
  } else if (opt.method == "laplace") {
    result = semidp::laplace_mean(data, semidp::PrivacyBudget(opt.eps, 0.0), rng,
                                  opt.bound_b);
  } else if (opt.method == "gaussian") {
    result = semidp::gaussian_mean_approx_dp(
        data, semidp::PrivacyBudget(opt.eps, opt.delta), rng, opt.bound_b);
  } else if (opt.method == "gaussian-zcdp") {
    result = semidp::gaussian_mean_zcdp(data, semidp::ZcdpBudget(opt.rho), spec,
                                        rng);
  } else if (opt.method == "weighted-gaussian") {
    result =
        semidp::weighted_gaussian_mean(data, spec, semidp::ZcdpBudget(opt.rho), rng);
  } else if (opt.method == "weighted-laplace") {
    const double r = semidp::optimal_weight(data.n_priv(), data.n_pub(), spec,
                                            semidp::ZcdpBudget(opt.rho), data.dim());
    result = semidp::weighted_laplace_mean(
        data, r, semidp::PrivacyBudget(opt.eps, 0.0), spec, rng);
  } else if (opt.method == "semi-privunit") {
    const semidp::PrivUnitConfig pu =
        semidp::select_privunit_params(opt.eps, data.dim());
    result = semidp::semi_privunit_mean(data, pu, rng);
  } else {
    throw semidp::invalid_config_error("mean: unknown method '" + opt.method + "'");
  }
  std::cout << join_csv(result) << "\n";
  return 0;
}

struct TrainOptions {
  std::string data_path;
  std::string method;
  std::string loss_name = "squared";
  std::string out_path;
  std::size_t iterations = 0;
  std::size_t epochs = 1;
  double clip_c = 1.0;
  double step_size = 0.1;
  std::size_t k_priv = 0;
  std::size_t k_pub = 0;
  double alpha = 0.5;
  double sigma2 = -1.0;
  double radius = std::numeric_limits<double>::infinity();
  bool warm_start = false;
  bool rescale_public = true;
  bool average_iterates = false;
  double eps = 1.0;
  double delta = 1e-5;
  double rho = -1.0;
  std::uint64_t seed = 0;
};

int run_train(const TrainOptions& opt, const std::string& canonical_args) {
  const semidp::SplitDataset data = semidp::read_dataset_csv(opt.data_path);
  const semidp::LossModel loss = (opt.loss_name == "logistic")
                                     ? semidp::LossModel::logistic()
                                     : semidp::LossModel::squared();
  semidp::RngStream rng(opt.seed, 0);

  semidp::SgdConfig cfg;
  cfg.epochs = opt.epochs;
  cfg.clip_c = opt.clip_c;
  cfg.step_sizes = {opt.step_size};
  cfg.k_priv = opt.k_priv;
  cfg.k_pub = opt.k_pub;
  cfg.alpha = opt.alpha;
  cfg.domain_radius_r = opt.radius;
  cfg.warm_start = opt.warm_start;
  cfg.rescale_public = opt.rescale_public;
  cfg.averaging = opt.average_iterates ? semidp::IterateAveraging::kUniform
                                       : semidp::IterateAveraging::kLast;
  cfg.record_trace = false;
  cfg.report_delta = opt.delta;

  semidp::TrainResult result;
  if (opt.method == "throwaway") {
    result.weights = semidp::throwaway_erm(data, loss, cfg);
    result.privacy.rho = 0.0;
    result.privacy.eps = 0.0;
    result.privacy.delta = 0.0;
  } else if (opt.method == "semi-dp-sgd" || opt.method == "dp-sgd") {
    const semidp::ZcdpBudget budget =
        (opt.rho > 0.0)
            ? semidp::ZcdpBudget(opt.rho)
            : semidp::approx_dp_to_zcdp(semidp::PrivacyBudget(opt.eps, opt.delta));
    const std::size_t k_for_floor =
        (opt.method == "dp-sgd") ? (cfg.k_priv + cfg.k_pub) : cfg.k_priv;
    cfg.iterations_t = opt.iterations;
    if (cfg.iterations_t == 0 && k_for_floor > 0) {
      cfg.iterations_t = (opt.method == "dp-sgd")
                             ? data.n() / k_for_floor
                             : data.n_priv() / k_for_floor;
    }
    cfg.noise_sigma2 = opt.sigma2;
    if (cfg.noise_sigma2 < 0.0 && k_for_floor > 0) {
      cfg.noise_sigma2 = 2.0 * cfg.clip_c * cfg.clip_c /
                         (budget.rho * static_cast<double>(k_for_floor) *
                          static_cast<double>(k_for_floor));
    }
    result = (opt.method == "semi-dp-sgd")
                 ? semidp::semi_dp_sgd(data, loss, cfg, budget, rng)
                 : semidp::dp_sgd_baseline(data, loss, cfg, budget, rng);
  } else if (opt.method == "semi-ldp-sgd" || opt.method == "ldp-sgd") {
    cfg.iterations_t = (opt.iterations == 0) ? data.n() : opt.iterations;
    const semidp::PrivUnitConfig pu =
        semidp::select_privunit_params(opt.eps, data.dim());
    result = (opt.method == "semi-ldp-sgd")
                 ? semidp::semi_ldp_sgd(data, loss, cfg, pu, rng)
                 : semidp::ldp_sgd_baseline(data, loss, cfg, pu, rng);
  } else {
    throw semidp::invalid_config_error("train: unknown method '" + opt.method + "'");
  }

  std::ostringstream dump;
  dump << "# algorithm = " << opt.method << "\n";
  dump << "# config_hash = " << std::hex << config_hash(canonical_args)
       << std::dec << "\n";
  dump << "# rho = " << result.privacy.rho << "\n";
  dump << "# eps = " << result.privacy.eps << "\n";
  dump << "# delta = " << result.privacy.delta << "\n";
  dump << "# seed = " << opt.seed << "\n";
  for (double w : result.weights) {
    dump << semidp::detail::format_double(w) << "\n";
  }
  if (opt.out_path.empty()) {
    std::cout << dump.str();
  } else {
    std::ofstream os(opt.out_path);
    if (!os) throw semidp::io_error("cannot open for writing: " + opt.out_path);
    os << dump.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-differentially-private estimators and optimizers"};
  app.require_subcommand(1);

  // mean ---------------------------------------------------------------
  MeanOptions mean_opt;
  CLI::App* mean_cmd = app.add_subcommand("mean", "one-shot mean estimation");
  mean_cmd->add_option("--data", mean_opt.data_path, "dataset CSV")->required();
  mean_cmd
      ->add_option("--method", mean_opt.method,
                   "throwaway|laplace|gaussian|gaussian-zcdp|weighted-gaussian|"
                   "weighted-laplace|semi-privunit")
      ->required();
  mean_cmd->add_option("--eps", mean_opt.eps, "epsilon");
  mean_cmd->add_option("--delta", mean_opt.delta, "delta");
  mean_cmd->add_option("--rho", mean_opt.rho, "zCDP budget");
  mean_cmd->add_option("--bound-b", mean_opt.bound_b, "norm bound B");
  mean_cmd->add_option("--stddev-v", mean_opt.stddev_v, "per-sample stddev V");
  mean_cmd->add_option("--seed", mean_opt.seed, "master seed");

  // train --------------------------------------------------------------
  TrainOptions train_opt;
  CLI::App* train_cmd = app.add_subcommand("train", "run a training algorithm");
  train_cmd->add_option("--data", train_opt.data_path, "dataset CSV")->required();
  train_cmd
      ->add_option("--method", train_opt.method,
                   "semi-dp-sgd|dp-sgd|throwaway|semi-ldp-sgd|ldp-sgd")
      ->required();
  train_cmd->add_option("--loss", train_opt.loss_name, "squared|logistic");
  train_cmd->add_option("--out", train_opt.out_path, "output file (default stdout)");
  train_cmd->add_option("--iterations", train_opt.iterations,
                        "updates per epoch (0 = one pass)");
  train_cmd->add_option("--epochs", train_opt.epochs, "epochs");
  train_cmd->add_option("--clip", train_opt.clip_c, "clip threshold C");
  train_cmd->add_option("--step-size", train_opt.step_size, "constant step size");
  train_cmd->add_option("--k-priv", train_opt.k_priv, "private batch size");
  train_cmd->add_option("--k-pub", train_opt.k_pub, "public batch size");
  train_cmd->add_option("--alpha", train_opt.alpha, "private mixing weight");
  train_cmd->add_option("--sigma2", train_opt.sigma2,
                        "noise variance (default: calibrated floor)");
  train_cmd->add_option("--radius", train_opt.radius, "domain radius R");
  train_cmd->add_flag("--warm-start", train_opt.warm_start,
                      "initialize at the public minimizer");
  train_cmd->add_flag("--rescale-public,!--no-rescale-public",
                      train_opt.rescale_public, "rescale public gradients");
  train_cmd->add_flag("--average-iterates", train_opt.average_iterates,
                      "return the uniform iterate average");
  train_cmd->add_option("--eps", train_opt.eps, "epsilon");
  train_cmd->add_option("--delta", train_opt.delta, "delta");
  train_cmd->add_option("--rho", train_opt.rho, "per-epoch zCDP budget");
  train_cmd->add_option("--seed", train_opt.seed, "master seed");

  // bench --------------------------------------------------------------
  std::string bench_config;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run a sweep from a config");
  bench_cmd->add_option("--config", bench_config, "experiment config file")
      ->required();

  // rates --------------------------------------------------------------
  std::string rates_problem;
  std::string rates_bound = "upper";
  semidp::RateQuery query;
  CLI::App* rates_cmd = app.add_subcommand("rates", "evaluate a rate formula");
  rates_cmd
      ->add_option("--problem", rates_problem,
                   "mean_central|mean_local|erm|sco_central|sco_local")
      ->required();
  rates_cmd->add_option("--eps", query.eps, "epsilon")->required();
  rates_cmd->add_option("--delta", query.delta, "delta");
  rates_cmd->add_option("--n-priv", query.n_priv, "private sample count")
      ->required();
  rates_cmd->add_option("--n", query.n, "total sample count")->required();
  rates_cmd->add_option("--dim", query.d, "dimension")->required();
  rates_cmd->add_option("--lipschitz", query.lipschitz_l, "Lipschitz constant L");
  rates_cmd->add_option("--diameter", query.diameter_d, "domain diameter D");
  rates_cmd->add_option("--mu", query.mu, "strong convexity (0 = convex)");
  rates_cmd->add_option("--bound", rates_bound, "upper|lower");

  // audit-privunit -------------------------------------------------------
  double audit_eps = 1.0;
  std::size_t audit_dim = 2;
  std::size_t audit_grid = 1024;
  double audit_p = -1.0;
  double audit_gamma = -1.0;
  CLI::App* audit_cmd =
      app.add_subcommand("audit-privunit", "audit the randomizer densities");
  audit_cmd->add_option("--eps", audit_eps, "claimed epsilon")->required();
  audit_cmd->add_option("--dim", audit_dim, "dimension")->required();
  audit_cmd->add_option("--grid-size", audit_grid, "t-grid resolution");
  audit_cmd->add_option("--p", audit_p, "cap probability (default: selected)");
  audit_cmd->add_option("--gamma", audit_gamma, "cap height (default: selected)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::string canonical_args;
  for (int i = 1; i < argc; ++i) {
    canonical_args += argv[i];
    canonical_args.push_back(' ');
  }

  try {
    if (mean_cmd->parsed()) return run_mean(mean_opt);
    if (train_cmd->parsed()) return run_train(train_opt, canonical_args);
    if (bench_cmd->parsed()) {
      const semidp::ExperimentConfig cfg =
          semidp::ExperimentConfig::from_file(bench_config);
      const semidp::ExperimentOutput out = semidp::run_experiment(cfg);
      semidp::emit_csv(out.rows, cfg.output_path);
      semidp::emit_plot_script(out.rows, "ratio", cfg.output_path + ".plot_ratio.py");
      semidp::emit_plot_script(out.rows, "eps", cfg.output_path + ".plot_eps.py");
      std::cout << "wrote " << out.rows.size() << " rows to " << cfg.output_path
                << "\n";
      return 0;
    }
    if (rates_cmd->parsed()) {
      query.problem = semidp::rate_problem_from_string(rates_problem);
      const semidp::RateBound bound = (rates_bound == "lower")
                                          ? semidp::RateBound::kLower
                                          : semidp::RateBound::kUpper;
      std::cout << semidp::detail::format_double(semidp::evaluate_rate(query, bound))
                << "\n";
      return 0;
    }
    if (audit_cmd->parsed()) {
      semidp::PrivUnitConfig pu =
          (audit_p >= 0.0 && audit_gamma >= 0.0)
              ? semidp::PrivUnitConfig::make(audit_p, audit_gamma, audit_dim,
                                             audit_eps)
              : semidp::select_privunit_params(audit_eps, audit_dim);
      const semidp::PrivUnitAuditReport report =
          semidp::privunit_audit(pu, audit_eps, audit_grid);
      std::cout << report.to_csv();
      return report.pass ? 0 : 2;
    }
  } catch (const semidp::calibration_error& e) {
    std::cerr << "privacy calibration violation: " << e.what() << "\n";
    return 2;
  } catch (const semidp::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const semidp::invalid_config_error& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
