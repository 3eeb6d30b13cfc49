#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mggm/diagnostics.hpp"
#include "mggm/harness.hpp"
#include "mggm/linalg.hpp"

namespace {

using namespace mggm;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

PenaltySpec spec_from_flags(const std::string& penalty, double lambda, double alpha,
                            double epsilon, double scad_a) {
  PenaltySpec spec;
  spec.kind = penalty_kind_from_string(penalty);
  spec.lambda = lambda;
  spec.alpha = alpha;
  spec.epsilon = epsilon;
  spec.a = scad_a;
  spec.validate();
  return spec;
}

BlockMatrix load_matrix(const std::filesystem::path& path) {
  return path.extension() == ".bin" ? BlockMatrix::load_binary(path)
                                    : BlockMatrix::load_csv(path);
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Multi-attribute Gaussian graphical model estimation"};
  app.require_subcommand(1);

  // ---- synth ----------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "Synthetic benchmark sweep");
  std::string synth_config;
  std::optional<std::uint64_t> synth_seed;
  std::optional<std::string> synth_out;
  std::optional<int> synth_jobs;
  synth->add_option("--config", synth_config, "key = value config file")->required();
  synth->add_option("--seed", synth_seed, "override config seed");
  synth->add_option("--output-dir", synth_out, "override output directory");
  synth->add_option("--jobs", synth_jobs, "worker threads");

  // ---- fit ------------------------------------------------------------
  auto* fit_cmd = app.add_subcommand("fit", "Single estimation from data or covariance");
  std::string fit_data_path, fit_cov_path, fit_table_path;
  int fit_p = 0, fit_m = 1, fit_tmax = 200, fit_rounds = 2;
  std::string fit_penalty = "lasso";
  double fit_lambda = 0.1, fit_alpha = 0.05, fit_eps = 1e-4, fit_a = 3.7, fit_theta = 0.0;
  double fit_rho = 2.0, fit_phi = 10.0, fit_tau_abs = 1e-4, fit_tau_rel = 1e-4;
  std::string fit_out = "out", fit_trace;
  fit_cmd->add_option("--input", fit_data_path, "sample CSV, one row per observation");
  fit_cmd->add_option("--covariance", fit_cov_path, "covariance matrix file (.csv/.bin)");
  fit_cmd->add_option("--table", fit_table_path, "ingested table CSV (date + columns)");
  fit_cmd->add_option("--p", fit_p, "node count (required with --input/--table)");
  fit_cmd->add_option("--m", fit_m, "attributes per node");
  fit_cmd->add_option("--penalty", fit_penalty, "lasso|logsum|scad");
  fit_cmd->add_option("--lambda", fit_lambda, "penalty level");
  fit_cmd->add_option("--alpha", fit_alpha, "element/group balance");
  fit_cmd->add_option("--epsilon", fit_eps, "log-sum knee");
  fit_cmd->add_option("--scad-a", fit_a, "SCAD saturation multiple");
  fit_cmd->add_option("--theta", fit_theta, "edge threshold on block norms");
  fit_cmd->add_option("--lla-rounds", fit_rounds, "solver rounds for non-convex penalties");
  fit_cmd->add_option("--rho-init", fit_rho, "initial ADMM penalty parameter");
  fit_cmd->add_option("--phi", fit_phi, "residual ratio for rho adaptation");
  fit_cmd->add_option("--tau-abs", fit_tau_abs, "absolute tolerance");
  fit_cmd->add_option("--tau-rel", fit_tau_rel, "relative tolerance");
  fit_cmd->add_option("--t-max", fit_tmax, "iteration cap");
  fit_cmd->add_option("--trace", fit_trace, "write per-iteration trace CSV here");
  fit_cmd->add_option("--output-dir", fit_out, "output directory");

  // ---- select ---------------------------------------------------------
  auto* sel_cmd = app.add_subcommand("select", "BIC grid selection");
  std::string sel_data_path, sel_table_path;
  int sel_p = 0, sel_m = 1, sel_grid = 15, sel_rounds = 2, sel_tmax = 200;
  std::string sel_penalty = "lasso";
  double sel_alpha = 0.05, sel_eps = 1e-4, sel_a = 3.7;
  std::vector<double> sel_alpha_grid;
  std::string sel_out = "out";
  sel_cmd->add_option("--input", sel_data_path, "sample CSV, one row per observation");
  sel_cmd->add_option("--table", sel_table_path, "ingested table CSV");
  sel_cmd->add_option("--p", sel_p, "node count")->required();
  sel_cmd->add_option("--m", sel_m, "attributes per node");
  sel_cmd->add_option("--penalty", sel_penalty, "lasso|logsum|scad");
  sel_cmd->add_option("--alpha", sel_alpha, "phase-1 alpha");
  sel_cmd->add_option("--epsilon", sel_eps, "log-sum knee");
  sel_cmd->add_option("--scad-a", sel_a, "SCAD saturation multiple");
  sel_cmd->add_option("--grid", sel_grid, "lambda grid size");
  sel_cmd->add_option("--alpha-grid", sel_alpha_grid, "phase-2 alpha grid")->expected(-1);
  sel_cmd->add_option("--lla-rounds", sel_rounds, "solver rounds");
  sel_cmd->add_option("--t-max", sel_tmax, "iteration cap");
  sel_cmd->add_option("--output-dir", sel_out, "output directory");

  // ---- ingest ---------------------------------------------------------
  auto* ing_cmd = app.add_subcommand("ingest", "Price CSVs to a returns table");
  std::vector<std::string> ing_paths, ing_features;
  std::string ing_out = "table.csv";
  ing_cmd->add_option("--prices", ing_paths, "one CSV per feature")->required()->expected(-1);
  ing_cmd->add_option("--features", ing_features, "feature names")->required()->expected(-1);
  ing_cmd->add_option("--output", ing_out, "table CSV to write");

  // ---- real -----------------------------------------------------------
  auto* real_cmd = app.add_subcommand("real", "Two-phase BIC estimation on a table");
  std::string real_table;
  int real_m = 1, real_grid = 15, real_rounds = 2, real_tmax = 200;
  std::vector<std::string> real_penalties = {"lasso", "logsum"};
  std::string real_out = "out";
  real_cmd->add_option("--table", real_table, "ingested table CSV")->required();
  real_cmd->add_option("--m", real_m, "attributes per node")->required();
  real_cmd->add_option("--penalty", real_penalties, "penalties to run")->expected(-1);
  real_cmd->add_option("--grid", real_grid, "lambda grid size");
  real_cmd->add_option("--lla-rounds", real_rounds, "solver rounds");
  real_cmd->add_option("--t-max", real_tmax, "iteration cap");
  real_cmd->add_option("--output-dir", real_out, "output directory");

  // ---- diagnose -------------------------------------------------------
  auto* diag = app.add_subcommand("diagnose", "Stationarity and theory checks");
  diag->require_subcommand(1);

  auto* kkt_cmd = diag->add_subcommand("kkt", "Stationarity residual of an estimate");
  std::string kkt_omega, kkt_sigma, kkt_penalty = "lasso";
  double kkt_lambda = 0.1, kkt_alpha = 0.05, kkt_eps = 1e-4, kkt_a = 3.7;
  kkt_cmd->add_option("--omega", kkt_omega, "estimate matrix file")->required();
  kkt_cmd->add_option("--covariance", kkt_sigma, "covariance matrix file")->required();
  kkt_cmd->add_option("--penalty", kkt_penalty, "lasso|logsum|scad");
  kkt_cmd->add_option("--lambda", kkt_lambda, "penalty level");
  kkt_cmd->add_option("--alpha", kkt_alpha, "element/group balance");
  kkt_cmd->add_option("--epsilon", kkt_eps, "log-sum knee");
  kkt_cmd->add_option("--scad-a", kkt_a, "SCAD saturation multiple");

  auto* cvx_cmd = diag->add_subcommand("convexity", "Strict-convexity radius and check");
  std::string cvx_penalty = "logsum", cvx_omega;
  int cvx_m = 1;
  double cvx_lambda = 0.1, cvx_eps = 1e-4, cvx_a = 3.7;
  cvx_cmd->add_option("--penalty", cvx_penalty, "lasso|logsum|scad");
  cvx_cmd->add_option("--m", cvx_m, "attributes per node")->required();
  cvx_cmd->add_option("--lambda", cvx_lambda, "penalty level");
  cvx_cmd->add_option("--epsilon", cvx_eps, "log-sum knee");
  cvx_cmd->add_option("--scad-a", cvx_a, "SCAD saturation multiple");
  cvx_cmd->add_option("--omega", cvx_omega, "optional matrix to test");

  auto* tail_cmd = diag->add_subcommand("tailbound", "Sample-covariance concentration check");
  int tail_p = 20, tail_m = 2, tail_n = 1000, tail_trials = 500, tail_jobs = 1;
  double tail_tau = 3.0;
  std::uint64_t tail_seed = 0;
  std::string tail_sigma, tail_csv;
  tail_cmd->add_option("--p", tail_p, "node count");
  tail_cmd->add_option("--m", tail_m, "attributes per node");
  tail_cmd->add_option("--n", tail_n, "samples per trial");
  tail_cmd->add_option("--tau", tail_tau, "probability exponent (> 2)");
  tail_cmd->add_option("--trials", tail_trials, "Monte-Carlo trials");
  tail_cmd->add_option("--seed", tail_seed, "master seed");
  tail_cmd->add_option("--jobs", tail_jobs, "worker threads");
  tail_cmd->add_option("--sigma", tail_sigma, "covariance file (default: generated truth)");
  tail_cmd->add_option("--deviations-csv", tail_csv, "write per-trial deviations here");

  auto* irrep_cmd = diag->add_subcommand("irrep", "Support irrepresentability constants");
  std::string irrep_json, irrep_matrix, irrep_graph = "er";
  int irrep_p = 4, irrep_m = 2;
  double irrep_param = 0.3;
  std::uint64_t irrep_seed = 0;
  irrep_cmd->add_option("--truth-json", irrep_json, "ground-truth JSON");
  irrep_cmd->add_option("--truth-matrix", irrep_matrix, "ground-truth matrix file");
  irrep_cmd->add_option("--graph", irrep_graph, "er|ba (generated truth)");
  irrep_cmd->add_option("--p", irrep_p, "node count");
  irrep_cmd->add_option("--m", irrep_m, "attributes per node");
  irrep_cmd->add_option("--param", irrep_param, "edge probability / mean degree");
  irrep_cmd->add_option("--seed", irrep_seed, "generation seed");

  CLI11_PARSE(app, argc, argv);

  if (*synth) {
    ExperimentConfig cfg = parse_config(synth_config);
    if (synth_seed) cfg.seed = *synth_seed;
    if (synth_out) cfg.output_dir = *synth_out;
    if (synth_jobs) cfg.jobs = *synth_jobs;
    const SynthSummary summary = run_synthetic(cfg);
    std::cout << "wrote " << summary.records.size() << " run records to "
              << (cfg.output_dir / "runs.csv").string() << " (" << summary.failures
              << " failures)\n";
    return kExitOk;
  }

  if (*fit_cmd) {
    AdmmConfig admm{fit_rho, fit_phi, fit_tau_abs, fit_tau_rel, fit_tmax};
    const PenaltySpec spec =
        spec_from_flags(fit_penalty, fit_lambda, fit_alpha, fit_eps, fit_a);
    BlockMatrix sigma;
    if (!fit_cov_path.empty()) {
      sigma = load_matrix(fit_cov_path);
    } else if (!fit_table_path.empty()) {
      const TimeSeriesTable table = read_table_csv(fit_table_path, fit_m);
      sigma = sample_covariance(table.values, table.p(), table.m());
    } else if (!fit_data_path.empty()) {
      if (fit_p < 1) throw InvalidInputError("fit: --p is required with --input");
      const Eigen::MatrixXd data = read_data_csv(fit_data_path);
      sigma = sample_covariance(data, fit_p, fit_m);
    } else {
      throw InvalidInputError("fit: one of --input, --covariance, --table is required");
    }
    FitOptions fo;
    fo.lla_rounds = fit_rounds;
    fo.theta = fit_theta;
    std::vector<IterationTrace> trace;
    if (!fit_trace.empty()) fo.trace = &trace;
    const GraphEstimate est = fit(sigma, spec, admm, fo);
    std::filesystem::create_directories(fit_out);
    est.omega_hat.save_csv(std::filesystem::path(fit_out) / "omega.csv");
    save_estimate_json(est, std::filesystem::path(fit_out) / "estimate.json");
    write_edges_tsv(est.edges, est.block_weights,
                    std::filesystem::path(fit_out) / "edges.tsv");
    if (!fit_trace.empty()) write_trace_csv(trace, fit_trace);
    std::cout << est.edges.size() << " edges, "
              << (est.converged() ? "converged" : "not converged") << ", outputs in "
              << fit_out << "\n";
    return kExitOk;
  }

  if (*sel_cmd) {
    AdmmConfig admm;
    admm.t_max = sel_tmax;
    PenaltySpec tmpl = spec_from_flags(sel_penalty, 1.0, sel_alpha, sel_eps, sel_a);
    Eigen::MatrixXd data;
    int p = sel_p, m = sel_m;
    if (!sel_table_path.empty()) {
      const TimeSeriesTable table = read_table_csv(sel_table_path, sel_m);
      data = table.values;
      p = table.p();
      m = table.m();
    } else if (!sel_data_path.empty()) {
      data = read_data_csv(sel_data_path);
    } else {
      throw InvalidInputError("select: one of --input, --table is required");
    }
    GridSearchOptions options;
    options.grid_size = sel_grid;
    options.lla_rounds = sel_rounds;
    const SelectionResult result = select(data, p, m, tmpl, admm, options, sel_alpha_grid);
    std::filesystem::create_directories(sel_out);
    write_bic_csv(result, std::filesystem::path(sel_out) / "bic.csv");
    std::cout << "best lambda " << result.best_lambda << ", best alpha " << result.best_alpha
              << " (grid [" << result.lambda_lower << ", " << result.lambda_upper << "])\n";
    return kExitOk;
  }

  if (*ing_cmd) {
    std::vector<std::filesystem::path> paths(ing_paths.begin(), ing_paths.end());
    const TimeSeriesTable table = ingest_csv(paths, ing_features);
    write_table_csv(table, ing_out);
    for (const auto& w : table.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "table " << table.values.rows() << " x " << table.values.cols() << " ("
              << table.p() << " entities, " << table.m() << " features, "
              << table.dropped_rows << " rows dropped) -> " << ing_out << "\n";
    return kExitOk;
  }

  if (*real_cmd) {
    ExperimentConfig cfg;
    cfg.lambda_grid_size = real_grid;
    cfg.lla_rounds = real_rounds;
    cfg.admm.t_max = real_tmax;
    cfg.output_dir = real_out;
    const TimeSeriesTable table = read_table_csv(real_table, real_m);
    std::vector<PenaltyKind> penalties;
    for (const auto& name : real_penalties)
      penalties.push_back(penalty_kind_from_string(name));
    const auto results = run_real(table, penalties, cfg);
    for (const auto& r : results)
      std::cout << to_string(r.penalty) << ": " << r.n_edges << " edges at lambda "
                << r.lambda << ", alpha " << r.alpha << "\n";
    return kExitOk;
  }

  if (*kkt_cmd) {
    const PenaltySpec spec = spec_from_flags(kkt_penalty, kkt_lambda, kkt_alpha, kkt_eps, kkt_a);
    const KktReport report = kkt_residual(load_matrix(kkt_omega), load_matrix(kkt_sigma), spec);
    nlohmann::json j{{"residual_inf", report.residual_inf},
                     {"max_violation_location",
                      {report.max_violation_location.first, report.max_violation_location.second}},
                     {"subgradient_feasible", report.subgradient_feasible},
                     {"max_subgradient_excess", report.max_subgradient_excess}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  if (*cvx_cmd) {
    PenaltySpec spec = spec_from_flags(cvx_penalty, cvx_lambda, 0.05, cvx_eps, cvx_a);
    nlohmann::json j{{"mu_bar", convexity_threshold(spec, cvx_m)}};
    if (!cvx_omega.empty()) {
      const BlockMatrix omega = load_matrix(cvx_omega);
      j["within_region"] = within_convexity_region(spec, cvx_m, omega);
      if (omega.dim() <= 12) {
        const double mu_bar = convexity_threshold(spec, cvx_m);
        if (std::isfinite(mu_bar))
          j["hessian_check"] = hessian_convexity_check(omega, 1.0 / (mu_bar * mu_bar));
      }
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  if (*tail_cmd) {
    BlockMatrix sigma_star;
    if (!tail_sigma.empty()) {
      sigma_star = load_matrix(tail_sigma);
    } else {
      const GroundTruth truth =
          make_ground_truth(GraphKind::Er, tail_p, tail_m, 0.05, tail_seed);
      const auto es = sym_eig(truth.omega_star);
      sigma_star = truth.omega_star.with_same_shape(
          es.eigenvectors * es.eigenvalues.cwiseInverse().asDiagonal() *
          es.eigenvectors.transpose());
      sigma_star.symmetrize();
    }
    const TailBoundReport report =
        tail_bound_check(sigma_star, tail_n, tail_tau, tail_trials, tail_seed, tail_jobs);
    if (!tail_csv.empty()) write_tail_bound_csv(report, tail_csv);
    nlohmann::json j{{"empirical_rate", report.empirical_rate},
                     {"empirical_rate_element", report.empirical_rate_element},
                     {"bound", report.bound},
                     {"passes", report.passes},
                     {"c0_tilde", report.c0_tilde},
                     {"c0", report.c0},
                     {"threshold", report.threshold}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  if (*irrep_cmd) {
    GroundTruth truth;
    if (!irrep_json.empty()) {
      if (irrep_matrix.empty())
        throw InvalidInputError("irrep: --truth-matrix is required with --truth-json");
      truth = load_truth_json(irrep_json, irrep_matrix);
    } else {
      truth = make_ground_truth(graph_kind_from_string(irrep_graph), irrep_p, irrep_m,
                                irrep_param, irrep_seed);
    }
    const IrrepReport report = irrepresentability(truth);
    nlohmann::json j{{"lhs_group", report.lhs_group},
                     {"lhs_element", report.lhs_element},
                     {"gamma_implied", report.gamma_implied}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const mggm::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const mggm::InvalidInputError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitData;
  } catch (const mggm::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitData;
  } catch (const mggm::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const mggm::SearchError& e) {
    std::cerr << "search failed: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
