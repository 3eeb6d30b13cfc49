#include "mggm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "mggm/parallel.hpp"
#include "mggm/rng.hpp"

namespace mggm {

std::string to_string(SelectionMode mode) {
  switch (mode) {
    case SelectionMode::F1Oracle: return "f1_oracle";
    case SelectionMode::Bic: return "bic";
    case SelectionMode::Both: return "both";
  }
  return "?";
}

SelectionMode selection_mode_from_string(const std::string& name) {
  if (name == "f1_oracle" || name == "oracle") return SelectionMode::F1Oracle;
  if (name == "bic") return SelectionMode::Bic;
  if (name == "both") return SelectionMode::Both;
  throw InvalidInputError("unknown selection mode '" + name + "' (expected f1_oracle|bic|both)");
}

void ExperimentConfig::validate() const {
  if (runs < 1) throw InvalidInputError("config: runs must be >= 1");
  if (n_list.empty()) throw InvalidInputError("config: n_list must be nonempty");
  if (p < 1 || m < 1) throw InvalidInputError("config: p, m must be >= 1");
  if (penalties.empty()) throw InvalidInputError("config: penalties must be nonempty");
  if (lambda_grid_size < 2) throw InvalidInputError("config: lambda_grid must be >= 2");
  if (jobs < 1) throw InvalidInputError("config: jobs must be >= 1");
  admm.validate();
}

PenaltySpec ExperimentConfig::penalty_spec(PenaltyKind kind) const {
  PenaltySpec spec;
  spec.kind = kind;
  spec.lambda = 1.0;  // placeholder, swept by the grid
  spec.alpha = alpha;
  spec.epsilon = epsilon;
  spec.a = scad_a;
  return spec;
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(tok.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

ExperimentConfig config_from_pairs(const std::map<std::string, std::string>& pairs) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : pairs) {
    try {
      if (key == "graph") cfg.graph = graph_kind_from_string(value);
      else if (key == "p") cfg.p = std::stoi(value);
      else if (key == "m") cfg.m = std::stoi(value);
      else if (key == "n_list" || key == "n") {
        cfg.n_list.clear();
        for (const auto& tok : split_list(value)) cfg.n_list.push_back(std::stoi(tok));
      } else if (key == "penalties" || key == "penalty") {
        cfg.penalties.clear();
        for (const auto& tok : split_list(value))
          cfg.penalties.push_back(penalty_kind_from_string(tok));
      } else if (key == "runs") cfg.runs = std::stoi(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "mode") cfg.mode = selection_mode_from_string(value);
      else if (key == "alpha") cfg.alpha = std::stod(value);
      else if (key == "output_dir") cfg.output_dir = value;
      else if (key == "lambda_grid") cfg.lambda_grid_size = std::stoi(value);
      else if (key == "theta") cfg.theta = std::stod(value);
      else if (key == "lla_rounds") cfg.lla_rounds = std::stoi(value);
      else if (key == "p_er") cfg.p_er = std::stod(value);
      else if (key == "mean_degree") cfg.mean_degree = std::stod(value);
      else if (key == "rho_init") cfg.admm.rho_init = std::stod(value);
      else if (key == "phi") cfg.admm.phi = std::stod(value);
      else if (key == "tau_abs") cfg.admm.tau_abs = std::stod(value);
      else if (key == "tau_rel") cfg.admm.tau_rel = std::stod(value);
      else if (key == "t_max") cfg.admm.t_max = std::stoi(value);
      else if (key == "epsilon") cfg.epsilon = std::stod(value);
      else if (key == "scad_a") cfg.scad_a = std::stod(value);
      else if (key == "jobs") cfg.jobs = std::stoi(value);
      else if (key == "dump_truth") cfg.dump_truth = (value == "1" || value == "true");
      else throw DataError("config: unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw DataError("config: bad value '" + value + "' for key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open config " + path.string());
  std::map<std::string, std::string> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto x = s.find_first_not_of(" \t\r\n");
      if (x == std::string::npos) return std::string();
      const auto y = s.find_last_not_of(" \t\r\n");
      return s.substr(x, y - x + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": empty key or value");
    pairs[key] = value;
  }
  return config_from_pairs(pairs);
}

namespace {

struct SweepPoint {
  double lambda = 0.0;
  GraphEstimate estimate;
  double f1 = 0.0;
  BicRecord bic;
  double elapsed_seconds = 0.0;
};

struct TaskOutput {
  std::vector<MetricsRecord> records;
  std::vector<std::string> failures;
};

MetricsRecord record_from_point(const SweepPoint& point, const GroundTruth& truth,
                                const ExperimentConfig& cfg, const std::string& mode_name,
                                PenaltyKind kind, int n, int run, std::uint64_t seed) {
  MetricsRecord rec;
  rec.f1 = point.f1;
  rec.hamming = hamming(point.estimate.edges, truth.edges_star);
  rec.frob_error = frob_error(point.estimate.omega_hat, truth.omega_star);
  rec.elapsed_seconds = point.elapsed_seconds;
  rec.graph = to_string(cfg.graph);
  rec.penalty = to_string(kind);
  rec.mode = mode_name;
  rec.n = n;
  rec.run = run;
  rec.seed = seed;
  rec.lambda = point.lambda;
  rec.alpha = cfg.alpha;
  rec.n_edges_est = static_cast<long>(point.estimate.edges.size());
  rec.n_edges_true = static_cast<long>(truth.edges_star.size());
  rec.converged = point.estimate.converged();
  int iters = 0;
  for (const auto& r : point.estimate.solver_results) iters += r.iterations;
  rec.iterations = iters;
  return rec;
}

}  // namespace

SynthSummary run_synthetic(const ExperimentConfig& cfg) {
  cfg.validate();
  std::filesystem::create_directories(cfg.output_dir);

  const int n_tasks = static_cast<int>(cfg.n_list.size()) * cfg.runs;
  std::vector<TaskOutput> outputs(n_tasks);

  parallel_for(n_tasks, cfg.jobs, [&](int task) {
    const int n_idx = task / cfg.runs;
    const int run = task % cfg.runs;
    const int n = cfg.n_list[n_idx];
    const std::uint64_t run_seed =
        derive_seed(cfg.seed, static_cast<std::uint64_t>(n_idx) * cfg.runs + run);
    TaskOutput& out = outputs[task];

    GroundTruth truth;
    Eigen::MatrixXd data;
    BlockMatrix sigma_hat;
    try {
      truth = make_ground_truth(cfg.graph, cfg.p, cfg.m, cfg.graph_param(),
                                derive_seed(run_seed, 1));
      data = sample_data(truth, n, derive_seed(run_seed, 2));
      sigma_hat = sample_covariance(data, cfg.p, cfg.m);
      if (cfg.dump_truth) {
        const std::string stem = "truth_n" + std::to_string(n) + "_run" + std::to_string(run);
        save_truth_json(truth, cfg.output_dir / (stem + ".json"));
        truth.omega_star.save_csv(cfg.output_dir / (stem + ".csv"));
      }
    } catch (const std::exception& e) {
      for (PenaltyKind kind : cfg.penalties)
        out.failures.push_back(to_string(kind) + ",n=" + std::to_string(n) + ",run=" +
                               std::to_string(run) + ": " + e.what());
      return;
    }

    // the lasso sweep doubles as the reweighting seed for the non-convex
    // penalties, so compute it once per task
    std::vector<SweepPoint> lasso_sweep;
    auto run_sweep = [&](const PenaltySpec& tmpl, const BlockMatrix* init) {
      GridSearchOptions grid_options;
      grid_options.grid_size = cfg.lambda_grid_size;
      grid_options.lla_rounds = cfg.lla_rounds;
      grid_options.initial_estimate = init;
      const LambdaGrid grid = lambda_grid(sigma_hat, tmpl, cfg.admm, grid_options);
      std::vector<SweepPoint> sweep;
      sweep.reserve(grid.values.size());
      for (double lambda : grid.values) {
        SweepPoint point;
        point.lambda = lambda;
        FitOptions fo;
        fo.lla_rounds = cfg.lla_rounds;
        fo.theta = cfg.theta;
        fo.initial_estimate = init;
        const auto t0 = std::chrono::steady_clock::now();
        point.estimate = fit(sigma_hat, tmpl.with_lambda(lambda), cfg.admm, fo);
        const auto t1 = std::chrono::steady_clock::now();
        point.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
        point.f1 = f1_score(point.estimate.edges, truth.edges_star);
        point.bic.lambda = lambda;
        point.bic.alpha = cfg.alpha;
        point.bic.n_edges = count_nonzero_offdiag(point.estimate.omega_hat);
        point.bic.converged = point.estimate.converged();
        try {
          point.bic.bic = selection_criterion(sigma_hat, point.estimate.omega_hat, n);
        } catch (const InvalidInputError&) {
          point.bic.bic = std::numeric_limits<double>::infinity();
        }
        sweep.push_back(std::move(point));
      }
      return sweep;
    };
    auto bic_winner = [](const std::vector<SweepPoint>& sweep) -> const SweepPoint* {
      std::vector<BicRecord> table;
      table.reserve(sweep.size());
      for (const auto& point : sweep) table.push_back(point.bic);
      const BicRecord& best = pick_best(table);
      for (const auto& point : sweep)
        if (point.lambda == best.lambda) return &point;
      return &sweep.front();
    };

    for (PenaltyKind kind : cfg.penalties) {
      try {
        const PenaltySpec tmpl = cfg.penalty_spec(kind);
        std::vector<SweepPoint> sweep;
        if (kind == PenaltyKind::Lasso) {
          if (lasso_sweep.empty()) lasso_sweep = run_sweep(cfg.penalty_spec(PenaltyKind::Lasso), nullptr);
          sweep = lasso_sweep;
        } else {
          if (lasso_sweep.empty()) lasso_sweep = run_sweep(cfg.penalty_spec(PenaltyKind::Lasso), nullptr);
          const SweepPoint* reference = bic_winner(lasso_sweep);
          sweep = run_sweep(tmpl, &reference->estimate.omega_hat);
        }

        if (cfg.mode == SelectionMode::F1Oracle || cfg.mode == SelectionMode::Both) {
          const SweepPoint* best = &sweep.front();
          for (const auto& point : sweep)
            if (point.f1 > best->f1 || (point.f1 == best->f1 && point.lambda > best->lambda))
              best = &point;
          out.records.push_back(record_from_point(*best, truth, cfg, "f1_oracle", kind, n,
                                                  run, run_seed));
        }
        if (cfg.mode == SelectionMode::Bic || cfg.mode == SelectionMode::Both) {
          out.records.push_back(
              record_from_point(*bic_winner(sweep), truth, cfg, "bic", kind, n, run, run_seed));
        }
      } catch (const std::exception& e) {
        out.failures.push_back(to_string(kind) + ",n=" + std::to_string(n) + ",run=" +
                               std::to_string(run) + ": " + e.what());
      }
    }
  });

  SynthSummary summary;
  summary.attempted = n_tasks * static_cast<int>(cfg.penalties.size());
  std::vector<std::string> failures;
  for (const auto& out : outputs) {
    for (const auto& rec : out.records) summary.records.push_back(rec);
    for (const auto& f : out.failures) failures.push_back(f);
  }
  summary.failures = static_cast<int>(failures.size());
  if (summary.failures * 5 >= summary.attempted && summary.failures > 0) {
    std::string detail = failures.front();
    throw NumericError("run_synthetic: " + std::to_string(summary.failures) + "/" +
                       std::to_string(summary.attempted) + " runs failed; first: " + detail);
  }

  summary.aggregates = aggregate(summary.records);
  write_runs_csv(summary.records, cfg.output_dir / "runs.csv");
  write_aggregate_csv(summary.aggregates, cfg.output_dir / "aggregate.csv");

  nlohmann::json j;
  j["graph"] = to_string(cfg.graph);
  j["p"] = cfg.p;
  j["m"] = cfg.m;
  j["n_list"] = cfg.n_list;
  j["runs"] = cfg.runs;
  j["seed"] = cfg.seed;
  j["mode"] = to_string(cfg.mode);
  j["alpha"] = cfg.alpha;
  j["lambda_grid"] = cfg.lambda_grid_size;
  j["lla_rounds"] = cfg.lla_rounds;
  auto penalties = nlohmann::json::array();
  for (PenaltyKind kind : cfg.penalties) penalties.push_back(to_string(kind));
  j["penalties"] = std::move(penalties);
  j["failures"] = failures;
  auto aggregates = nlohmann::json::array();
  for (const auto& row : summary.aggregates)
    aggregates.push_back({{"graph", row.graph},
                          {"penalty", row.penalty},
                          {"mode", row.mode},
                          {"n", row.n},
                          {"metric", row.metric},
                          {"runs", row.runs},
                          {"mean", row.mean},
                          {"stddev", row.stddev}});
  j["aggregates"] = std::move(aggregates);
  std::ofstream os(cfg.output_dir / "summary.json");
  if (!os) throw DataError("cannot write summary.json");
  os << j.dump(2) << "\n";
  return summary;
}

namespace {

struct PriceFile {
  std::vector<std::string> entities;
  std::vector<std::string> dates;
  // prices(t, j): price of entity j at date t; NaN marks a gap
  Eigen::MatrixXd prices;
};

PriceFile read_price_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open " + path.string());
  PriceFile pf;
  std::string line;
  if (!std::getline(is, line)) throw DataError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::istringstream ss(line);
    std::string tok;
    bool first = true;
    while (std::getline(ss, tok, ',')) {
      if (first) {
        first = false;  // date column
        continue;
      }
      pf.entities.push_back(tok);
    }
  }
  if (pf.entities.empty()) throw DataError(path.string() + ": no entity columns");
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    if (!std::getline(ss, tok, ',')) continue;
    pf.dates.push_back(tok);
    std::vector<double> row;
    for (std::size_t j = 0; j < pf.entities.size(); ++j) {
      double v = std::numeric_limits<double>::quiet_NaN();
      if (std::getline(ss, tok, ',') && !tok.empty()) {
        try {
          v = std::stod(tok);
        } catch (const std::exception&) {
          v = std::numeric_limits<double>::quiet_NaN();
        }
      }
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path.string() + ": no data rows");
  pf.prices.resize(rows.size(), pf.entities.size());
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t j = 0; j < pf.entities.size(); ++j) pf.prices(t, j) = rows[t][j];
  return pf;
}

}  // namespace

TimeSeriesTable ingest_csv(const std::vector<std::filesystem::path>& paths,
                           const std::vector<std::string>& feature_names) {
  if (paths.empty() || paths.size() != feature_names.size())
    throw InvalidInputError("ingest_csv: need one path per feature name");
  std::vector<PriceFile> files;
  files.reserve(paths.size());
  for (const auto& path : paths) files.push_back(read_price_csv(path));
  for (std::size_t f = 1; f < files.size(); ++f) {
    if (files[f].entities != files[0].entities)
      throw DataError("ingest_csv: entity columns differ between " + paths[0].string() +
                      " and " + paths[f].string());
    if (files[f].dates != files[0].dates)
      throw DataError("ingest_csv: date alignment differs between " + paths[0].string() +
                      " and " + paths[f].string());
  }

  TimeSeriesTable table;
  table.entities = files[0].entities;
  table.features = feature_names;
  const int p = table.p(), m = table.m();
  const int t_total = static_cast<int>(files[0].dates.size());
  if (t_total < 2) throw DataError("ingest_csv: need at least two dates for returns");

  // validity of each return row: both prices present and positive everywhere
  std::vector<char> row_ok(t_total - 1, 1);
  bool saw_nonpositive = false;
  for (int t = 1; t < t_total; ++t)
    for (int f = 0; f < m && row_ok[t - 1]; ++f)
      for (int j = 0; j < p; ++j) {
        const double now = files[f].prices(t, j), prev = files[f].prices(t - 1, j);
        if (std::isnan(now) || std::isnan(prev)) {
          row_ok[t - 1] = 0;
          break;
        }
        if (now <= 0 || prev <= 0) {
          row_ok[t - 1] = 0;
          saw_nonpositive = true;
          break;
        }
      }
  int kept = 0;
  for (char ok : row_ok) kept += ok;
  table.dropped_rows = static_cast<int>(row_ok.size()) - kept;
  if (kept == 0) throw DataError("ingest_csv: every return row was dropped");
  if (table.dropped_rows > 0)
    table.warnings.push_back(std::to_string(table.dropped_rows) + " return rows dropped (" +
                             (saw_nonpositive ? "gaps or nonpositive prices" : "gaps") + ")");

  table.values.resize(kept, p * m);
  table.dates.reserve(kept);
  int out_row = 0;
  for (int t = 1; t < t_total; ++t) {
    if (!row_ok[t - 1]) continue;
    table.dates.push_back(files[0].dates[t]);
    for (int j = 0; j < p; ++j)
      for (int f = 0; f < m; ++f)
        table.values(out_row, j * m + f) =
            std::log(files[f].prices(t, j) / files[f].prices(t - 1, j));
    ++out_row;
  }

  // center and scale each column to unit sample variance
  for (int c = 0; c < table.values.cols(); ++c) {
    auto col = table.values.col(c);
    col.array() -= col.mean();
    if (kept > 1) {
      const double sd = std::sqrt(col.squaredNorm() / (kept - 1));
      if (sd > 0)
        col /= sd;
      else
        table.warnings.push_back("column " + std::to_string(c) +
                                 " has zero variance; left at zero");
    }
  }
  return table;
}

void write_table_csv(const TimeSeriesTable& table, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os.precision(17);
  os << "date";
  for (const auto& ent : table.entities)
    for (const auto& feat : table.features) os << "," << ent << "." << feat;
  os << "\n";
  for (Eigen::Index t = 0; t < table.values.rows(); ++t) {
    os << table.dates[t];
    for (Eigen::Index c = 0; c < table.values.cols(); ++c) os << "," << table.values(t, c);
    os << "\n";
  }
}

TimeSeriesTable read_table_csv(const std::filesystem::path& path, int m) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line)) throw DataError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> headers;
  {
    std::istringstream ss(line);
    std::string tok;
    bool first = true;
    while (std::getline(ss, tok, ',')) {
      if (first) { first = false; continue; }
      headers.push_back(tok);
    }
  }
  if (headers.empty() || m < 1 || headers.size() % m != 0)
    throw DataError(path.string() + ": column count not divisible by m");
  TimeSeriesTable table;
  for (std::size_t c = 0; c < headers.size(); c += m) {
    const auto dot = headers[c].rfind('.');
    table.entities.push_back(dot == std::string::npos ? headers[c] : headers[c].substr(0, dot));
  }
  for (int f = 0; f < m; ++f) {
    const auto dot = headers[f].rfind('.');
    table.features.push_back(dot == std::string::npos ? "f" + std::to_string(f)
                                                      : headers[f].substr(dot + 1));
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    if (!std::getline(ss, tok, ',')) continue;
    table.dates.push_back(tok);
    std::vector<double> row;
    while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
    if (row.size() != headers.size()) throw DataError(path.string() + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path.string() + ": no data rows");
  table.values.resize(rows.size(), headers.size());
  for (std::size_t t = 0; t < rows.size(); ++t)
    for (std::size_t c = 0; c < headers.size(); ++c) table.values(t, c) = rows[t][c];
  return table;
}

void write_edges_tsv(const EdgeSet& edges, const Eigen::MatrixXd& block_weights,
                     const std::filesystem::path& path,
                     const std::vector<std::string>& labels) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os.precision(17);
  os << "node_a\tnode_b\tweight";
  if (!labels.empty()) os << "\tname_a\tname_b";
  os << "\n";
  for (const auto& [a, b] : edges) {
    os << (a + 1) << "\t" << (b + 1) << "\t" << block_weights(a, b);
    if (!labels.empty()) os << "\t" << labels[a] << "\t" << labels[b];
    os << "\n";
  }
}

std::vector<RealRunResult> run_real(const TimeSeriesTable& table,
                                    const std::vector<PenaltyKind>& penalties,
                                    const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.output_dir);
  const int n = static_cast<int>(table.values.rows());
  const BlockMatrix sigma_hat = sample_covariance(table.values, table.p(), table.m());

  std::vector<RealRunResult> results;
  nlohmann::json j;
  j["n"] = n;
  j["p"] = table.p();
  j["m"] = table.m();
  j["dropped_rows"] = table.dropped_rows;
  auto summaries = nlohmann::json::array();
  for (PenaltyKind kind : penalties) {
    const PenaltySpec tmpl = cfg.penalty_spec(kind);
    GridSearchOptions grid_options;
    grid_options.grid_size = cfg.lambda_grid_size;
    grid_options.lla_rounds = cfg.lla_rounds;
    const SelectionResult sel = select_from_covariance(sigma_hat, n, tmpl, cfg.admm,
                                                       grid_options, default_alpha_grid());
    FitOptions fo;
    fo.lla_rounds = cfg.lla_rounds;
    fo.theta = cfg.theta;
    RealRunResult res;
    res.penalty = kind;
    res.lambda = sel.best_lambda;
    res.alpha = sel.best_alpha;
    res.estimate = fit(sigma_hat,
                       tmpl.with_lambda(sel.best_lambda).with_alpha(sel.best_alpha),
                       cfg.admm, fo);
    res.n_edges = static_cast<long>(res.estimate.edges.size());

    const std::string name = to_string(kind);
    write_edges_tsv(res.estimate.edges, res.estimate.block_weights,
                    cfg.output_dir / ("edges_" + name + ".tsv"), table.entities);
    res.estimate.omega_hat.save_csv(cfg.output_dir / ("omega_" + name + ".csv"));
    write_bic_csv(sel, cfg.output_dir / ("bic_" + name + ".csv"));
    summaries.push_back({{"penalty", name},
                         {"lambda", res.lambda},
                         {"alpha", res.alpha},
                         {"n_edges", res.n_edges},
                         {"converged", res.estimate.converged()}});
    results.push_back(std::move(res));
  }
  j["penalties"] = std::move(summaries);
  std::ofstream os(cfg.output_dir / "summary.json");
  if (!os) throw DataError("cannot write summary.json");
  os << j.dump(2) << "\n";
  return results;
}

}  // namespace mggm
