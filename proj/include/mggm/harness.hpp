#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mggm/admm.hpp"
#include "mggm/datagen.hpp"
#include "mggm/errors.hpp"
#include "mggm/estimator.hpp"
#include "mggm/metrics.hpp"
#include "mggm/model_select.hpp"
#include "mggm/penalty.hpp"

namespace mggm {

enum class SelectionMode { F1Oracle, Bic, Both };

std::string to_string(SelectionMode mode);
SelectionMode selection_mode_from_string(const std::string& name);

// Everything one synthetic experiment sweep needs: the generation grid,
// penalties, selection rule and solver constants.
struct ExperimentConfig {
  GraphKind graph = GraphKind::Er;
  int p = 100;
  int m = 4;
  std::vector<int> n_list = {200, 400, 800};
  std::vector<PenaltyKind> penalties = {PenaltyKind::Lasso};
  int runs = 1;
  std::uint64_t seed = 0;
  SelectionMode mode = SelectionMode::F1Oracle;
  double alpha = 0.05;
  std::filesystem::path output_dir = "out";
  int lambda_grid_size = 15;
  double theta = 0.0;
  int lla_rounds = 2;
  double p_er = 0.05;
  double mean_degree = 2.0;
  AdmmConfig admm;
  double epsilon = 1e-4;
  double scad_a = 3.7;
  int jobs = 1;
  bool dump_truth = false;

  void validate() const;
  PenaltySpec penalty_spec(PenaltyKind kind) const;
  double graph_param() const { return graph == GraphKind::Er ? p_er : mean_degree; }
};

/// Flat key = value text, '#' comments. Unknown keys are an error.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig config_from_pairs(const std::map<std::string, std::string>& pairs);

struct SynthSummary {
  std::vector<MetricsRecord> records;
  std::vector<AggregateRow> aggregates;
  int failures = 0;
  int attempted = 0;
};

/// For every (n, run): generate a ground truth and data, then for every
/// penalty sweep the lambda grid and keep the winner per selection rule
/// (best F1 against the truth, or smallest BIC; Both records one row per
/// rule from a single sweep). Writes runs.csv, aggregate.csv and
/// summary.json under config.output_dir. Individual run failures are
/// recorded and skipped; 20% or more failing aborts with NumericError.
SynthSummary run_synthetic(const ExperimentConfig& config);

// Aligned multi-feature time series in entity-major column order:
// column j*m + l holds feature l of entity j.
struct TimeSeriesTable {
  std::vector<std::string> entities;
  std::vector<std::string> features;
  std::vector<std::string> dates;  // one label per usable row
  Eigen::MatrixXd values;
  int dropped_rows = 0;
  std::vector<std::string> warnings;

  int p() const { return static_cast<int>(entities.size()); }
  int m() const { return static_cast<int>(features.size()); }
};

/// One CSV per feature, each "date,ENTITY1,ENTITY2,...". Computes
/// day-over-day log-returns ln(z_t / z_{t-1}) per column, drops rows with
/// gaps or nonpositive prices (counted), then centers each column and scales
/// it to unit sample variance. Zero-variance columns stay at zero with a
/// warning. Files must agree on dates and entities.
TimeSeriesTable ingest_csv(const std::vector<std::filesystem::path>& paths,
                           const std::vector<std::string>& feature_names);

void write_table_csv(const TimeSeriesTable& table, const std::filesystem::path& path);
TimeSeriesTable read_table_csv(const std::filesystem::path& path, int m);

struct RealRunResult {
  PenaltyKind penalty;
  double lambda = 0.0;
  double alpha = 0.0;
  long n_edges = 0;
  GraphEstimate estimate;
};

/// Two-phase BIC selection per penalty, then a final fit at the winner.
/// Emits edges_<penalty>.tsv, omega_<penalty>.csv, bic_<penalty>.csv and a
/// joint summary.json under output_dir.
std::vector<RealRunResult> run_real(const TimeSeriesTable& table,
                                    const std::vector<PenaltyKind>& penalties,
                                    const ExperimentConfig& config);

/// Edge list rows "node_a TAB node_b TAB weight [TAB name_a TAB name_b]",
/// nodes 1-based.
void write_edges_tsv(const EdgeSet& edges, const Eigen::MatrixXd& block_weights,
                     const std::filesystem::path& path,
                     const std::vector<std::string>& labels = {});

}  // namespace mggm
