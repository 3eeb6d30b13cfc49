#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mggm/block_matrix.hpp"
#include "mggm/edges.hpp"

namespace mggm {

/// F1 = 2 P R / (P + R) over unordered node pairs of the p-node graph;
/// 0 when either edge set is empty (precision or recall undefined).
double f1_score(const EdgeSet& est, const EdgeSet& truth);

double precision_score(const EdgeSet& est, const EdgeSet& truth);
double recall_score(const EdgeSet& est, const EdgeSet& truth);

/// |est symmetric-difference truth| over unordered pairs.
long hamming(const EdgeSet& est, const EdgeSet& truth);

/// ||omega_hat - omega_star||_F / ||omega_star||_F.
double frob_error(const BlockMatrix& omega_hat, const BlockMatrix& omega_star);

// One experiment run: the recovery metrics plus identifying descriptors.
struct MetricsRecord {
  double f1 = 0.0;
  long hamming = 0;
  double frob_error = 0.0;
  double elapsed_seconds = 0.0;
  // descriptors
  std::string graph;
  std::string penalty;
  std::string mode;
  int n = 0;
  int run = 0;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double alpha = 0.0;
  long n_edges_est = 0;
  long n_edges_true = 0;
  bool converged = false;
  int iterations = 0;
};

struct AggregateRow {
  std::string graph, penalty, mode, metric;
  int n = 0;
  int runs = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n-1 denominator)
};

/// Mean and sample standard deviation of each metric per
/// (graph, penalty, mode, n) cell, in deterministic order.
std::vector<AggregateRow> aggregate(const std::vector<MetricsRecord>& records);

void write_runs_csv(const std::vector<MetricsRecord>& records,
                    const std::filesystem::path& path);
void write_aggregate_csv(const std::vector<AggregateRow>& rows,
                         const std::filesystem::path& path);

}  // namespace mggm
