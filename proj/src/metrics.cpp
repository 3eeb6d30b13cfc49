#include "mggm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>

namespace mggm {

namespace {
long intersection_size(const EdgeSet& a, const EdgeSet& b) {
  long count = 0;
  const EdgeSet& small = a.size() <= b.size() ? a : b;
  const EdgeSet& large = a.size() <= b.size() ? b : a;
  for (const auto& e : small) count += large.count(e);
  return count;
}
}  // namespace

double precision_score(const EdgeSet& est, const EdgeSet& truth) {
  if (est.empty()) return 0.0;
  return static_cast<double>(intersection_size(est, truth)) / static_cast<double>(est.size());
}

double recall_score(const EdgeSet& est, const EdgeSet& truth) {
  if (truth.empty()) return 0.0;
  return static_cast<double>(intersection_size(est, truth)) / static_cast<double>(truth.size());
}

double f1_score(const EdgeSet& est, const EdgeSet& truth) {
  const double prec = precision_score(est, truth);
  const double rec = recall_score(est, truth);
  if (prec + rec == 0.0) return 0.0;
  return 2.0 * prec * rec / (prec + rec);
}

long hamming(const EdgeSet& est, const EdgeSet& truth) {
  return static_cast<long>(est.size()) + static_cast<long>(truth.size()) -
         2 * intersection_size(est, truth);
}

double frob_error(const BlockMatrix& omega_hat, const BlockMatrix& omega_star) {
  if (omega_hat.dim() != omega_star.dim())
    throw InvalidInputError("frob_error: dimension mismatch");
  const double denom = omega_star.data().norm();
  if (denom == 0.0) throw InvalidInputError("frob_error: omega_star has zero norm");
  return (omega_hat.data() - omega_star.data()).norm() / denom;
}

std::vector<AggregateRow> aggregate(const std::vector<MetricsRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::string, int>;
  std::map<Key, std::vector<const MetricsRecord*>> cells;
  for (const auto& r : records)
    cells[{r.graph, r.penalty, r.mode, r.n}].push_back(&r);

  std::vector<AggregateRow> out;
  const std::vector<std::string> metric_names = {"f1", "hamming", "frob_error",
                                                 "elapsed_seconds"};
  for (const auto& [key, cell] : cells) {
    for (const auto& metric : metric_names) {
      std::vector<double> values;
      values.reserve(cell.size());
      for (const auto* r : cell) {
        if (metric == "f1") values.push_back(r->f1);
        else if (metric == "hamming") values.push_back(static_cast<double>(r->hamming));
        else if (metric == "frob_error") values.push_back(r->frob_error);
        else values.push_back(r->elapsed_seconds);
      }
      const double n = static_cast<double>(values.size());
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= n;
      double var = 0.0;
      if (values.size() > 1) {
        for (double v : values) var += (v - mean) * (v - mean);
        var /= (n - 1.0);
      }
      AggregateRow row;
      std::tie(row.graph, row.penalty, row.mode, row.n) = key;
      row.metric = metric;
      row.runs = static_cast<int>(values.size());
      row.mean = mean;
      row.stddev = std::sqrt(var);
      out.push_back(std::move(row));
    }
  }
  return out;
}

void write_runs_csv(const std::vector<MetricsRecord>& records,
                    const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os.precision(17);
  os << "graph,penalty,mode,n,run,seed,lambda,alpha,f1,hamming,frob_error,"
        "n_edges_est,n_edges_true,converged,iterations,elapsed_seconds\n";
  for (const auto& r : records)
    os << r.graph << "," << r.penalty << "," << r.mode << "," << r.n << "," << r.run << ","
       << r.seed << "," << r.lambda << "," << r.alpha << "," << r.f1 << "," << r.hamming
       << "," << r.frob_error << "," << r.n_edges_est << "," << r.n_edges_true << ","
       << (r.converged ? 1 : 0) << "," << r.iterations << "," << r.elapsed_seconds << "\n";
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows,
                         const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os.precision(17);
  os << "graph,penalty,mode,n,metric,runs,mean,stddev\n";
  for (const auto& r : rows)
    os << r.graph << "," << r.penalty << "," << r.mode << "," << r.n << "," << r.metric << ","
       << r.runs << "," << r.mean << "," << r.stddev << "\n";
}

}  // namespace mggm
