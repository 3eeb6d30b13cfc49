#include "mggm/datagen.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "mggm/linalg.hpp"
#include "mggm/rng.hpp"

namespace mggm {

std::string to_string(GraphKind kind) { return kind == GraphKind::Er ? "er" : "ba"; }

GraphKind graph_kind_from_string(const std::string& name) {
  if (name == "er") return GraphKind::Er;
  if (name == "ba") return GraphKind::Ba;
  throw InvalidInputError("unknown graph kind '" + name + "' (expected er|ba)");
}

EdgeSet gen_er_graph(int p, double p_er, std::uint64_t seed) {
  if (p < 2) throw InvalidInputError("gen_er_graph: p must be >= 2");
  if (!(p_er >= 0.0 && p_er <= 1.0))
    throw InvalidInputError("gen_er_graph: p_er must be in [0,1]");
  Rng rng(seed);
  EdgeSet edges;
  for (int j = 0; j < p; ++j)
    for (int k = j + 1; k < p; ++k)
      if (rng.uniform() < p_er) edges.insert({j, k});
  return edges;
}

EdgeSet gen_ba_graph(int p, double mean_degree, std::uint64_t seed) {
  if (p < 3) throw InvalidInputError("gen_ba_graph: p must be >= 3");
  const double half = mean_degree / 2.0;
  const int k = static_cast<int>(std::lround(half));
  if (k < 1 || std::abs(half - k) > 1e-9)
    throw InvalidInputError("gen_ba_graph: mean_degree must be an even integer >= 2");
  if (p < k + 2) throw InvalidInputError("gen_ba_graph: p too small for mean_degree");

  Rng rng(seed);
  EdgeSet edges;
  std::vector<int> degree(p, 0);
  int total_degree = 0;
  auto add_edge = [&](int a, int b) {
    edges.insert(make_edge(a, b));
    ++degree[a];
    ++degree[b];
    total_degree += 2;
  };
  // complete seed graph on k+1 nodes
  for (int a = 0; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b) add_edge(a, b);
  for (int node = k + 1; node < p; ++node) {
    std::vector<int> targets;
    while (static_cast<int>(targets.size()) < k) {
      // degree-proportional draw over existing nodes
      double ticket = rng.uniform() * total_degree;
      int t = 0;
      for (; t < node; ++t) {
        ticket -= degree[t];
        if (ticket < 0) break;
      }
      if (t >= node) t = node - 1;
      bool dup = false;
      for (int prev : targets) dup = dup || (prev == t);
      if (!dup) targets.push_back(t);
    }
    for (int t : targets) add_edge(t, node);
  }
  return edges;
}

GroundTruth build_precision(const EdgeSet& edges, int p, int m, std::uint64_t seed) {
  if (p < 1 || m < 1) throw InvalidInputError("build_precision: p, m must be >= 1");
  for (const auto& [a, b] : edges)
    if (a < 0 || b >= p || a >= b)
      throw InvalidInputError("build_precision: edge set does not fit p nodes");

  Rng rng(seed);
  const int d = p * m;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < p; ++j)
    for (int s = 0; s < m; ++s)
      for (int t = 0; t < m; ++t) omega(j * m + s, j * m + t) = std::pow(0.5, std::abs(s - t));

  auto draw_entry = [&rng]() {
    // one draw mapped onto [-0.4,-0.1] u [0.1,0.4]
    const double x = rng.uniform() * 0.6 - 0.3;
    return x >= 0 ? 0.1 + x : -0.1 + x;
  };
  for (const auto& [j, k] : edges) {  // j < k: the block lives in the upper triangle
    for (int s = 0; s < m; ++s)
      for (int t = 0; t < m; ++t) {
        if (m > 1 && s == t) continue;
        omega(j * m + s, k * m + t) = draw_entry();
      }
  }
  // mirror the upper triangle
  omega.triangularView<Eigen::StrictlyLower>() =
      omega.triangularView<Eigen::StrictlyUpper>().transpose();

  const double min_eig = sym_eig(omega).eigenvalues.minCoeff();
  const double delta = 0.5 - min_eig;
  omega.diagonal().array() += delta;

  GroundTruth truth;
  truth.omega_star = BlockMatrix(std::move(omega), p, m);
  truth.edges_star = edges;
  truth.p = p;
  truth.m = m;
  truth.seed = seed;
  truth.delta = delta;
  return truth;
}

Eigen::MatrixXd sample_data(const GroundTruth& truth, int n, std::uint64_t seed) {
  if (n < 1) throw InvalidInputError("sample_data: n must be >= 1");
  const SpectralDecomposition es = sym_eig(truth.omega_star);
  if (es.eigenvalues.minCoeff() <= 0)
    throw NumericError("sample_data: omega_star is not positive definite");
  // Phi = P D^{-1/2} P^T, so Phi Phi^T = omega_star^{-1}
  const Eigen::MatrixXd phi = es.eigenvectors *
                              es.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() *
                              es.eigenvectors.transpose();
  const int d = truth.omega_star.dim();
  Rng rng(seed);
  Eigen::MatrixXd data(n, d);
  Eigen::VectorXd w(d);
  for (int i = 0; i < n; ++i) {
    for (int q = 0; q < d; ++q) w(q) = rng.normal();
    data.row(i) = (phi * w).transpose();
  }
  return data;
}

GroundTruth make_ground_truth(GraphKind kind, int p, int m, double graph_param,
                              std::uint64_t seed) {
  const std::uint64_t graph_seed = derive_seed(seed, 1);
  const std::uint64_t entry_seed = derive_seed(seed, 2);
  EdgeSet edges = kind == GraphKind::Er ? gen_er_graph(p, graph_param, graph_seed)
                                        : gen_ba_graph(p, graph_param, graph_seed);
  GroundTruth truth = build_precision(edges, p, m, entry_seed);
  truth.seed = seed;
  truth.graph_kind = kind;
  truth.graph_param = graph_param;
  return truth;
}

void save_truth_json(const GroundTruth& truth, const std::filesystem::path& path) {
  nlohmann::json j;
  j["p"] = truth.p;
  j["m"] = truth.m;
  j["seed"] = truth.seed;
  j["graph"] = to_string(truth.graph_kind);
  j["graph_param"] = truth.graph_param;
  j["delta"] = truth.delta;
  auto edges = nlohmann::json::array();
  for (const auto& [a, b] : truth.edges_star) edges.push_back({a + 1, b + 1});
  j["edges"] = std::move(edges);
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os << j.dump(2) << "\n";
}

GroundTruth load_truth_json(const std::filesystem::path& json_path,
                            const std::filesystem::path& matrix_path) {
  std::ifstream is(json_path);
  if (!is) throw DataError("cannot open " + json_path.string());
  nlohmann::json j;
  is >> j;
  GroundTruth truth;
  truth.p = j.at("p").get<int>();
  truth.m = j.at("m").get<int>();
  truth.seed = j.at("seed").get<std::uint64_t>();
  truth.graph_kind = graph_kind_from_string(j.at("graph").get<std::string>());
  truth.graph_param = j.at("graph_param").get<double>();
  truth.delta = j.value("delta", 0.0);
  for (const auto& e : j.at("edges"))
    truth.edges_star.insert(make_edge(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1));
  truth.omega_star = matrix_path.extension() == ".bin" ? BlockMatrix::load_binary(matrix_path)
                                                       : BlockMatrix::load_csv(matrix_path);
  if (truth.omega_star.p() != truth.p || truth.omega_star.m() != truth.m)
    throw DataError("truth matrix shape does not match " + json_path.string());
  return truth;
}

void write_data_csv(const Eigen::MatrixXd& data, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os.precision(17);
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      if (j) os << ",";
      os << data(i, j);
    }
    os << "\n";
  }
}

Eigen::MatrixXd read_data_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tok;
    std::vector<double> row;
    while (std::getline(ss, tok, ',')) {
      try {
        row.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw DataError(path.string() + ": non-numeric value '" + tok + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw DataError(path.string() + ": ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path.string() + ": empty file");
  Eigen::MatrixXd data(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) data(i, j) = rows[i][j];
  return data;
}

}  // namespace mggm
