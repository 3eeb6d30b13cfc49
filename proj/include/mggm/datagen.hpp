#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "mggm/block_matrix.hpp"
#include "mggm/edges.hpp"

namespace mggm {

enum class GraphKind { Er, Ba };

std::string to_string(GraphKind kind);
GraphKind graph_kind_from_string(const std::string& name);

// True precision matrix with its edge set and generation metadata.
// omega_star is symmetric positive definite with minimum eigenvalue 0.5.
struct GroundTruth {
  BlockMatrix omega_star;
  EdgeSet edges_star;
  int p = 0;
  int m = 0;
  std::uint64_t seed = 0;
  GraphKind graph_kind = GraphKind::Er;
  double graph_param = 0.0;  // p_er for ER, mean degree for BA
  double delta = 0.0;        // diagonal shift applied to reach the target minimum eigenvalue
};

/// Erdos-Renyi: each unordered pair kept independently with probability p_er.
EdgeSet gen_er_graph(int p, double p_er, std::uint64_t seed);

/// Preferential attachment. mean_degree must be an even integer 2k, k >= 1:
/// the seed graph is complete on k+1 nodes and every arriving node attaches
/// k edges to distinct nodes drawn proportionally to degree. mean_degree = 2
/// gives a tree with exactly p-1 edges.
EdgeSet gen_ba_graph(int p, double mean_degree, std::uint64_t seed);

/// Block precision matrix on the given edge set: diagonal blocks have entries
/// 0.5^|s-t|; connected off-diagonal blocks draw off-diagonal entries
/// uniformly from [-0.4,-0.1] u [0.1,0.4] with zero within-block diagonal
/// (for m = 1 the single entry is drawn from the same set so the edge carries
/// weight); the upper triangle is mirrored, then a diagonal shift pins the
/// minimum eigenvalue at 0.5.
GroundTruth build_precision(const EdgeSet& edges, int p, int m, std::uint64_t seed);

/// n i.i.d. zero-mean Gaussian rows with covariance omega_star^{-1},
/// generated as x = Phi w with Phi the symmetric square root and w standard
/// normal. Bit-reproducible for a fixed seed.
Eigen::MatrixXd sample_data(const GroundTruth& truth, int n, std::uint64_t seed);

/// Generates graph + precision together; the graph seed and the entry seed
/// are derived from the single seed given.
GroundTruth make_ground_truth(GraphKind kind, int p, int m, double graph_param,
                              std::uint64_t seed);

void save_truth_json(const GroundTruth& truth, const std::filesystem::path& path);
GroundTruth load_truth_json(const std::filesystem::path& json_path,
                            const std::filesystem::path& matrix_path);

void write_data_csv(const Eigen::MatrixXd& data, const std::filesystem::path& path);
Eigen::MatrixXd read_data_csv(const std::filesystem::path& path);

}  // namespace mggm
