#ifndef DPCHAN_GRAPH_HPP
#define DPCHAN_GRAPH_HPP

#include "dpchan/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace dpchan {

constexpr int kUnreachable = -1;

enum class GraphKind { Hamming, Ring, Clique, Line, Custom };

/// Finite undirected graph with precomputed all-pairs distances.
class AdjacencyGraph {
 public:
  AdjacencyGraph(Alphabet nodes, std::vector<std::pair<Eigen::Index, Eigen::Index>> edges,
                 GraphKind kind = GraphKind::Custom);

  const Alphabet& nodes() const { return nodes_; }
  Eigen::Index node_count() const { return nodes_.size(); }
  GraphKind kind() const { return kind_; }
  const std::vector<std::pair<Eigen::Index, Eigen::Index>>& edges() const { return edges_; }
  bool adjacent(Eigen::Index a, Eigen::Index b) const;
  bool connected() const { return connected_; }

  /// Shortest-path edge count, or kUnreachable.
  int dist(Eigen::Index a, Eigen::Index b) const;

  /// Nodes at distance exactly d from y; border(y, 0) = {y}.
  std::vector<Eigen::Index> border(Eigen::Index y, int d) const;

  /// Maximum finite distance from y.
  int eccentricity(Eigen::Index y) const;

  /// Maximum eccentricity over all nodes (requires connectivity).
  int diameter() const;

  // Hamming parameters when kind == Hamming.
  int hamming_u() const { return hamming_u_; }
  int hamming_v() const { return hamming_v_; }

  void set_hamming_params(int u, int v) {
    hamming_u_ = u;
    hamming_v_ = v;
  }

 private:
  Alphabet nodes_;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges_;
  GraphKind kind_;
  Eigen::MatrixXi dist_;  // precomputed by BFS; queries are lock-free
  bool connected_ = true;
  int hamming_u_ = 0;
  int hamming_v_ = 0;
};

/// Verified edge-preserving vertex permutation.
class Automorphism {
 public:
  /// Throws NotAutomorphism unless perm maps edges to edges and non-edges to
  /// non-edges.
  Automorphism(const AdjacencyGraph& graph, std::vector<Eigen::Index> perm);

  const std::vector<Eigen::Index>& perm() const { return perm_; }
  Eigen::Index operator()(Eigen::Index i) const { return perm_[static_cast<size_t>(i)]; }
  bool single_orbit() const { return single_orbit_; }

 private:
  std::vector<Eigen::Index> perm_;
  bool single_orbit_;
};

/// Builds a graph from a spec string: `hamming:U:V`, `ring:N`, `clique:N`,
/// `line:N`, `file:PATH` (edge-list format).
AdjacencyGraph build_graph(const std::string& spec);

AdjacencyGraph make_hamming(int u, int v);
AdjacencyGraph make_ring(Eigen::Index n);
AdjacencyGraph make_clique(Eigen::Index n);
AdjacencyGraph make_line(Eigen::Index n);

/// Rotation i -> i+1 mod n for rings and cliques; nullopt otherwise.
std::optional<Automorphism> canonical_single_orbit_automorphism(const AdjacencyGraph& g);

/// Supergraph with border-regular structure: line:N -> ring:N, otherwise the
/// clique on the same nodes. Rings pass through unchanged.
AdjacencyGraph augment_to_regular_borders(const AdjacencyGraph& g);

/// Reads the edge-list file format: first line `nodes: l1,l2,...`, then one
/// `a -- b` line per edge.
AdjacencyGraph read_graph_file(const std::string& path);

}  // namespace dpchan

#endif  // DPCHAN_GRAPH_HPP
