#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hiernet {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  std::size_t node = 0;
  double w = 0.0;
};

// Simple weighted undirected rooted graph. Immutable once built.
//
// Edges are stored canonically (u < v, sorted lexicographically) and
// mirrored into per-node neighbor lists sorted by neighbor index.
// A graph may carry hierarchy metadata: the block sizes of its nested
// modules, smallest first, so that nodes [b*i, b*(i+1)) form one module of
// block size b. Products fill this in; plain constructors leave it empty.
class Graph {
 public:
  Graph() = default;

  // Validates: order >= 1, indices in range, no self-edges, no duplicate
  // unordered pairs, finite strictly positive weights, root in range.
  static Graph build(std::size_t order, std::vector<Edge> edges, std::size_t root = 0);

  std::size_t order() const noexcept { return order_; }
  std::size_t root() const noexcept { return root_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(std::size_t node) const;

  // 0.0 when no edge joins i and j.
  double weight(std::size_t i, std::size_t j) const;
  bool has_edge(std::size_t i, std::size_t j) const { return weight(i, j) > 0.0; }

  std::size_t degree(std::size_t node) const { return neighbors(node).size(); }
  double valency(std::size_t node) const;
  double total_weight() const noexcept;

  std::span<const std::size_t> module_sizes() const noexcept { return module_sizes_; }
  Graph with_module_sizes(std::vector<std::size_t> sizes) const;

  // Every weight multiplied by factor (> 0); metadata preserved.
  Graph scaled(double factor) const;
  Graph with_root(std::size_t root) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.order_ == b.order_ && a.root_ == b.root_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t order_ = 0;
  std::size_t root_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<std::size_t> module_sizes_;
};

// ---------------------------------------------------------------------------
// Standard constructors (unit weight).

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
// Hub is node 0 and is the root.
Graph star_graph(std::size_t n);
// side^d nodes, node index is the mixed-radix number of its coordinates.
Graph grid_graph(std::size_t dims, std::size_t side);
// K_m hierarchical-product S_m, each star rooted at its hub.
Graph porcupine_graph(std::size_t m);

// ---------------------------------------------------------------------------
// Matrices and distances.

Eigen::MatrixXd adjacency_matrix(const Graph& g);
Eigen::MatrixXd laplacian_matrix(const Graph& g);

enum class Metric { kHop, kWeight };

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Row-major N x N; unreachable entries are kUnreachable.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, kUnreachable) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }
  std::span<const double> data() const noexcept { return d_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

// Single-source distances (BFS for kHop, Dijkstra for kWeight).
std::vector<double> distances_from(const Graph& g, std::size_t source, Metric metric);
DistanceMatrix shortest_paths(const Graph& g, Metric metric);

bool is_connected(const Graph& g);

struct InvariantRecord {
  std::size_t order = 0;
  std::size_t edge_count = 0;
  std::size_t diameter = 0;
  double weighted_diameter = 0.0;
  std::size_t root_eccentricity = 0;
  double weighted_root_eccentricity = 0.0;
  // Sum of hop distances over all ordered pairs (i, j), self pairs
  // included, divided by N^2.
  double mean_distance = 0.0;
  // Same sum over distinct pairs only, divided by N(N-1).
  double mean_distance_distinct = 0.0;
  std::size_t max_degree = 0;
  double max_valency = 0.0;
  double total_edge_weight = 0.0;
};

// Throws ErrorCode::kDisconnected for disconnected graphs.
InvariantRecord invariants(const Graph& g);

// Weighted eccentricity of every node.
std::vector<double> eccentricities(const Graph& g, Metric metric);

// ---------------------------------------------------------------------------
// Cheeger constant h(G) = min_S w(dS) / min(|S|, |V \ S|).

enum class CheegerMode { kExact, kHeuristic };

inline constexpr std::size_t kCheegerExactMaxOrder = 30;

struct CheegerResult {
  double value = 0.0;
  std::vector<std::size_t> cut;  // sorted node indices of the witness side
};

CheegerResult cheeger(const Graph& g, CheegerMode mode);

// w(dS) / min(|S|, |V \ S|) for an explicit node subset.
double cut_ratio(const Graph& g, std::span<const std::size_t> subset);

}  // namespace hiernet
