#include "hiernet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "hiernet/error.hpp"

namespace hiernet {

Graph Graph::build(std::size_t order, std::vector<Edge> edges, std::size_t root) {
  require(order >= 1, "graph order must be at least 1");
  if (root >= order) {
    fail(ErrorCode::kOutOfRange,
         "root " + std::to_string(root) + " out of range for order " + std::to_string(order));
  }
  for (auto& e : edges) {
    if (e.u >= order || e.v >= order) {
      std::ostringstream os;
      os << "edge (" << e.u << ", " << e.v << ") has an endpoint out of range for order " << order;
      fail(ErrorCode::kOutOfRange, os.str());
    }
    if (e.u == e.v) fail(ErrorCode::kInvalidArgument, "self-edge at node " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      std::ostringstream os;
      os << "edge (" << e.u << ", " << e.v << ") has nonpositive or non-finite weight " << e.w;
      fail(ErrorCode::kInvalidArgument, os.str());
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      fail(ErrorCode::kInvalidArgument, "duplicate edge (" + std::to_string(edges[i].u) + ", " +
                                            std::to_string(edges[i].v) + ")");
    }
  }

  Graph g;
  g.order_ = order;
  g.root_ = root;
  g.edges_ = std::move(edges);

  std::vector<std::size_t> deg(order, 0);
  for (const auto& e : g.edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(order + 1, 0);
  for (std::size_t i = 0; i < order; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Canonical edge order already yields ascending neighbor lists for the
  // smaller endpoint; a final sort handles the mirrored entries.
  for (const auto& e : g.edges_) {
    g.adjacency_[fill[e.u]++] = {e.v, e.w};
    g.adjacency_[fill[e.v]++] = {e.u, e.w};
  }
  for (std::size_t i = 0; i < order; ++i) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return g;
}

std::span<const Neighbor> Graph::neighbors(std::size_t node) const {
  if (node >= order_) fail(ErrorCode::kOutOfRange, "node " + std::to_string(node) + " out of range");
  return {adjacency_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
}

double Graph::weight(std::size_t i, std::size_t j) const {
  auto nb = neighbors(i);
  auto it = std::lower_bound(nb.begin(), nb.end(), j,
                             [](const Neighbor& n, std::size_t key) { return n.node < key; });
  return (it != nb.end() && it->node == j) ? it->w : 0.0;
}

double Graph::valency(std::size_t node) const {
  double s = 0.0;
  for (const auto& nb : neighbors(node)) s += nb.w;
  return s;
}

double Graph::total_weight() const noexcept {
  double s = 0.0;
  for (const auto& e : edges_) s += e.w;
  return s;
}

Graph Graph::with_module_sizes(std::vector<std::size_t> sizes) const {
  for (std::size_t b : sizes) {
    require(b >= 1 && order_ % b == 0, "module block size must divide the graph order");
  }
  Graph g = *this;
  g.module_sizes_ = std::move(sizes);
  return g;
}

Graph Graph::scaled(double factor) const {
  require(factor > 0.0 && std::isfinite(factor), "scale factor must be positive");
  std::vector<Edge> e = edges_;
  for (auto& x : e) x.w *= factor;
  Graph g = build(order_, std::move(e), root_);
  g.module_sizes_ = module_sizes_;
  return g;
}

Graph Graph::with_root(std::size_t root) const {
  if (root >= order_) fail(ErrorCode::kOutOfRange, "root out of range");
  Graph g = *this;
  g.root_ = root;
  return g;
}

// ---------------------------------------------------------------------------

Graph complete_graph(std::size_t n) {
  require(n >= 2, "complete graph needs n >= 2");
  std::vector<Edge> e;
  e.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back({i, j, 1.0});
  return Graph::build(n, std::move(e), 0);
}

Graph cycle_graph(std::size_t n) {
  require(n >= 3, "cycle graph needs n >= 3");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1.0});
  return Graph::build(n, std::move(e), 0);
}

Graph path_graph(std::size_t n) {
  require(n >= 2, "path graph needs n >= 2");
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
  return Graph::build(n, std::move(e), 0);
}

Graph star_graph(std::size_t n) {
  require(n >= 2, "star graph needs n >= 2");
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.push_back({0, i, 1.0});
  return Graph::build(n, std::move(e), 0);
}

Graph grid_graph(std::size_t dims, std::size_t side) {
  require(dims >= 1, "grid needs d >= 1");
  require(side >= 2, "grid needs side >= 2");
  std::size_t n = 1;
  for (std::size_t i = 0; i < dims; ++i) {
    require(n <= (std::size_t{1} << 40) / side, "grid too large");
    n *= side;
  }
  std::vector<Edge> e;
  e.reserve(dims * n);
  for (std::size_t node = 0; node < n; ++node) {
    std::size_t stride = 1;
    for (std::size_t d = 0; d < dims; ++d, stride *= side) {
      if ((node / stride) % side + 1 < side) e.push_back({node, node + stride, 1.0});
    }
  }
  return Graph::build(n, std::move(e), 0);
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = e.w;
    a(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = e.w;
  }
  return a;
}

Eigen::MatrixXd laplacian_matrix(const Graph& g) {
  Eigen::MatrixXd l = -adjacency_matrix(g);
  for (std::size_t i = 0; i < g.order(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    l(k, k) = g.valency(i);
  }
  return l;
}

std::vector<double> distances_from(const Graph& g, std::size_t source, Metric metric) {
  if (source >= g.order()) fail(ErrorCode::kOutOfRange, "source node out of range");
  std::vector<double> dist(g.order(), kUnreachable);
  dist[source] = 0.0;
  if (metric == Metric::kHop) {
    std::vector<std::size_t> queue{source};
    queue.reserve(g.order());
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      for (const auto& nb : g.neighbors(u)) {
        if (dist[nb.node] == kUnreachable) {
          dist[nb.node] = dist[u] + 1.0;
          queue.push_back(nb.node);
        }
      }
    }
    return dist;
  }
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (const auto& nb : g.neighbors(u)) {
      const double nd = d + nb.w;
      if (nd < dist[nb.node]) {
        dist[nb.node] = nd;
        pq.push({nd, nb.node});
      }
    }
  }
  return dist;
}

DistanceMatrix shortest_paths(const Graph& g, Metric metric) {
  DistanceMatrix m(g.order());
  for (std::size_t s = 0; s < g.order(); ++s) {
    auto row = distances_from(g, s, metric);
    std::copy(row.begin(), row.end(), &m(s, 0));
  }
  // Dijkstra sums can differ in the last ulp between directions.
  if (metric == Metric::kWeight) {
    for (std::size_t i = 0; i < g.order(); ++i)
      for (std::size_t j = i + 1; j < g.order(); ++j) m(j, i) = m(i, j);
  }
  return m;
}

bool is_connected(const Graph& g) {
  auto d = distances_from(g, 0, Metric::kHop);
  return std::none_of(d.begin(), d.end(), [](double x) { return x == kUnreachable; });
}

std::vector<double> eccentricities(const Graph& g, Metric metric) {
  const auto d = shortest_paths(g, metric);
  std::vector<double> ecc(g.order(), 0.0);
  for (std::size_t i = 0; i < g.order(); ++i) {
    auto r = d.row(i);
    ecc[i] = *std::max_element(r.begin(), r.end());
  }
  return ecc;
}

InvariantRecord invariants(const Graph& g) {
  if (!is_connected(g)) fail(ErrorCode::kDisconnected, "invariants require a connected graph");
  const std::size_t n = g.order();
  InvariantRecord rec;
  rec.order = n;
  rec.edge_count = g.edge_count();
  rec.total_edge_weight = g.total_weight();

  const auto hop = shortest_paths(g, Metric::kHop);
  const auto wd = shortest_paths(g, Metric::kWeight);
  double hop_sum = 0.0;
  double hop_max = 0.0;
  double w_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      hop_sum += hop(i, j);
      hop_max = std::max(hop_max, hop(i, j));
      w_max = std::max(w_max, wd(i, j));
    }
  }
  rec.diameter = static_cast<std::size_t>(hop_max);
  rec.weighted_diameter = w_max;
  auto hr = hop.row(g.root());
  auto wr = wd.row(g.root());
  rec.root_eccentricity = static_cast<std::size_t>(*std::max_element(hr.begin(), hr.end()));
  rec.weighted_root_eccentricity = *std::max_element(wr.begin(), wr.end());
  const double nn = static_cast<double>(n);
  rec.mean_distance = hop_sum / (nn * nn);
  rec.mean_distance_distinct = n > 1 ? hop_sum / (nn * (nn - 1.0)) : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rec.max_degree = std::max(rec.max_degree, g.degree(i));
    rec.max_valency = std::max(rec.max_valency, g.valency(i));
  }
  return rec;
}

}  // namespace hiernet
