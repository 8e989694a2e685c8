#include "hiernet/products.hpp"

#include <cmath>
#include <sstream>

#include "hiernet/error.hpp"

namespace hiernet {

namespace {

constexpr std::size_t kMaxBuildOrder = std::size_t{1} << 24;

Graph induced_subgraph(const Graph& g, const std::vector<char>& keep, std::size_t root) {
  std::vector<std::size_t> remap(g.order(), static_cast<std::size_t>(-1));
  std::size_t next = 0;
  for (std::size_t v = 0; v < g.order(); ++v)
    if (keep[v]) remap[v] = next++;
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (keep[e.u] && keep[e.v]) edges.push_back({remap[e.u], remap[e.v], e.w});
  return Graph::build(next, std::move(edges), remap[root]);
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXd root_projector(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  d(static_cast<Eigen::Index>(g.root()), static_cast<Eigen::Index>(g.root())) = 1.0;
  return d;
}

template <typename Term>
Eigen::MatrixXd kronecker_sum(const HierarchySpec& spec, Term term) {
  spec.validate();
  require(!spec.truncated, "Kronecker expansion is defined for non-truncated hierarchies");
  const std::size_t k = spec.levels();
  Eigen::MatrixXd total;
  for (std::size_t i = 0; i < k; ++i) {
    // Factors from the top level (most significant) down to the bottom.
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(1, 1);
    for (std::size_t lvl = k; lvl-- > 0;) {
      const Graph& b = spec.bases[lvl];
      Eigen::MatrixXd f;
      if (lvl > i) f = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(b.order()), static_cast<Eigen::Index>(b.order()));
      else if (lvl == i) f = term(b);
      else f = root_projector(b);
      acc = kron(acc, f);
    }
    acc *= spec.alphas[i];
    if (total.size() == 0) total = std::move(acc);
    else total += acc;
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------

void HierarchySpec::validate() const {
  require(!bases.empty(), "hierarchy needs at least one base graph");
  if (alphas.size() != bases.size()) {
    fail(ErrorCode::kInvalidArgument, "alphas has " + std::to_string(alphas.size()) +
                                          " entries for " + std::to_string(bases.size()) + " levels");
  }
  if (std::abs(alphas[0] - 1.0) > 1e-12) fail(ErrorCode::kInvalidArgument, "alphas[0] must be 1");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0) || !std::isfinite(alphas[i])) {
      fail(ErrorCode::kInvalidArgument, "alpha at level " + std::to_string(i + 1) + " must be positive");
    }
  }
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i].order() < 2) fail(ErrorCode::kInvalidArgument, "base graph at level " + std::to_string(i + 1) + " has order < 2");
    if (!is_connected(bases[i])) fail(ErrorCode::kDisconnected, "base graph at level " + std::to_string(i + 1) + " is disconnected");
  }
  if (truncated) {
    for (const auto& b : bases) {
      require(b.order() == bases[0].order(),
              "truncated hierarchies require base graphs of equal order");
      require(b.root() == 0, "truncated hierarchies require every base rooted at node 0");
    }
  }
}

std::size_t HierarchySpec::order() const {
  if (truncated) {
    const std::size_t m = bases.at(0).order() - 1;
    std::size_t total = 1;
    std::size_t term = 1;
    for (std::size_t i = 0; i < bases.size(); ++i) {
      term *= m;
      total += term;
    }
    return total;
  }
  std::size_t n = 1;
  for (const auto& b : bases) n *= b.order();
  return n;
}

HierarchySpec HierarchySpec::geometric(std::vector<Graph> bases, double alpha, bool truncated) {
  require(alpha > 0.0 && std::isfinite(alpha), "geometric alpha must be positive");
  HierarchySpec s;
  s.alphas.resize(bases.size());
  double a = 1.0;
  for (auto& x : s.alphas) {
    x = a;
    a *= alpha;
  }
  s.bases = std::move(bases);
  s.truncated = truncated;
  return s;
}

HierarchySpec HierarchySpec::uniform(const Graph& base, std::size_t k, double alpha, bool truncated) {
  require(k >= 1, "hierarchy needs k >= 1");
  return geometric(std::vector<Graph>(k, base), alpha, truncated);
}

// ---------------------------------------------------------------------------

Graph hproduct(const Graph& g, const Graph& h, double alpha) {
  require(alpha > 0.0 && std::isfinite(alpha), "product weight alpha must be positive");
  const std::size_t nh = h.order();
  const std::size_t n = g.order() * nh;
  require(n <= kMaxBuildOrder, "product order too large to build");
  std::vector<Edge> edges;
  edges.reserve(g.order() * h.edge_count() + g.edge_count());
  for (std::size_t m = 0; m < g.order(); ++m)
    for (const auto& e : h.edges()) edges.push_back({m * nh + e.u, m * nh + e.v, e.w});
  for (const auto& e : g.edges())
    edges.push_back({e.u * nh + h.root(), e.v * nh + h.root(), alpha * e.w});
  Graph p = Graph::build(n, std::move(edges), g.root() * nh + h.root());
  std::vector<std::size_t> modules(h.module_sizes().begin(), h.module_sizes().end());
  modules.push_back(nh);
  return p.with_module_sizes(std::move(modules));
}

Graph truncated_hproduct(const Graph& g, const Graph& h, double alpha) {
  Graph full = hproduct(g, h, alpha);
  const std::size_t nh = h.order();
  std::vector<char> keep(full.order(), 1);
  for (std::size_t x = 0; x < nh; ++x)
    if (x != h.root()) keep[g.root() * nh + x] = 0;
  return induced_subgraph(full, keep, full.root());
}

Graph build_hierarchy(const HierarchySpec& spec) {
  spec.validate();
  {
    std::size_t n = 1;
    for (const auto& b : spec.bases) {
      require(n <= kMaxBuildOrder / b.order(), "hierarchy too large to build");
      n *= b.order();
    }
  }
  Graph m = spec.bases[0];
  for (std::size_t i = 1; i < spec.levels(); ++i) m = hproduct(spec.bases[i], m, spec.alphas[i]);
  if (!spec.truncated || spec.levels() == 1) return m;

  std::vector<std::size_t> radices;
  std::vector<std::size_t> roots;
  for (const auto& b : spec.bases) {
    radices.push_back(b.order());
    roots.push_back(b.root());
  }
  // Validity: reading from the top level down, once a digit sits at its
  // level's root, every digit below must too.
  std::vector<char> keep(m.order(), 1);
  std::vector<std::size_t> digits(radices.size());
  for (std::size_t idx = 0; idx < m.order(); ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = 0; i < radices.size(); ++i) {
      digits[i] = rest % radices[i];
      rest /= radices[i];
    }
    bool at_root = false;
    for (std::size_t lvl = radices.size(); lvl-- > 0;) {
      if (at_root && digits[lvl] != roots[lvl]) {
        keep[idx] = 0;
        break;
      }
      if (digits[lvl] == roots[lvl]) at_root = true;
    }
  }
  return induced_subgraph(m, keep, m.root());
}

Eigen::MatrixXd kronecker_adjacency(const HierarchySpec& spec) {
  return kronecker_sum(spec, [](const Graph& b) { return adjacency_matrix(b); });
}

Eigen::MatrixXd kronecker_laplacian(const HierarchySpec& spec) {
  return kronecker_sum(spec, [](const Graph& b) { return laplacian_matrix(b); });
}

Graph porcupine_graph(std::size_t m) {
  require(m >= 2, "porcupine needs m >= 2");
  return hproduct(complete_graph(m), star_graph(m), 1.0);
}

// ---------------------------------------------------------------------------

namespace {
std::vector<std::size_t> radices_of(const HierarchySpec& spec) {
  spec.validate();
  std::vector<std::size_t> r;
  for (const auto& b : spec.bases) r.push_back(b.order());
  return r;
}
}  // namespace

AddressCodec::AddressCodec(const HierarchySpec& spec) : AddressCodec(radices_of(spec), spec.truncated) {}

AddressCodec::AddressCodec(std::vector<std::size_t> radices, bool truncated)
    : radices_(std::move(radices)), truncated_(truncated) {
  require(!radices_.empty(), "address codec needs at least one level");
  for (auto r : radices_) require(r >= 2, "address radix must be at least 2");
  valid_.assign(radices_.size() + 1, 1);
  for (std::size_t r = 1; r <= radices_.size(); ++r) valid_[r] = 1 + (radices_[r - 1] - 1) * valid_[r - 1];
  if (truncated_) {
    size_ = valid_.back();
  } else {
    size_ = 1;
    for (auto r : radices_) size_ *= r;
  }
}

void AddressCodec::check(const NodeAddress& a) const {
  if (a.digits.size() != radices_.size()) {
    fail(ErrorCode::kInvalidArgument, "address has " + std::to_string(a.digits.size()) +
                                          " digits, hierarchy has " + std::to_string(radices_.size()) + " levels");
  }
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    if (a.digits[i] >= radices_[i]) {
      fail(ErrorCode::kOutOfRange, "digit at level " + std::to_string(i + 1) + " is " +
                                       std::to_string(a.digits[i]) + ", radix is " + std::to_string(radices_[i]));
    }
  }
  if (!truncated_) return;
  bool zero_seen = false;
  for (std::size_t lvl = radices_.size(); lvl-- > 0;) {
    if (zero_seen && a.digits[lvl] != 0) {
      fail(ErrorCode::kInvalidArgument, "truncated address has nonzero digit " +
                                            std::to_string(a.digits[lvl]) + " at level " + std::to_string(lvl + 1) +
                                            " below a zero digit");
    }
    if (a.digits[lvl] == 0) zero_seen = true;
  }
}

std::size_t AddressCodec::index(const NodeAddress& a) const {
  check(a);
  if (!truncated_) {
    std::size_t idx = 0;
    for (std::size_t lvl = radices_.size(); lvl-- > 0;) idx = idx * radices_[lvl] + a.digits[lvl];
    return idx;
  }
  std::size_t rank = 0;
  for (std::size_t lvl = radices_.size(); lvl-- > 0;) {
    const std::size_t d = a.digits[lvl];
    if (d == 0) break;
    // Digit 0 heads a single all-zero completion; digits 1..d-1 each head
    // valid_[lvl] completions.
    rank += 1 + (d - 1) * valid_[lvl];
  }
  return rank;
}

NodeAddress AddressCodec::address(std::size_t index) const {
  if (index >= size_) {
    fail(ErrorCode::kOutOfRange, "node index " + std::to_string(index) + " out of range for " +
                                     std::to_string(size_) + " nodes");
  }
  NodeAddress a;
  a.digits.assign(radices_.size(), 0);
  if (!truncated_) {
    for (std::size_t i = 0; i < radices_.size(); ++i) {
      a.digits[i] = index % radices_[i];
      index /= radices_[i];
    }
    return a;
  }
  for (std::size_t lvl = radices_.size(); lvl-- > 0;) {
    if (index == 0) break;  // all remaining digits zero
    index -= 1;
    const std::size_t d = 1 + index / valid_[lvl];
    a.digits[lvl] = d;
    index %= valid_[lvl];
  }
  return a;
}

}  // namespace hiernet
