#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "hiernet/error.hpp"
#include "hiernet/graph.hpp"

namespace hiernet {

double cut_ratio(const Graph& g, std::span<const std::size_t> subset) {
  std::vector<char> in(g.order(), 0);
  for (std::size_t v : subset) {
    if (v >= g.order()) fail(ErrorCode::kOutOfRange, "cut node out of range");
    in[v] = 1;
  }
  const std::size_t s = static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
  const std::size_t smaller = std::min(s, g.order() - s);
  require(smaller > 0, "cut side must be a nonempty proper subset");
  double w = 0.0;
  for (const auto& e : g.edges())
    if (in[e.u] != in[e.v]) w += e.w;
  return w / static_cast<double>(smaller);
}

namespace {

struct Best {
  double cut = 0.0;
  std::size_t side = 0;  // min(|S|, |V\S|)
  bool set = false;

  bool offer(double c, std::size_t m) {
    if (m == 0) return false;
    if (!set || c * static_cast<double>(side) < cut * static_cast<double>(m)) {
      cut = c;
      side = m;
      set = true;
      return true;
    }
    return false;
  }
  double value() const { return cut / static_cast<double>(side); }
};

// Gray-code walk over all 2^(N-1) bipartitions with node N-1 pinned outside S.
CheegerResult cheeger_exact(const Graph& g) {
  const std::size_t n = g.order();
  if (n > kCheegerExactMaxOrder) {
    fail(ErrorCode::kInvalidArgument, "exact Cheeger enumeration limited to N <= " +
                                          std::to_string(kCheegerExactMaxOrder) +
                                          "; use heuristic mode");
  }
  require(n >= 2, "Cheeger constant needs at least two nodes");

  // Flattened neighbor lists keep the inner loop tight.
  std::vector<std::uint32_t> off(n + 1, 0);
  std::vector<std::uint32_t> nbr;
  std::vector<double> wt;
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& nb : g.neighbors(v)) {
      nbr.push_back(static_cast<std::uint32_t>(nb.node));
      wt.push_back(nb.w);
    }
    off[v + 1] = static_cast<std::uint32_t>(nbr.size());
  }

  std::vector<std::uint8_t> side(n, 0);
  double cut = 0.0;
  std::size_t size = 0;
  Best best;
  std::uint64_t best_code = 0;
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto v = static_cast<std::size_t>(std::countr_zero(i));
    const std::uint8_t sv = side[v];
    double delta = 0.0;
    for (std::uint32_t k = off[v]; k < off[v + 1]; ++k) delta += (side[nbr[k]] == sv) ? wt[k] : -wt[k];
    cut += delta;
    side[v] = sv ^ 1;
    size = sv ? size - 1 : size + 1;
    if (best.offer(cut, std::min(size, n - size))) best_code = i ^ (i >> 1);
  }

  CheegerResult r;
  for (std::size_t v = 0; v + 1 < n; ++v)
    if ((best_code >> v) & 1U) r.cut.push_back(v);
  if (r.cut.size() * 2 > n) {
    std::vector<std::size_t> comp;
    std::vector<char> in(n, 0);
    for (auto v : r.cut) in[v] = 1;
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v]) comp.push_back(v);
    r.cut = std::move(comp);
  }
  // Recompute from scratch; the incremental sum may carry rounding drift.
  r.value = cut_ratio(g, r.cut);
  return r;
}

Eigen::VectorXd fiedler_vector(const Graph& g) {
  const std::size_t n = g.order();
  if (n <= 2048) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian_matrix(g));
    if (es.info() != Eigen::Success) fail(ErrorCode::kNumeric, "Laplacian eigensolver failed");
    return es.eigenvectors().col(1);
  }
  // Large graphs: power iteration on (cI - L) restricted to the complement
  // of the constant vector. Any sweep over any vector is still a valid
  // upper bound, so a loosely converged vector only costs tightness.
  double c = 0.0;
  for (std::size_t v = 0; v < n; ++v) c = std::max(c, g.valency(v));
  c *= 2.0;
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (std::size_t v = 0; v < n; ++v) x(static_cast<Eigen::Index>(v)) = std::sin(1.0 + 0.37 * static_cast<double>(v));
  Eigen::VectorXd y(x.size());
  for (int it = 0; it < 4000; ++it) {
    x.array() -= x.mean();
    x.normalize();
    for (std::size_t v = 0; v < n; ++v) {
      double s = (c - g.valency(v)) * x(static_cast<Eigen::Index>(v));
      for (const auto& nb : g.neighbors(v)) s += nb.w * x(static_cast<Eigen::Index>(nb.node));
      y(static_cast<Eigen::Index>(v)) = s;
    }
    x.swap(y);
  }
  x.array() -= x.mean();
  return x;
}

void sweep_cuts(const Graph& g, const Eigen::VectorXd& f, Best& best, std::vector<std::size_t>& witness) {
  const std::size_t n = g.order();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return f(static_cast<Eigen::Index>(a)) < f(static_cast<Eigen::Index>(b));
  });
  std::vector<char> in(n, 0);
  double cut = 0.0;
  std::size_t best_prefix = 0;
  bool improved = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t v = order[k];
    for (const auto& nb : g.neighbors(v)) cut += in[nb.node] ? -nb.w : nb.w;
    in[v] = 1;
    if (best.offer(cut, std::min(k + 1, n - k - 1))) {
      best_prefix = k + 1;
      improved = true;
    }
  }
  if (improved) witness.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_prefix));
}

// Runs of consecutive module blocks (cyclic in block index) at every
// hierarchy level with a manageable number of blocks.
void module_cuts(const Graph& g, Best& best, std::vector<std::size_t>& witness) {
  const std::size_t n = g.order();
  for (std::size_t b : g.module_sizes()) {
    if (b == 0 || b >= n || n % b != 0) continue;
    const std::size_t blocks = n / b;
    if (blocks > 512) continue;
    std::vector<char> in(n, 0);
    for (std::size_t start = 0; start < blocks; ++start) {
      std::fill(in.begin(), in.end(), 0);
      double cut = 0.0;
      for (std::size_t m = 1; m < blocks; ++m) {
        const std::size_t blk = (start + m - 1) % blocks;
        for (std::size_t v = blk * b; v < (blk + 1) * b; ++v) {
          for (const auto& nb : g.neighbors(v)) cut += in[nb.node] ? -nb.w : nb.w;
          in[v] = 1;
        }
        if (best.offer(cut, std::min(m * b, n - m * b))) {
          witness.clear();
          for (std::size_t j = 0; j < m; ++j) {
            const std::size_t bj = (start + j) % blocks;
            for (std::size_t v = bj * b; v < (bj + 1) * b; ++v) witness.push_back(v);
          }
        }
      }
    }
  }
}

CheegerResult cheeger_heuristic(const Graph& g) {
  require(g.order() >= 2, "Cheeger constant needs at least two nodes");
  Best best;
  std::vector<std::size_t> witness;
  sweep_cuts(g, fiedler_vector(g), best, witness);
  module_cuts(g, best, witness);
  std::sort(witness.begin(), witness.end());
  if (witness.size() * 2 > g.order()) {
    std::vector<char> in(g.order(), 0);
    for (auto v : witness) in[v] = 1;
    std::vector<std::size_t> comp;
    for (std::size_t v = 0; v < g.order(); ++v)
      if (!in[v]) comp.push_back(v);
    witness = std::move(comp);
  }
  CheegerResult r;
  r.cut = std::move(witness);
  r.value = cut_ratio(g, r.cut);
  return r;
}

}  // namespace

CheegerResult cheeger(const Graph& g, CheegerMode mode) {
  return mode == CheegerMode::kExact ? cheeger_exact(g) : cheeger_heuristic(g);
}

}  // namespace hiernet
