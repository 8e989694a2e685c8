#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hiernet/error.hpp"
#include "hiernet/placement.hpp"
#include "hiernet/random.hpp"

namespace hiernet {

Graph circuit_graph(std::span<const Gate> gates, std::size_t qubits) {
  std::size_t n = std::max<std::size_t>(qubits, 1);
  std::vector<Gate> pairs;
  pairs.reserve(gates.size());
  for (auto [u, v] : gates) {
    if (u == v) fail(ErrorCode::kInvalidArgument, "self-gate on qubit " + std::to_string(u));
    pairs.emplace_back(std::min(u, v), std::max(u, v));
    n = std::max(n, std::max(u, v) + 1);
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pairs.size();) {
    std::size_t j = i;
    while (j < pairs.size() && pairs[j] == pairs[i]) ++j;
    edges.push_back({pairs[i].first, pairs[i].second, static_cast<double>(j - i)});
    i = j;
  }
  return Graph::build(n, std::move(edges), 0);
}

std::vector<Gate> random_circuit(std::size_t n_qubits, std::size_t n_gates, std::uint64_t seed) {
  require(n_qubits >= 2, "random circuit needs at least two qubits");
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<Gate> gates;
  gates.reserve(n_gates);
  for (std::size_t g = 0; g < n_gates; ++g) {
    const auto u = static_cast<std::size_t>(bounded(rng, n_qubits));
    auto v = static_cast<std::size_t>(bounded(rng, n_qubits - 1));
    if (v >= u) ++v;
    gates.emplace_back(std::min(u, v), std::max(u, v));
  }
  return gates;
}

double cut_weight(const Graph& c, std::span<const std::size_t> labels) {
  require(labels.size() == c.order(), "one label per node required");
  double w = 0.0;
  for (const auto& e : c.edges())
    if (labels[e.u] != labels[e.v]) w += e.w;
  return w;
}

namespace {

struct Arc {
  int to;
  long w;
};

// Induced subgraph on a node subset with integral weights.
struct Local {
  std::vector<std::vector<Arc>> adj;  // sorted by `to`
  std::vector<long> degree;           // weighted
  long max_degree = 0;

  int size() const { return static_cast<int>(adj.size()); }

  long weight(int a, int b) const {
    const auto& l = adj[a];
    auto it = std::lower_bound(l.begin(), l.end(), b, [](const Arc& x, int t) { return x.to < t; });
    return (it != l.end() && it->to == b) ? it->w : 0;
  }
};

Local induce(const Graph& c, std::span<const std::size_t> nodes, std::vector<int>& scratch) {
  Local l;
  l.adj.resize(nodes.size());
  l.degree.assign(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) scratch[nodes[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const auto& nb : c.neighbors(nodes[i])) {
      const int j = scratch[nb.node];
      if (j < 0) continue;
      const long w = std::lround(nb.w);
      l.adj[i].push_back({j, w});
      l.degree[i] += w;
    }
    std::sort(l.adj[i].begin(), l.adj[i].end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
    l.max_degree = std::max(l.max_degree, l.degree[i]);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) scratch[nodes[i]] = -1;
  return l;
}

// Gain buckets: one doubly linked list per gain value for each side.
class Buckets {
 public:
  Buckets(int n, long max_gain)
      : offset_(max_gain), next_(n, -1), prev_(n, -1), gain_(n, 0) {
    for (auto& h : head_) h.assign(static_cast<std::size_t>(2 * max_gain + 1), -1);
    top_[0] = top_[1] = -1;
  }

  void insert(int v, int side, long gain) {
    gain_[v] = gain;
    const long b = gain + offset_;
    auto& h = head_[side];
    next_[v] = h[b];
    prev_[v] = -1;
    if (h[b] >= 0) prev_[h[b]] = v;
    h[b] = v;
    top_[side] = std::max(top_[side], b);
  }

  void remove(int v, int side) {
    const long b = gain_[v] + offset_;
    if (prev_[v] >= 0)
      next_[prev_[v]] = next_[v];
    else
      head_[side][b] = next_[v];
    if (next_[v] >= 0) prev_[next_[v]] = prev_[v];
  }

  // Highest-gain node of a side, or -1.
  int peek(int side) {
    auto& h = head_[side];
    while (top_[side] >= 0 && h[top_[side]] < 0) --top_[side];
    return top_[side] >= 0 ? h[top_[side]] : -1;
  }

  long gain(int v) const { return gain_[v]; }

 private:
  long offset_;
  std::vector<long> head_[2];
  long top_[2];
  std::vector<int> next_, prev_;
  std::vector<long> gain_;
};

long cut_of(const Local& l, const std::vector<char>& side) {
  long c = 0;
  for (int v = 0; v < l.size(); ++v)
    for (const auto& a : l.adj[v])
      if (a.to > v && side[v] != side[a.to]) c += a.w;
  return c;
}

// Cut reduction from moving v to the other side.
long move_gain(const Local& l, const std::vector<char>& side, int v) {
  long g = 0;
  for (const auto& a : l.adj[v]) g += side[a.to] != side[v] ? a.w : -a.w;
  return g;
}

// Greedy graph growing: side 1 grows from a random seed node, always
// absorbing the node whose move lowers the cut the most.
std::vector<char> grow(const Local& l, int size_a, std::mt19937_64& rng) {
  const int n = l.size();
  std::vector<char> side(n, 0);
  std::vector<long> conn(n, 0);
  for (int taken = 0; taken < size_a; ++taken) {
    int pick = -1;
    long best = std::numeric_limits<long>::min();
    for (int v = 0; v < n; ++v) {
      if (side[v] || conn[v] == 0) continue;
      const long g = 2 * conn[v] - l.degree[v];
      if (g > best) {
        best = g;
        pick = v;
      }
    }
    if (pick < 0) {
      // Nothing touches side 1 yet: start a new region at random.
      const int free = n - taken;
      auto r = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(free)));
      for (int v = 0; v < n; ++v) {
        if (side[v]) continue;
        if (r-- == 0) {
          pick = v;
          break;
        }
      }
    }
    side[pick] = 1;
    for (const auto& a : l.adj[pick]) conn[a.to] += a.w;
  }
  return side;
}

// One FM pass holding |side 1| at size_a after every second move. Returns
// the cut after rolling back to the best balanced prefix.
long fm_pass(const Local& l, std::vector<char>& side, int size_a, long cut) {
  const int n = l.size();
  Buckets b(n, std::max<long>(l.max_degree, 1));
  for (int v = 0; v < n; ++v) b.insert(v, side[v], move_gain(l, side, v));
  std::vector<char> locked(n, 0);
  std::vector<int> moves;
  int count_a = 0;
  for (int v = 0; v < n; ++v) count_a += side[v];
  long best = cut;
  std::size_t best_len = 0;

  for (int step = 0; step < n; ++step) {
    int from;
    if (count_a > size_a) {
      from = 1;
    } else if (count_a < size_a) {
      from = 0;
    } else {
      const int a = b.peek(1);
      const int z = b.peek(0);
      if (a < 0 && z < 0) break;
      from = (z < 0 || (a >= 0 && b.gain(a) >= b.gain(z))) ? 1 : 0;
    }
    const int v = b.peek(from);
    if (v < 0) break;
    b.remove(v, from);
    locked[v] = 1;
    cut -= b.gain(v);
    side[v] = static_cast<char>(1 - from);
    count_a += from ? -1 : 1;
    moves.push_back(v);
    for (const auto& a : l.adj[v]) {
      if (locked[a.to]) continue;
      b.remove(a.to, side[a.to]);
      // v left a.to's side when they now differ, and joined it otherwise.
      const long delta = side[a.to] != side[v] ? 2 * a.w : -2 * a.w;
      b.insert(a.to, side[a.to], b.gain(a.to) + delta);
    }
    if (count_a == size_a && cut < best) {
      best = cut;
      best_len = moves.size();
    }
  }
  for (std::size_t i = moves.size(); i > best_len; --i) side[moves[i - 1]] ^= 1;
  return best;
}

// Swap the first improving (a, b) pair until none is left.
long swap_pass(const Local& l, std::vector<char>& side, long cut) {
  const int n = l.size();
  std::vector<long> gain(n);
  for (int v = 0; v < n; ++v) gain[v] = move_gain(l, side, v);
  for (;;) {
    std::vector<int> ones, zeros;
    for (int v = 0; v < n; ++v) (side[v] ? ones : zeros).push_back(v);
    auto by_gain = [&](int x, int y) { return gain[x] != gain[y] ? gain[x] > gain[y] : x < y; };
    std::sort(ones.begin(), ones.end(), by_gain);
    std::sort(zeros.begin(), zeros.end(), by_gain);
    int sa = -1, sb = -1;
    long sg = 0;
    for (int a : ones) {
      if (zeros.empty() || gain[a] + gain[zeros.front()] <= 0) break;
      for (int z : zeros) {
        if (gain[a] + gain[z] <= 0) break;
        const long g = gain[a] + gain[z] - 2 * l.weight(a, z);
        if (g > 0) {
          sa = a;
          sb = z;
          sg = g;
          break;
        }
      }
      if (sa >= 0) break;
    }
    if (sa < 0) return cut;
    side[sa] = 0;
    side[sb] = 1;
    cut -= sg;
    for (int v : {sa, sb}) {
      gain[v] = move_gain(l, side, v);
      for (const auto& a : l.adj[v]) gain[a.to] = move_gain(l, side, a.to);
    }
  }
}

constexpr int kTries = 4;

std::vector<char> bisect(const Local& l, int size_a, std::uint64_t seed) {
  std::vector<char> best_side;
  long best_cut = std::numeric_limits<long>::max();
  std::mt19937_64 rng(seed);
  for (int t = 0; t < kTries; ++t) {
    std::vector<char> side = grow(l, size_a, rng);
    long cut = cut_of(l, side);
    for (;;) {
      const long next = fm_pass(l, side, size_a, cut);
      if (next >= cut) break;
      cut = next;
    }
    cut = swap_pass(l, side, cut);
    if (cut < best_cut) {
      best_cut = cut;
      best_side = std::move(side);
    }
    if (best_cut == 0) break;
  }
  return best_side;
}

struct Recursion {
  const Graph& c;
  std::span<const std::size_t> sizes;
  std::uint64_t seed;
  std::uint64_t calls = 0;
  std::vector<int> scratch;
  std::vector<std::size_t> labels;  // indexed like the original `nodes`

  void run(const std::vector<std::size_t>& pos, std::span<const std::size_t> nodes, std::size_t lo,
           std::size_t hi) {
    if (hi - lo == 1) {
      for (auto p : pos) labels[p] = lo;
      return;
    }
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    const std::size_t size_a = std::accumulate(sizes.begin() + static_cast<std::ptrdiff_t>(lo),
                                               sizes.begin() + static_cast<std::ptrdiff_t>(mid), std::size_t{0});
    std::vector<std::size_t> sub(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) sub[i] = nodes[pos[i]];
    const Local l = induce(c, sub, scratch);
    const auto side = bisect(l, static_cast<int>(size_a), splitmix64(seed + calls++));
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < pos.size(); ++i) (side[i] ? a : b).push_back(pos[i]);
    run(a, nodes, lo, mid);
    run(b, nodes, mid, hi);
  }
};

}  // namespace

std::vector<std::size_t> balanced_partition(const Graph& c, std::span<const std::size_t> nodes,
                                            std::span<const std::size_t> sizes, std::uint64_t seed) {
  require(!sizes.empty(), "need at least one part");
  const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  if (total != nodes.size())
    fail(ErrorCode::kInvalidArgument, "part sizes sum to " + std::to_string(total) + " but there are " +
                                          std::to_string(nodes.size()) + " nodes");
  std::vector<char> seen(c.order(), 0);
  for (auto v : nodes) {
    if (v >= c.order()) fail(ErrorCode::kOutOfRange, "partition node out of range");
    if (seen[v]) fail(ErrorCode::kInvalidArgument, "partition node listed twice");
    seen[v] = 1;
  }
  for (const auto& e : c.edges())
    if (e.w != std::round(e.w)) fail(ErrorCode::kInvalidArgument, "partition weights must be integral");

  Recursion r{c, sizes, seed, 0, std::vector<int>(c.order(), -1), std::vector<std::size_t>(nodes.size(), 0)};
  std::vector<std::size_t> pos(nodes.size());
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  if (!nodes.empty()) r.run(pos, nodes, 0, sizes.size());
  return std::move(r.labels);
}

}  // namespace hiernet
