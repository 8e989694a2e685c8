#include <algorithm>
#include <cmath>
#include <functional>

#include "hiernet/error.hpp"
#include "hiernet/placement.hpp"
#include "hiernet/random.hpp"

namespace hiernet {

namespace {

std::size_t machine_base_order(const HierarchySpec& machine) {
  machine.validate();
  require(!machine.truncated, "placement needs a non-truncated machine");
  const std::size_t n = machine.bases.front().order();
  for (const auto& b : machine.bases) {
    require(b.order() == n, "machine bases must share one order");
    require(b.edge_count() == n * (n - 1) / 2, "machine bases must be complete graphs");
    require(b.root() == 0, "machine bases must be rooted at node 0");
  }
  return n;
}

Graph padded(const Graph& circuit, std::size_t order) {
  if (circuit.order() > order)
    fail(ErrorCode::kInvalidArgument, "circuit has " + std::to_string(circuit.order()) +
                                          " qubits but the machine has " + std::to_string(order) + " nodes");
  if (circuit.order() == order) return circuit;
  return Graph::build(order, {circuit.edges().begin(), circuit.edges().end()}, 0);
}

void check_mapping(std::size_t qubits, std::size_t machine_order, std::span<const std::size_t> mapping) {
  require(mapping.size() == qubits, "mapping must cover every circuit qubit");
  std::vector<char> used(machine_order, 0);
  for (auto m : mapping) {
    if (m >= machine_order) fail(ErrorCode::kOutOfRange, "mapping target out of range");
    if (used[m]) fail(ErrorCode::kInvalidArgument, "mapping is not injective");
    used[m] = 1;
  }
}

}  // namespace

std::vector<std::size_t> partition_and_rotate(const Graph& circuit, const HierarchySpec& machine,
                                              std::uint64_t seed) {
  const std::size_t n = machine_base_order(machine);
  const std::size_t k = machine.levels();
  const std::size_t total = machine.order();
  const Graph c = padded(circuit, total);

  // digits[q * k + level], bottom level first.
  std::vector<std::size_t> digits(total * k, 0);

  // Top-down: split each group into n equal parts, one per digit value.
  std::uint64_t calls = 0;
  std::function<void(const std::vector<std::size_t>&, std::size_t)> split =
      [&](const std::vector<std::size_t>& group, std::size_t level) {
        const std::vector<std::size_t> sizes(n, group.size() / n);
        const auto labels = balanced_partition(c, group, sizes, splitmix64(seed + calls++));
        std::vector<std::vector<std::size_t>> parts(n);
        for (std::size_t i = 0; i < group.size(); ++i) {
          digits[group[i] * k + level] = labels[i];
          parts[labels[i]].push_back(group[i]);
        }
        if (level == 0) return;
        for (const auto& p : parts) split(p, level - 1);
      };
  std::vector<std::size_t> all(total);
  for (std::size_t q = 0; q < total; ++q) all[q] = q;
  split(all, k - 1);

  // Bottom-up: inside every module whose sub-hierarchies differ in digit
  // `level`, the sub-hierarchy with the most weight leaving the module
  // takes digit 0. The top level has no outside, so it is skipped.
  for (std::size_t level = 0; level + 1 < k; ++level) {
    std::vector<std::size_t> key(total, 0);
    for (std::size_t q = 0; q < total; ++q)
      for (std::size_t j = k; j-- > level + 1;) key[q] = key[q] * n + digits[q * k + j];
    const std::size_t modules = total / static_cast<std::size_t>(std::pow(n, level + 1) + 0.5);
    std::vector<double> ext(modules * n, 0.0);
    std::vector<std::size_t> first(modules * n, total);
    for (std::size_t q = 0; q < total; ++q) {
      const std::size_t slot = key[q] * n + digits[q * k + level];
      first[slot] = std::min(first[slot], q);
      for (const auto& nb : c.neighbors(q))
        if (key[nb.node] != key[q]) ext[slot] += nb.w;
    }
    std::vector<std::size_t> winner(modules, 0);
    for (std::size_t m = 0; m < modules; ++m) {
      std::size_t best = 0;
      for (std::size_t d = 1; d < n; ++d) {
        const std::size_t s = m * n + d, b = m * n + best;
        if (ext[s] > ext[b] || (ext[s] == ext[b] && first[s] < first[b])) best = d;
      }
      winner[m] = best;
    }
    for (std::size_t q = 0; q < total; ++q) {
      auto& d = digits[q * k + level];
      const std::size_t w = winner[key[q]];
      if (d == w)
        d = 0;
      else if (d == 0)
        d = w;
    }
  }

  std::vector<std::size_t> mapping(circuit.order());
  for (std::size_t q = 0; q < circuit.order(); ++q) {
    std::size_t idx = 0;
    for (std::size_t j = k; j-- > 0;) idx = idx * n + digits[q * k + j];
    mapping[q] = idx;
  }
  return mapping;
}

std::uint64_t placement_cost(const Graph& circuit, const DistanceMatrix& hops, std::span<const std::size_t> mapping) {
  check_mapping(circuit.order(), hops.size(), mapping);
  double cost = 0.0;
  for (const auto& e : circuit.edges()) {
    const double d = hops(mapping[e.u], mapping[e.v]);
    if (d == kUnreachable) fail(ErrorCode::kDisconnected, "machine graph is disconnected");
    cost += e.w * d;
  }
  return static_cast<std::uint64_t>(std::llround(cost));
}

std::uint64_t placement_cost(const Graph& circuit, const Graph& m, std::span<const std::size_t> mapping) {
  return placement_cost(circuit, shortest_paths(m, Metric::kHop), mapping);
}

std::vector<std::size_t> naive_mapping(const Graph& circuit, const Graph& m) {
  if (circuit.order() > m.order()) fail(ErrorCode::kInvalidArgument, "circuit larger than machine");
  std::vector<std::size_t> mapping(circuit.order());
  for (std::size_t q = 0; q < mapping.size(); ++q) mapping[q] = q;
  return mapping;
}

Placement place(const Graph& circuit, const HierarchySpec& machine, std::uint64_t seed) {
  const Graph m = build_hierarchy(machine);
  const DistanceMatrix hops = shortest_paths(m, Metric::kHop);
  Placement p;
  p.mapping = partition_and_rotate(circuit, machine, seed);
  p.cost = placement_cost(circuit, hops, p.mapping);
  const auto naive = naive_mapping(circuit, m);
  p.naive_cost = placement_cost(circuit, hops, naive);
  if (p.naive_cost < p.cost) {
    p.mapping = naive;
    p.cost = p.naive_cost;
    p.used_naive = true;
  }
  return p;
}

}  // namespace hiernet
