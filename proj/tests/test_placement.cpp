#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "hiernet/error.hpp"
#include "hiernet/placement.hpp"

using namespace hiernet;

namespace {

std::vector<std::size_t> all_nodes(const Graph& g) {
  std::vector<std::size_t> v(g.order());
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

// No swap of two nodes from different parts lowers the cut.
bool swap_minimal(const Graph& c, std::vector<std::size_t> labels) {
  const double base = cut_weight(c, labels);
  for (std::size_t a = 0; a < c.order(); ++a)
    for (std::size_t b = a + 1; b < c.order(); ++b) {
      if (labels[a] == labels[b]) continue;
      std::swap(labels[a], labels[b]);
      const double w = cut_weight(c, labels);
      std::swap(labels[a], labels[b]);
      if (w < base - 1e-9) return false;
    }
  return true;
}

// Exhaustive minimum over all balanced bipartitions.
double best_bisection(const Graph& c, std::size_t size_a) {
  const std::size_t n = c.order();
  double best = 1e300;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != size_a) continue;
    std::vector<std::size_t> labels(n);
    for (std::size_t v = 0; v < n; ++v) labels[v] = (mask >> v) & 1U;
    best = std::min(best, cut_weight(c, labels));
  }
  return best;
}

}  // namespace

TEST_CASE("circuit graphs") {
  const std::vector<Gate> gates{{0, 1}, {0, 1}, {1, 2}};
  const Graph c = circuit_graph(gates);
  CHECK(c.order() == 3);
  CHECK(c.weight(0, 1) == 2.0);
  CHECK(c.weight(1, 2) == 1.0);
  CHECK(circuit_graph(std::vector<Gate>{{1, 0}}).weight(0, 1) == 1.0);
  CHECK_THROWS_AS(circuit_graph(std::vector<Gate>{{2, 2}}), Error);

  const Graph empty = circuit_graph({}, 5);
  CHECK(empty.order() == 5);
  CHECK(empty.edge_count() == 0);
  const HierarchySpec m = HierarchySpec::uniform(complete_graph(3), 2);
  CHECK(place(empty, m, 1).cost == 0);
}

TEST_CASE("random circuits") {
  const auto two = random_circuit(2, 5, 123);
  CHECK(two == std::vector<Gate>(5, Gate{0, 1}));

  const auto big = random_circuit(729, 100, 9);
  CHECK(big.size() == 100);
  CHECK(circuit_graph(big, 729).edge_count() <= 100);
  CHECK(random_circuit(729, 100, 9) == big);
  CHECK(random_circuit(729, 100, 10) != big);

  CHECK(circuit_graph(random_circuit(9, 20, 4), 9).total_weight() == 20.0);
  for (auto [u, v] : random_circuit(7, 500, 1)) {
    CHECK(u < v);
    CHECK(v < 7);
  }
  CHECK_THROWS_AS(random_circuit(1, 3, 0), Error);
}

TEST_CASE("balanced partition examples") {
  const Graph two = Graph::build(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}, {2, 3, 1}});
  const std::vector<std::size_t> halves{3, 3};
  auto labels = balanced_partition(two, all_nodes(two), halves, 1);
  CHECK(cut_weight(two, labels) == 1.0);
  CHECK(best_bisection(two, 3) == 1.0);

  const Graph edgeless = circuit_graph({}, 8);
  labels = balanced_partition(edgeless, all_nodes(edgeless), std::vector<std::size_t>{4, 4}, 2);
  CHECK(cut_weight(edgeless, labels) == 0.0);
  CHECK(std::count(labels.begin(), labels.end(), 0) == 4);

  const Graph k6 = complete_graph(6);
  labels = balanced_partition(k6, all_nodes(k6), halves, 3);
  CHECK(cut_weight(k6, labels) == 9.0);

  CHECK_THROWS_AS(balanced_partition(k6, all_nodes(k6), std::vector<std::size_t>{3, 2}, 0), Error);
}

TEST_CASE("balanced partition sizes, local minimality, determinism") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph c = circuit_graph(random_circuit(12, 30, seed), 12);
    const std::vector<std::size_t> sizes{6, 6};
    const auto labels = balanced_partition(c, all_nodes(c), sizes, seed);
    CHECK(std::count(labels.begin(), labels.end(), 0) == 6);
    CHECK(swap_minimal(c, labels));
    CHECK(cut_weight(c, labels) >= best_bisection(c, 6));
    CHECK(balanced_partition(c, all_nodes(c), sizes, seed) == labels);
  }
  const Graph c = circuit_graph(random_circuit(27, 60, 5), 27);
  const std::vector<std::size_t> thirds{9, 9, 9};
  const auto labels = balanced_partition(c, all_nodes(c), thirds, 8);
  for (std::size_t p = 0; p < 3; ++p) CHECK(std::count(labels.begin(), labels.end(), p) == 9);

  // A subset partition ignores edges leaving it.
  const std::vector<std::size_t> sub{1, 4, 7, 10, 13, 16};
  const auto sl = balanced_partition(c, sub, std::vector<std::size_t>{2, 4}, 3);
  CHECK(sl.size() == 6);
  CHECK(std::count(sl.begin(), sl.end(), 0) == 2);
}

TEST_CASE("placement cost") {
  const HierarchySpec spec = HierarchySpec::uniform(complete_graph(3), 2);
  const Graph m = build_hierarchy(spec);
  const Graph one = circuit_graph(std::vector<Gate>{{0, 1}});
  CHECK(placement_cost(one, m, std::vector<std::size_t>{0, 1}) == 1);
  CHECK(placement_cost(one, m, std::vector<std::size_t>{1, 5}) == 3);
  CHECK_THROWS_AS(placement_cost(one, m, std::vector<std::size_t>{2, 2}), Error);
  CHECK_THROWS_AS(placement_cost(one, m, std::vector<std::size_t>{2, 9}), Error);

  // Relabeling the circuit and composing the mapping leaves cost unchanged.
  const auto gates = random_circuit(9, 25, 3);
  const Graph c = circuit_graph(gates, 9);
  const std::vector<std::size_t> f{4, 0, 8, 2, 6, 1, 3, 7, 5};
  const std::vector<std::size_t> perm{3, 7, 1, 0, 8, 2, 6, 5, 4};
  std::vector<Gate> relabeled;
  for (auto [u, v] : gates) relabeled.emplace_back(perm[u], perm[v]);
  std::vector<std::size_t> g(9);
  for (std::size_t q = 0; q < 9; ++q) g[perm[q]] = f[q];
  CHECK(placement_cost(c, m, f) == placement_cost(circuit_graph(relabeled, 9), m, g));
}

TEST_CASE("placing the machine graph itself") {
  const HierarchySpec spec = HierarchySpec::uniform(complete_graph(3), 2);
  const Graph m = build_hierarchy(spec);
  std::vector<Gate> gates;
  for (const auto& e : m.edges()) gates.emplace_back(e.u, e.v);
  // Scramble qubit names so the identity layout is not already optimal.
  const std::vector<std::size_t> perm{5, 2, 7, 0, 8, 3, 1, 6, 4};
  for (auto& [u, v] : gates) u = perm[u], v = perm[v];
  const Graph c = circuit_graph(gates, 9);

  const auto hops = shortest_paths(m, Metric::kHop);
  std::vector<std::size_t> f(9);
  std::iota(f.begin(), f.end(), std::size_t{0});
  std::uint64_t best = UINT64_MAX;
  do best = std::min(best, placement_cost(c, hops, f));
  while (std::next_permutation(f.begin(), f.end()));
  CHECK(best == 12);
  CHECK(place(c, spec, 1).cost == 12);
}

TEST_CASE("rotation moves the linking qubits to module roots") {
  // Two triangles {0,1,2} and {3,4,5} joined by the gate (2,3).
  const Graph c = circuit_graph(std::vector<Gate>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}}, 6);
  const HierarchySpec spec = HierarchySpec::uniform(complete_graph(3), 2);
  const Graph m = build_hierarchy(spec);
  const auto f = partition_and_rotate(c, spec, 7);
  CHECK(f[2] % 3 == 0);
  CHECK(f[3] % 3 == 0);
  const auto p = place(c, spec, 7);
  CHECK(p.cost == 7);
  // Same clusters with the linking qubits on leaves.
  CHECK(placement_cost(c, m, std::vector<std::size_t>{0, 2, 1, 4, 3, 5}) == 9);
  CHECK(p.cost < 9);
}

TEST_CASE("single gate lands on adjacent nodes") {
  const HierarchySpec spec = HierarchySpec::uniform(complete_graph(3), 4);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Graph c = circuit_graph(std::vector<Gate>{{s, 40 + s}}, 81);
    CHECK(place(c, spec, s).cost == 1);
  }
}

TEST_CASE("bottom-level roots carry the most outside weight") {
  const HierarchySpec spec = HierarchySpec::uniform(complete_graph(3), 4);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Graph c = circuit_graph(random_circuit(81, 120, s), 81);
    const auto f = partition_and_rotate(c, spec, s);
    std::vector<std::size_t> where(81);
    for (std::size_t q = 0; q < 81; ++q) where[f[q]] = q;
    for (std::size_t mod = 0; mod < 27; ++mod) {
      double ext[3] = {0, 0, 0};
      for (std::size_t d = 0; d < 3; ++d) {
        const std::size_t q = where[mod * 3 + d];
        for (const auto& nb : c.neighbors(q))
          if (f[nb.node] / 3 != mod) ext[d] += nb.w;
      }
      CHECK(ext[0] >= ext[1]);
      CHECK(ext[0] >= ext[2]);
    }
  }
}

TEST_CASE("placement guards") {
  const HierarchySpec spec = HierarchySpec::uniform(complete_graph(3), 2);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Graph c = circuit_graph(random_circuit(9, 15, s), 9);
    const auto p = place(c, spec, s);
    CHECK(p.cost <= p.naive_cost);
    CHECK(place(c, spec, s).mapping == p.mapping);
  }
  CHECK_THROWS_AS(place(circuit_graph(random_circuit(10, 5, 0), 10), spec, 0), Error);
  CHECK_THROWS_AS(place(circuit_graph({}, 4), HierarchySpec::uniform(cycle_graph(4), 2), 0), Error);
  CHECK_THROWS_AS(place(circuit_graph({}, 4), HierarchySpec::uniform(complete_graph(3), 2, 1.0, true), 0), Error);
}
