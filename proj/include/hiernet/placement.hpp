#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hiernet/graph.hpp"
#include "hiernet/products.hpp"

namespace hiernet {

using Gate = std::pair<std::size_t, std::size_t>;

// Circuit graph: one node per qubit, edge weight = number of two-qubit
// gates on that pair. Order is max(qubits, largest index + 1, 1).
Graph circuit_graph(std::span<const Gate> gates, std::size_t qubits = 0);

// n_gates pairs drawn uniformly from the distinct unordered qubit pairs.
std::vector<Gate> random_circuit(std::size_t n_qubits, std::size_t n_gates, std::uint64_t seed);

// Labels each entry of `nodes` with a part in [0, sizes.size()) such that
// part j receives exactly sizes[j] nodes. Edges leaving `nodes` are
// ignored. Recursive bisection with FM refinement then a pair-swap pass,
// so no single swap across any bisection lowers its cut. Weights must be
// integral.
std::vector<std::size_t> balanced_partition(const Graph& c, std::span<const std::size_t> nodes,
                                            std::span<const std::size_t> sizes, std::uint64_t seed);

// Weight of edges of c between nodes with different labels; labels are
// indexed by node.
double cut_weight(const Graph& c, std::span<const std::size_t> labels);

struct Placement {
  std::vector<std::size_t> mapping;  // circuit qubit -> machine node
  std::uint64_t cost = 0;
  std::uint64_t naive_cost = 0;
  bool used_naive = false;
};

// Machine must be a non-truncated K_n hierarchy with every base rooted at 0.
Placement place(const Graph& circuit, const HierarchySpec& machine, std::uint64_t seed);

// The partition-and-rotate mapping before the naive fallback.
std::vector<std::size_t> partition_and_rotate(const Graph& circuit, const HierarchySpec& machine,
                                              std::uint64_t seed);

// sum of w_C(u, v) * hop distance in m between mapping[u] and mapping[v].
std::uint64_t placement_cost(const Graph& circuit, const Graph& m, std::span<const std::size_t> mapping);
// Same with a precomputed hop distance matrix of m.
std::uint64_t placement_cost(const Graph& circuit, const DistanceMatrix& hops,
                             std::span<const std::size_t> mapping);

// Qubit i goes to machine node i.
std::vector<std::size_t> naive_mapping(const Graph& circuit, const Graph& m);

}  // namespace hiernet
