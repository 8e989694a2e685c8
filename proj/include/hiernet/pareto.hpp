#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hiernet/graph.hpp"

namespace hiernet {

struct MetricTuple {
  std::string label;
  std::size_t order = 0;
  double weighted_diameter = 0.0;
  std::size_t max_degree = 0;
  double total_edge_weight = 0.0;
};

MetricTuple measure_tuple(std::string label, const Graph& g);

// True when a is no worse than b in all three metrics and better in one.
bool dominates(const MetricTuple& a, const MetricTuple& b);

// Indices of the non-dominated records, in input order. All records must
// share one order.
std::vector<std::size_t> pareto_front(std::span<const MetricTuple> records);

}  // namespace hiernet
