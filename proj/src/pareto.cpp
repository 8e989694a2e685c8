#include "hiernet/pareto.hpp"

#include <cmath>

#include "hiernet/error.hpp"

namespace hiernet {

MetricTuple measure_tuple(std::string label, const Graph& g) {
  const auto rec = invariants(g);
  return {std::move(label), g.order(), rec.weighted_diameter, rec.max_degree, rec.total_edge_weight};
}

bool dominates(const MetricTuple& a, const MetricTuple& b) {
  const bool no_worse = a.weighted_diameter <= b.weighted_diameter && a.max_degree <= b.max_degree &&
                        a.total_edge_weight <= b.total_edge_weight;
  const bool better = a.weighted_diameter < b.weighted_diameter || a.max_degree < b.max_degree ||
                      a.total_edge_weight < b.total_edge_weight;
  return no_worse && better;
}

std::vector<std::size_t> pareto_front(std::span<const MetricTuple> records) {
  for (const auto& r : records) {
    require(r.order >= 2, "record '" + r.label + "' needs order >= 2");
    require(std::isfinite(r.weighted_diameter) && std::isfinite(r.total_edge_weight),
            "record '" + r.label + "' has a non-finite metric");
    if (r.order != records.front().order)
      fail(ErrorCode::kInvalidArgument, "records mix orders " + std::to_string(records.front().order) + " and " +
                                            std::to_string(r.order));
  }
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < records.size(); ++i) {
    bool beaten = false;
    for (std::size_t j = 0; j < records.size() && !beaten; ++j) beaten = j != i && dominates(records[j], records[i]);
    if (!beaten) front.push_back(i);
  }
  return front;
}

}  // namespace hiernet
