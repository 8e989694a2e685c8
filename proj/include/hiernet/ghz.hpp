#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hiernet/graph.hpp"
#include "hiernet/products.hpp"
#include "hiernet/random.hpp"

namespace hiernet {

// Deterministic spreading: every edge weight is a gate time.
double deterministic_ghz_time(const Graph& g, std::size_t start);
double ghz_worst_case(const Graph& g);  // weighted diameter
double ghz_best_case(const Graph& g);   // weighted radius

// Node of minimum weighted eccentricity; ties go to the smallest index.
std::size_t center_node(const Graph& g);

// Throws unless every edge weight lies in (0, 1] and g is connected.
void check_probabilities(const Graph& p);

// Level-i edges of the hierarchy carry p0 alpha^(i-1). Base weights are
// ignored; only their structure is used. Requires 0 < p0 <= 1 and
// 0 < alpha <= 1.
Graph probability_weights(const HierarchySpec& spec, double p0, double alpha);
// Every edge of g carries p0.
Graph uniform_probability(const Graph& g, double p0);

// Edge weights 1/p.
Graph time_weights(const Graph& p);

inline constexpr std::uint64_t kGhzStepCap = 1'000'000;

// Steps until every node has joined. Frontier edges are visited in sorted
// edge order and each draws one uniform from an mt19937_64 seeded with
// `seed`. When trace is given it receives |F| after every step.
std::uint64_t simulate_ghz(const Graph& p, std::size_t start, std::uint64_t seed,
                           std::vector<std::size_t>* trace = nullptr);

struct TrialStats {
  std::size_t trials = 0;
  std::size_t start = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for one trial
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  std::uint64_t seed = 0;
  double prediction = 0.0;
  double bound_lo = 0.0;
  double bound_hi = 0.0;
  std::vector<std::uint64_t> outcomes;
};

// Trial t runs simulate_ghz with seed splitmix64(seed + t).
// prediction = eccentricity of start under weights 1/p
// bound_lo   = eccentricity of start under weights p0/p
// bound_hi   = bound_lo / p0
TrialStats ghz_trials(const Graph& p, std::size_t start, std::size_t trials, std::uint64_t seed,
                      double p0, unsigned jobs = 1);

}  // namespace hiernet
