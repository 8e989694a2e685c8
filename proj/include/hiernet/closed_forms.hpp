#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "hiernet/graph.hpp"

namespace hiernet {

// Invariants of one base graph G, the inputs to the hierarchy recursions.
struct BaseInvariants {
  std::size_t order = 0;
  std::size_t diameter = 0;
  std::size_t root_eccentricity = 0;
  double weighted_diameter = 0.0;
  double weighted_root_eccentricity = 0.0;
  std::size_t max_degree = 0;
  std::size_t root_degree = 0;
  double total_weight = 0.0;

  static BaseInvariants measure(const Graph& g);
};

// Regimes of the geometric K_n hierarchy as alpha moves past 1 and n.
enum class Regime { kAlphaBelowOne, kAlphaOne, kBetween, kAlphaEqualsN, kAlphaAboveN };

Regime classify_regime(std::size_t n, double alpha);
std::string_view regime_name(Regime r);

struct FormulaRecord {
  std::size_t diameter = 0;
  std::size_t root_eccentricity = 0;
  double weighted_diameter = 0.0;
  double weighted_root_eccentricity = 0.0;
  std::size_t max_degree = 0;
  double total_edge_weight = 0.0;
  // Set when alphas is geometric; ratio alphas[1] (1 for k = 1).
  std::optional<Regime> regime;
};

// Closed forms for the k-level hierarchy over one repeated base:
//   diameter     2(k-1) eps + delta
//   root ecc     k eps
//   weighted     2 eps_w sum_{j<k} alpha_j + delta_w alpha_k
//   weighted ecc eps_w sum_{j<=k} alpha_j
//   max degree   (k-1) deg(root) + Delta
//   weight       w(G) sum_i alpha_i n^(k-i)
FormulaRecord hierarchy_formulas(const BaseInvariants& base, std::size_t k,
                                 std::span<const double> alphas);

// Geometric K_n hierarchy.
double kn_weighted_diameter(std::size_t n, std::size_t k, double alpha);
double kn_total_weight(std::size_t n, std::size_t k, double alpha);

// sum_{i=0}^{k} (n-1)^i
std::uint64_t truncated_node_count(std::size_t n, std::size_t k);

struct DegreeDiameterBounds {
  double moore_bound = 0.0;
  std::optional<double> treewidth_capacity;
};

// Moore bound (D (D-1)^d - 2) / (D - 2), D >= 3; with a tree-width t and odd
// diameter d, also the capacity t (D-1)^((d-1)/2).
DegreeDiameterBounds degree_diameter_checks(double max_degree, double diameter,
                                            std::optional<double> treewidth = std::nullopt);

// n^k over the tree-width capacity of a truncated K_n hierarchy with
// D = 2(n-1), d = 2k-1, t = n-1.
double truncated_capacity_ratio(std::size_t n, std::size_t k);

}  // namespace hiernet
