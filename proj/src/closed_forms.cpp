#include "hiernet/closed_forms.hpp"

#include <cmath>
#include <limits>

#include "hiernet/error.hpp"

namespace hiernet {

namespace {
constexpr double kRegimeTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kRegimeTol * std::max(1.0, std::abs(b)); }
}  // namespace

BaseInvariants BaseInvariants::measure(const Graph& g) {
  const auto rec = invariants(g);
  BaseInvariants b;
  b.order = g.order();
  b.diameter = rec.diameter;
  b.root_eccentricity = rec.root_eccentricity;
  b.weighted_diameter = rec.weighted_diameter;
  b.weighted_root_eccentricity = rec.weighted_root_eccentricity;
  b.max_degree = rec.max_degree;
  b.root_degree = g.degree(g.root());
  b.total_weight = rec.total_edge_weight;
  return b;
}

Regime classify_regime(std::size_t n, double alpha) {
  require(alpha > 0.0, "alpha must be positive");
  const double nn = static_cast<double>(n);
  if (near(alpha, 1.0)) return Regime::kAlphaOne;
  if (near(alpha, nn)) return Regime::kAlphaEqualsN;
  if (alpha < 1.0) return Regime::kAlphaBelowOne;
  return alpha < nn ? Regime::kBetween : Regime::kAlphaAboveN;
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::kAlphaBelowOne: return "alpha<1";
    case Regime::kAlphaOne: return "alpha=1";
    case Regime::kBetween: return "1<alpha<n";
    case Regime::kAlphaEqualsN: return "alpha=n";
    case Regime::kAlphaAboveN: return "alpha>n";
  }
  return "?";
}

FormulaRecord hierarchy_formulas(const BaseInvariants& base, std::size_t k, std::span<const double> alphas) {
  require(k >= 1, "hierarchy needs k >= 1");
  require(alphas.size() == k, "need one alpha per level");
  require(near(alphas[0], 1.0), "alphas[0] must be 1");

  FormulaRecord f;
  f.root_eccentricity = k * base.root_eccentricity;
  f.diameter = 2 * (k - 1) * base.root_eccentricity + base.diameter;
  f.max_degree = (k - 1) * base.root_degree + base.max_degree;

  double below_top = 0.0;  // sum_{j<k} alpha_j
  for (std::size_t j = 0; j + 1 < k; ++j) below_top += alphas[j];
  const double all = below_top + alphas[k - 1];
  f.weighted_root_eccentricity = base.weighted_root_eccentricity * all;
  f.weighted_diameter = 2.0 * base.weighted_root_eccentricity * below_top + base.weighted_diameter * alphas[k - 1];

  // Horner form of sum_i alpha_i n^(k-i).
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc = acc * static_cast<double>(base.order) + alphas[i];
  f.total_edge_weight = base.total_weight * acc;

  const double ratio = k >= 2 ? alphas[1] : 1.0;
  bool geometric = true;
  for (std::size_t i = 1; i < k; ++i)
    if (!near(alphas[i], alphas[i - 1] * ratio)) geometric = false;
  if (geometric) f.regime = classify_regime(base.order, ratio);
  return f;
}

double kn_weighted_diameter(std::size_t n, std::size_t k, double alpha) {
  require(n >= 2 && k >= 1, "need n >= 2 and k >= 1");
  require(alpha > 0.0, "alpha must be positive");
  const double kk = static_cast<double>(k);
  if (near(alpha, 1.0)) return 2.0 * kk - 1.0;
  return (std::pow(alpha, kk) + std::pow(alpha, kk - 1.0) - 2.0) / (alpha - 1.0);
}

double kn_total_weight(std::size_t n, std::size_t k, double alpha) {
  require(n >= 2 && k >= 1, "need n >= 2 and k >= 1");
  require(alpha > 0.0, "alpha must be positive");
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double edges = nn * (nn - 1.0) / 2.0;
  if (near(alpha, nn)) return edges * kk * std::pow(nn, kk - 1.0);
  return edges * (std::pow(nn, kk) - std::pow(alpha, kk)) / (nn - alpha);
}

std::uint64_t truncated_node_count(std::size_t n, std::size_t k) {
  require(n >= 2, "need n >= 2");
  const std::uint64_t m = n - 1;
  std::uint64_t total = 1;
  std::uint64_t term = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (m != 0 && term > std::numeric_limits<std::uint64_t>::max() / m) fail(ErrorCode::kOutOfRange, "node count overflows");
    term *= m;
    if (total > std::numeric_limits<std::uint64_t>::max() - term) fail(ErrorCode::kOutOfRange, "node count overflows");
    total += term;
  }
  return total;
}

DegreeDiameterBounds degree_diameter_checks(double max_degree, double diameter, std::optional<double> treewidth) {
  if (near(max_degree, 2.0)) fail(ErrorCode::kInvalidArgument, "Moore bound has a pole at max degree 2");
  require(max_degree >= 3.0, "Moore bound needs max degree >= 3");
  require(diameter >= 1.0, "diameter must be at least 1");
  DegreeDiameterBounds b;
  b.moore_bound = (max_degree * std::pow(max_degree - 1.0, diameter) - 2.0) / (max_degree - 2.0);
  if (treewidth) {
    require(*treewidth > 0.0, "tree-width must be positive");
    const double d = std::round(diameter);
    require(near(d, diameter) && static_cast<long long>(d) % 2 == 1, "tree-width capacity needs an odd diameter");
    b.treewidth_capacity = *treewidth * std::pow(max_degree - 1.0, (diameter - 1.0) / 2.0);
  }
  return b;
}

double truncated_capacity_ratio(std::size_t n, std::size_t k) {
  require(n >= 3 && k >= 1, "need n >= 3 and k >= 1");
  const double nn = static_cast<double>(n);
  const auto b = degree_diameter_checks(2.0 * (nn - 1.0), 2.0 * static_cast<double>(k) - 1.0, nn - 1.0);
  return std::pow(nn, static_cast<double>(k)) / *b.treewidth_capacity;
}

}  // namespace hiernet
