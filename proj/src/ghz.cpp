#include "hiernet/ghz.hpp"

#include <algorithm>
#include <cmath>

#include "hiernet/error.hpp"
#include "parallel.hpp"

namespace hiernet {

namespace {

double eccentricity(const Graph& g, std::size_t start) {
  if (start >= g.order()) fail(ErrorCode::kOutOfRange, "start node out of range");
  const auto d = distances_from(g, start, Metric::kWeight);
  double e = 0.0;
  for (double x : d) {
    if (x == kUnreachable) fail(ErrorCode::kDisconnected, "graph is disconnected");
    e = std::max(e, x);
  }
  return e;
}

Graph reweighted(const Graph& g, double (*f)(double, double), double arg) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.w = f(e.w, arg);
  return Graph::build(g.order(), std::move(edges), g.root()).with_module_sizes(
      {g.module_sizes().begin(), g.module_sizes().end()});
}

}  // namespace

double deterministic_ghz_time(const Graph& g, std::size_t start) { return eccentricity(g, start); }

double ghz_worst_case(const Graph& g) {
  const auto e = eccentricities(g, Metric::kWeight);
  return *std::max_element(e.begin(), e.end());
}

double ghz_best_case(const Graph& g) {
  const auto e = eccentricities(g, Metric::kWeight);
  return *std::min_element(e.begin(), e.end());
}

std::size_t center_node(const Graph& g) {
  const auto e = eccentricities(g, Metric::kWeight);
  const double m = *std::min_element(e.begin(), e.end());
  // Path sums of 1/p carry rounding noise; treat near-equal values as ties.
  const double tol = 1e-9 * std::max(1.0, m);
  std::size_t i = 0;
  while (e[i] > m + tol) ++i;
  return i;
}

void check_probabilities(const Graph& p) {
  for (const auto& e : p.edges())
    if (!(e.w > 0.0 && e.w <= 1.0))
      fail(ErrorCode::kInvalidArgument, "edge probability outside (0, 1]");
  if (!is_connected(p)) fail(ErrorCode::kDisconnected, "probability graph is disconnected");
}

Graph probability_weights(const HierarchySpec& spec, double p0, double alpha) {
  require(p0 > 0.0 && p0 <= 1.0, "p0 must lie in (0, 1]");
  require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
  HierarchySpec unit = spec;
  for (auto& b : unit.bases) b = reweighted(b, [](double, double) { return 1.0; }, 0.0);
  unit.alphas.assign(spec.levels(), 1.0);
  for (std::size_t i = 1; i < unit.alphas.size(); ++i) unit.alphas[i] = unit.alphas[i - 1] * alpha;
  const Graph p = build_hierarchy(unit).scaled(p0);
  check_probabilities(p);
  return p;
}

Graph uniform_probability(const Graph& g, double p0) {
  require(p0 > 0.0 && p0 <= 1.0, "p0 must lie in (0, 1]");
  Graph p = reweighted(g, [](double, double x) { return x; }, p0);
  check_probabilities(p);
  return p;
}

Graph time_weights(const Graph& p) {
  return reweighted(p, [](double w, double) { return 1.0 / w; }, 0.0);
}

std::uint64_t simulate_ghz(const Graph& p, std::size_t start, std::uint64_t seed,
                           std::vector<std::size_t>* trace) {
  const std::size_t n = p.order();
  if (start >= n) fail(ErrorCode::kOutOfRange, "start node out of range");
  const auto edges = p.edges();
  std::mt19937_64 rng(seed);
  std::vector<char> in(n, 0);
  in[start] = 1;
  std::size_t members = 1;
  if (trace) trace->clear();

  std::vector<std::size_t> frontier;
  auto rebuild = [&] {
    frontier.clear();
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (in[edges[e].u] != in[edges[e].v]) frontier.push_back(e);
  };
  rebuild();

  std::vector<std::size_t> joined;
  std::uint64_t t = 0;
  while (members < n) {
    if (t == kGhzStepCap) fail(ErrorCode::kNumeric, "GHZ simulation hit the step cap");
    ++t;
    joined.clear();
    for (std::size_t e : frontier) {
      if (uniform01(rng) < edges[e].w) joined.push_back(in[edges[e].u] ? edges[e].v : edges[e].u);
    }
    const std::size_t before = members;
    for (std::size_t v : joined) {
      if (!in[v]) {
        in[v] = 1;
        ++members;
      }
    }
    if (trace) {
      if (!trace->empty() && members < trace->back()) fail(ErrorCode::kNumeric, "GHZ membership shrank");
      trace->push_back(members);
    }
    if (members != before) rebuild();
  }
  return t;
}

TrialStats ghz_trials(const Graph& p, std::size_t start, std::size_t trials, std::uint64_t seed, double p0,
                      unsigned jobs) {
  require(trials >= 1, "need at least one trial");
  require(p0 > 0.0 && p0 <= 1.0, "p0 must lie in (0, 1]");
  check_probabilities(p);
  TrialStats s;
  s.trials = trials;
  s.start = start;
  s.seed = seed;
  s.outcomes.resize(trials);
  detail::parallel_for(trials, jobs, [&](std::size_t t) {
    s.outcomes[t] = simulate_ghz(p, start, splitmix64(seed + t));
  });

  double sum = 0.0;
  for (auto x : s.outcomes) sum += static_cast<double>(x);
  s.mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (auto x : s.outcomes) ss += (static_cast<double>(x) - s.mean) * (static_cast<double>(x) - s.mean);
  s.std = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
  s.min = *std::min_element(s.outcomes.begin(), s.outcomes.end());
  s.max = *std::max_element(s.outcomes.begin(), s.outcomes.end());

  s.prediction = eccentricity(time_weights(p), start);
  s.bound_lo = eccentricity(reweighted(p, [](double w, double q) { return q / w; }, p0), start);
  s.bound_hi = s.bound_lo / p0;
  return s;
}

}  // namespace hiernet
