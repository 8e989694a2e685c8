#include <doctest.h>

#include <cmath>

#include "hiernet/error.hpp"
#include "hiernet/ghz.hpp"

using namespace hiernet;

TEST_CASE("deterministic GHZ time") {
  CHECK(deterministic_ghz_time(path_graph(4), 0) == 3.0);
  const HierarchySpec s = HierarchySpec::uniform(complete_graph(3), 2);
  CHECK(ghz_worst_case(build_hierarchy(s)) == 3.0);
  CHECK(ghz_worst_case(build_hierarchy(HierarchySpec::uniform(complete_graph(3), 2, 2.0))) == 4.0);
  for (const Graph& g : {build_hierarchy(s), cycle_graph(9), grid_graph(2, 4), porcupine_graph(4)}) {
    CHECK(ghz_best_case(g) <= ghz_worst_case(g));
    CHECK(ghz_worst_case(g) <= 2.0 * ghz_best_case(g));
  }
  CHECK_THROWS_AS(deterministic_ghz_time(Graph::build(3, {{0, 1, 1.0}}), 0), Error);
}

TEST_CASE("probability weights") {
  const HierarchySpec s = HierarchySpec::uniform(complete_graph(3), 2);
  const Graph p = probability_weights(s, 0.1, 0.5);
  std::size_t bottom = 0, top = 0;
  for (const auto& e : p.edges()) {
    if (std::abs(e.w - 0.1) < 1e-15) ++bottom;
    if (std::abs(e.w - 0.05) < 1e-15) ++top;
  }
  CHECK(bottom == 9);
  CHECK(top == 3);
  for (const auto& e : probability_weights(s, 0.3, 1.0).edges()) CHECK(e.w == doctest::Approx(0.3));
  CHECK_THROWS_AS(probability_weights(s, 0.0, 0.5), Error);
  CHECK_THROWS_AS(probability_weights(s, 1.5, 0.5), Error);
  CHECK_THROWS_AS(probability_weights(s, 0.5, 1.5), Error);
}

TEST_CASE("spreading with certain edges is hop eccentricity") {
  const Graph g = build_hierarchy(HierarchySpec::uniform(complete_graph(3), 3));
  const Graph p = uniform_probability(g, 1.0);
  for (std::size_t s : {0, 5, 26}) {
    double ecc = 0.0;
    for (double d : distances_from(g, s, Metric::kHop)) ecc = std::max(ecc, d);
    CHECK(static_cast<double>(simulate_ghz(p, s, 99)) == ecc);
  }
}

TEST_CASE("single edge is geometric") {
  const Graph p = uniform_probability(complete_graph(2), 0.5);
  const auto st = ghz_trials(p, 0, 10000, 2024, 0.5);
  CHECK(std::abs(st.mean - 2.0) <= 0.05);
  CHECK(st.min >= 1);
}

TEST_CASE("trial statistics") {
  const Graph p = uniform_probability(grid_graph(2, 4), 0.3);
  const auto one = ghz_trials(p, 0, 1, 5, 0.3);
  CHECK(one.std == 0.0);
  CHECK(one.mean == static_cast<double>(one.min));
  CHECK(one.mean == static_cast<double>(simulate_ghz(p, 0, splitmix64(5))));

  const auto a = ghz_trials(p, 0, 50, 77, 0.3, 1);
  const auto b = ghz_trials(p, 0, 50, 77, 0.3, 3);
  CHECK(a.outcomes == b.outcomes);
  CHECK(a.mean == b.mean);
  CHECK(a.prediction == doctest::Approx(6.0 / 0.3));
  CHECK(a.bound_lo == doctest::Approx(6.0));
  CHECK(a.bound_hi == doctest::Approx(20.0));
}

TEST_CASE("membership trace never shrinks") {
  const Graph p = probability_weights(HierarchySpec::uniform(complete_graph(3), 3), 0.2, 0.8);
  std::vector<std::size_t> trace;
  const auto t = simulate_ghz(p, 0, 3, &trace);
  CHECK(trace.size() == t);
  CHECK(trace.back() == p.order());
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] >= trace[i - 1]);
}

TEST_CASE("center node") {
  CHECK(center_node(path_graph(5)) == 2);
  const Graph p = probability_weights(HierarchySpec::uniform(complete_graph(3), 5), 0.1, 0.7);
  CHECK(center_node(time_weights(p)) == 0);
}
