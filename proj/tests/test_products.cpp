#include <doctest.h>

#include <set>
#include <string>

#include "hiernet/error.hpp"
#include "hiernet/products.hpp"

using namespace hiernet;

TEST_CASE("hierarchical product examples") {
  const Graph c4c3 = hproduct(cycle_graph(4), cycle_graph(3));
  CHECK(c4c3.order() == 12);
  CHECK(c4c3.edge_count() == 16);

  // K2 x K2: modules {0,1} and {2,3}, roots 0 and 2 joined -> path 1-0-2-3.
  const Graph p = hproduct(complete_graph(2), complete_graph(2));
  CHECK(p.edge_count() == 3);
  CHECK(p.has_edge(0, 1));
  CHECK(p.has_edge(0, 2));
  CHECK(p.has_edge(2, 3));
  CHECK(invariants(p).diameter == 3);

  const Graph k3k3 = hproduct(complete_graph(3), complete_graph(3), 2.0);
  CHECK(k3k3.total_weight() == doctest::Approx(15.0));
  CHECK(k3k3.root() == 0);

  CHECK_THROWS_AS(hproduct(complete_graph(3), complete_graph(3), 0.0), Error);
  CHECK_THROWS_AS(hproduct(complete_graph(3), complete_graph(3), -1.0), Error);
}

TEST_CASE("product root and index layout") {
  const Graph g = Graph::build(3, {{0, 1, 1}, {1, 2, 1}}, 1);
  const Graph h = Graph::build(2, {{0, 1, 1}}, 1);
  const Graph p = hproduct(g, h, 3.0);
  CHECK(p.root() == 1 * 2 + 1);
  CHECK(p.weight(0 * 2 + 1, 1 * 2 + 1) == 3.0);
  CHECK(p.weight(1 * 2 + 1, 2 * 2 + 1) == 3.0);
  CHECK(p.weight(2 * 2 + 0, 2 * 2 + 1) == 1.0);
}

TEST_CASE("truncated product examples") {
  const Graph t = truncated_hproduct(complete_graph(3), complete_graph(3));
  CHECK(t.order() == 7);
  CHECK(t.degree(t.root()) == 2);
  std::size_t fours = 0;
  for (std::size_t v = 0; v < t.order(); ++v) fours += t.degree(v) == 4;
  CHECK(fours == 2);
  CHECK(invariants(t).max_degree == 4);

  const Graph t2 = truncated_hproduct(complete_graph(2), complete_graph(2));
  CHECK(t2.order() == 3);
  CHECK(t2.edge_count() == 2);
  CHECK(invariants(t2).diameter == 2);

  CHECK(build_hierarchy(HierarchySpec::uniform(complete_graph(3), 2, 1.0, true)) == t);
}

TEST_CASE("hierarchy assembly") {
  const Graph k = build_hierarchy(HierarchySpec::uniform(complete_graph(3), 2));
  CHECK(k.order() == 9);
  CHECK(k.edge_count() == 12);
  CHECK(invariants(k).diameter == 3);

  const Graph c5 = cycle_graph(5);
  CHECK(build_hierarchy(HierarchySpec::uniform(c5, 1)) == c5);

  const HierarchySpec s = HierarchySpec::uniform(complete_graph(3), 3, 1.5);
  const Graph folded = hproduct(complete_graph(3), hproduct(complete_graph(3), complete_graph(3), 1.5), 2.25);
  CHECK(build_hierarchy(s) == folded);
}

TEST_CASE("adjacency equals the Kronecker expansion") {
  for (double a : {0.5, 1.0, 2.0}) {
    const HierarchySpec s = HierarchySpec::uniform(complete_graph(3), 3, a);
    CHECK((adjacency_matrix(build_hierarchy(s)) - kronecker_adjacency(s)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((laplacian_matrix(build_hierarchy(s)) - kronecker_laplacian(s)).cwiseAbs().maxCoeff() < 1e-12);
  }
  HierarchySpec mixed;
  mixed.bases = {complete_graph(4), cycle_graph(5), complete_graph(3)};
  mixed.alphas = {1.0, 0.7, 3.0};
  CHECK((adjacency_matrix(build_hierarchy(mixed)) - kronecker_adjacency(mixed)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("algebraic properties") {
  const Graph a = cycle_graph(4), b = complete_graph(3), c = path_graph(3).with_root(1);
  SUBCASE("associativity at alpha = 1") {
    CHECK(adjacency_matrix(hproduct(hproduct(a, b), c)) == adjacency_matrix(hproduct(a, hproduct(b, c))));
  }
  SUBCASE("scalar distributivity") {
    const double s = 2.5;
    const auto lhs = adjacency_matrix(hproduct(a, b).scaled(s));
    const auto rhs = adjacency_matrix(hproduct(a.scaled(s), b.scaled(s)));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("not bilinear in the first factor") {
    const Graph a1 = Graph::build(4, {{0, 1, 1}, {2, 3, 1}});
    const Graph a2 = Graph::build(4, {{1, 2, 1}, {0, 3, 1}});
    const Graph sum = Graph::build(4, {{0, 1, 1}, {2, 3, 1}, {1, 2, 1}, {0, 3, 1}});
    const auto lhs = adjacency_matrix(hproduct(sum, b));
    const auto rhs = adjacency_matrix(hproduct(a1, b)) + adjacency_matrix(hproduct(a2, b));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() > 0.5);
  }
  SUBCASE("Laplacian of the weighted product") {
    const double alpha = 1.75;
    const Graph g = star_graph(4).with_root(2), h = cycle_graph(5).with_root(3);
    const auto lp = laplacian_matrix(hproduct(g, h, alpha));
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(5, 5);
    d(3, 3) = 1.0;
    const auto lg = laplacian_matrix(g), lh = laplacian_matrix(h);
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(20, 20);
    for (int i = 0; i < 4; ++i) {
      expect.block(i * 5, i * 5, 5, 5) += lh;
      for (int j = 0; j < 4; ++j) expect.block(i * 5, j * 5, 5, 5) += alpha * lg(i, j) * d;
    }
    CHECK((lp - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("order bookkeeping") {
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::size_t k = 1; k <= 6; ++k) {
      const HierarchySpec full = HierarchySpec::uniform(complete_graph(n), k);
      const HierarchySpec trunc = HierarchySpec::uniform(complete_graph(n), k, 1.0, true);
      std::size_t expect_trunc = 0, term = 1, pow = 1;
      for (std::size_t i = 0; i <= k; ++i, term *= n - 1) expect_trunc += term;
      for (std::size_t i = 0; i < k; ++i) pow *= n;
      CHECK(full.order() == pow);
      CHECK(trunc.order() == expect_trunc);
      if (pow <= 4096) {
        CHECK(build_hierarchy(full).order() == pow);
        CHECK(build_hierarchy(trunc).order() == expect_trunc);
      }
    }
  }
}

TEST_CASE("spec validation") {
  HierarchySpec s;
  CHECK_THROWS_AS(s.validate(), Error);
  s.bases = {complete_graph(3), complete_graph(3)};
  s.alphas = {1.0};
  CHECK_THROWS_AS(s.validate(), Error);
  s.alphas = {2.0, 1.0};
  CHECK_THROWS_AS(s.validate(), Error);
  s.alphas = {1.0, 0.0};
  CHECK_THROWS_AS(s.validate(), Error);
  s.alphas = {1.0, 1.0};
  CHECK_NOTHROW(s.validate());
  s.bases[1] = Graph::build(3, {{0, 1, 1.0}});
  CHECK_THROWS_AS(s.validate(), Error);

  HierarchySpec t = HierarchySpec::uniform(complete_graph(3), 2, 1.0, true);
  t.bases[1] = complete_graph(4);
  CHECK_THROWS_AS(t.validate(), Error);
  t.bases[1] = complete_graph(3).with_root(1);
  CHECK_THROWS_AS(t.validate(), Error);
}

TEST_CASE("address codec") {
  const AddressCodec c({3, 3, 3}, false);
  CHECK(c.address(14).digits == std::vector<std::size_t>{2, 1, 1});
  CHECK(c.index(NodeAddress{{2, 1, 1}}) == 14);

  const AddressCodec t({3, 3}, true);
  CHECK(t.size() == 7);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto a = t.address(i);
    seen.insert(std::to_string(a.digits[1]) + std::to_string(a.digits[0]));
  }
  CHECK(seen == std::set<std::string>{"00", "10", "20", "11", "12", "21", "22"});

  // Top digit 0 then bottom digit 1: invalid, and the message names level 1.
  try {
    t.index(NodeAddress{{1, 0}});
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("level 1") != std::string::npos);
  }
  CHECK_THROWS_AS(c.index(NodeAddress{{3, 0, 0}}), Error);
  CHECK_THROWS_AS(c.address(27), Error);
}

TEST_CASE("codec round trip and agreement with built graphs") {
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::size_t k = 1; k <= 6; ++k) {
      for (bool trunc : {false, true}) {
        const AddressCodec c(std::vector<std::size_t>(k, n), trunc);
        for (std::size_t i = 0; i < c.size(); ++i) CHECK(c.index(c.address(i)) == i);
      }
    }
  }
  // Truncated node i of the built graph is the i-th valid address in
  // increasing full index order.
  const HierarchySpec s = HierarchySpec::uniform(complete_graph(3), 3, 1.0, true);
  const AddressCodec c(s), full({3, 3, 3}, false);
  std::size_t expect = 0;
  for (std::size_t idx = 0; idx < full.size(); ++idx) {
    const auto a = full.address(idx);
    bool ok = true;
    try {
      c.check(a);
    } catch (const Error&) {
      ok = false;
    }
    if (ok) CHECK(c.index(a) == expect++);
  }
  CHECK(expect == build_hierarchy(s).order());
}
