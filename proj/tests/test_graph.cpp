#include <doctest.h>

#include <stdexcept>

#include "vmlab/graph.hpp"
#include "vmlab/rng.hpp"

using namespace vmlab;

namespace {

Graph random_graph(std::size_t n, Rng& rng, double p = 0.5) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) g.set_edge_at(i, j, true);
  return g;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("local complementation by hand") {
  // path a-b-c with a=0, b=1, c=2
  const Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const Graph lc = local_complement(path, 1);
  CHECK(lc == Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}));

  const Graph with_isolated = Graph::from_edges(3, {{0, 1}});
  CHECK(local_complement(with_isolated, 2) == with_isolated);

  CHECK_THROWS_AS(local_complement(path, 7), std::invalid_argument);
}

TEST_CASE("local complementation is an involution") {
  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.below(10);
    const Graph g = random_graph(n, rng);
    for (std::size_t v = 0; v < n; ++v)
      CHECK(local_complement(local_complement(g, int(v)), int(v)) == g);
  }
}

TEST_CASE("complementation outside U toggles exactly the N(w) pairs in U") {
  Rng rng(22);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 3 + rng.below(8);
    const Graph g = random_graph(n, rng);
    const int w = int(rng.below(n));
    std::vector<int> u;
    for (std::size_t v = 0; v < n; ++v)
      if (int(v) != w && rng.bernoulli(0.6)) u.push_back(int(v));
    const Graph before = induced(g, u);
    const Graph after = induced(local_complement(g, w), u);
    for (std::size_t a = 0; a < u.size(); ++a)
      for (std::size_t b = a + 1; b < u.size(); ++b) {
        const bool toggled = before.has_edge_at(a, b) != after.has_edge_at(a, b);
        const bool both_nbrs =
            g.has_edge(u[a], w) && g.has_edge(u[b], w);
        CHECK(toggled == both_nbrs);
      }
  }
}

TEST_CASE("pivot basics") {
  const Graph k2 = Graph::from_edges(2, {{0, 1}});
  CHECK(pivot(k2, 0, 1) == k2);

  const Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const Graph byhand =
      local_complement(local_complement(local_complement(path, 0), 1), 0);
  CHECK(pivot(path, 0, 1) == byhand);

  CHECK_THROWS_AS(pivot(path, 0, 2), std::invalid_argument);
}

TEST_CASE("pivot is order independent") {
  Rng rng(23);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng.below(9);
    const Graph g = random_graph(n, rng);
    for (auto [u, v] : g.edges()) {
      CHECK(pivot(g, u, v) == pivot(g, v, u));
    }
  }
}

TEST_CASE("pivot agrees with the tripartite route, exhaustively to n = 6") {
  for (std::size_t n = 2; n <= 6; ++n) {
    const std::size_t bits = pair_count(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << bits); ++mask) {
      const Graph g = graph_from_edge_mask(n, mask);
      for (auto [u, v] : g.edges())
        CHECK(pivot(g, u, v) == pivot_tripartite(g, u, v));
    }
  }
}

TEST_CASE("pivot agrees with the tripartite route on random graphs") {
  Rng rng(24);
  for (int t = 0; t < 30; ++t) {
    const Graph g = random_graph(7 + rng.below(6), rng);
    for (auto [u, v] : g.edges())
      CHECK(pivot(g, u, v) == pivot_tripartite(g, u, v));
  }
}

TEST_CASE("induced subgraphs") {
  const Graph k3 = Graph::complete(3);
  CHECK(induced(k3, {0, 1}) == Graph::from_edges(2, {{0, 1}}));
  CHECK(induced(k3, {0, 1}).labels() == std::vector<int>{0, 1});
  Rng rng(25);
  const Graph g = random_graph(6, rng);
  CHECK(induced(g, g.labels()) == g);
  CHECK_THROWS_AS(induced(g, {0, 99}), std::invalid_argument);
}

TEST_CASE("symmetric difference") {
  Rng rng(26);
  const Graph g = random_graph(6, rng);
  const Graph h = random_graph(6, rng);
  CHECK(symmetric_difference(g, g).edge_count() == 0);
  CHECK(symmetric_difference(g, Graph(6)) == g);
  const Graph d = symmetric_difference(g, h);
  CHECK(d.adjacency() == add(g.adjacency(), h.adjacency()));
  CHECK_THROWS_AS(symmetric_difference(g, Graph(5)), std::invalid_argument);
}

TEST_CASE("graph6 round trips and fixed encodings") {
  CHECK(to_graph6(Graph::from_edges(2, {{0, 1}})) == "A_");
  CHECK(from_graph6("A_") == Graph::from_edges(2, {{0, 1}}));
  CHECK(to_graph6(Graph(1)) == "@");
  CHECK(from_graph6("@") == Graph(1));

  Rng rng(27);
  for (int t = 0; t < 60; ++t) {
    const Graph g = random_graph(1 + rng.below(20), rng);
    CHECK(from_graph6(to_graph6(g)) == g);
  }
  // large-n header form
  const Graph big(100);
  CHECK(from_graph6(to_graph6(big)) == big);
}

TEST_CASE("graph6 rejects malformed input with a position") {
  CHECK_THROWS_WITH_AS(from_graph6(""), "graph6: byte 0: unexpected end of input",
                       std::invalid_argument);
  CHECK_THROWS_AS(from_graph6("B"), std::invalid_argument);    // truncated
  CHECK_THROWS_AS(from_graph6("A_x"), std::invalid_argument);  // trailing
  CHECK_THROWS_AS(from_graph6("A\x20"), std::invalid_argument);  // bad byte
  // nonzero padding: K2 needs one bit; "Ao" sets a padding bit
  CHECK_THROWS_AS(from_graph6("Ao"), std::invalid_argument);
}

TEST_CASE("edge mask round trip") {
  Rng rng(28);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng.below(11);
    const Graph g = random_graph(n, rng);
    CHECK(graph_from_edge_mask(n, edge_mask(g)) == g);
  }
}

}  // TEST_SUITE
