#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "qindex/combinatorics.hpp"
#include "qindex/graph.hpp"

using namespace qindex;

TEST_CASE("from_edge_list builds exactly the given edges") {
  const Graph k2 = from_edge_list(2, {{0, 1}});
  CHECK(k2.order() == 2);
  CHECK(k2.edge_count() == 1);
  CHECK(k2.has_edge(1, 0));

  const Graph empty3 = from_edge_list(3, {});
  CHECK(empty3.order() == 3);
  CHECK(empty3.edge_count() == 0);

  const Graph c5 = from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  for (Vertex v = 0; v < 5; ++v) CHECK(c5.degree(v) == 2);
  CHECK(c5 == cycle_graph(5));
}

TEST_CASE("from_edge_list collapses duplicates and ignores orientation") {
  const Graph g = from_edge_list(3, {{0, 1}, {1, 0}, {0, 1}, {2, 1}});
  CHECK(g.edge_count() == 2);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
}

TEST_CASE("from_edge_list rejects bad pairs") {
  CHECK_THROWS_AS(from_edge_list(3, {{0, 3}}), std::out_of_range);
  CHECK_THROWS_AS(from_edge_list(3, {{1, 1}}), std::invalid_argument);
}

TEST_CASE("complete_multipartite") {
  CHECK(complete_multipartite(PartitionSpec({1, 1, 1, 1})) == complete_graph(4));

  const Graph k33 = complete_multipartite(PartitionSpec({3, 3}));
  CHECK(k33.edge_count() == 9);
  for (Vertex v = 0; v < 6; ++v) CHECK(k33.degree(v) == 3);
  CHECK_FALSE(k33.has_edge(0, 2));
  CHECK(k33.has_edge(0, 3));

  const Graph k444 = complete_multipartite(PartitionSpec({4, 4, 4}));
  CHECK(k444.order() == 12);
  for (Vertex v = 0; v < 12; ++v) CHECK(k444.degree(v) == 8);
}

TEST_CASE("PartitionSpec validation") {
  CHECK_THROWS_AS(PartitionSpec({}), std::invalid_argument);
  CHECK_THROWS_AS(PartitionSpec({2, 0}), std::invalid_argument);
}

TEST_CASE("turan_graph") {
  CHECK(turan_graph(12, 3) == complete_multipartite(PartitionSpec({4, 4, 4})));
  const Graph t52 = turan_graph(5, 2);
  CHECK(t52.edge_count() == 6);
  CHECK(complete_multipartite_parts(t52) == std::vector<std::size_t>{3, 2});
  CHECK(turan_graph(4, 4) == complete_graph(4));
  CHECK_THROWS_AS(turan_graph(4, 0), std::invalid_argument);

  for (std::size_t n = 1; n <= 10; ++n)
    for (std::size_t r = 1; r <= n; ++r) {
      INFO("n=" << n << " r=" << r);
      CHECK_FALSE(has_clique(turan_graph(n, r), r + 1));
      CHECK(clique_size(turan_graph(n, r)) == r);
    }
}

TEST_CASE("blow_up") {
  CHECK(blow_up(complete_graph(2), 3) == complete_multipartite(PartitionSpec({3, 3})));
  CHECK(blow_up(petersen_graph(), 1) == petersen_graph());
  CHECK_THROWS_AS(blow_up(complete_graph(2), 0), std::invalid_argument);

  // Octahedron: each of the three classes {0,1}, {2,3}, {4,5} is independent and fully joined to the others.
  const Graph oct = blow_up(complete_graph(3), 2);
  CHECK(oct.order() == 6);
  for (Vertex v = 0; v < 6; ++v) CHECK(oct.degree(v) == 4);
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v) CHECK(oct.has_edge(u, v) == (u / 2 != v / 2));
  CHECK(complete_multipartite_parts(oct) == std::vector<std::size_t>{2, 2, 2});
}

TEST_CASE("blow_up scales order and edges") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = oracle::random_graph(1 + rng() % 8, 0.5, rng);
    for (std::size_t t = 1; t <= 4; ++t) {
      const Graph b = blow_up(g, t);
      CHECK(b.order() == t * g.order());
      CHECK(b.edge_count() == t * t * g.edge_count());
    }
  }
}

TEST_CASE("delete_vertex") {
  CHECK(delete_vertex(complete_graph(4), 0) == complete_graph(3));
  CHECK(delete_vertex(cycle_graph(5), 0) == path_graph(4));
  const Graph k33 = complete_multipartite(PartitionSpec({3, 3}));
  for (Vertex v = 0; v < 6; ++v) {
    auto parts = complete_multipartite_parts(delete_vertex(k33, v));
    REQUIRE(parts);
    std::sort(parts->begin(), parts->end());
    CHECK(*parts == std::vector<std::size_t>{2, 3});
  }
  CHECK_THROWS_AS(delete_vertex(k33, 6), std::out_of_range);

  // Shifting is order preserving: vertex 3 of C_5 becomes 2 once vertex 1 is gone.
  const Graph d = delete_vertex(cycle_graph(5), 1);
  CHECK(d.has_edge(1, 2));
  CHECK(d.has_edge(2, 3));
  CHECK(d.has_edge(3, 0));
  CHECK(d.edge_count() == 3);
}

TEST_CASE("common_neighbors") {
  const Graph k4 = complete_graph(4);
  CHECK(common_neighbors(k4, 0, 1).to_vector() == std::vector<Vertex>{2, 3});
  CHECK(common_neighbors(cycle_graph(5), 0, 1).empty());
  const Graph k33 = complete_multipartite(PartitionSpec({3, 3}));
  CHECK(common_neighbors(k33, 0, 1).to_vector() == std::vector<Vertex>{3, 4, 5});
  CHECK_THROWS_AS(common_neighbors(k4, 2, 2), std::invalid_argument);
}

TEST_CASE("common neighborhood of an edge obeys inclusion-exclusion") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = oracle::random_graph(2 + rng() % 10, 0.6, rng);
    for (auto [u, v] : g.edges()) {
      const auto c = common_neighbors(g, u, v).size();
      CHECK(static_cast<long>(c) >= static_cast<long>(g.degree(u) + g.degree(v)) - static_cast<long>(g.order()));
      CHECK(c == oracle::triangles_through(g, u, v));
    }
  }
}

TEST_CASE("complement is an involution and edge ops return new values") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = oracle::random_graph(1 + rng() % 12, 0.4, rng);
    CHECK(complement(complement(g)) == g);
    CHECK(complement(g).edge_count() + g.edge_count() == g.order() * (g.order() - 1) / 2);
  }
  const Graph g = cycle_graph(4);
  const Graph h = add_edge(g, 0, 2);
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK(h.has_edge(0, 2));
  CHECK(remove_edge(h, 0, 2) == g);
  CHECK(degrees(h) == std::vector<std::size_t>{3, 2, 3, 2});
  CHECK(edge_count(h) == 5);
}

TEST_CASE("connected_components") {
  const Graph g = from_edge_list(7, {{0, 3}, {3, 5}, {1, 2}});
  const auto comps = connected_components(g);
  REQUIRE(comps.size() == 4);
  CHECK(comps[0] == std::vector<Vertex>{0, 3, 5});
  CHECK(comps[1] == std::vector<Vertex>{1, 2});
  CHECK(comps[2] == std::vector<Vertex>{4});
  CHECK(comps[3] == std::vector<Vertex>{6});
  CHECK(connected_components(petersen_graph()).size() == 1);
}

TEST_CASE("large orders cross word boundaries") {
  const Graph g = cycle_graph(130);
  CHECK(g.edge_count() == 130);
  CHECK(g.has_edge(63, 64));
  CHECK(g.has_edge(129, 0));
  CHECK(common_neighbors(g, 63, 65).to_vector() == std::vector<Vertex>{64});
}
