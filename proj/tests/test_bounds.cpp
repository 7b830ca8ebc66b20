#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qindex/bounds.hpp"
#include "qindex/graph6.hpp"

using namespace qindex;
using Catch::Matchers::WithinAbs;

namespace {

BoundReport find(const std::vector<BoundReport>& rs, BoundId id) {
  for (const auto& r : rs)
    if (r.bound_id == id) return r;
  FAIL("missing report " << to_string(id));
  return {};
}

}  // namespace

TEST_CASE("catalog names round trip") {
  CHECK(all_bounds().size() == 13);
  for (auto id : all_bounds()) CHECK(parse_bound_id(to_string(id)) == id);
  CHECK(to_string(BoundId::main) == "MAIN");
  CHECK_FALSE(parse_bound_id("main"));
  for (auto v : {Verdict::holds, Verdict::violated, Verdict::inconclusive, Verdict::vacuous})
    CHECK(parse_verdict(to_string(v)) == v);
}

TEST_CASE("MAIN on Turan graph and cycles") {
  const auto t = evaluate(BoundId::main, turan_graph(12, 3));
  CHECK_THAT(t.lhs, WithinAbs(16.0, 1e-9));
  CHECK_THAT(t.rhs, WithinAbs(16.0, 1e-12));
  CHECK(t.verdict == Verdict::holds);
  CHECK(t.certified);
  CHECK(std::abs(t.slack) <= 1e-8);

  const auto c5 = evaluate(BoundId::main, cycle_graph(5));
  CHECK_THAT(c5.lhs, WithinAbs(4.0, 1e-9));
  CHECK_THAT(c5.rhs, WithinAbs(5.0, 1e-12));
  CHECK_THAT(c5.slack, WithinAbs(1.0, 1e-9));
  CHECK(c5.verdict == Verdict::holds);

  const auto k23 = evaluate(BoundId::main, complete_multipartite(PartitionSpec({2, 3})));
  CHECK(std::abs(k23.slack) <= 1e-8);
  CHECK(k23.verdict == Verdict::holds);
}

TEST_CASE("BOOK_LOWER and MIN_ENTRY on complete graphs") {
  for (std::size_t n = 3; n <= 8; ++n) {
    const Graph k = complete_graph(n);
    const auto b = evaluate(BoundId::book_lower, k);
    CHECK_THAT(b.lhs, WithinAbs(n - 2.0, 1e-9));
    CHECK(b.rhs == n - 2.0);
    CHECK(b.verdict == Verdict::holds);

    const auto m = evaluate(BoundId::min_entry, k);
    const double dn = static_cast<double>(n), delta = dn - 1;
    const double expected = (1.0 / dn) * (4 * delta * delta - 2 * 2 * delta * delta + dn * delta);
    CHECK_THAT(m.lhs, WithinAbs(expected, 1e-8));
    CHECK_THAT(m.lhs, WithinAbs(delta, 1e-8));
    CHECK(m.verdict == Verdict::holds);
  }
}

TEST_CASE("TRIANGLE_FREE on Petersen and vacuous on K_4") {
  const auto p = evaluate(BoundId::triangle_free, petersen_graph());
  CHECK_THAT(p.lhs, WithinAbs(6.0, 1e-9));
  CHECK(p.rhs == 10.0);
  CHECK(p.verdict == Verdict::holds);
  CHECK(evaluate(BoundId::triangle_free, complete_graph(4)).verdict == Verdict::vacuous);
}

TEST_CASE("edgeless and single-vertex graphs") {
  const auto k1 = evaluate_all(Graph(1));
  REQUIRE(k1.size() == 13);
  for (const auto& r : k1) CHECK(r.verdict != Verdict::violated);
  CHECK(find(k1, BoundId::main).rhs == 0.0);
  CHECK(find(k1, BoundId::main).lhs == 0.0);
  CHECK(find(k1, BoundId::anderson_morley).verdict == Verdict::vacuous);
  CHECK(find(k1, BoundId::book_lower).verdict == Verdict::vacuous);
  CHECK(std::isnan(find(k1, BoundId::book_lower).slack));
  CHECK_THROWS_AS(evaluate_all(Graph(0)), std::invalid_argument);
}

TEST_CASE("evaluate_all on K_4 returns catalog order with no violation") {
  const auto rs = evaluate_all(complete_graph(4));
  REQUIRE(rs.size() == 13);
  for (std::size_t i = 0; i < rs.size(); ++i) CHECK(rs[i].bound_id == bound_catalog[i].id);
  for (const auto& r : rs) {
    INFO(to_string(r.bound_id));
    CHECK(r.verdict != Verdict::violated);
    CHECK(r.graph6 == "C~");
  }
  CHECK(find(rs, BoundId::chromatic_q).certified);
  CHECK_THAT(find(rs, BoundId::small_order).slack, WithinAbs(0.0, 1e-8));

  const std::vector<BoundId> subset{BoundId::wilf, BoundId::main};
  const auto two = evaluate_all(complete_graph(4), subset);
  REQUIRE(two.size() == 2);
  CHECK(two[0].bound_id == BoundId::main);
  CHECK(two[1].bound_id == BoundId::wilf);
}

TEST_CASE("equality holds on complete regular multipartite graphs") {
  for (std::size_t w = 2; w <= 6; ++w)
    for (std::size_t t = 1; t <= 5; ++t) {
      const Graph g = complete_multipartite(PartitionSpec(std::vector<std::size_t>(w, t)));
      const auto r = evaluate(BoundId::main, g);
      INFO("omega=" << w << " t=" << t);
      CHECK(r.verdict == Verdict::holds);
      CHECK(std::abs(r.slack) <= 1e-8 * std::max<std::size_t>(1, w * t));
    }
}

TEST_CASE("weaker bounds have larger right-hand sides") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = oracle::random_graph(1 + rng() % 10, 0.5, rng);
    const auto rs = evaluate_all(g);
    CHECK(find(rs, BoundId::weak_main).rhs >= find(rs, BoundId::main).rhs);
    CHECK(find(rs, BoundId::chromatic_q).rhs >= find(rs, BoundId::main).rhs);
    CHECK(find(rs, BoundId::cvetkovic).rhs >= find(rs, BoundId::wilf).rhs);
    CHECK(find(rs, BoundId::small_order).rhs >= find(rs, BoundId::main).rhs - 1e-12);
  }
}

TEST_CASE("verdicts agree with a dense independent evaluation") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 9;
    const Graph g = oracle::random_graph(n, std::uniform_real_distribution<>(0.1, 0.9)(rng), rng);
    const double q = oracle::top_eigenvalue(g), mu = oracle::top_eigenvalue(g, false);
    const double w = static_cast<double>(oracle::clique_bruteforce(g));
    const double chi = static_cast<double>(oracle::chromatic_bruteforce(g));
    const double dn = static_cast<double>(n);
    const auto rs = evaluate_all(g);
    INFO(serialize_graph6(g));
    CHECK_THAT(find(rs, BoundId::main).lhs, WithinAbs(q, 1e-8));
    CHECK_THAT(find(rs, BoundId::main).rhs, WithinAbs(2 * (1 - 1 / w) * dn, 1e-12));
    CHECK_THAT(find(rs, BoundId::chromatic_q).rhs, WithinAbs(2 * (1 - 1 / chi) * dn, 1e-12));
    CHECK_THAT(find(rs, BoundId::wilf).lhs, WithinAbs(mu, 1e-8));
    CHECK_THAT(find(rs, BoundId::q_ge_2mu).slack, WithinAbs(q - 2 * mu, 1e-7));
    CHECK(find(rs, BoundId::turan).lhs == g.edge_count());
    for (const auto& r : rs) {
      INFO(to_string(r.bound_id));
      CHECK(r.verdict != Verdict::violated);
      CHECK(r.verdict != Verdict::inconclusive);
    }
  }
}

TEST_CASE("MAIN is tight in the triangle-free case exactly on complete bipartite graphs") {
  const auto lines = oracle::read_lines(std::string(QINDEX_TEST_DATA) + "/order6.g6");
  std::size_t tight = 0;
  for (const auto& l : lines) {
    const Graph g = parse_graph6(l);
    if (g.edge_count() == 0 || !is_triangle_free(g)) continue;
    const auto r = evaluate(BoundId::main, g);
    const bool zero = std::abs(r.slack) <= 1e-8 * 6;
    // Complete bipartite plus isolated vertices is not tight: q = a + b < n.
    INFO(l);
    CHECK(zero == (is_complete_bipartite(g) && g.min_degree() > 0));
    tight += zero;
  }
  CHECK(tight == 3);  // K_{1,5}, K_{2,4}, K_{3,3}
}

TEST_CASE("MIN_ENTRY is evaluated per component") {
  // K_4 plus a disjoint K_2: both components have x_min > 0 and nonzero lhs.
  const Graph g = from_edge_list(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {4, 5}});
  const auto r = evaluate(BoundId::min_entry, g);
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.certified);
  // K_2 component: x = 1/sqrt2, q = 2, delta = 1, n = 2 -> lhs = 0.5 * (4 - 4 + 2) = 1
  // K_4 component: lhs = delta = 3; slack is 0 in both.
  CHECK_THAT(r.slack, WithinAbs(0.0, 1e-8));
}

TEST_CASE("exact integer bounds") {
  const auto t = evaluate(BoundId::turan, turan_graph(7, 3));
  CHECK(t.verdict == Verdict::holds);
  CHECK(t.lhs == 16.0);
  const auto md = evaluate(BoundId::turan_mindeg, cycle_graph(5));
  CHECK(md.lhs == 2.0);
  CHECK(md.rhs == 2.5);
  CHECK(md.verdict == Verdict::holds);
}

TEST_CASE("no bound is violated on any graph of order at most 6") {
  for (const char* file : {"/order4.g6", "/order6.g6"}) {
    for (const auto& l : oracle::read_lines(std::string(QINDEX_TEST_DATA) + file)) {
      for (const auto& r : evaluate_all(parse_graph6(l))) {
        INFO(l << " " << to_string(r.bound_id));
        CHECK(r.verdict != Verdict::violated);
        CHECK(r.verdict != Verdict::inconclusive);
      }
    }
  }
}
