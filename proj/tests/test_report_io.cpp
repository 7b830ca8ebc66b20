#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qindex/report_io.hpp"

using namespace qindex;

namespace {

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

bool same(const BoundReport& a, const BoundReport& b) {
  return a.graph6 == b.graph6 && a.bound_id == b.bound_id && same(a.lhs, b.lhs) && same(a.rhs, b.rhs) &&
         same(a.slack, b.slack) && a.verdict == b.verdict && a.certified == b.certified;
}

}  // namespace

TEST_CASE("bound reports round trip through JSON and CSV") {
  for (const Graph& g : {complete_graph(4), petersen_graph(), Graph(1), cycle_graph(7)}) {
    for (const auto& r : evaluate_all(g)) {
      INFO(r.graph6 << " " << to_string(r.bound_id));
      const auto j = io::to_json(r);
      CHECK(same(io::bound_report_from_json(nlohmann::json::parse(j.dump())), r));
      CHECK(same(io::bound_report_from_csv(io::to_csv_row(r)), r));
    }
  }
}

TEST_CASE("non-finite numbers are written as null or empty") {
  BoundReport r;
  r.graph6 = "@";
  r.bound_id = BoundId::book_lower;
  const auto j = io::to_json(r);
  CHECK(j.at("lhs").is_null());
  CHECK(j.at("slack").is_null());
  CHECK(j.at("verdict") == "vacuous");
  CHECK(io::to_csv_row(r) == "@,BOOK_LOWER,,,,vacuous,false");
  CHECK(std::isnan(io::bound_report_from_csv("@,BOOK_LOWER,,,,vacuous,false").rhs));
}

TEST_CASE("CSV uses round-trip precision") {
  BoundReport r;
  r.graph6 = "A_";
  r.lhs = 0.1 + 0.2;
  r.rhs = 1.0 / 3.0;
  r.slack = r.rhs - r.lhs;
  r.verdict = Verdict::violated;
  r.certified = true;
  const auto back = io::bound_report_from_csv(io::to_csv_row(r));
  CHECK(back.lhs == r.lhs);
  CHECK(back.rhs == r.rhs);
  CHECK(back.slack == r.slack);
  CHECK(std::string(io::csv_header) == "graph6,bound_id,lhs,rhs,slack,verdict,certified");
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS(io::bound_report_from_csv("A_,MAIN,1,2"));
  CHECK_THROWS(io::bound_report_from_csv("A_,NOPE,1,2,1,holds,true"));
  auto j = io::to_json(evaluate(BoundId::main, complete_graph(3)));
  j["verdict"] = "maybe";
  CHECK_THROWS(io::bound_report_from_json(j));
}

TEST_CASE("extremal records round trip") {
  auto rec = exhaustive_labeled(4, 2).record;
  rec.seed = 99;
  const auto back = io::extremal_record_from_json(nlohmann::json::parse(io::to_json(rec).dump()));
  CHECK(back.n == rec.n);
  CHECK(back.r == rec.r);
  CHECK(back.best_q == rec.best_q);
  CHECK(back.best_graph == rec.best_graph);
  CHECK(back.gap == rec.gap);
  CHECK(back.structure == rec.structure);
  CHECK(back.provenance == rec.provenance);
  CHECK(back.seed == 99u);
  CHECK(back.attainers == rec.attainers);

  const auto j = io::to_json(rec);
  CHECK(j.at("structure").at("complete_multipartite") == true);
  ExtremalRecord other;
  other.best_graph = "A?";
  CHECK(io::to_json(other).at("seed").is_null());
  CHECK(io::to_json(other).at("structure").at("key") == "other");
}
