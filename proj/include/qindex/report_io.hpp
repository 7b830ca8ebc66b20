#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qindex/bounds.hpp"
#include "qindex/search.hpp"

namespace qindex::io {

using nlohmann::json;

/// NaN and infinities become null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

inline json to_json(const BoundReport& r) {
  return json{{"graph6", r.graph6},
              {"bound_id", std::string(to_string(r.bound_id))},
              {"lhs", number(r.lhs)},
              {"rhs", number(r.rhs)},
              {"slack", number(r.slack)},
              {"verdict", std::string(to_string(r.verdict))},
              {"certified", r.certified}};
}

inline BoundReport bound_report_from_json(const json& j) {
  BoundReport r;
  r.graph6 = j.at("graph6").get<std::string>();
  const auto id = parse_bound_id(j.at("bound_id").get<std::string>());
  if (!id) throw std::invalid_argument("unknown bound_id " + j.at("bound_id").dump());
  r.bound_id = *id;
  r.lhs = number_from(j.at("lhs"));
  r.rhs = number_from(j.at("rhs"));
  r.slack = number_from(j.at("slack"));
  const auto v = parse_verdict(j.at("verdict").get<std::string>());
  if (!v) throw std::invalid_argument("unknown verdict " + j.at("verdict").dump());
  r.verdict = *v;
  r.certified = j.at("certified").get<bool>();
  return r;
}

inline constexpr const char* csv_header = "graph6,bound_id,lhs,rhs,slack,verdict,certified";

inline std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// graph6 text never contains commas or quotes, so no field needs quoting.
inline std::string to_csv_row(const BoundReport& r) {
  return r.graph6 + "," + std::string(to_string(r.bound_id)) + "," + csv_number(r.lhs) + "," + csv_number(r.rhs) + "," +
         csv_number(r.slack) + "," + std::string(to_string(r.verdict)) + "," + (r.certified ? "true" : "false");
}

inline BoundReport bound_report_from_csv(const std::string& row) {
  std::vector<std::string> f;
  std::stringstream ss(row);
  std::string cell;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  if (!row.empty() && row.back() == ',') f.emplace_back();
  if (f.size() != 7) throw std::invalid_argument("expected 7 CSV fields, got " + std::to_string(f.size()));
  auto num = [](const std::string& s) { return s.empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(s); };
  BoundReport r;
  r.graph6 = f[0];
  const auto id = parse_bound_id(f[1]);
  const auto v = parse_verdict(f[5]);
  if (!id || !v) throw std::invalid_argument("bad CSV row: " + row);
  r.bound_id = *id;
  r.lhs = num(f[2]);
  r.rhs = num(f[3]);
  r.slack = num(f[4]);
  r.verdict = *v;
  r.certified = f[6] == "true";
  return r;
}

inline json to_json(const Structure& s) {
  json j{{"complete_multipartite", s.parts.has_value()}, {"key", s.key()}};
  if (s.parts) j["parts"] = *s.parts;
  if (auto reg = s.regular()) j["regular"] = {{"parts", reg->parts}, {"part_size", reg->part_size}};
  return j;
}

inline Structure structure_from_json(const json& j) {
  Structure s;
  if (j.contains("parts")) s.parts = j.at("parts").get<std::vector<std::size_t>>();
  return s;
}

inline json to_json(const ExtremalRecord& r) {
  json j{{"n", r.n},
         {"r", r.r},
         {"best_q", number(r.best_q)},
         {"best_graph", r.best_graph},
         {"bound_value", number(r.bound_value)},
         {"gap", number(r.gap)},
         {"structure", to_json(r.structure)},
         {"provenance", std::string(to_string(r.provenance))},
         {"seed", r.seed ? json(*r.seed) : json(nullptr)}};
  if (!r.attainers.empty()) j["attainers"] = r.attainers;
  return j;
}

inline ExtremalRecord extremal_record_from_json(const json& j) {
  ExtremalRecord r;
  r.n = j.at("n").get<std::size_t>();
  r.r = j.at("r").get<std::size_t>();
  r.best_q = number_from(j.at("best_q"));
  r.best_graph = j.at("best_graph").get<std::string>();
  r.bound_value = number_from(j.at("bound_value"));
  r.gap = number_from(j.at("gap"));
  r.structure = structure_from_json(j.at("structure"));
  const auto p = parse_provenance(j.at("provenance").get<std::string>());
  if (!p) throw std::invalid_argument("unknown provenance");
  r.provenance = *p;
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("attainers")) r.attainers = j.at("attainers").get<std::map<std::string, std::size_t>>();
  return r;
}

inline json to_json(const BoundTally& t) {
  return json{{"holds", t.holds},
              {"violated", t.violated},
              {"inconclusive", t.inconclusive},
              {"vacuous", t.vacuous},
              {"min_slack", number(t.min_slack)}};
}

inline json tallies_json(const std::map<BoundId, BoundTally>& tallies) {
  json j = json::object();
  for (const auto& [id, t] : tallies) j[std::string(to_string(id))] = to_json(t);
  return j;
}

inline json to_json(const NuEstimate& e) {
  json series = json::array();
  for (const auto& p : e.series)
    series.push_back({{"n", p.n}, {"q_n", number(p.q_n)}, {"ratio", number(p.ratio)}, {"record", to_json(p.record)}});
  return json{{"r", e.r}, {"limit_target", number(e.limit_target)}, {"series", series}};
}

inline json to_json(const CensusRow& c) {
  json j{{"n", c.n},
         {"r", c.r},
         {"attained", c.attained},
         {"structure", to_json(c.structure)},
         {"complete_bipartite", c.complete_bipartite}};
  j["shape"] = c.shape ? json{{"parts", c.shape->parts}, {"part_size", c.shape->part_size}} : json(nullptr);
  if (!c.attainers.empty()) j["attainers"] = c.attainers;
  return j;
}

inline json to_json(const VerifyReport& v) {
  json failures = json::array();
  for (const auto& f : v.parse_failures) failures.push_back({{"line", f.line}, {"message", f.message}});
  json deciles = json::object();
  for (const auto& [id, d] : v.slack_deciles) {
    json arr = json::array();
    for (double x : d) arr.push_back(number(x));
    deciles[std::string(to_string(id))] = arr;
  }
  json violations = json::array();
  for (const auto& r : v.violations) violations.push_back(to_json(r));
  json j{{"lines", v.lines},
         {"graphs", v.graphs},
         {"parse_failures", failures},
         {"tallies", tallies_json(v.tallies)},
         {"slack_deciles", deciles},
         {"violations", violations},
         {"certified_violation", v.any_certified_violation()}};
  j["best"] = v.best ? to_json(*v.best) : json(nullptr);
  return j;
}

}  // namespace qindex::io
