#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qindex/graph.hpp"

namespace qindex {

namespace detail {

inline std::size_t parse_count(std::string_view s, std::string_view what) {
  if (s.empty()) throw std::invalid_argument("missing " + std::string(what));
  std::size_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(s) + "'");
    v = v * 10 + static_cast<std::size_t>(c - '0');
    if (v > 1'000'000) throw std::invalid_argument(std::string(what) + " too large");
  }
  return v;
}

}  // namespace detail

/// Builds a graph from a compact generator spec:
///   complete:n | cycle:n | path:n | empty:n | petersen | kpartite:t1,t2,...
///   turan:n:r | blowup:<spec>:t
inline Graph construct_graph(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (kind == "complete") return complete_graph(detail::parse_count(rest, "order"));
  if (kind == "cycle") return cycle_graph(detail::parse_count(rest, "order"));
  if (kind == "path") return path_graph(detail::parse_count(rest, "order"));
  if (kind == "empty") return Graph(detail::parse_count(rest, "order"));
  if (kind == "petersen" && rest.empty()) return petersen_graph();
  if (kind == "kpartite") {
    std::vector<std::size_t> parts;
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      const auto end = comma == std::string_view::npos ? rest.size() : comma;
      parts.push_back(detail::parse_count(rest.substr(start, end - start), "part size"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return complete_multipartite(PartitionSpec(std::move(parts)));
  }
  if (kind == "turan") {
    const auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw std::invalid_argument("turan spec needs turan:n:r");
    return turan_graph(detail::parse_count(rest.substr(0, c2), "order"), detail::parse_count(rest.substr(c2 + 1), "part count"));
  }
  if (kind == "blowup") {
    // The multiplicity is the last field; the inner spec may itself contain colons.
    const auto c2 = rest.rfind(':');
    if (c2 == std::string_view::npos) throw std::invalid_argument("blowup spec needs blowup:<spec>:t");
    return blow_up(construct_graph(rest.substr(0, c2)), detail::parse_count(rest.substr(c2 + 1), "multiplicity"));
  }
  throw std::invalid_argument("unknown construct spec '" + std::string(spec) + "'");
}

}  // namespace qindex
