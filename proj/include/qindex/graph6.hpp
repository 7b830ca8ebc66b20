#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qindex/graph.hpp"

namespace qindex {

class Graph6Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace graph6 {

inline constexpr std::string_view header = ">>graph6<<";
inline constexpr std::size_t max_short_order = 62;
inline constexpr std::size_t max_order = 258047;

namespace detail {

inline std::size_t payload_chars(std::size_t n) {
  const std::size_t bits = n * (n > 0 ? n - 1 : 0) / 2;
  return (bits + 5) / 6;
}

inline int decode_char(char c, std::size_t pos) {
  const auto b = static_cast<unsigned char>(c);
  if (b < 63 || b > 126)
    throw Graph6Error("illegal graph6 byte " + std::to_string(b) + " at offset " + std::to_string(pos));
  return b - 63;
}

}  // namespace detail

/// Parses one graph6 record. A leading ">>graph6<<" header and trailing
/// line terminators are accepted. Orders up to 258047 (the 4-byte length
/// form) are supported; the 8-byte form is rejected.
inline Graph parse(std::string_view text) {
  if (text.starts_with(header)) text.remove_prefix(header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw Graph6Error("empty graph6 record");

  std::size_t pos = 0;
  std::size_t n = 0;
  if (text[0] != '~') {
    n = static_cast<std::size_t>(detail::decode_char(text[0], 0));
    pos = 1;
  } else {
    if (text.size() >= 2 && text[1] == '~') throw Graph6Error("graph6 orders above 258047 are not supported");
    if (text.size() < 4) throw Graph6Error("truncated graph6 length prefix");
    for (std::size_t i = 1; i < 4; ++i) n = (n << 6) | static_cast<std::size_t>(detail::decode_char(text[i], i));
    if (n <= max_short_order) throw Graph6Error("non-canonical graph6 length prefix for order " + std::to_string(n));
    pos = 4;
  }

  const std::size_t need = detail::payload_chars(n);
  const std::size_t have = text.size() - pos;
  if (have < need)
    throw Graph6Error("truncated graph6 payload: expected " + std::to_string(need) + " bytes, got " + std::to_string(have));
  if (have > need)
    throw Graph6Error("trailing data in graph6 record: expected " + std::to_string(need) + " bytes, got " + std::to_string(have));

  Graph::Builder b(n);
  std::size_t bit = 0;
  int chunk = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++bit) {
      if (bit % 6 == 0) chunk = detail::decode_char(text[pos + bit / 6], pos + bit / 6);
      if ((chunk >> (5 - bit % 6)) & 1) b.add_edge_unchecked(i, j);
    }
  }
  return std::move(b).build();
}

/// Canonical graph6 encoding for the current labeling, without header or newline.
inline std::string serialize(const Graph& g) {
  const std::size_t n = g.order();
  if (n > max_order) throw Graph6Error("order " + std::to_string(n) + " exceeds graph6 support");
  std::string out;
  if (n <= max_short_order) {
    out.push_back(static_cast<char>(63 + n));
  } else {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
  out.reserve(out.size() + detail::payload_chars(n));
  int chunk = 0;
  std::size_t bit = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++bit) {
      chunk = (chunk << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (bit % 6 == 5) {
        out.push_back(static_cast<char>(63 + chunk));
        chunk = 0;
      }
    }
  }
  if (bit % 6 != 0) out.push_back(static_cast<char>(63 + (chunk << (6 - bit % 6))));
  return out;
}

}  // namespace graph6

inline Graph parse_graph6(std::string_view text) { return graph6::parse(text); }
inline std::string serialize_graph6(const Graph& g) { return graph6::serialize(g); }

}  // namespace qindex
