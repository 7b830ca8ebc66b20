#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qindex/graph.hpp"

namespace qindex {

namespace detail {

/// Branch and bound maximum clique (greedy coloring bound) restricted to a candidate set.
class CliqueSearch {
public:
  explicit CliqueSearch(const Graph& g) : g_(g) {}

  /// Size of the largest clique inside `candidates`, stopping as soon as `stop_at` is reached.
  std::size_t max_within(const VertexSet& candidates, std::size_t stop_at) {
    best_ = 0;
    stop_at_ = stop_at;
    expand(0, candidates);
    return best_;
  }

private:
  void expand(std::size_t depth, VertexSet p) {
    if (best_ >= stop_at_) return;
    if (p.empty()) {
      best_ = std::max(best_, depth);
      return;
    }
    // Greedy color classes over p in vertex order; color k bounds cliques using those vertices.
    std::vector<Vertex> order;
    std::vector<std::size_t> bound;
    VertexSet uncolored = p;
    std::size_t color = 0;
    while (!uncolored.empty()) {
      ++color;
      VertexSet q = uncolored;
      while (!q.empty()) {
        const Vertex v = q.first();
        q.erase(v);
        q -= g_.neighbors(v);
        uncolored.erase(v);
        order.push_back(v);
        bound.push_back(color);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (depth + bound[i] <= best_ || best_ >= stop_at_) return;
      const Vertex v = order[i];
      expand(depth + 1, p & g_.neighbors(v));
      p.erase(v);
    }
  }

  const Graph& g_;
  std::size_t best_ = 0;
  std::size_t stop_at_ = 0;
};

}  // namespace detail

/// True iff the candidate set contains a clique with k vertices.
inline bool has_clique_within(const Graph& g, const VertexSet& candidates, std::size_t k) {
  if (k == 0) return true;
  return detail::CliqueSearch(g).max_within(candidates, k) >= k;
}

inline bool has_clique(const Graph& g, std::size_t k) { return has_clique_within(g, VertexSet::full(g.order()), k); }

/// Clique size only, no witness.
inline std::size_t clique_size(const Graph& g) {
  return detail::CliqueSearch(g).max_within(VertexSet::full(g.order()), g.order());
}

struct CliqueResult {
  std::size_t omega = 0;
  /// Lexicographically smallest maximum clique, ascending.
  std::vector<Vertex> witness;
};

inline CliqueResult clique_number(const Graph& g) {
  CliqueResult res;
  res.omega = clique_size(g);
  VertexSet p = VertexSet::full(g.order());
  std::size_t need = res.omega;
  while (need > 0) {
    const Vertex v = p.first();
    p.erase(v);
    // Later picks must come from vertices above v, so p already excludes everything below.
    VertexSet rest = p & g.neighbors(v);
    if (has_clique_within(g, rest, need - 1)) {
      res.witness.push_back(v);
      p = std::move(rest);
      --need;
    }
  }
  return res;
}

/// Adding edge uv to a K_{r+1}-free graph keeps it K_{r+1}-free iff the common
/// neighborhood of u and v holds no K_{r-1}.
inline bool edge_keeps_clique_bound(const Graph& g, Vertex u, Vertex v, std::size_t r) {
  if (r < 1) return false;
  return !has_clique_within(g, common_neighbors(g, u, v), r - 1);
}

enum class ChromaticMode { exact, greedy };

struct ChromaticResult {
  std::size_t chi = 0;
  /// Colors 0..chi-1, numbered by first appearance in vertex order.
  std::vector<std::size_t> coloring;
  /// True only when no (chi-1)-coloring exists.
  bool exact = false;
};

struct ChromaticOptions {
  ChromaticMode mode = ChromaticMode::exact;
  std::size_t exact_max_order = 16;
};

namespace detail {

inline std::vector<std::size_t> normalize_colors(const std::vector<std::size_t>& c) {
  std::vector<std::size_t> map(c.size() + 1, SIZE_MAX), out(c.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (map[c[i]] == SIZE_MAX) map[c[i]] = next++;
    out[i] = map[c[i]];
  }
  return out;
}

/// DSATUR greedy coloring.
inline std::vector<std::size_t> dsatur(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> color(n, SIZE_MAX);
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n + 1, false));
  std::vector<std::size_t> sat(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    Vertex pick = n;
    for (Vertex v = 0; v < n; ++v) {
      if (color[v] != SIZE_MAX) continue;
      if (pick == n || sat[v] > sat[pick] || (sat[v] == sat[pick] && g.degree(v) > g.degree(pick))) pick = v;
    }
    std::size_t c = 0;
    while (seen[pick][c]) ++c;
    color[pick] = c;
    g.neighbors(pick).for_each([&](Vertex w) {
      if (!seen[w][c]) {
        seen[w][c] = true;
        ++sat[w];
      }
    });
  }
  return color;
}

/// Backtracking k-colorability with the clique pre-colored and one-new-color symmetry pruning.
class ColoringSearch {
public:
  ColoringSearch(const Graph& g, std::size_t k) : g_(g), k_(k), color_(g.order(), SIZE_MAX) {}

  bool solve(const std::vector<Vertex>& clique) {
    if (clique.size() > k_) return false;
    for (std::size_t i = 0; i < clique.size(); ++i) color_[clique[i]] = i;
    return extend(clique.size(), clique.empty() ? 0 : clique.size());
  }

  const std::vector<std::size_t>& coloring() const { return color_; }

private:
  std::uint32_t forbidden(Vertex v) const {
    std::uint32_t mask = 0;
    g_.neighbors(v).for_each([&](Vertex w) {
      if (color_[w] != SIZE_MAX) mask |= std::uint32_t{1} << color_[w];
    });
    return mask;
  }

  bool extend(std::size_t colored, std::size_t used) {
    if (colored == g_.order()) return true;
    // Most constrained uncolored vertex; ties to higher degree, then lower index.
    Vertex pick = g_.order();
    int pick_sat = -1;
    std::uint32_t pick_mask = 0;
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (color_[v] != SIZE_MAX) continue;
      const std::uint32_t m = forbidden(v);
      const int s = std::popcount(m);
      if (s > pick_sat || (s == pick_sat && g_.degree(v) > g_.degree(pick))) {
        pick = v;
        pick_sat = s;
        pick_mask = m;
      }
    }
    const std::size_t limit = std::min(k_, used + 1);
    for (std::size_t c = 0; c < limit; ++c) {
      if (pick_mask & (std::uint32_t{1} << c)) continue;
      color_[pick] = c;
      if (extend(colored + 1, std::max(used, c + 1))) return true;
    }
    color_[pick] = SIZE_MAX;
    return false;
  }

  const Graph& g_;
  std::size_t k_;
  std::vector<std::size_t> color_;
};

}  // namespace detail

/// `known_clique` skips recomputing a maximum clique the caller already has.
inline ChromaticResult chromatic_number(const Graph& g, const ChromaticOptions& opt = {},
                                        const CliqueResult* known_clique = nullptr) {
  ChromaticResult res;
  if (g.order() == 0) {
    res.exact = true;
    return res;
  }
  auto greedy = detail::normalize_colors(detail::dsatur(g));
  const std::size_t upper = *std::max_element(greedy.begin(), greedy.end()) + 1;
  const CliqueResult clique = known_clique ? *known_clique : clique_number(g);
  res.chi = upper;
  res.coloring = std::move(greedy);
  res.exact = upper == clique.omega;
  if (res.exact || opt.mode == ChromaticMode::greedy || g.order() > opt.exact_max_order || upper > 32) return res;

  for (std::size_t k = clique.omega; k < upper; ++k) {
    detail::ColoringSearch search(g, k);
    if (search.solve(clique.witness)) {
      res.chi = k;
      res.coloring = detail::normalize_colors(search.coloring());
      break;
    }
  }
  res.exact = true;
  return res;
}

inline bool is_proper_coloring(const Graph& g, const std::vector<std::size_t>& coloring) {
  if (coloring.size() != g.order()) return false;
  for (auto [u, v] : g.edges())
    if (coloring[u] == coloring[v]) return false;
  return true;
}

struct Book {
  std::size_t size = 0;
  Edge edge;
};

/// Largest common neighborhood over all edges; the lexicographically smallest edge wins ties.
inline std::optional<Book> max_book(const Graph& g) {
  std::optional<Book> best;
  for (auto e : g.edges()) {
    const std::size_t s = common_neighbors(g, e.first, e.second).size();
    if (!best || s > best->size) best = Book{s, e};
  }
  return best;
}

/// Checks every edge for an empty common neighborhood; independent of clique_number.
inline bool is_triangle_free(const Graph& g) {
  for (auto [u, v] : g.edges())
    if (!(g.neighbors(u) & g.neighbors(v)).empty()) return false;
  return true;
}

inline std::optional<std::size_t> max_edge_degree_sum(const Graph& g) {
  std::optional<std::size_t> best;
  const auto d = g.degrees();
  for (auto [u, v] : g.edges()) best = std::max(best.value_or(0), d[u] + d[v]);
  return best;
}

/// Part sizes (ordered by smallest member) when g is complete multipartite,
/// i.e. its complement is a disjoint union of cliques.
inline std::optional<std::vector<std::size_t>> complete_multipartite_parts(const Graph& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> parts;
  VertexSet assigned(n);
  for (Vertex u = 0; u < n; ++u) {
    if (assigned.contains(u)) continue;
    VertexSet part = VertexSet::full(n) - g.neighbors(u);
    bool ok = true;
    part.for_each([&](Vertex v) {
      if (ok && (VertexSet::full(n) - g.neighbors(v)) != part) ok = false;
    });
    if (!ok) return std::nullopt;
    assigned |= part;
    parts.push_back(part.size());
  }
  return parts;
}

struct MultipartiteShape {
  std::size_t parts = 0;
  std::size_t part_size = 0;
  friend bool operator==(const MultipartiteShape&, const MultipartiteShape&) = default;
};

/// (omega, t) when g is a complete multipartite graph with omega parts of size t.
inline std::optional<MultipartiteShape> is_complete_regular_multipartite(const Graph& g) {
  auto parts = complete_multipartite_parts(g);
  if (!parts || parts->empty()) return std::nullopt;
  if (std::adjacent_find(parts->begin(), parts->end(), std::not_equal_to<>()) != parts->end()) return std::nullopt;
  return MultipartiteShape{parts->size(), parts->front()};
}

inline bool is_complete_bipartite(const Graph& g) {
  auto parts = complete_multipartite_parts(g);
  return parts && parts->size() == 2;
}

struct CombinatoricsReport {
  CliqueResult clique;
  ChromaticResult chromatic;
  std::size_t min_degree = 0;
  std::size_t edge_count = 0;
  std::optional<Book> book;
  std::optional<std::size_t> max_edge_degree_sum;
};

inline CombinatoricsReport analyze_combinatorics(const Graph& g, const ChromaticOptions& opt = {}) {
  CombinatoricsReport r;
  r.clique = clique_number(g);
  r.chromatic = chromatic_number(g, opt, &r.clique);
  r.min_degree = g.min_degree();
  r.edge_count = g.edge_count();
  r.book = max_book(g);
  r.max_edge_degree_sum = max_edge_degree_sum(g);
  return r;
}

}  // namespace qindex
