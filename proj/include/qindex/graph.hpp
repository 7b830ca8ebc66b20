#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qindex {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Dynamic bitset over vertex indices, used for neighborhoods and search frontiers.
class VertexSet {
public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    for (std::size_t v = 0; v < universe; ++v) s.insert(v);
    return s;
  }

  std::size_t universe() const { return universe_; }
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
  void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  std::size_t size() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }

  /// Smallest member, or universe() when empty.
  Vertex first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return universe_;
  }

  VertexSet& operator&=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// Set difference.
  VertexSet& operator-=(const VertexSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  std::vector<Vertex> to_vector() const {
    std::vector<Vertex> out;
    for_each([&](Vertex v) { out.push_back(v); });
    return out;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        fn(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Each adjacency row is a packed bitset, so neighborhood intersections cost
/// O(n/64). Every operation that "modifies" a graph returns a new value.
class Graph {
public:
  Graph() = default;

  /// Edgeless graph of the given order.
  explicit Graph(std::size_t n) : n_(n), rows_(n, VertexSet(n)) {}

  std::size_t order() const { return n_; }

  bool has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return rows_[u].contains(v);
  }

  const VertexSet& neighbors(Vertex u) const {
    check_vertex(u);
    return rows_[u];
  }

  std::size_t degree(Vertex u) const { return neighbors(u).size(); }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(n_);
    for (Vertex u = 0; u < n_; ++u) d[u] = rows_[u].size();
    return d;
  }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& r : rows_) twice += r.size();
    return twice / 2;
  }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < n_; ++u)
      rows_[u].for_each([&](Vertex v) {
        if (u < v) out.emplace_back(u, v);
      });
    return out;
  }

  std::size_t min_degree() const {
    std::size_t best = n_;
    for (const auto& r : rows_) best = std::min(best, r.size());
    return n_ == 0 ? 0 : best;
  }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (const auto& r : rows_) best = std::max(best, r.size());
    return best;
  }

  Graph with_edge(Vertex u, Vertex v) const {
    check_pair(u, v);
    Graph g = *this;
    g.rows_[u].insert(v);
    g.rows_[v].insert(u);
    return g;
  }

  Graph without_edge(Vertex u, Vertex v) const {
    check_pair(u, v);
    Graph g = *this;
    g.rows_[u].erase(v);
    g.rows_[v].erase(u);
    return g;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

  /// Mutable construction access, used by builders in this library only.
  class Builder;

private:
  void check_vertex(Vertex u) const {
    if (u >= n_) throw std::out_of_range("vertex " + std::to_string(u) + " out of range for order " + std::to_string(n_));
  }
  void check_pair(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  }

  std::size_t n_ = 0;
  std::vector<VertexSet> rows_;
};

/// Accumulates edges and freezes them into a Graph.
class Graph::Builder {
public:
  explicit Builder(std::size_t n) : g_(n) {}

  Builder& add_edge(Vertex u, Vertex v) {
    g_.check_pair(u, v);
    g_.rows_[u].insert(v);
    g_.rows_[v].insert(u);
    return *this;
  }

  /// Unchecked insertion for hot enumeration loops; caller guarantees u != v, both < n.
  void add_edge_unchecked(Vertex u, Vertex v) {
    g_.rows_[u].insert(v);
    g_.rows_[v].insert(u);
  }

  Graph build() && { return std::move(g_); }
  const Graph& peek() const { return g_; }

private:
  Graph g_;
};

/// Ordered positive part sizes of a complete multipartite graph.
class PartitionSpec {
public:
  explicit PartitionSpec(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("partition needs at least one part");
    for (auto t : parts_)
      if (t == 0) throw std::invalid_argument("partition part sizes must be positive");
  }

  std::span<const std::size_t> parts() const { return parts_; }
  std::size_t part_count() const { return parts_.size(); }
  std::size_t order() const { return std::accumulate(parts_.begin(), parts_.end(), std::size_t{0}); }

private:
  std::vector<std::size_t> parts_;
};

inline Graph from_edge_list(std::size_t n, std::span<const Edge> edges) {
  Graph::Builder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

inline Graph from_edge_list(std::size_t n, std::initializer_list<Edge> edges) {
  return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()));
}

/// Vertices are numbered part by part: part 0 takes 0..t_0-1, part 1 the next t_1, etc.
inline Graph complete_multipartite(const PartitionSpec& spec) {
  const std::size_t n = spec.order();
  std::vector<std::size_t> part_of(n);
  std::size_t v = 0;
  for (std::size_t p = 0; p < spec.part_count(); ++p)
    for (std::size_t i = 0; i < spec.parts()[p]; ++i) part_of[v++] = p;
  Graph::Builder b(n);
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y)
      if (part_of[x] != part_of[y]) b.add_edge_unchecked(x, y);
  return std::move(b).build();
}

inline Graph complete_graph(std::size_t n) {
  Graph::Builder b(n);
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = x + 1; y < n; ++y) b.add_edge_unchecked(x, y);
  return std::move(b).build();
}

/// Cycle 0-1-...-(n-1)-0. Requires n >= 3.
inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  Graph::Builder b(n);
  for (Vertex x = 0; x < n; ++x) b.add_edge_unchecked(x, (x + 1) % n);
  return std::move(b).build();
}

inline Graph path_graph(std::size_t n) {
  Graph::Builder b(n);
  for (Vertex x = 0; x + 1 < n; ++x) b.add_edge_unchecked(x, x + 1);
  return std::move(b).build();
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline Graph petersen_graph() {
  Graph::Builder b(10);
  for (Vertex i = 0; i < 5; ++i) {
    b.add_edge_unchecked(i, (i + 1) % 5);
    b.add_edge_unchecked(5 + i, 5 + (i + 2) % 5);
    b.add_edge_unchecked(i, i + 5);
  }
  return std::move(b).build();
}

/// Balanced complete r-partite graph; the first n mod r parts get the extra vertex.
inline Graph turan_graph(std::size_t n, std::size_t r) {
  if (r == 0) throw std::invalid_argument("turan graph needs r >= 1");
  if (r > n) throw std::invalid_argument("turan graph needs r <= n");
  std::vector<std::size_t> parts(r, n / r);
  for (std::size_t i = 0; i < n % r; ++i) ++parts[i];
  return complete_multipartite(PartitionSpec(std::move(parts)));
}

/// Vertex (u, i) of the blow-up is numbered u*t + i.
inline Graph blow_up(const Graph& g, std::size_t t) {
  if (t == 0) throw std::invalid_argument("blow-up multiplicity must be >= 1");
  Graph::Builder b(g.order() * t);
  for (auto [u, v] : g.edges())
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j) b.add_edge_unchecked(u * t + i, v * t + j);
  return std::move(b).build();
}

/// Removes u; vertices above u shift down by one.
inline Graph delete_vertex(const Graph& g, Vertex u) {
  if (u >= g.order()) throw std::out_of_range("vertex " + std::to_string(u) + " out of range");
  auto relabel = [u](Vertex x) { return x < u ? x : x - 1; };
  Graph::Builder b(g.order() - 1);
  for (auto [x, y] : g.edges())
    if (x != u && y != u) b.add_edge_unchecked(relabel(x), relabel(y));
  return std::move(b).build();
}

/// Induced subgraph on the listed vertices, relabeled in list order.
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  Graph::Builder b(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (g.has_edge(vertices[i], vertices[j])) b.add_edge_unchecked(i, j);
  return std::move(b).build();
}

inline VertexSet common_neighbors(const Graph& g, Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("common_neighbors needs distinct vertices");
  return g.neighbors(u) & g.neighbors(v);
}

inline Graph complement(const Graph& g) {
  Graph::Builder b(g.order());
  for (Vertex x = 0; x < g.order(); ++x)
    for (Vertex y = x + 1; y < g.order(); ++y)
      if (!g.has_edge(x, y)) b.add_edge_unchecked(x, y);
  return std::move(b).build();
}

inline std::vector<std::size_t> degrees(const Graph& g) { return g.degrees(); }
inline std::size_t edge_count(const Graph& g) { return g.edge_count(); }
inline Graph add_edge(const Graph& g, Vertex u, Vertex v) { return g.with_edge(u, v); }
inline Graph remove_edge(const Graph& g, Vertex u, Vertex v) { return g.without_edge(u, v); }

/// Components as sorted vertex lists, ordered by smallest member.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  VertexSet unseen = VertexSet::full(g.order());
  while (!unseen.empty()) {
    VertexSet comp(g.order());
    VertexSet frontier(g.order());
    frontier.insert(unseen.first());
    while (!frontier.empty()) {
      comp |= frontier;
      VertexSet next(g.order());
      frontier.for_each([&](Vertex x) { next |= g.neighbors(x); });
      frontier = next - comp;
    }
    unseen -= comp;
    out.push_back(comp.to_vector());
  }
  return out;
}

}  // namespace qindex
