#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's spectral or clique code; they only read adjacency via has_edge.

#include <Eigen/Dense>

#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "qindex/graph.hpp"

namespace oracle {

inline Eigen::MatrixXd dense(const qindex::Graph& g, bool signless) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && g.has_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
        m(i, j) = 1.0;
        if (signless) m(i, i) += 1.0;
      }
  return m;
}

/// Largest eigenvalue of Q (signless) or A by full dense eigendecomposition.
inline double top_eigenvalue(const qindex::Graph& g, bool signless = true) {
  if (g.order() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(g, signless), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

/// Clique number by checking every vertex subset (n <= ~20).
inline std::size_t clique_bruteforce(const qindex::Graph& g) {
  const std::size_t n = g.order();
  std::size_t best = n > 0 ? 1 : 0;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
    const auto k = static_cast<std::size_t>(__builtin_popcount(s));
    if (k <= best) continue;
    bool clique = true;
    for (std::size_t i = 0; i < n && clique; ++i)
      for (std::size_t j = i + 1; j < n && clique; ++j)
        if ((s >> i & 1) && (s >> j & 1) && !g.has_edge(i, j)) clique = false;
    if (clique) best = k;
  }
  return best;
}

/// Triangles through edge uv by scanning every third vertex.
inline std::size_t triangles_through(const qindex::Graph& g, std::size_t u, std::size_t v) {
  std::size_t c = 0;
  for (std::size_t w = 0; w < g.order(); ++w)
    if (w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w)) ++c;
  return c;
}

inline bool has_triangle_bruteforce(const qindex::Graph& g) {
  const std::size_t n = g.order();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) return true;
  return false;
}

/// Smallest k admitting a proper coloring, by trying all k^n assignments (tiny n only).
inline std::size_t chromatic_bruteforce(const qindex::Graph& g) {
  const std::size_t n = g.order();
  if (n == 0) return 0;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> c(n, 0);
    for (;;) {
      bool ok = true;
      for (std::size_t u = 0; u < n && ok; ++u)
        for (std::size_t v = u + 1; v < n && ok; ++v)
          if (c[u] == c[v] && g.has_edge(u, v)) ok = false;
      if (ok) return k;
      std::size_t i = 0;
      while (i < n && ++c[i] == k) c[i++] = 0;
      if (i == n) break;
    }
  }
  return n;
}

inline qindex::Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  qindex::Graph::Builder b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) b.add_edge(i, j);
  return std::move(b).build();
}

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

}  // namespace oracle
