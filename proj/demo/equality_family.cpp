// Prints q for complete regular multipartite graphs next to 2(1 - 1/omega) n.

#include <cstdio>

#include "qindex/qindex.hpp"

int main() {
  using namespace qindex;
  std::printf("%6s %4s %4s %14s %14s\n", "omega", "t", "n", "q", "2(1-1/w)n");
  for (std::size_t omega = 2; omega <= 6; ++omega) {
    for (std::size_t t = 1; t <= 5; ++t) {
      const Graph g = complete_multipartite(PartitionSpec(std::vector<std::size_t>(omega, t)));
      const double q = q_index(g).value;
      std::printf("%6zu %4zu %4zu %14.10f %14.10f\n", omega, t, g.order(), q, clique_bound_value(g.order(), omega));
    }
  }
}
