#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "qindex/graph.hpp"

namespace qindex {

/// Dense symmetric real matrix, row-major.
class SymMatrix {
public:
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t dim() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  void multiply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < n_; ++i) {
      const double* row = &a_[i * n_];
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
      y[i] = s;
    }
  }

  double max_abs_row_sum() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += std::abs(a_[i * n_ + j]);
      best = std::max(best, s);
    }
    return best;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (a_[i * n_ + j] != a_[j * n_ + i]) return false;
    return true;
  }

private:
  std::size_t n_;
  std::vector<double> a_;
};

/// Q = A + D.
inline SymMatrix signless_laplacian(const Graph& g) {
  SymMatrix m(g.order());
  for (Vertex u = 0; u < g.order(); ++u) {
    m.set(u, u, static_cast<double>(g.degree(u)));
    g.neighbors(u).for_each([&](Vertex v) { m.set(u, v, 1.0); });
  }
  return m;
}

inline SymMatrix adjacency_matrix(const Graph& g) {
  SymMatrix m(g.order());
  for (Vertex u = 0; u < g.order(); ++u) g.neighbors(u).for_each([&](Vertex v) { m.set(u, v, 1.0); });
  return m;
}

enum class MatrixKind { signless_laplacian, adjacency };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

enum class SolveMethod { trivial, power_iteration, jacobi };

struct SpectralResult {
  double value = 0.0;
  std::vector<double> vector;
  double residual = 0.0;
  Interval enclosure;
  std::size_t iterations = 0;
  /// Residual reached the configured target.
  bool converged = true;
  /// False when the top eigenvalue is numerically indistinguishable from the next one.
  bool simple_top = true;
  SolveMethod method = SolveMethod::trivial;

  double min_entry() const { return vector.empty() ? 0.0 : *std::min_element(vector.begin(), vector.end()); }
};

struct SolverOptions {
  /// Residual target is residual_factor * max(1, max row sum).
  double residual_factor = 1e-10;
  std::size_t max_iterations = 100000;
  /// Power iterations allowed before a small matrix is handed to Jacobi.
  std::size_t jacobi_after = 3000;
  std::size_t jacobi_max_order = 64;
  /// Relative gap below which the top eigenvalue is reported as not simple.
  double multiplicity_gap = 1e-6;

  SolverOptions tightened(double factor = 10.0) const {
    SolverOptions o = *this;
    o.residual_factor /= factor;
    return o;
  }
};

namespace detail {

inline double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline void normalize(std::span<double> x) {
  const double nrm = norm2(x);
  for (double& v : x) v /= nrm;
}

/// Rayleigh value and residual of a unit vector.
inline std::pair<double, double> rayleigh_residual(const SymMatrix& m, std::span<const double> x) {
  std::vector<double> y(x.size());
  m.multiply(x, y);
  const double lambda = dot(x, y);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r += (y[i] - lambda * x[i]) * (y[i] - lambda * x[i]);
  return {lambda, std::sqrt(r)};
}

struct Eigensystem {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

/// Cyclic Jacobi rotations; fine for the small dense matrices used here.
inline Eigensystem jacobi_eigensystem(const SymMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<double> a(n * n), v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    v[i * n + i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  }
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += at(i, i) * at(i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off <= 1e-30 * std::max(diag, 1e-300)) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  Eigensystem es;
  es.values.resize(n);
  es.vectors.assign(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = at(k, k);
    for (std::size_t i = 0; i < n; ++i) es.vectors[k][i] = v[i * n + k];
  }
  return es;
}

/// Finalizes a candidate eigenpair: unit norm, nonnegative orientation, residual and enclosure.
inline SpectralResult finish(const SymMatrix& m, std::vector<double> x, double target, SolveMethod method,
                             std::size_t iterations) {
  normalize(x);
  double sum = 0.0;
  for (double v : x) sum += v;
  if (sum < 0)
    for (double& v : x) v = -v;
  auto [lambda, r] = rayleigh_residual(m, x);
  // Bound on the rounding in forming Mx, x'Mx and the norm, so a computed residual of 0 still encloses.
  r += static_cast<double>(m.dim() + 2) * std::numeric_limits<double>::epsilon() * (m.max_abs_row_sum() + std::abs(lambda));
  SpectralResult res;
  res.value = lambda;
  res.vector = std::move(x);
  res.residual = r;
  res.enclosure = {lambda - r, lambda + r};
  res.iterations = iterations;
  res.converged = r <= target;
  res.method = method;
  return res;
}

inline SpectralResult jacobi_top(const SymMatrix& m, double target, std::size_t iterations, const SolverOptions& opt) {
  auto es = jacobi_eigensystem(m);
  std::size_t top = 0;
  for (std::size_t k = 1; k < es.values.size(); ++k)
    if (es.values[k] > es.values[top]) top = k;
  double second = -INFINITY;
  for (std::size_t k = 0; k < es.values.size(); ++k)
    if (k != top) second = std::max(second, es.values[k]);
  auto res = finish(m, es.vectors[top], target, SolveMethod::jacobi, iterations);
  res.simple_top = !(es.values[top] - second <= opt.multiplicity_gap * std::max(1.0, std::abs(es.values[top])));
  return res;
}

}  // namespace detail

/// Dominant eigenpair of a symmetric matrix with nonnegative entries.
///
/// Power iteration runs on M + shift*I; a positive shift keeps the negative end
/// of an adjacency spectrum from competing with the top eigenvalue. The
/// reported value, residual, and enclosure always refer to M itself.
inline SpectralResult dominant_eigenpair(const SymMatrix& m, std::span<const double> start, double shift = 0.0,
                                         const SolverOptions& opt = {}) {
  const std::size_t n = m.dim();
  if (n == 0) throw std::invalid_argument("dominant_eigenpair on empty matrix");
  const double target = opt.residual_factor * std::max(1.0, m.max_abs_row_sum());
  if (n == 1) {
    SpectralResult r;
    r.value = m(0, 0);
    r.vector = {1.0};
    r.enclosure = {r.value, r.value};
    return r;
  }

  std::vector<double> x(start.begin(), start.end()), y(n);
  detail::normalize(x);
  std::size_t it = 0;
  for (; it < opt.max_iterations; ++it) {
    m.multiply(x, y);
    const double lambda = detail::dot(x, y);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) r2 += (y[i] - lambda * x[i]) * (y[i] - lambda * x[i]);
    if (std::sqrt(r2) <= 0.5 * target) break;
    if (it >= opt.jacobi_after && n <= opt.jacobi_max_order) return detail::jacobi_top(m, target, it, opt);
    for (std::size_t i = 0; i < n; ++i) y[i] += shift * x[i];
    detail::normalize(y);
    std::swap(x, y);
  }
  auto res = detail::finish(m, std::move(x), target, SolveMethod::power_iteration, it);
  // A stalled power iteration on a small matrix still gets an exact answer.
  if (!res.converged && n <= opt.jacobi_max_order) return detail::jacobi_top(m, target, it, opt);
  return res;
}

/// Spectral data of one connected component, in the component's own labeling.
struct ComponentSpectrum {
  std::vector<Vertex> vertices;
  SpectralResult result;
};

namespace detail {

inline SymMatrix component_matrix(const Graph& g, std::span<const Vertex> vs, MatrixKind kind) {
  SymMatrix m(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (kind == MatrixKind::signless_laplacian) m.set(i, i, static_cast<double>(g.degree(vs[i])));
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (g.has_edge(vs[i], vs[j])) m.set(i, j, 1.0);
  }
  return m;
}

}  // namespace detail

/// Dominant eigenpair of Q or A for every connected component.
inline std::vector<ComponentSpectrum> component_spectra(const Graph& g, MatrixKind kind, const SolverOptions& opt = {}) {
  std::vector<ComponentSpectrum> out;
  for (auto& vs : connected_components(g)) {
    const auto m = detail::component_matrix(g, vs, kind);
    // Degree vector plus a small uniform offset keeps the start away from any orthogonal complement.
    std::vector<double> start(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) start[i] = static_cast<double>(g.degree(vs[i])) + 0.01;
    const double shift = kind == MatrixKind::adjacency ? 1.0 : 0.0;
    out.push_back({std::move(vs), dominant_eigenpair(m, start, shift, opt)});
  }
  return out;
}

/// Largest component value, its vector zero-extended to the whole graph.
/// Ties go to the component with the smallest vertex.
inline SpectralResult combine_components(const Graph& g, std::span<const ComponentSpectrum> comps) {
  if (g.order() == 0) throw std::invalid_argument("spectral radius of the empty graph is undefined");
  std::size_t best = 0;
  for (std::size_t k = 1; k < comps.size(); ++k)
    if (comps[k].result.value > comps[best].result.value) best = k;
  SpectralResult res = comps[best].result;
  res.vector.assign(g.order(), 0.0);
  for (std::size_t i = 0; i < comps[best].vertices.size(); ++i)
    res.vector[comps[best].vertices[i]] = comps[best].result.vector[i];
  for (const auto& c : comps) {
    res.converged = res.converged && c.result.converged;
    res.iterations = std::max(res.iterations, c.result.iterations);
  }
  // The enclosure of the winner bounds the maximum only if no other component could exceed it.
  for (std::size_t k = 0; k < comps.size(); ++k)
    if (k != best) res.enclosure.lo = std::max(res.enclosure.lo, comps[k].result.enclosure.lo);
  for (std::size_t k = 0; k < comps.size(); ++k)
    if (k != best) res.enclosure.hi = std::max(res.enclosure.hi, comps[k].result.enclosure.hi);
  return res;
}

/// q(G): largest eigenvalue of the signless Laplacian.
inline SpectralResult q_index(const Graph& g, const SolverOptions& opt = {}) {
  const auto comps = component_spectra(g, MatrixKind::signless_laplacian, opt);
  return combine_components(g, comps);
}

/// mu(G): largest adjacency eigenvalue.
inline SpectralResult adjacency_spectral_radius(const Graph& g, const SolverOptions& opt = {}) {
  const auto comps = component_spectra(g, MatrixKind::adjacency, opt);
  return combine_components(g, comps);
}

/// Sum over edges of (x_i + x_j)^2, which equals <Qx, x>.
inline double rayleigh_edge_sum(const Graph& g, std::span<const double> x) {
  if (x.size() != g.order()) throw std::invalid_argument("vector length does not match graph order");
  if (std::abs(detail::norm2(x) - 1.0) > 1e-9) throw std::invalid_argument("rayleigh_edge_sum needs a unit vector");
  double s = 0.0;
  for (auto [i, j] : g.edges()) s += (x[i] + x[j]) * (x[i] + x[j]);
  return s;
}

enum class Certification { certified_below, certified_above, inconclusive };

struct CertifyOutcome {
  Certification verdict;
  /// Width of the enclosure when inconclusive, else 0.
  double gap_width = 0.0;
};

inline CertifyOutcome certify_upper(const SpectralResult& r, double target) {
  if (!r.converged) return {Certification::inconclusive, r.enclosure.width()};
  if (r.enclosure.hi <= target) return {Certification::certified_below, 0.0};
  if (r.enclosure.lo > target) return {Certification::certified_above, 0.0};
  return {Certification::inconclusive, r.enclosure.width()};
}

inline CertifyOutcome certify_upper(const Graph& g, double target, const SolverOptions& opt = {}) {
  return certify_upper(q_index(g, opt), target);
}

}  // namespace qindex
