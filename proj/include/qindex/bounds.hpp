#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qindex/combinatorics.hpp"
#include "qindex/graph.hpp"
#include "qindex/graph6.hpp"
#include "qindex/spectral.hpp"

namespace qindex {

enum class BoundId {
  main,
  chromatic_q,
  wilf,
  cvetkovic,
  turan,
  anderson_morley,
  book_lower,
  triangle_free,
  min_entry,
  weak_main,
  q_ge_2mu,
  small_order,
  turan_mindeg,
};

enum class Verdict { holds, violated, inconclusive, vacuous };

struct BoundCatalogEntry {
  BoundId id;
  std::string_view name;
  std::string_view description;
  bool requires_edges;
  bool requires_triangle_free;
};

/// Catalog order is the report order everywhere.
inline constexpr std::array<BoundCatalogEntry, 13> bound_catalog{{
    {BoundId::main, "MAIN", "q <= 2(1 - 1/omega) n", false, false},
    {BoundId::chromatic_q, "CHROMATIC_Q", "q <= 2(1 - 1/chi) n", false, false},
    {BoundId::wilf, "WILF", "mu <= (1 - 1/omega) n", false, false},
    {BoundId::cvetkovic, "CVETKOVIC", "mu <= (1 - 1/chi) n", false, false},
    {BoundId::turan, "TURAN", "e <= (1 - 1/omega) n^2 / 2", false, false},
    {BoundId::anderson_morley, "ANDERSON_MORLEY", "q <= max over edges uv of d(u) + d(v)", true, false},
    {BoundId::book_lower, "BOOK_LOWER", "max book size >= q - n", true, false},
    {BoundId::triangle_free, "TRIANGLE_FREE", "triangle-free implies q <= n", false, true},
    {BoundId::min_entry, "MIN_ENTRY", "x_min^2 (q^2 - 2 q delta + n delta) <= delta, per component", false, false},
    {BoundId::weak_main, "WEAK_MAIN", "q <= (2 omega - 2)/omega n + 8", false, false},
    {BoundId::q_ge_2mu, "Q_GE_2MU", "q >= 2 mu", false, false},
    {BoundId::small_order, "SMALL_ORDER", "q <= 2n - 2", false, false},
    {BoundId::turan_mindeg, "TURAN_MINDEG", "delta <= 2e/n <= (omega - 1)/omega n", false, false},
}};

inline const BoundCatalogEntry& catalog_entry(BoundId id) { return bound_catalog[static_cast<std::size_t>(id)]; }

inline std::string_view to_string(BoundId id) { return catalog_entry(id).name; }

inline std::optional<BoundId> parse_bound_id(std::string_view name) {
  for (const auto& e : bound_catalog)
    if (e.name == name) return e.id;
  return std::nullopt;
}

inline std::vector<BoundId> all_bounds() {
  std::vector<BoundId> out;
  for (const auto& e : bound_catalog) out.push_back(e.id);
  return out;
}

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::vacuous: return "vacuous";
  }
  return "?";
}

inline std::optional<Verdict> parse_verdict(std::string_view s) {
  for (auto v : {Verdict::holds, Verdict::violated, Verdict::inconclusive, Verdict::vacuous})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

struct BoundReport {
  BoundId bound_id = BoundId::main;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  double slack = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::vacuous;
  bool certified = false;
  std::string graph6;
};

struct EvalOptions {
  SolverOptions solver;
  ChromaticOptions chromatic;
  /// Verdict tolerance is verdict_tolerance * max(1, n).
  double verdict_tolerance = 1e-8;
};

/// Evaluates catalog bounds on one graph, computing each shared invariant at most once.
///
/// Any negative slack on a spectral bound triggers one re-solve of all spectral
/// data at a 10x tighter residual before the verdict is final.
class BoundEvaluator {
public:
  explicit BoundEvaluator(const Graph& g, EvalOptions opt = {}) : g_(g), opt_(opt) {
    if (g.order() == 0) throw std::invalid_argument("bounds need a graph with at least one vertex");
  }

  double epsilon() const { return opt_.verdict_tolerance * std::max(1.0, static_cast<double>(g_.order())); }

  const SpectralResult& q() {
    if (!q_) q_ = combine_components(g_, q_components());
    return *q_;
  }
  const SpectralResult& mu() {
    if (!mu_) {
      if (!a_comps_) a_comps_ = component_spectra(g_, MatrixKind::adjacency, opt_.solver);
      mu_ = combine_components(g_, *a_comps_);
    }
    return *mu_;
  }
  const std::vector<ComponentSpectrum>& q_components() {
    if (!q_comps_) q_comps_ = component_spectra(g_, MatrixKind::signless_laplacian, opt_.solver);
    return *q_comps_;
  }
  const CliqueResult& clique() {
    if (!clique_) clique_ = clique_number(g_);
    return *clique_;
  }
  const ChromaticResult& chromatic() {
    if (!chromatic_) chromatic_ = chromatic_number(g_, opt_.chromatic, &clique());
    return *chromatic_;
  }
  const std::string& graph6() {
    if (!graph6_) graph6_ = serialize_graph6(g_);
    return *graph6_;
  }
  bool tightened() const { return tightened_; }

  BoundReport evaluate(BoundId id) {
    BoundReport r = compute(id);
    if (is_spectral(id) && !tightened_ && r.verdict != Verdict::vacuous && r.slack < 0) {
      tighten();
      r = compute(id);
    }
    r.graph6 = graph6();
    return r;
  }

  std::vector<BoundReport> evaluate_all(std::span<const BoundId> ids) {
    std::vector<BoundReport> out;
    for (const auto& e : bound_catalog)
      if (std::find(ids.begin(), ids.end(), e.id) != ids.end()) out.push_back(evaluate(e.id));
    return out;
  }

  std::vector<BoundReport> evaluate_all() { return evaluate_all(all_bounds()); }

  static bool is_spectral(BoundId id) {
    switch (id) {
      case BoundId::turan:
      case BoundId::turan_mindeg: return false;
      default: return true;
    }
  }

private:
  void tighten() {
    opt_.solver = opt_.solver.tightened();
    q_.reset();
    mu_.reset();
    q_comps_.reset();
    a_comps_.reset();
    tightened_ = true;
  }

  double n() const { return static_cast<double>(g_.order()); }

  static BoundReport vacuous(BoundId id) {
    BoundReport r;
    r.bound_id = id;
    r.verdict = Verdict::vacuous;
    r.certified = true;
    return r;
  }

  /// value <= rhs, with value known only through its enclosure.
  BoundReport spectral_upper(BoundId id, const SpectralResult& value, double lhs, double rhs, double shift = 0.0) {
    BoundReport r;
    r.bound_id = id;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    // lhs = value + shift, so lhs <= rhs is value <= rhs - shift.
    switch (certify_upper(value, rhs - shift + epsilon()).verdict) {
      case Certification::certified_below:
        r.verdict = Verdict::holds;
        r.certified = true;
        break;
      case Certification::certified_above:
        r.verdict = Verdict::violated;
        r.certified = true;
        break;
      case Certification::inconclusive:
        r.verdict = Verdict::inconclusive;
        r.certified = false;
        break;
    }
    return r;
  }

  /// Integer-exact bounds; `holds` is decided by the caller without rounding.
  static BoundReport exact(BoundId id, double lhs, double rhs, bool holds) {
    BoundReport r;
    r.bound_id = id;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.verdict = holds ? Verdict::holds : Verdict::violated;
    r.certified = true;
    return r;
  }

  BoundReport compute(BoundId id) {
    const double nn = n();
    const double omega = static_cast<double>(clique().omega);
    switch (id) {
      case BoundId::main:
        return spectral_upper(id, q(), q().value, 2.0 * (1.0 - 1.0 / omega) * nn);

      case BoundId::chromatic_q: {
        const double chi = static_cast<double>(chromatic().chi);
        auto r = spectral_upper(id, q(), q().value, 2.0 * (1.0 - 1.0 / chi) * nn);
        r.certified = r.certified && chromatic().exact;
        return r;
      }

      case BoundId::wilf:
        return spectral_upper(id, mu(), mu().value, (1.0 - 1.0 / omega) * nn);

      case BoundId::cvetkovic: {
        const double chi = static_cast<double>(chromatic().chi);
        auto r = spectral_upper(id, mu(), mu().value, (1.0 - 1.0 / chi) * nn);
        r.certified = r.certified && chromatic().exact;
        return r;
      }

      case BoundId::turan: {
        const std::size_t e = g_.edge_count(), w = clique().omega, order = g_.order();
        // 2 e omega <= (omega - 1) n^2
        return exact(id, static_cast<double>(e), (1.0 - 1.0 / omega) * nn * nn / 2.0,
                     2 * e * w <= (w - 1) * order * order);
      }

      case BoundId::anderson_morley: {
        const auto m = max_edge_degree_sum(g_);
        if (!m) return vacuous(id);
        return spectral_upper(id, q(), q().value, static_cast<double>(*m));
      }

      case BoundId::book_lower: {
        const auto book = max_book(g_);
        if (!book) return vacuous(id);
        // book >= q - n  <=>  q <= book + n
        return spectral_upper(id, q(), q().value - nn, static_cast<double>(book->size), -nn);
      }

      case BoundId::triangle_free:
        if (!is_triangle_free(g_)) return vacuous(id);
        return spectral_upper(id, q(), q().value, nn);

      case BoundId::min_entry:
        return min_entry();

      case BoundId::weak_main:
        return spectral_upper(id, q(), q().value, (2.0 * omega - 2.0) / omega * nn + 8.0);

      case BoundId::q_ge_2mu: {
        BoundReport r;
        r.bound_id = id;
        r.lhs = 2.0 * mu().value;
        r.rhs = q().value;
        r.slack = r.rhs - r.lhs;
        const double eps = epsilon();
        if (!q().converged || !mu().converged) {
          r.verdict = Verdict::inconclusive;
        } else if (2.0 * mu().enclosure.hi <= q().enclosure.lo + eps) {
          r.verdict = Verdict::holds;
          r.certified = true;
        } else if (2.0 * mu().enclosure.lo > q().enclosure.hi + eps) {
          r.verdict = Verdict::violated;
          r.certified = true;
        } else {
          r.verdict = Verdict::inconclusive;
        }
        return r;
      }

      case BoundId::small_order:
        return spectral_upper(id, q(), q().value, 2.0 * nn - 2.0);

      case BoundId::turan_mindeg: {
        const std::size_t e = g_.edge_count(), w = clique().omega, order = g_.order(), d = g_.min_degree();
        const bool holds = d * order <= 2 * e && 2 * e * w <= (w - 1) * order * order;
        return exact(id, static_cast<double>(d), (omega - 1.0) / omega * nn, holds);
      }
    }
    throw std::logic_error("unknown bound id");
  }

  /// Evaluated on each connected component; the reported lhs/rhs are the component with least slack.
  BoundReport min_entry() {
    BoundReport worst;
    worst.bound_id = BoundId::min_entry;
    worst.verdict = Verdict::holds;
    worst.certified = true;
    bool have = false;
    const double eps = epsilon();
    for (const auto& c : q_components()) {
      const auto& s = c.result;
      const double nc = static_cast<double>(c.vertices.size());
      std::size_t dmin = g_.order();
      for (Vertex v : c.vertices) dmin = std::min(dmin, g_.degree(v));
      const double delta = static_cast<double>(dmin);
      const double xmin = s.min_entry();
      auto lhs_at = [&](double qv) { return xmin * xmin * (qv * qv - 2.0 * qv * delta + nc * delta); };
      const double lhs = xmin > 0 ? lhs_at(s.value) : 0.0;
      const double slack = delta - lhs;
      Verdict v = Verdict::holds;
      bool cert = s.converged && s.simple_top;
      const double tol = eps * std::max(1.0, delta);
      if (!s.converged) {
        v = Verdict::inconclusive;
      } else if (xmin > 0) {
        // q^2 - 2 q delta is increasing for q >= delta, which every component satisfies.
        const double lo = lhs_at(std::max(s.enclosure.lo, delta));
        const double hi = lhs_at(s.enclosure.hi);
        if (lo > delta + tol) v = Verdict::violated;
        else if (hi > delta + tol) {
          v = Verdict::inconclusive;
          cert = false;
        }
      }
      const bool worst_violated = have && worst.verdict == Verdict::violated;
      const bool take = !have || (v == Verdict::violated && !worst_violated) ||
                        (slack < worst.slack && (v == Verdict::violated || !worst_violated));
      if (take) {
        worst.lhs = lhs;
        worst.rhs = delta;
        worst.slack = slack;
      }
      have = true;
      if (v == Verdict::violated) worst.verdict = Verdict::violated;
      else if (v == Verdict::inconclusive && worst.verdict == Verdict::holds) worst.verdict = Verdict::inconclusive;
      worst.certified = worst.certified && cert;
    }
    return worst;
  }

  const Graph& g_;
  EvalOptions opt_;
  bool tightened_ = false;
  std::optional<std::vector<ComponentSpectrum>> q_comps_, a_comps_;
  std::optional<SpectralResult> q_, mu_;
  std::optional<CliqueResult> clique_;
  std::optional<ChromaticResult> chromatic_;
  std::optional<std::string> graph6_;
};

inline BoundReport evaluate(BoundId id, const Graph& g, const EvalOptions& opt = {}) {
  return BoundEvaluator(g, opt).evaluate(id);
}

/// One report per requested bound (all when ids is empty), in catalog order.
/// Inapplicable bounds come back with verdict vacuous.
inline std::vector<BoundReport> evaluate_all(const Graph& g, std::span<const BoundId> ids = {},
                                             const EvalOptions& opt = {}) {
  BoundEvaluator ev(g, opt);
  return ids.empty() ? ev.evaluate_all() : ev.evaluate_all(ids);
}

}  // namespace qindex
