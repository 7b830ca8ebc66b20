#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qindex/bounds.hpp"
#include "qindex/combinatorics.hpp"
#include "qindex/graph.hpp"
#include "qindex/graph6.hpp"
#include "qindex/spectral.hpp"

namespace qindex {

enum class Provenance { exhaustive, stream, heuristic };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::exhaustive: return "exhaustive";
    case Provenance::stream: return "stream";
    case Provenance::heuristic: return "heuristic";
  }
  return "?";
}

inline std::optional<Provenance> parse_provenance(std::string_view s) {
  for (auto p : {Provenance::exhaustive, Provenance::stream, Provenance::heuristic})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

/// Complete multipartite part sizes of a graph, if it has that structure.
struct Structure {
  std::optional<std::vector<std::size_t>> parts;

  static Structure of(const Graph& g) { return {complete_multipartite_parts(g)}; }

  bool complete_bipartite() const { return parts && parts->size() == 2; }
  std::optional<MultipartiteShape> regular() const {
    if (!parts || parts->empty()) return std::nullopt;
    if (std::adjacent_find(parts->begin(), parts->end(), std::not_equal_to<>()) != parts->end()) return std::nullopt;
    return MultipartiteShape{parts->size(), parts->front()};
  }
  /// Sorted part sizes, or "other" when g is not complete multipartite.
  std::string key() const {
    if (!parts) return "other";
    auto p = *parts;
    std::sort(p.begin(), p.end());
    std::string s = "K_{";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "}";
  }
  friend bool operator==(const Structure&, const Structure&) = default;
};

/// Best q over K_{r+1}-free graphs of order n found by one of the search routes.
struct ExtremalRecord {
  std::size_t n = 0;
  std::size_t r = 0;
  double best_q = 0.0;
  std::string best_graph;
  double bound_value = 0.0;
  double gap = 0.0;
  Structure structure;
  Provenance provenance = Provenance::exhaustive;
  std::optional<std::uint64_t> seed;
  /// Exhaustive only: structure keys of every graph within tolerance of best_q, with counts.
  std::map<std::string, std::size_t> attainers;
};

inline double clique_bound_value(std::size_t n, std::size_t r) {
  return 2.0 * (1.0 - 1.0 / static_cast<double>(r)) * static_cast<double>(n);
}

inline double search_tolerance(std::size_t n) { return 1e-8 * std::max<double>(1.0, static_cast<double>(n)); }

namespace detail {

inline ExtremalRecord make_record(std::size_t n, std::size_t r, const Graph& best, double best_q, Provenance prov) {
  ExtremalRecord rec;
  rec.n = n;
  rec.r = r;
  rec.best_q = best_q;
  rec.best_graph = serialize_graph6(best);
  rec.bound_value = clique_bound_value(n, r);
  rec.gap = rec.bound_value - best_q;
  rec.structure = Structure::of(best);
  rec.provenance = prov;
  return rec;
}

/// Pair (i, j), i < j, for each bit of an edge mask, in graph6 order.
inline std::vector<Edge> graph6_pair_order(std::size_t n) {
  std::vector<Edge> pairs;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) pairs.emplace_back(i, j);
  return pairs;
}

inline void run_parallel(std::size_t jobs, std::size_t tasks, const std::function<void(std::size_t)>& body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, tasks));
  if (jobs == 1) {
    for (std::size_t t = 0; t < tasks; ++t) body(t);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t t = w; t < tasks; t += jobs) body(t);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// Graph with edge set given by a mask whose bit k is the k-th pair in graph6 order.
inline Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  Graph::Builder b(n);
  std::size_t k = 0;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i, ++k)
      if ((mask >> k) & 1u) b.add_edge_unchecked(i, j);
  return std::move(b).build();
}

struct BoundTally {
  std::size_t holds = 0;
  std::size_t violated = 0;
  std::size_t inconclusive = 0;
  std::size_t vacuous = 0;
  /// Smallest slack over non-vacuous reports; +inf when there were none.
  double min_slack = INFINITY;

  void add(const BoundReport& r) {
    switch (r.verdict) {
      case Verdict::holds: ++holds; break;
      case Verdict::violated: ++violated; break;
      case Verdict::inconclusive: ++inconclusive; break;
      case Verdict::vacuous: ++vacuous; break;
    }
    if (r.verdict != Verdict::vacuous) min_slack = std::min(min_slack, r.slack);
  }
  void merge(const BoundTally& o) {
    holds += o.holds;
    violated += o.violated;
    inconclusive += o.inconclusive;
    vacuous += o.vacuous;
    min_slack = std::min(min_slack, o.min_slack);
  }
};

struct ExhaustiveOptions {
  std::size_t max_order = 7;
  /// Evaluate these catalog bounds on every admitted graph (empty: skip the catalog).
  std::vector<BoundId> bounds;
  EvalOptions eval;
  std::size_t jobs = 1;
};

struct ExhaustiveResult {
  ExtremalRecord record;
  std::uint64_t graphs_enumerated = 0;
  std::uint64_t graphs_admitted = 0;
  std::map<BoundId, BoundTally> tallies;
  std::vector<BoundReport> violations;
};

/// Scans all 2^(n(n-1)/2) labeled graphs of order n, keeps the K_{r+1}-free ones,
/// and returns the maximum q. Among graphs tied within tolerance the witness is the
/// one with most edges, then lowest mask.
inline ExhaustiveResult exhaustive_labeled(std::size_t n, std::size_t r, const ExhaustiveOptions& opt = {}) {
  if (n > opt.max_order) throw std::invalid_argument("order " + std::to_string(n) + " exceeds exhaustive cap " + std::to_string(opt.max_order));
  if (n == 0) throw std::invalid_argument("exhaustive search needs n >= 1");
  if (r == 0) throw std::invalid_argument("clique cap r must be >= 1");
  const std::size_t pairs = n * (n - 1) / 2;
  const std::uint64_t total = std::uint64_t{1} << pairs;
  const std::size_t chunks = std::min<std::uint64_t>(total, 64);
  const std::uint64_t per_chunk = (total + chunks - 1) / chunks;
  const double tol = search_tolerance(n);

  struct Partial {
    bool any = false;
    double best_q = -1.0;
    std::uint64_t best_mask = 0;
    std::size_t best_edges = 0;
    std::uint64_t admitted = 0;
    std::map<std::string, std::size_t> attainers;
    std::map<BoundId, BoundTally> tallies;
    std::vector<BoundReport> violations;
  };
  std::vector<Partial> parts(chunks);

  detail::run_parallel(opt.jobs, chunks, [&](std::size_t c) {
    Partial& p = parts[c];
    const std::uint64_t lo = c * per_chunk, hi = std::min(total, lo + per_chunk);
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      const Graph g = graph_from_mask(n, mask);
      if (r < n && has_clique(g, r + 1)) continue;
      ++p.admitted;
      double q;
      if (opt.bounds.empty()) {
        q = q_index(g, opt.eval.solver).value;
      } else {
        BoundEvaluator ev(g, opt.eval);
        for (const auto& rep : ev.evaluate_all(opt.bounds)) {
          p.tallies[rep.bound_id].add(rep);
          if (rep.verdict == Verdict::violated) p.violations.push_back(rep);
        }
        q = ev.q().value;
      }
      if (!p.any || q > p.best_q + tol) {
        p.any = true;
        p.best_q = q;
        p.best_mask = mask;
        p.best_edges = g.edge_count();
        p.attainers.clear();
        p.attainers[Structure::of(g).key()] = 1;
      } else if (q >= p.best_q - tol) {
        ++p.attainers[Structure::of(g).key()];
        if (g.edge_count() > p.best_edges) {
          p.best_mask = mask;
          p.best_edges = g.edge_count();
        }
      }
    }
  });

  ExhaustiveResult res;
  res.graphs_enumerated = total;
  const Partial* winner = nullptr;
  for (const auto& p : parts) {
    res.graphs_admitted += p.admitted;
    for (const auto& [id, t] : p.tallies) res.tallies[id].merge(t);
    res.violations.insert(res.violations.end(), p.violations.begin(), p.violations.end());
    if (p.any && (!winner || p.best_q > winner->best_q + tol ||
                  (p.best_q >= winner->best_q - tol && p.best_edges > winner->best_edges)))
      winner = &p;
  }
  if (!winner) throw std::logic_error("no admissible graph");  // the edgeless graph is always admitted
  res.record = detail::make_record(n, r, graph_from_mask(n, winner->best_mask), winner->best_q, Provenance::exhaustive);
  for (const auto& p : parts)
    if (p.any && p.best_q >= winner->best_q - tol)
      for (const auto& [k, cnt] : p.attainers) res.record.attainers[k] += cnt;
  return res;
}

struct ParseFailure {
  std::size_t line = 0;
  std::string message;
};

struct VerifyReport {
  std::size_t lines = 0;
  std::size_t graphs = 0;
  std::vector<ParseFailure> parse_failures;
  std::map<BoundId, BoundTally> tallies;
  /// Per bound: slack at quantiles 0, 0.1, ..., 1 over non-vacuous reports (nearest rank).
  std::map<BoundId, std::vector<double>> slack_deciles;
  std::vector<BoundReport> violations;
  /// Best q seen in the stream, as a record with r = max clique over the stream.
  std::optional<ExtremalRecord> best;

  bool any_certified_violation() const {
    return std::any_of(violations.begin(), violations.end(), [](const auto& v) { return v.certified; });
  }
};

inline std::vector<double> deciles(std::vector<double> v) {
  if (v.empty()) return {};
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (int k = 0; k <= 10; ++k) {
    const auto idx = static_cast<std::size_t>(std::ceil(k / 10.0 * static_cast<double>(v.size())));
    out.push_back(v[idx == 0 ? 0 : idx - 1]);
  }
  return out;
}

/// Evaluates the chosen bounds on every graph6 line of a stream. Blank lines
/// are skipped; malformed lines are recorded and the stream continues.
inline VerifyReport stream_verify(std::istream& in, std::span<const BoundId> ids, const EvalOptions& opt = {}) {
  VerifyReport rep;
  std::map<BoundId, std::vector<double>> slacks;
  std::string line;
  double best_q = -1.0;
  std::optional<Graph> best_graph;
  std::size_t max_omega = 1;
  while (std::getline(in, line)) {
    ++rep.lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == graph6::header) continue;
    Graph g;
    try {
      g = parse_graph6(line);
      if (g.order() == 0) throw Graph6Error("graph of order 0");
    } catch (const std::exception& e) {
      rep.parse_failures.push_back({rep.lines, e.what()});
      continue;
    }
    ++rep.graphs;
    BoundEvaluator ev(g, opt);
    for (const auto& r : ev.evaluate_all(ids)) {
      rep.tallies[r.bound_id].add(r);
      if (r.verdict != Verdict::vacuous) slacks[r.bound_id].push_back(r.slack);
      if (r.verdict == Verdict::violated) rep.violations.push_back(r);
    }
    if (ev.q().value > best_q) {
      best_q = ev.q().value;
      best_graph = g;
    }
    max_omega = std::max(max_omega, ev.clique().omega);
  }
  for (auto& [id, s] : slacks) rep.slack_deciles[id] = deciles(std::move(s));
  if (best_graph) rep.best = detail::make_record(best_graph->order(), max_omega, *best_graph, best_q, Provenance::stream);
  return rep;
}

/// 64-bit Mersenne Twister (std::mt19937_64, fully specified by the standard)
/// with in-house range reduction, so trajectories match across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

private:
  std::mt19937_64 engine_;
};

/// Stream separation for restart k of a run seeded with `seed`.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct SearchParams {
  std::size_t restarts = 20;
  /// Proposal budget per restart.
  std::size_t max_steps = 20000;
  std::uint64_t rng_seed = 20110301;
  double weight_add = 1.0;
  double weight_remove = 1.0;
  double weight_swap = 4.0;
  /// Non-additive moves must raise q by more than this.
  double plateau_tolerance = 1e-7;
  /// Failed proposals in a row before a full deterministic neighborhood scan.
  std::size_t patience = 200;
  std::size_t jobs = 1;
  SolverOptions solver;
};

struct HillClimbResult {
  ExtremalRecord record;
  std::vector<double> restart_best;
  std::size_t monotonicity_checks = 0;
  std::size_t monotonicity_failures = 0;
};

namespace detail {

class Climber {
public:
  Climber(std::size_t n, std::size_t r, const SearchParams& p, std::uint64_t seed)
      : n_(n), r_(r), p_(p), rng_(seed), g_(n) {}

  void run() {
    auto pairs = graph6_pair_order(n_);
    rng_.shuffle(pairs);
    for (auto [u, v] : pairs)
      if (edge_keeps_clique_bound(g_, u, v, r_)) g_ = g_.with_edge(u, v);
    q_ = q_of(g_);

    std::size_t failed = 0;
    for (std::size_t step = 0; step < p_.max_steps; ++step) {
      const double total = p_.weight_add + p_.weight_remove + p_.weight_swap;
      const double pick = rng_.unit() * total;
      bool ok;
      if (pick < p_.weight_add) ok = try_add();
      else if (pick < p_.weight_add + p_.weight_remove) ok = try_remove_refill();
      else ok = try_swap();
      failed = ok ? 0 : failed + 1;
      if (failed >= p_.patience) {
        if (!scan_swaps()) break;
        failed = 0;
      }
    }
  }

  const Graph& graph() const { return g_; }
  double q() const { return q_; }
  std::size_t checks = 0, failures = 0;

private:
  double q_of(const Graph& g) const { return q_index(g, p_.solver).value; }

  std::vector<Edge> safe_additions(const Graph& g) const {
    std::vector<Edge> out;
    for (Vertex j = 1; j < n_; ++j)
      for (Vertex i = 0; i < j; ++i)
        if (!g.has_edge(i, j) && edge_keeps_clique_bound(g, i, j, r_)) out.emplace_back(i, j);
    return out;
  }

  /// Adds safe edges in random order until none remain; each addition is audited for monotonicity.
  void saturate(Graph& g, double& q) {
    for (;;) {
      auto cand = safe_additions(g);
      if (cand.empty()) return;
      auto [u, v] = cand[rng_.below(cand.size())];
      g = g.with_edge(u, v);
      const double after = q_of(g);
      ++checks;
      if (after < q - 1e-9) ++failures;
      q = after;
    }
  }

  bool try_add() {
    auto cand = safe_additions(g_);
    if (cand.empty()) return false;
    auto [u, v] = cand[rng_.below(cand.size())];
    g_ = g_.with_edge(u, v);
    const double after = q_of(g_);
    ++checks;
    if (after < q_ - 1e-9) ++failures;
    q_ = after;
    return true;
  }

  bool accept(Graph cand) {
    double q = q_of(cand);
    saturate(cand, q);
    if (q > q_ + p_.plateau_tolerance) {
      g_ = std::move(cand);
      q_ = q;
      return true;
    }
    return false;
  }

  bool try_remove_refill() {
    const auto e = g_.edges();
    if (e.empty()) return false;
    auto [u, v] = e[rng_.below(e.size())];
    return accept(g_.without_edge(u, v));
  }

  bool try_swap() {
    const auto e = g_.edges();
    if (e.empty()) return false;
    auto [u, v] = e[rng_.below(e.size())];
    const Graph h = g_.without_edge(u, v);
    auto cand = safe_additions(h);
    std::erase(cand, Edge{u, v});
    if (cand.empty()) return false;
    auto [x, y] = cand[rng_.below(cand.size())];
    return accept(h.with_edge(x, y));
  }

  /// Every (remove, add) pair in random order; true if one improved q.
  bool scan_swaps() {
    std::vector<std::pair<Edge, Edge>> moves;
    for (auto e : g_.edges()) {
      const Graph h = g_.without_edge(e.first, e.second);
      for (auto f : safe_additions(h))
        if (f != e) moves.emplace_back(e, f);
    }
    rng_.shuffle(moves);
    for (auto [e, f] : moves)
      if (accept(g_.without_edge(e.first, e.second).with_edge(f.first, f.second))) return true;
    return false;
  }

  std::size_t n_, r_;
  const SearchParams& p_;
  Rng rng_;
  Graph g_;
  double q_ = 0.0;
};

}  // namespace detail

/// Local search for the largest q over K_{r+1}-free graphs of order n.
///
/// Each restart starts from a random maximal K_{r+1}-free graph. Safe edge
/// additions are always taken (q never decreases under them); swaps and
/// remove-then-refill moves are taken only when q rises by more than the
/// plateau tolerance. Restart k draws from Rng(splitmix64(seed + k)), and the
/// best restart wins with ties to the lowest index, so the result does not
/// depend on `jobs`.
inline HillClimbResult hill_climb(std::size_t n, std::size_t r, const SearchParams& params = {}) {
  if (n < 2) throw std::invalid_argument("hill_climb needs n >= 2");
  if (r < 2) throw std::invalid_argument("hill_climb needs r >= 2");
  if (params.restarts == 0) throw std::invalid_argument("hill_climb needs at least one restart");

  struct Outcome {
    Graph g;
    double q = 0.0;
    std::size_t checks = 0, failures = 0;
  };
  std::vector<Outcome> outcomes(params.restarts);
  detail::run_parallel(params.jobs, params.restarts, [&](std::size_t k) {
    detail::Climber c(n, r, params, splitmix64(params.rng_seed + k));
    c.run();
    outcomes[k] = {c.graph(), c.q(), c.checks, c.failures};
  });

  HillClimbResult res;
  std::size_t best = 0;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    res.restart_best.push_back(outcomes[k].q);
    res.monotonicity_checks += outcomes[k].checks;
    res.monotonicity_failures += outcomes[k].failures;
    if (outcomes[k].q > outcomes[best].q + params.plateau_tolerance) best = k;
  }
  res.record = detail::make_record(n, r, outcomes[best].g, outcomes[best].q, Provenance::heuristic);
  res.record.seed = params.rng_seed;
  return res;
}

enum class NuMode { exhaustive, heuristic };

struct NuPoint {
  std::size_t n = 0;
  double q_n = 0.0;
  double ratio = 0.0;
  ExtremalRecord record;
};

struct NuEstimate {
  std::size_t r = 0;
  std::vector<NuPoint> series;
  double limit_target = 0.0;
};

/// Ratios q_n / n over n in [n_lo, n_hi] for K_{r+1}-free graphs.
inline NuEstimate nu_estimate(std::size_t r, std::size_t n_lo, std::size_t n_hi, NuMode mode,
                              const ExhaustiveOptions& exhaustive = {}, const SearchParams& heuristic = {}) {
  if (r < 1) throw std::invalid_argument("nu_estimate needs r >= 1");
  if (n_lo < 1 || n_lo > n_hi) throw std::invalid_argument("invalid order range");
  if (mode == NuMode::exhaustive && n_hi > exhaustive.max_order)
    throw std::invalid_argument("order " + std::to_string(n_hi) + " exceeds exhaustive cap " + std::to_string(exhaustive.max_order));
  NuEstimate est;
  est.r = r;
  est.limit_target = 2.0 * (1.0 - 1.0 / static_cast<double>(r));
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    NuPoint pt;
    pt.n = n;
    if (mode == NuMode::exhaustive) {
      ExhaustiveOptions o = exhaustive;
      o.bounds.clear();
      pt.record = exhaustive_labeled(n, r, o).record;
    } else {
      if (n < 2 || r < 2) throw std::invalid_argument("heuristic mode needs n >= 2 and r >= 2");
      pt.record = hill_climb(n, r, heuristic).record;
    }
    pt.q_n = pt.record.best_q;
    pt.ratio = pt.q_n / static_cast<double>(n);
    est.series.push_back(std::move(pt));
  }
  return est;
}

struct CensusRow {
  std::size_t n = 0;
  std::size_t r = 0;
  bool attained = false;
  Structure structure;
  /// (parts, part size) when the witness is complete regular multipartite.
  std::optional<MultipartiteShape> shape;
  bool complete_bipartite = false;
  /// Exhaustive records only: structure keys of all attaining graphs.
  std::map<std::string, std::size_t> attainers;
};

/// Classifies each record's witness when it meets 2(1 - 1/r) n within tolerance.
inline std::vector<CensusRow> equality_census(std::span<const ExtremalRecord> records) {
  std::vector<CensusRow> rows;
  for (const auto& rec : records) {
    CensusRow row;
    row.n = rec.n;
    row.r = rec.r;
    row.attained = rec.gap <= search_tolerance(rec.n);
    row.structure = rec.structure;
    if (row.attained) {
      row.shape = rec.structure.regular();
      row.complete_bipartite = rec.structure.complete_bipartite();
      row.attainers = rec.attainers;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qindex
