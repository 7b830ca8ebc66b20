// qindex: command-line front end for Q-index analysis, bound verification and
// extremal search. Exit codes: 0 ok, 1 certified bound violation, 2 usage or
// input error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qindex/qindex.hpp"

namespace {

using namespace qindex;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string format = "json";
  bool no_timestamp = false;
  std::size_t jobs = 1;
  double residual_factor = 1e-10;
  double verdict_tolerance = 1e-8;
  std::size_t chromatic_cap = 16;
  std::size_t exhaustive_cap = 7;
  std::vector<std::string> bounds;

  // graph input
  std::string graph6_text, edges_path, construct_spec;
  // verify
  std::string input_path = "-";
  // search / nu / census
  std::size_t n = 0, r = 0;
  std::string n_range, r_list;
  std::string mode = "exhaustive";
  SearchParams search;
};

EvalOptions eval_options(const RunConfig& c) {
  EvalOptions o;
  o.solver.residual_factor = c.residual_factor;
  o.chromatic.exact_max_order = c.chromatic_cap;
  o.verdict_tolerance = c.verdict_tolerance;
  return o;
}

std::vector<BoundId> selected_bounds(const RunConfig& c) {
  if (c.bounds.empty()) return all_bounds();
  std::vector<BoundId> ids;
  for (const auto& name : c.bounds) {
    if (name == "ALL") return all_bounds();
    auto id = parse_bound_id(name);
    if (!id) throw UsageError("unknown bound '" + name + "'");
    ids.push_back(*id);
  }
  return ids;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoul(s);
      return {v, v};
    }
    return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("bad range '" + s + "', expected a..b");
  }
}

void stamp(json& j, const RunConfig& c) {
  if (c.no_timestamp) return;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ostringstream ss;
  ss << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
  j["timestamp"] = ss.str();
}

std::string fmt(double v, int prec = 10) {
  if (!std::isfinite(v)) return "-";
  std::ostringstream ss;
  ss << std::setprecision(prec) << v;
  return ss.str();
}

Graph read_edges_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open edges file " + path);
  // First token is the order, then whitespace-separated vertex pairs.
  std::size_t n;
  if (!(in >> n)) throw UsageError("edges file must start with the vertex count");
  std::vector<Edge> edges;
  std::size_t u, v;
  while (in >> u >> v) edges.emplace_back(u, v);
  if (!in.eof()) throw UsageError("malformed edge list in " + path);
  try {
    return from_edge_list(n, edges);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

Graph input_graph(const RunConfig& c) {
  const int given = !c.graph6_text.empty() + !c.edges_path.empty() + !c.construct_spec.empty();
  if (given != 1) throw UsageError("give exactly one of --graph6, --edges, --construct");
  try {
    if (!c.graph6_text.empty()) return parse_graph6(c.graph6_text);
    if (!c.edges_path.empty()) return read_edges_file(c.edges_path);
    return construct_graph(c.construct_spec);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

void print_reports(std::ostream& out, const std::vector<BoundReport>& reports, const std::string& format) {
  if (format == "csv") {
    out << io::csv_header << "\n";
    for (const auto& r : reports) out << io::to_csv_row(r) << "\n";
    return;
  }
  out << std::left << std::setw(16) << "bound" << std::setw(20) << "lhs" << std::setw(20) << "rhs" << std::setw(24)
      << "slack" << std::setw(14) << "verdict"
      << "certified\n";
  for (const auto& r : reports)
    out << std::left << std::setw(16) << to_string(r.bound_id) << std::setw(20) << fmt(r.lhs) << std::setw(20)
        << fmt(r.rhs) << std::setw(24) << fmt(r.slack) << std::setw(14) << to_string(r.verdict)
        << (r.certified ? "yes" : "no") << "\n";
}

bool certified_violation(const std::vector<BoundReport>& reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const auto& r) { return r.verdict == Verdict::violated && r.certified; });
}

int run_analyze(const RunConfig& c) {
  const Graph g = input_graph(c);
  if (g.order() == 0) throw UsageError("graph must have at least one vertex");
  BoundEvaluator ev(g, eval_options(c));
  const auto reports = ev.evaluate_all(selected_bounds(c));
  const auto& q = ev.q();
  const auto& mu = ev.mu();
  const auto& cl = ev.clique();
  const auto& chi = ev.chromatic();
  const auto book = max_book(g);

  if (c.format == "json") {
    json j{{"kind", "analysis"},
           {"graph6", ev.graph6()},
           {"n", g.order()},
           {"edges", g.edge_count()},
           {"min_degree", g.min_degree()},
           {"q", {{"value", q.value}, {"residual", q.residual}, {"enclosure", {q.enclosure.lo, q.enclosure.hi}}, {"converged", q.converged}}},
           {"mu", {{"value", mu.value}, {"residual", mu.residual}, {"enclosure", {mu.enclosure.lo, mu.enclosure.hi}}, {"converged", mu.converged}}},
           {"omega", {{"value", cl.omega}, {"witness", cl.witness}}},
           {"chi", {{"value", chi.chi}, {"coloring", chi.coloring}, {"exact", chi.exact}}},
           {"components", connected_components(g).size()}};
    j["max_book"] = book ? json{{"size", book->size}, {"edge", {book->edge.first, book->edge.second}}} : json(nullptr);
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(io::to_json(r));
    j["reports"] = arr;
    stamp(j, c);
    std::cout << j.dump() << "\n";
  } else if (c.format == "csv") {
    print_reports(std::cout, reports, "csv");
  } else {
    std::cout << "graph6      " << ev.graph6() << "\n"
              << "order       " << g.order() << "\n"
              << "edges       " << g.edge_count() << "\n"
              << "min degree  " << g.min_degree() << "\n"
              << "q           " << fmt(q.value, 15) << "  (residual " << fmt(q.residual, 3) << ")\n"
              << "mu          " << fmt(mu.value, 15) << "  (residual " << fmt(mu.residual, 3) << ")\n"
              << "omega       " << cl.omega << "\n"
              << "chi         " << chi.chi << (chi.exact ? " (exact)" : " (upper bound)") << "\n"
              << "max book    " << (book ? std::to_string(book->size) : std::string("-")) << "\n\n";
    print_reports(std::cout, reports, "table");
  }
  return certified_violation(reports) ? exit_violation : exit_ok;
}

int run_verify(const RunConfig& c) {
  const auto ids = selected_bounds(c);
  VerifyReport rep;
  if (c.input_path == "-") {
    rep = stream_verify(std::cin, ids, eval_options(c));
  } else {
    std::ifstream in(c.input_path);
    if (!in) throw UsageError("cannot open " + c.input_path);
    rep = stream_verify(in, ids, eval_options(c));
  }
  if (c.format == "json") {
    json j = io::to_json(rep);
    j["kind"] = "verify";
    stamp(j, c);
    std::cout << j.dump() << "\n";
  } else if (c.format == "csv") {
    print_reports(std::cout, rep.violations, "csv");
  } else {
    std::cout << "lines " << rep.lines << ", graphs " << rep.graphs << ", parse failures " << rep.parse_failures.size()
              << ", violations " << rep.violations.size() << "\n";
    for (const auto& f : rep.parse_failures) std::cout << "  line " << f.line << ": " << f.message << "\n";
    std::cout << std::left << std::setw(16) << "bound" << std::setw(8) << "holds" << std::setw(10) << "violated"
              << std::setw(14) << "inconclusive" << std::setw(9) << "vacuous"
              << "min slack\n";
    for (const auto& [id, t] : rep.tallies)
      std::cout << std::left << std::setw(16) << to_string(id) << std::setw(8) << t.holds << std::setw(10) << t.violated
                << std::setw(14) << t.inconclusive << std::setw(9) << t.vacuous << fmt(t.min_slack) << "\n";
    if (!rep.violations.empty()) print_reports(std::cout, rep.violations, "table");
  }
  return rep.any_certified_violation() ? exit_violation : exit_ok;
}

int run_construct(const RunConfig& c) {
  Graph g;
  try {
    g = construct_graph(c.construct_spec);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (c.format == "json") {
    json j{{"kind", "construct"}, {"spec", c.construct_spec}, {"graph6", serialize_graph6(g)}, {"n", g.order()}, {"edges", g.edge_count()}};
    stamp(j, c);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << serialize_graph6(g) << "\n";
  }
  return exit_ok;
}

ExhaustiveOptions exhaustive_options(const RunConfig& c, bool with_catalog) {
  ExhaustiveOptions o;
  o.max_order = c.exhaustive_cap;
  o.eval = eval_options(c);
  o.jobs = c.jobs;
  if (with_catalog) o.bounds = selected_bounds(c);
  return o;
}

SearchParams search_params(const RunConfig& c) {
  SearchParams p = c.search;
  p.jobs = c.jobs;
  p.solver.residual_factor = c.residual_factor;
  return p;
}

void print_record_table(const ExtremalRecord& rec) {
  std::cout << "n " << rec.n << ", r " << rec.r << ", best q " << fmt(rec.best_q, 15) << ", bound " << fmt(rec.bound_value, 15)
            << ", gap " << fmt(rec.gap, 3) << "\nwitness " << rec.best_graph << " (" << rec.structure.key() << "), "
            << to_string(rec.provenance) << (rec.seed ? ", seed " + std::to_string(*rec.seed) : std::string()) << "\n";
}

int run_search(const RunConfig& c) {
  if (c.n == 0 || c.r == 0) throw UsageError("search needs --n and --r");
  if (c.mode == "exhaustive") {
    if (c.n > c.exhaustive_cap) throw UsageError("order exceeds exhaustive cap");
    const auto res = exhaustive_labeled(c.n, c.r, exhaustive_options(c, true));
    if (c.format == "json") {
      json j{{"kind", "search"},
             {"record", io::to_json(res.record)},
             {"graphs_enumerated", res.graphs_enumerated},
             {"graphs_admitted", res.graphs_admitted},
             {"tallies", io::tallies_json(res.tallies)},
             {"violation_count", res.violations.size()}};
      stamp(j, c);
      std::cout << j.dump() << "\n";
      for (const auto& v : res.violations) std::cout << io::to_json(v).dump() << "\n";
    } else {
      print_record_table(res.record);
      std::cout << "graphs " << res.graphs_enumerated << ", admitted " << res.graphs_admitted << ", violations "
                << res.violations.size() << "\n";
      if (!res.violations.empty()) print_reports(std::cout, res.violations, c.format);
    }
    return certified_violation(res.violations) ? exit_violation : exit_ok;
  }
  if (c.mode != "heuristic") throw UsageError("--mode must be exhaustive or heuristic");
  if (c.n < 2 || c.r < 2) throw UsageError("heuristic search needs n >= 2 and r >= 2");
  const auto res = hill_climb(c.n, c.r, search_params(c));
  if (c.format == "json") {
    json j{{"kind", "search"},
           {"record", io::to_json(res.record)},
           {"restart_best", res.restart_best},
           {"monotonicity_checks", res.monotonicity_checks},
           {"monotonicity_failures", res.monotonicity_failures}};
    stamp(j, c);
    std::cout << j.dump() << "\n";
  } else {
    print_record_table(res.record);
  }
  return exit_ok;
}

int run_nu(const RunConfig& c) {
  if (c.r == 0) throw UsageError("nu needs --r");
  auto [lo, hi] = parse_range(c.n_range);
  NuMode mode;
  if (c.mode == "exhaustive") mode = NuMode::exhaustive;
  else if (c.mode == "heuristic") mode = NuMode::heuristic;
  else throw UsageError("--mode must be exhaustive or heuristic");
  if (mode == NuMode::exhaustive && hi > c.exhaustive_cap) throw UsageError("order exceeds exhaustive cap");
  const auto est = nu_estimate(c.r, lo, hi, mode, exhaustive_options(c, false), search_params(c));
  if (c.format == "json") {
    json j = io::to_json(est);
    j["kind"] = "nu";
    stamp(j, c);
    std::cout << j.dump() << "\n";
  } else if (c.format == "csv") {
    std::cout << "n,q_n,ratio,limit_target,witness\n";
    for (const auto& p : est.series)
      std::cout << p.n << "," << io::csv_number(p.q_n) << "," << io::csv_number(p.ratio) << ","
                << io::csv_number(est.limit_target) << "," << p.record.best_graph << "\n";
  } else {
    std::cout << "r = " << est.r << ", limit target 2(1-1/r) = " << fmt(est.limit_target, 12) << "\n";
    std::cout << std::left << std::setw(5) << "n" << std::setw(22) << "q_n" << std::setw(22) << "q_n/n"
              << "witness\n";
    for (const auto& p : est.series)
      std::cout << std::left << std::setw(5) << p.n << std::setw(22) << fmt(p.q_n, 15) << std::setw(22) << fmt(p.ratio, 15)
                << p.record.best_graph << " " << p.record.structure.key() << "\n";
  }
  return exit_ok;
}

int run_census(const RunConfig& c) {
  auto [lo, hi] = parse_range(c.n_range);
  auto [rlo, rhi] = parse_range(c.r_list);
  if (hi > c.exhaustive_cap) throw UsageError("order exceeds exhaustive cap");
  if (rlo < 2) throw UsageError("census needs r >= 2");
  std::vector<ExtremalRecord> records;
  for (std::size_t r = rlo; r <= rhi; ++r)
    for (std::size_t n = std::max(lo, r); n <= hi; ++n) records.push_back(exhaustive_labeled(n, r, exhaustive_options(c, false)).record);
  const auto rows = equality_census(records);
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& row : rows) arr.push_back(io::to_json(row));
    json j{{"kind", "census"}, {"rows", arr}};
    stamp(j, c);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << std::left << std::setw(5) << "n" << std::setw(5) << "r" << std::setw(10) << "attained"
              << std::setw(20) << "witness" << "attaining structures\n";
    for (const auto& row : rows) {
      std::string att;
      for (const auto& [k, cnt] : row.attainers) att += k + " x" + std::to_string(cnt) + "  ";
      std::cout << std::left << std::setw(5) << row.n << std::setw(5) << row.r << std::setw(10)
                << (row.attained ? "yes" : "no") << std::setw(20) << row.structure.key() << att << "\n";
    }
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signless Laplacian Q-index toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI file (same keys as flags)");
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_flag("--no-timestamp", cfg.no_timestamp, "Omit the timestamp field from JSON output");
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--residual-factor", cfg.residual_factor, "Eigen residual target relative to max row sum");
    sub->add_option("--verdict-tol", cfg.verdict_tolerance, "Verdict tolerance per vertex");
    sub->add_option("--chromatic-cap", cfg.chromatic_cap, "Largest order for exact chromatic number");
    sub->add_option("--exhaustive-cap", cfg.exhaustive_cap, "Largest order for exhaustive enumeration");
  };
  auto bounds_opt = [&](CLI::App* sub) {
    sub->add_option("--bounds", cfg.bounds, "Bound ids (comma separated), default all")->delimiter(',');
  };
  auto search_opts = [&](CLI::App* sub) {
    sub->add_option("--restarts", cfg.search.restarts, "Hill-climb restarts")->check(CLI::PositiveNumber);
    sub->add_option("--max-steps", cfg.search.max_steps, "Proposals per restart");
    sub->add_option("--seed", cfg.search.rng_seed, "RNG seed (mt19937_64)");
    sub->add_option("--weight-add", cfg.search.weight_add, "Proposal weight: add edge");
    sub->add_option("--weight-remove", cfg.search.weight_remove, "Proposal weight: remove and refill");
    sub->add_option("--weight-swap", cfg.search.weight_swap, "Proposal weight: swap edge");
    sub->add_option("--plateau-tol", cfg.search.plateau_tolerance, "Minimum q gain to accept a swap");
    sub->add_option("--patience", cfg.search.patience, "Failed proposals before a full neighborhood scan");
  };

  auto* analyze = app.add_subcommand("analyze", "Spectral and combinatorial report for one graph");
  common(analyze);
  bounds_opt(analyze);
  analyze->add_option("--graph6", cfg.graph6_text, "Graph as a graph6 string");
  analyze->add_option("--edges", cfg.edges_path, "File: order, then vertex pairs");
  analyze->add_option("--construct", cfg.construct_spec, "Generator spec, e.g. turan:12:3");

  auto* verify = app.add_subcommand("verify", "Evaluate bounds over a graph6 stream");
  common(verify);
  bounds_opt(verify);
  verify->add_option("--input", cfg.input_path, "graph6 file, or - for standard input");

  auto* construct = app.add_subcommand("construct", "Emit the graph6 line for a generator spec");
  common(construct);
  construct->add_option("--spec", cfg.construct_spec, "Generator spec")->required();

  auto* search = app.add_subcommand("search", "Maximize q over K_{r+1}-free graphs of order n");
  common(search);
  bounds_opt(search);
  search_opts(search);
  search->add_option("--n", cfg.n, "Order")->required();
  search->add_option("--r", cfg.r, "Clique cap")->required();
  search->add_option("--mode", cfg.mode, "exhaustive or heuristic");

  auto* nu = app.add_subcommand("nu", "Series q_n/n against 2(1-1/r)");
  common(nu);
  search_opts(nu);
  nu->add_option("--r", cfg.r, "Clique cap")->required();
  nu->add_option("--n", cfg.n_range, "Order range a..b")->required();
  nu->add_option("--mode", cfg.mode, "exhaustive or heuristic");

  auto* census = app.add_subcommand("census", "Equality census over exhaustive records");
  common(census);
  census->add_option("--n", cfg.n_range, "Order range a..b")->required();
  census->add_option("--r", cfg.r_list, "Clique cap range a..b")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*analyze) return run_analyze(cfg);
    if (*verify) return run_verify(cfg);
    if (*construct) return run_construct(cfg);
    if (*search) return run_search(cfg);
    if (*nu) return run_nu(cfg);
    if (*census) return run_census(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
