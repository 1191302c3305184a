#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <type_traits>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "gapbench/errors.hpp"
#include "gapbench/experiments.hpp"
#include "gapbench/google.hpp"
#include "gapbench/graph.hpp"
#include "gapbench/pagerank.hpp"
#include "gapbench/parallel.hpp"
#include "gapbench/spectra.hpp"
#include "output.hpp"

namespace gapbench::cli {
namespace {

using Json = nlohmann::ordered_json;

// --- Option registry -------------------------------------------------------
//
// Every option is bound to a variable and remembered with a printer, so the
// parsed values can be echoed into output headers in declaration order.

std::string to_text(const std::string& v) { return v; }
std::string to_text(bool v) { return v ? "true" : "false"; }
std::string to_text(double v) { return format_number(v); }
template <typename T>
  requires std::is_integral_v<T>
std::string to_text(T v) {
  return std::to_string(v);
}
template <typename T>
std::string to_text(const std::vector<T>& v) {
  std::string out;
  for (const auto& x : v) {
    if (!out.empty()) out += ' ';
    out += to_text(x);
  }
  return out;
}
template <typename T>
std::string to_text(const std::optional<T>& v) {
  return v ? to_text(*v) : std::string("none");
}

class Registry {
 public:
  template <typename T>
  CLI::Option* option(CLI::App* app, const std::string& flags, T& var, const std::string& help) {
    CLI::Option* opt = app->add_option(flags, var, help);
    remember(app, opt, [&var] { return to_text(var); });
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& flags, bool& var, const std::string& help) {
    CLI::Option* opt = app->add_flag(flags, var, help);
    remember(app, opt, [&var] { return to_text(var); });
    return opt;
  }

  RunConfig config(const CLI::App* root, const CLI::App* sub) const {
    RunConfig cfg;
    cfg.command = sub->get_name();
    for (const auto& e : entries_) {
      if (e.app == root || e.app == sub) cfg.entries.emplace_back(e.key, e.print());
    }
    return cfg;
  }

 private:
  struct Entry {
    const CLI::App* app;
    std::string key;
    std::function<std::string()> print;
  };

  void remember(const CLI::App* app, const CLI::Option* opt, std::function<std::string()> print) {
    std::string key = opt->get_single_name();
    entries_.push_back({app, std::move(key), std::move(print)});
  }

  std::vector<Entry> entries_;
};

// --- Shared option groups --------------------------------------------------

struct Common {
  double alpha = 0.85;
  double epsilon = 1e-8;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  bool deterministic = false;
  std::string output;
  std::string format = "csv";
  std::string plot;
};

struct GraphSource {
  std::string graph_file;
  std::string family = "worst-case";
  std::size_t n = 0;
  std::size_t m = 0;
  ScaleFreeParams scale_free;
  std::string dangling = "uniform";
};

struct SolverArgs {
  std::string method = "dense";
  std::size_t points = 33;
  double refine_tolerance = 1e-6;
  double tolerance = 1e-9;
};

const std::vector<std::string> kFamilies{"worst-case", "scale-free", "uniform"};

void add_generator_options(Registry& reg, CLI::App* app, GraphSource& src) {
  reg.option(app, "--n", src.n, "number of vertices");
  reg.option(app, "--m", src.m, "edge count for the uniform family (default 4n)");
  reg.option(app, "--p-new-source", src.scale_free.p_new_source,
             "scale-free: probability of a new source vertex");
  reg.option(app, "--p-internal", src.scale_free.p_internal,
             "scale-free: probability of an edge between existing vertices");
  reg.option(app, "--p-new-target", src.scale_free.p_new_target,
             "scale-free: probability of a new target vertex");
  reg.option(app, "--in-bias", src.scale_free.in_bias, "scale-free: in-degree offset");
  reg.option(app, "--out-bias", src.scale_free.out_bias, "scale-free: out-degree offset");
}

void add_graph_source(Registry& reg, CLI::App* app, GraphSource& src) {
  reg.option(app, "--graph", src.graph_file, "edge-list file; overrides --family");
  reg.option(app, "--family", src.family, "generator when no --graph is given")
      ->check(CLI::IsMember(kFamilies));
  add_generator_options(reg, app, src);
  reg.option(app, "--dangling", src.dangling, "dangling rows: uniform or self-loop")
      ->check(CLI::IsMember({"uniform", "self-loop", "self_loop"}));
}

void add_solver_options(Registry& reg, CLI::App* app, SolverArgs& solver) {
  reg.option(app, "--method", solver.method, "eigensolver: dense or iterative")
      ->check(CLI::IsMember({"dense", "iterative", "lanczos"}));
  reg.option(app, "--points", solver.points, "coarse grid size over s in [0, 1]");
  reg.option(app, "--refine-tol", solver.refine_tolerance, "final bracket width in s");
  reg.option(app, "--tolerance", solver.tolerance, "eigenpair residual tolerance");
}

DirectedGraph generate(const std::string& family, const GraphSource& src, std::uint64_t seed) {
  if (src.n == 0) throw InvalidInput("--n is required to generate a graph");
  if (family == "worst-case") return worst_case_graph(src.n);
  if (family == "scale-free") return scale_free_graph(src.n, src.scale_free, seed);
  return uniform_random_graph(src.n, src.m ? src.m : 4 * src.n, seed);
}

DirectedGraph load_source(const GraphSource& src, std::uint64_t seed) {
  if (!src.graph_file.empty()) return read_edge_list_file(src.graph_file);
  return generate(src.family, src, seed);
}

GapOptions gap_options(const SolverArgs& solver, std::uint64_t seed) {
  GapOptions opts;
  opts.coarse_points = solver.points;
  opts.refine_tolerance = solver.refine_tolerance;
  opts.solver.method = parse_eigen_method(solver.method);
  opts.solver.tolerance = solver.tolerance;
  opts.solver.seed = seed;
  return opts;
}

void check_dense(const GapOptions& opts, std::size_t n) {
  if (opts.solver.method == EigenMethod::dense && n > opts.solver.dense_threshold) {
    throw InvalidInput("n = " + std::to_string(n) + " exceeds the dense threshold " +
                       std::to_string(opts.solver.dense_threshold) +
                       "; use --method iterative or raise GAPBENCH_DENSE_THRESHOLD");
  }
}

// --- Output ----------------------------------------------------------------

std::string render_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_array()) {
    std::string out;
    for (const auto& x : v) {
      if (!out.empty()) out += ' ';
      out += render_value(x);
    }
    return out;
  }
  return v.dump();
}

void render_summary(std::ostream& os, const Json& summary, const std::string& prefix = "") {
  for (const auto& [key, value] : summary.items()) {
    if (value.is_object()) {
      render_summary(os, value, prefix + key + ".");
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        render_summary(os, value[i], prefix + key + "[" + std::to_string(i) + "].");
      }
    } else {
      os << prefix << key << ": " << render_value(value) << '\n';
    }
  }
}

Json cell_json(const std::string& cell) {
  const char* end = cell.data() + cell.size();
  long long i = 0;
  if (auto [ptr, ec] = std::from_chars(cell.data(), end, i); !cell.empty() && ec == std::errc() && ptr == end) {
    return i;
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (!cell.empty() && ec == std::errc() && ptr == end) return v;
  return cell;
}

struct Result {
  explicit Result(CsvTable t) : table(std::move(t)) {}

  CsvTable table;
  Json summary = Json::object();
  std::optional<Chart> plot;
  int exit_code = kSuccess;
};

void emit(const Common& common, const RunConfig& cfg, const Result& result, std::ostream& out,
          std::ostream& err) {
  std::string body;
  if (common.format == "json") {
    Json doc;
    doc["provenance"] = cfg.provenance();
    doc["summary"] = result.summary;
    doc["columns"] = result.table.columns();
    Json rows = Json::array();
    for (const auto& row : result.table.rows()) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[result.table.columns()[i]] = cell_json(row[i]);
      rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    body = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    result.table.write(os, cfg);
    body = os.str();
  }

  if (common.output.empty()) {
    out << body;
    if (common.format != "json") render_summary(err, result.summary);
  } else {
    write_text_file(common.output, body);
    if (common.format != "json") render_summary(out, result.summary);
  }
  if (result.plot && !common.plot.empty()) write_text_file(common.plot, render_svg(*result.plot, cfg));
}

// --- Commands --------------------------------------------------------------

struct GenerateArgs {
  std::string family;
  GraphSource src;
};

int cmd_generate(const Common& common, const GenerateArgs& args, const RunConfig& cfg,
                 std::ostream& out, std::ostream& err) {
  const DirectedGraph graph = generate(args.family, args.src, common.seed);
  const auto comments = cfg.provenance();
  if (common.output.empty()) {
    out << write_edge_list(graph, comments);
  } else {
    write_edge_list_file(graph, common.output, comments);
    err << "wrote " << graph.vertex_count() << " vertices, " << graph.edge_count() << " edges to "
        << common.output << '\n';
  }
  return kSuccess;
}

struct PageRankArgs {
  GraphSource src;
  std::size_t max_iterations = 100000;
};

Result cmd_pagerank(const Common& common, const PageRankArgs& args) {
  const DirectedGraph graph = load_source(args.src, common.seed);
  const GoogleOperator google(StochasticOperator(graph, parse_dangling_policy(args.src.dangling)),
                              common.alpha);
  const PageRankResult pr = power_method(google, common.epsilon, args.max_iterations);

  Result result{CsvTable({"vertex", "score"})};
  for (std::size_t i = 0; i < pr.size(); ++i) result.table.add_row({std::to_string(i), format_number(pr.pi[i])});
  const auto top = std::max_element(pr.pi.begin(), pr.pi.end());
  result.summary["n"] = pr.size();
  result.summary["iterations"] = pr.iterations;
  result.summary["iteration_bound"] = power_iteration_bound(common.alpha, common.epsilon);
  result.summary["residual"] = pr.residual;
  result.summary["top_vertex"] = static_cast<std::size_t>(top - pr.pi.begin());
  result.summary["top_score"] = *top;
  return result;
}

struct GapArgs {
  GraphSource src;
  SolverArgs solver;
};

Result cmd_gap(const Common& common, const GapArgs& args) {
  const GapOptions opts = gap_options(args.solver, common.seed);
  if (args.src.graph_file.empty()) check_dense(opts, args.src.n);
  const DirectedGraph graph = load_source(args.src, common.seed);
  check_dense(opts, graph.vertex_count());
  const GoogleOperator google(StochasticOperator(graph, parse_dangling_policy(args.src.dangling)),
                              common.alpha);
  const GapProfile profile = min_gap(google, opts);

  Result result{CsvTable({"s", "gap", "stage"})};
  for (const auto& p : profile.samples) result.table.add_row({format_number(p.s), format_number(p.gap), "grid"});
  for (const auto& p : profile.refinement) {
    result.table.add_row({format_number(p.s), format_number(p.gap), "refine"});
  }
  result.summary["n"] = graph.vertex_count();
  result.summary["alpha"] = common.alpha;
  result.summary["delta"] = profile.delta;
  result.summary["delta_inverse"] = 1.0 / profile.delta;
  result.summary["s_star"] = profile.s_star;
  result.summary["method"] = std::string(to_string(opts.solver.method));
  result.summary["degraded"] = profile.degraded;

  std::vector<GapSample> all = profile.samples;
  all.insert(all.end(), profile.refinement.begin(), profile.refinement.end());
  std::sort(all.begin(), all.end(), [](const GapSample& a, const GapSample& b) { return a.s < b.s; });
  PlotSeries curve{"g(s)", {}, false};
  for (const auto& p : all) curve.points.emplace_back(p.s, p.gap);
  PlotSeries star{"minimum", {{profile.s_star, profile.delta}}, true};
  result.plot = Chart{"spectral gap along the interpolation", "s", "gap", false, false, {curve, star}};

  if (profile.degraded) result.exit_code = kNumerical;
  return result;
}

struct ScanArgs {
  std::string family = "worst-case";
  std::vector<double> alphas;
  std::vector<std::size_t> ns;
  std::size_t seeds = 5;
  GraphSource src;
  SolverArgs solver;
};

Json fit_json(const ScalingFit& fit) {
  Json j;
  j["exponent"] = fit.exponent;
  j["prefactor"] = fit.prefactor;
  j["r_squared"] = fit.r_squared;
  j["max_abs_log_residual"] = fit.max_abs_log_residual();
  j["log_residuals"] = fit.log_residuals;
  return j;
}

PlotSeries fit_line(const std::string& name, const ScalingFit& fit) {
  double lo = fit.points.front().n;
  double hi = lo;
  for (const auto& p : fit.points) {
    lo = std::min(lo, p.n);
    hi = std::max(hi, p.n);
  }
  PlotSeries line{name, {}, false};
  for (double n : {lo, hi}) line.points.emplace_back(n, fit.prefactor * std::pow(n, fit.exponent));
  return line;
}

Result cmd_scan(const Common& common, const ScanArgs& args) {
  if (args.ns.empty()) throw InvalidInput("scan needs a non-empty --ns list");
  const std::vector<double> alphas = args.alphas.empty() ? std::vector<double>{common.alpha} : args.alphas;
  const GapOptions opts = gap_options(args.solver, common.seed);
  for (std::size_t n : args.ns) check_dense(opts, n);

  Result result{CsvTable({"alpha", "n", "delta", "delta_inverse", "seed", "s_star"})};
  Json fits = Json::array();
  Chart plot{"inverse gap scaling", "n", "1/delta", true, true, {}};
  bool degraded = false;

  auto add_rows = [&](const std::vector<GapMeasurement>& ms, bool seeded) {
    for (const auto& m : ms) {
      result.table.add_row({format_number(m.alpha), std::to_string(m.n), format_number(m.delta),
                            format_number(m.delta_inverse()), seeded ? std::to_string(m.seed) : "",
                            format_number(m.s_star)});
      degraded = degraded || m.degraded;
    }
  };

  if (args.family == "worst-case") {
    for (const auto& scaling : worst_case_scaling(alphas, args.ns, opts)) {
      add_rows(scaling.measurements, false);
      Json j;
      j["alpha"] = scaling.alpha;
      PlotSeries pts{"alpha " + format_number(scaling.alpha), {}, true};
      for (const auto& m : scaling.measurements) pts.points.emplace_back(static_cast<double>(m.n), m.delta_inverse());
      plot.series.push_back(std::move(pts));
      if (scaling.fit) {
        j.update(fit_json(*scaling.fit));
        j["rescaled_prefactor"] = scaling.rescaled_prefactor;
        plot.series.push_back(fit_line("fit " + format_number(scaling.alpha), *scaling.fit));
      } else {
        j["diagnostic"] = scaling.diagnostic;
      }
      fits.push_back(std::move(j));
    }
  } else {
    const DanglingPolicy policy = parse_dangling_policy(args.src.dangling);
    for (double alpha : alphas) {
      const WwwScaling www =
          www_scaling(args.src.scale_free, args.ns, args.seeds, alpha, opts, common.seed, policy);
      add_rows(www.measurements, true);
      Json j;
      j["alpha"] = alpha;
      j.update(fit_json(www.fit));
      PlotSeries pts{"median " + format_number(alpha), {}, true};
      for (const auto& p : www.medians) pts.points.emplace_back(p.n, p.y);
      plot.series.push_back(std::move(pts));
      plot.series.push_back(fit_line("fit " + format_number(alpha), www.fit));
      fits.push_back(std::move(j));
    }
  }

  result.summary["family"] = args.family;
  result.summary["fits"] = std::move(fits);
  result.summary["degraded"] = degraded;
  result.plot = std::move(plot);
  if (degraded) result.exit_code = kNumerical;
  return result;
}

struct AdversaryArgs {
  std::size_t n = 0;
  bool exhaustive = false;
  bool hill_climb = false;
  std::size_t budget = 2000;
  std::size_t restarts = 0;
  std::string start = "worst-case";
  std::size_t sweep = 0;
  std::string best_path;
  SolverArgs solver;
};

std::string targets_text(const std::vector<Vertex>& targets) {
  std::string out;
  for (Vertex t : targets) {
    if (!out.empty()) out += ' ';
    out += std::to_string(t);
  }
  return out;
}

Result cmd_adversary(const Common& common, const AdversaryArgs& args, const RunConfig& cfg) {
  if (args.n == 0) throw InvalidInput("--n is required");
  AdversaryOptions opts;
  opts.strategy = args.hill_climb ? SearchStrategy::hill_climb : SearchStrategy::exhaustive;
  opts.budget = args.budget;
  opts.restarts = args.restarts;
  opts.seed = common.seed;
  if (args.start == "worst-case" && args.n >= 2) opts.start = worst_case_targets(args.n);
  opts.gap = gap_options(args.solver, common.seed);
  const AdversarialResult found = adversarial_search(args.n, common.alpha, opts);

  const double floor = found.best.delta;
  Result result{CsvTable({"index", "targets", "delta", "is_min"})};
  for (std::size_t i = 0; i < found.candidates.size(); ++i) {
    const auto& c = found.candidates[i];
    const bool is_min = std::abs(c.delta - floor) <= 1e-10;
    result.table.add_row({std::to_string(i), targets_text(c.targets), format_number(c.delta), is_min ? "1" : "0"});
  }
  result.summary["n"] = args.n;
  result.summary["alpha"] = common.alpha;
  result.summary["strategy"] = std::string(to_string(found.strategy));
  result.summary["evaluations"] = found.evaluations;
  result.summary["best_targets"] = targets_text(found.best.targets);
  result.summary["best_delta"] = found.best.delta;
  result.summary["worst_case_delta"] = found.worst_case_delta;
  result.summary["worst_case_equivalent"] = found.worst_case_equivalent;
  if (found.strategy == SearchStrategy::hill_climb) {
    result.summary["improved_on_start"] = found.improved_on_start;
    result.summary["budget_exhausted"] = found.budget_exhausted;
  }
  if (args.sweep > 0) {
    const SweepResult sweep = random_stochastic_sweep(args.n, common.alpha, args.sweep, common.seed, opts.gap);
    result.summary["sweep_samples"] = sweep.samples;
    result.summary["sweep_min_delta"] = sweep.min_delta;
    result.summary["sweep_max_delta"] = sweep.max_delta;
  }
  if (!args.best_path.empty()) {
    write_edge_list_file(candidate_graph(found.best.targets), args.best_path, cfg.provenance());
  }
  return result;
}

struct ReportArgs {
  GraphSource src;
  SolverArgs solver;
  std::optional<double> delta;
  double a_exponent = 1.0;
  double b_exponent = 1.0;
};

Result cmd_report(const Common& common, const ReportArgs& args) {
  double delta = 0.0;
  std::size_t n = args.src.n;
  bool degraded = false;
  if (args.delta) {
    if (n == 0) throw InvalidInput("--n is required");
    delta = *args.delta;
  } else {
    const GapOptions opts = gap_options(args.solver, common.seed);
    if (args.src.graph_file.empty()) check_dense(opts, n);
    const DirectedGraph graph = load_source(args.src, common.seed);
    n = graph.vertex_count();
    check_dense(opts, n);
    const GoogleOperator google(StochasticOperator(graph, parse_dangling_policy(args.src.dangling)),
                                common.alpha);
    const GapProfile profile = min_gap(google, opts);
    delta = profile.delta;
    degraded = profile.degraded;
  }
  const RuntimeReport r = runtime_report(n, common.alpha, common.epsilon, delta, {args.a_exponent, args.b_exponent});

  Result result{CsvTable({"n", "alpha", "epsilon", "delta", "classical_iterations", "quantum_proxy",
                          "worst_case_proxy", "quantum_over_classical", "worst_case_over_classical"})};
  result.table.add_row({std::to_string(r.n), format_number(r.alpha), format_number(r.epsilon),
                        format_number(r.delta), std::to_string(r.classical_iterations),
                        format_number(r.quantum_proxy), format_number(r.worst_case_proxy),
                        format_number(r.quantum_over_classical), format_number(r.worst_case_over_classical)});
  result.summary["n"] = r.n;
  result.summary["alpha"] = r.alpha;
  result.summary["epsilon"] = r.epsilon;
  result.summary["delta"] = r.delta;
  result.summary["classical_iterations"] = r.classical_iterations;
  result.summary["quantum_proxy"] = r.quantum_proxy;
  result.summary["worst_case_proxy"] = r.worst_case_proxy;
  result.summary["quantum_over_classical"] = r.quantum_over_classical;
  result.summary["worst_case_over_classical"] = r.worst_case_over_classical;
  if (degraded) result.exit_code = kNumerical;
  return result;
}

// Restores the process-wide parallel settings after an in-process run.
struct ParallelScope {
  ParallelScope(std::size_t threads, bool deterministic)
      : threads_(parallel::thread_count()), deterministic_(parallel::deterministic()) {
    parallel::set_thread_count(threads);
    parallel::set_deterministic(deterministic);
  }
  ~ParallelScope() {
    parallel::set_thread_count(threads_);
    parallel::set_deterministic(deterministic_);
  }

 private:
  std::size_t threads_;
  bool deterministic_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for the spectral gap of adiabatic PageRank Hamiltonians", "gapbench"};
  app.set_version_flag("--version", std::string("gapbench ") + GAPBENCH_VERSION);
  app.set_config("--config", "", "read options from a key=value file");
  app.require_subcommand(1);
  app.fallthrough();

  Registry reg;
  Common common;
  reg.option(&app, "--alpha", common.alpha, "damping factor in [0, 1)");
  reg.option(&app, "--epsilon", common.epsilon, "PageRank tolerance and report precision");
  reg.option(&app, "--seed", common.seed, "random seed (base seed for multi-seed scans)");
  reg.option(&app, "--threads", common.threads, "worker thread cap")->check(CLI::PositiveNumber);
  reg.flag(&app, "--deterministic", common.deterministic, "bit-reproducible reductions");
  reg.option(&app, "-o,--output", common.output, "output file (default stdout)");
  reg.option(&app, "--format", common.format, "table format: csv or json")->check(CLI::IsMember({"csv", "json"}));
  reg.option(&app, "--plot", common.plot, "write an SVG chart to this path");

  GenerateArgs gen;
  CLI::App* generate_cmd = app.add_subcommand("generate", "write a graph as an edge list");
  reg.option(generate_cmd, "family", gen.family, "worst-case, scale-free or uniform")
      ->required()
      ->check(CLI::IsMember(kFamilies));
  add_generator_options(reg, generate_cmd, gen.src);

  PageRankArgs pr;
  CLI::App* pagerank_cmd = app.add_subcommand("pagerank", "PageRank scores by the power method");
  add_graph_source(reg, pagerank_cmd, pr.src);
  reg.option(pagerank_cmd, "--max-iter", pr.max_iterations, "iteration cap before giving up");

  GapArgs gap;
  CLI::App* gap_cmd = app.add_subcommand("gap", "gap profile g(s) and its minimum");
  add_graph_source(reg, gap_cmd, gap.src);
  add_solver_options(reg, gap_cmd, gap.solver);

  ScanArgs scan;
  CLI::App* scan_cmd = app.add_subcommand("scan", "inverse gap against n with a power-law fit");
  reg.option(scan_cmd, "--family", scan.family, "worst-case or scale-free")
      ->check(CLI::IsMember({"worst-case", "scale-free"}));
  reg.option(scan_cmd, "--alphas", scan.alphas, "damping factors (default --alpha)");
  reg.option(scan_cmd, "--ns", scan.ns, "graph sizes")->expected(0, -1);
  reg.option(scan_cmd, "--seeds", scan.seeds, "scale-free seeds per size");
  add_generator_options(reg, scan_cmd, scan.src);
  reg.option(scan_cmd, "--dangling", scan.src.dangling, "dangling rows: uniform or self-loop")
      ->check(CLI::IsMember({"uniform", "self-loop", "self_loop"}));
  add_solver_options(reg, scan_cmd, scan.solver);

  AdversaryArgs adv;
  CLI::App* adversary_cmd = app.add_subcommand("adversary", "search deterministic P for the smallest gap");
  reg.option(adversary_cmd, "--n", adv.n, "number of vertices");
  auto* ex = reg.flag(adversary_cmd, "--exhaustive", adv.exhaustive, "enumerate all n^n candidates");
  auto* hc = reg.flag(adversary_cmd, "--hill-climb", adv.hill_climb, "single-row local search");
  ex->excludes(hc);
  reg.option(adversary_cmd, "--budget", adv.budget, "hill-climb gap evaluations");
  reg.option(adversary_cmd, "--restarts", adv.restarts, "hill-climb random restarts");
  reg.option(adversary_cmd, "--start", adv.start, "hill-climb start: worst-case or random")
      ->check(CLI::IsMember({"worst-case", "random"}));
  reg.option(adversary_cmd, "--sweep", adv.sweep, "random dense stochastic samples to compare");
  reg.option(adversary_cmd, "--best", adv.best_path, "write the best P as an edge list");
  add_solver_options(reg, adversary_cmd, adv.solver);

  ReportArgs rep;
  CLI::App* report_cmd = app.add_subcommand("report", "runtime proxies against the classical bound");
  add_graph_source(reg, report_cmd, rep.src);
  add_solver_options(reg, report_cmd, rep.solver);
  reg.option(report_cmd, "--delta", rep.delta, "use this gap instead of measuring one");
  reg.option(report_cmd, "--a", rep.a_exponent, "exponent on ln(1/epsilon)");
  reg.option(report_cmd, "--b", rep.b_exponent, "exponent on 1/delta");

  std::vector<const char*> argv{"gapbench"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const RunConfig cfg = reg.config(&app, sub);
  ParallelScope scope(common.threads, common.deterministic);
  try {
    if (sub == generate_cmd) return cmd_generate(common, gen, cfg, out, err);
    Result result = sub == pagerank_cmd  ? cmd_pagerank(common, pr)
                    : sub == gap_cmd     ? cmd_gap(common, gap)
                    : sub == scan_cmd    ? cmd_scan(common, scan)
                    : sub == adversary_cmd ? cmd_adversary(common, adv, cfg)
                                           : cmd_report(common, rep);
    emit(common, cfg, result, out, err);
    if (result.exit_code == kNumerical) err << "warning: some eigensolves did not converge\n";
    return result.exit_code;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace gapbench::cli
