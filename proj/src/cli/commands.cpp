#include "dagpart/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "dagpart/cli/bench.hpp"
#include "dagpart/cli/report.hpp"
#include "dagpart/cli/two_pass.hpp"
#include "dagpart/errors.hpp"
#include "dagpart/exact.hpp"
#include "dagpart/graph_io.hpp"
#include "dagpart/instances.hpp"

namespace dagpart::cli {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct BudgetOpts {
  std::optional<double> budget_ms;
  std::optional<std::uint64_t> restarts;

  void add(CLI::App* app, const std::string& default_note) {
    auto* ms = app->add_option("--budget-ms", budget_ms, "Wall-clock budget per run in milliseconds");
    auto* r = app->add_option("--restarts", restarts, "Fixed number of restarts per run (" + default_note + ")");
    ms->excludes(r);
  }
  Budget get(Budget fallback) const {
    if (budget_ms) return Budget::wall_clock_ms(*budget_ms);
    if (restarts) return Budget::restarts(*restarts);
    return fallback;
  }
};

std::vector<Heuristic> parse_heuristics(const std::vector<std::string>& ids) {
  std::vector<Heuristic> out;
  for (const auto& id : ids) {
    if (id == "all") {
      out.assign(std::begin(kAllHeuristics), std::end(kAllHeuristics));
      continue;
    }
    const auto h = parse_heuristic(id);
    if (!h) throw ConfigError("unknown heuristic '" + id + "' (expected sm, am, gm, fm or all)");
    out.push_back(*h);
  }
  if (out.empty()) throw ConfigError("no heuristic given");
  return out;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  return f;
}

// ---------------------------------------------------------------------------

struct PartitionCmd {
  std::string graph;
  BlockId k = 2;
  double epsilon = 0.03;
  std::vector<std::string> heuristics{"fm"};
  BudgetOpts budget;
  std::uint64_t seed = 1;
  std::string output;
  std::string report;
  std::string instance;
  bool allow_empty = false;
  bool check_invariants = false;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("partition", "Partition a DAG into k blocks with an acyclic quotient graph");
    c->add_option("graph", graph, "Graph file")->required()->check(CLI::ExistingFile);
    c->add_option("-k,--k", k, "Number of blocks")->required();
    c->add_option("-e,--epsilon", epsilon, "Imbalance parameter")->capture_default_str();
    c->add_option("--heuristic", heuristics, "sm, am, gm, fm or all (comma separated)")->delimiter(',')
        ->capture_default_str();
    budget.add(c, "default 1");
    c->add_option("--seed", seed)->capture_default_str();
    c->add_option("-o,--output", output, "Partition file; with several heuristics, <output>.<id>");
    c->add_option("--report", report, "Write JSON-lines reports here instead of stdout");
    c->add_option("--instance", instance, "Instance name for reports (default: file stem)");
    c->add_flag("--allow-empty", allow_empty, "Allow empty blocks");
    c->add_flag("--check-invariants", check_invariants, "Verify internal invariants after every move (slow)");
  }

  int run(std::ostream& out) const {
    const WeightedDigraph g = load_graph(graph);
    const BalanceSpec spec = compute_l_max(g, k, epsilon, allow_empty);
    const auto hs = parse_heuristics(heuristics);
    const Budget b = budget.get(Budget::restarts(1));
    const std::string name = instance.empty() ? fs::path(graph).stem().string() : instance;
    std::optional<std::ofstream> report_file;
    if (!report.empty()) report_file = open_out(report);
    std::ostream& rep = report_file ? *report_file : out;
    SearchOptions opts;
    opts.check_invariants = check_invariants;
    int code = kExitOk;
    for (Heuristic h : hs) {
      RestartOutcome outcome;
      try {
        outcome = run_with_budget(g, spec, h, b, seed, opts);
      } catch (const ConstructionInfeasibleError& e) {
        RunReport r = make_report(name, h, spec, seed, b, outcome);
        rep << to_json(r).dump() << '\n';
        code = kExitInfeasible;
        continue;
      }
      const RunReport r = make_report(name, h, spec, seed, b, outcome);
      rep << to_json(r).dump() << '\n';
      if (!r.feasible) throw InvariantViolation("search returned an infeasible partition");
      if (!output.empty()) {
        const fs::path path = hs.size() == 1 ? fs::path(output) : fs::path(output + "." + std::string(heuristic_id(h)));
        save_assignment(path, outcome.best->assignment());
      }
    }
    return code;
  }
};

// ---------------------------------------------------------------------------

struct TwoPassCmd {
  std::string graph;
  Weight program_memory = 16384;
  Weight pes = 4;
  std::optional<BlockId> programs;
  std::optional<BlockId> gangs;
  std::vector<std::string> heuristics{"fm"};
  BudgetOpts budget;
  std::uint64_t seed = 1;
  std::string output_prefix;
  std::string instance;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("two-pass", "Group kernels into programs, then programs into gangs");
    c->add_option("graph", graph, "Graph file")->required()->check(CLI::ExistingFile);
    c->add_option("--program-memory", program_memory, "Capacity of one program (node weight units)")
        ->capture_default_str();
    c->add_option("--pes", pes, "Processing elements per gang")->capture_default_str();
    c->add_option("--programs", programs, "Block count of the first pass");
    c->add_option("--gangs", gangs, "Block count of the second pass");
    c->add_option("--heuristic", heuristics, "sm, am, gm, fm or all")->delimiter(',')->capture_default_str();
    budget.add(c, "default 1");
    c->add_option("--seed", seed)->capture_default_str();
    c->add_option("--output-prefix", output_prefix, "Writes <prefix>.<id>.programs and <prefix>.<id>.gangs");
    c->add_option("--instance", instance);
  }

  int run(std::ostream& out) const {
    const WeightedDigraph g = load_graph(graph);
    TwoPassConfig cfg;
    cfg.program_memory = program_memory;
    cfg.pe_count = pes;
    cfg.programs = programs;
    cfg.gangs = gangs;
    const std::string name = instance.empty() ? fs::path(graph).stem().string() : instance;
    const Budget b = budget.get(Budget::restarts(1));

    const auto emit = [&](const std::string& id, const TwoPassResult& r) {
      json j;
      j["instance"] = name;
      j["method"] = id;
      const json body = to_json(r);
      for (const auto& [key, value] : body.items()) j[key] = value;
      out << j.dump() << '\n';
      if (!output_prefix.empty()) {
        save_assignment(output_prefix + "." + id + ".programs", r.program_of);
        save_assignment(output_prefix + "." + id + ".gangs", r.gang_of);
      }
    };
    emit("naive", naive_two_pass(g, cfg));
    for (Heuristic h : parse_heuristics(heuristics)) {
      const TwoPassResult r = run_two_pass(g, cfg, h, b, seed, name);
      if (!r.gangs_acyclic || !r.pass1.feasible || !r.pass2.feasible)
        throw InvariantViolation("two-pass produced an infeasible grouping");
      emit(std::string(heuristic_id(h)), r);
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

struct VerifyCmd {
  std::string graph;
  std::string partition;
  BlockId k = 2;
  double epsilon = 0.03;
  std::optional<Weight> l_max;
  bool allow_empty = false;
  bool as_json = false;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("verify", "Check balance and quotient acyclicity of a partition");
    c->add_option("graph", graph, "Graph file")->required()->check(CLI::ExistingFile);
    c->add_option("partition", partition, "Partition file")->required()->check(CLI::ExistingFile);
    c->add_option("-k,--k", k, "Number of blocks")->required();
    auto* e = c->add_option("-e,--epsilon", epsilon, "Imbalance parameter")->capture_default_str();
    c->add_option("--l-max", l_max, "Explicit block capacity")->excludes(e);
    c->add_flag("--allow-empty", allow_empty, "Allow empty blocks");
    c->add_flag("--json", as_json, "Print the verdict as JSON");
  }

  int run(std::ostream& out) const {
    const WeightedDigraph g = load_graph(graph);
    const Assignment blocks = load_assignment(partition, g.node_count());
    BalanceSpec spec;
    if (l_max) {
      if (k == 0) throw ConfigError("k must be positive");
      spec = BalanceSpec::with_capacity(k, *l_max, allow_empty);
    } else {
      if (k == 0) throw ConfigError("k must be positive");
      if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be non-negative");
      // Computed without the feasibility precheck: an impossible capacity
      // is reported as overloaded blocks.
      spec.k = k;
      spec.epsilon = epsilon;
      spec.allow_empty = allow_empty;
      spec.l_max = compute_l_max(g, k, epsilon, true).l_max;
    }
    const Verdict v = verify_assignment(g, blocks, spec);
    const char* verdict = !v.acyclic ? "cyclic" : !v.balanced ? "imbalanced" : "feasible";
    if (as_json) {
      json j;
      j["cut"] = v.cut;
      j["l_max"] = v.l_max;
      j["block_weights"] = v.block_weights;
      j["balanced"] = v.balanced;
      j["overloaded_blocks"] = v.overloaded_blocks;
      j["empty_blocks"] = v.empty_blocks;
      j["acyclic"] = v.acyclic;
      j["cycle"] = v.cycle;
      j["verdict"] = verdict;
      out << j.dump() << '\n';
    } else {
      out << "cut " << v.cut << '\n' << "l_max " << v.l_max << '\n' << "block_weights";
      for (Weight w : v.block_weights) out << ' ' << w;
      out << '\n' << "balanced " << (v.balanced ? "yes" : "no") << '\n';
      if (!v.overloaded_blocks.empty()) {
        out << "overloaded";
        for (BlockId b : v.overloaded_blocks) out << ' ' << b;
        out << '\n';
      }
      if (!v.empty_blocks.empty()) {
        out << "empty";
        for (BlockId b : v.empty_blocks) out << ' ' << b;
        out << '\n';
      }
      out << "acyclic " << (v.acyclic ? "yes" : "no") << '\n';
      if (!v.acyclic) {
        out << "cycle";
        for (BlockId b : v.cycle) out << ' ' << b;
        out << '\n';
      }
      out << "verdict " << verdict << '\n';
    }
    if (!v.acyclic) return kExitCyclicQuotient;
    if (!v.balanced) return kExitInfeasible;
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

struct ExactCmd {
  std::string graph;
  BlockId k = 2;
  double epsilon = 0.03;
  NodeId max_nodes = 20;
  std::optional<std::int64_t> time_limit_ms;
  std::optional<std::uint64_t> node_budget;
  std::string output;
  std::string instance;
  bool allow_empty = false;
  bool no_header = false;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("exact", "Solve a small instance to optimality");
    c->add_option("graph", graph, "Graph file")->required()->check(CLI::ExistingFile);
    c->add_option("-k,--k", k, "Number of blocks")->required();
    c->add_option("-e,--epsilon", epsilon, "Imbalance parameter")->capture_default_str();
    c->add_option("--max-nodes", max_nodes, "Refuse larger graphs")->capture_default_str();
    c->add_option("--time-limit-ms", time_limit_ms, "Stop after this long (result may be unproven)");
    c->add_option("--node-budget", node_budget, "Stop after this many search nodes");
    c->add_option("-o,--output", output, "Write the best assignment here");
    c->add_option("--instance", instance);
    c->add_flag("--allow-empty", allow_empty);
    c->add_flag("--no-header", no_header);
  }

  int run(std::ostream& out) const {
    const WeightedDigraph g = load_graph(graph);
    const BalanceSpec spec = compute_l_max(g, k, epsilon, allow_empty);
    ExactLimits limits;
    limits.max_nodes = max_nodes;
    if (time_limit_ms) limits.time_limit = std::chrono::milliseconds(*time_limit_ms);
    limits.node_budget = node_budget;
    const ExactResult r = solve_exact(g, spec, limits);
    const std::string name = instance.empty() ? fs::path(graph).stem().string() : instance;
    if (!no_header) out << "instance,k,epsilon,opt_cut,proven,explored\n";
    out << name << ',' << k << ',' << epsilon << ',';
    if (r.found) out << r.cut;
    out << ',' << (r.proven ? 1 : 0) << ',' << r.explored << '\n';
    if (!r.found) return kExitInfeasible;
    if (!output.empty()) save_assignment(output, r.assignment);
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

struct GenCmd {
  CLI::App* root = nullptr;
  std::string output;
  std::string manifest;
  std::string id;
  // layered
  LayeredDagConfig layered;
  std::string level_cap = "high", edges = "sparse", locality = "near";
  // rgg
  RggConfig rgg;
  // reductions
  std::vector<Weight> values;
  Weight threshold = 0;
  // suite
  std::uint64_t suite_seed = 1;
  std::uint32_t per_combination = 25;
  NodeId min_n = 10, max_n = 20;
  std::string out_dir;

  void add(CLI::App& app) {
    root = app.add_subcommand("gen", "Generate instances");
    root->require_subcommand(1);
    const auto common = [&](CLI::App* c, bool file_output) {
      if (file_output) c->add_option("-o,--output", output, "Graph file to write")->required();
      c->add_option("--manifest", manifest, "Append a JSON line describing the instance");
      c->add_option("--id", id, "Instance id for the manifest (default: file stem)");
    };
    auto* l = root->add_subcommand("layered", "Layered random DAG");
    common(l, true);
    l->add_option("--n", layered.n)->capture_default_str();
    l->add_option("--seed", layered.seed)->capture_default_str();
    l->add_option("--level-cap", level_cap, "high or low")->check(CLI::IsMember({"high", "low"}))
        ->capture_default_str();
    l->add_option("--edges", edges, "sparse or dense")->check(CLI::IsMember({"sparse", "dense"}))
        ->capture_default_str();
    l->add_option("--locality", locality, "near or free")->check(CLI::IsMember({"near", "free"}))
        ->capture_default_str();
    l->add_option("--inputs", layered.inputs, "0 draws from [1,3]")->capture_default_str();
    l->add_option("--outputs", layered.outputs, "0 draws from [1,3]")->capture_default_str();
    l->add_option("--near-window", layered.near_window)->capture_default_str();
    l->add_option("--min-node-weight", layered.min_node_weight)->capture_default_str();
    l->add_option("--max-node-weight", layered.max_node_weight)->capture_default_str();
    l->add_option("--min-edge-weight", layered.min_edge_weight)->capture_default_str();
    l->add_option("--max-edge-weight", layered.max_edge_weight)->capture_default_str();

    auto* r = root->add_subcommand("rgg", "Random geometric DAG with 2^exponent nodes");
    common(r, true);
    r->add_option("--exponent", rgg.exponent)->capture_default_str();
    r->add_option("--seed", rgg.seed)->capture_default_str();
    r->add_flag("--drop-isolated", rgg.drop_isolated);

    auto* s = root->add_subcommand("subset-sum", "Reduction instance from a subset-sum input");
    common(s, true);
    s->add_option("--values", values, "Positive integers")->delimiter(',')->required();

    auto* t = root->add_subcommand("three-partition", "Reduction instance from a 3-partition input");
    common(t, true);
    t->add_option("--values", values, "Positive integers")->delimiter(',')->required();
    t->add_option("--threshold", threshold, "Target sum of each triple")->required();

    auto* p = root->add_subcommand("pipeline", "Fixed 72-node image pipeline");
    common(p, true);

    auto* u = root->add_subcommand("suite", "Small layered DAG suite, 8 parameter combinations");
    u->add_option("--out-dir", out_dir, "Directory for the graph files")->required();
    u->add_option("--manifest", manifest, "Manifest path (default: <out-dir>/manifest.jsonl)");
    u->add_option("--seed", suite_seed)->capture_default_str();
    u->add_option("--per-combination", per_combination)->capture_default_str();
    u->add_option("--min-n", min_n)->capture_default_str();
    u->add_option("--max-n", max_n)->capture_default_str();
  }

  static json layered_params(const LayeredDagConfig& c) {
    json j;
    j["n"] = c.n;
    j["seed"] = c.seed;
    j["level_cap"] = to_string(c.level_cap);
    j["edges"] = to_string(c.edges);
    j["locality"] = to_string(c.locality);
    j["inputs"] = c.inputs;
    j["outputs"] = c.outputs;
    j["near_window"] = c.near_window;
    return j;
  }

  static void append_manifest(const std::string& path, const std::string& id, const std::string& kind,
                              const std::string& graph_path, const WeightedDigraph& g, json params) {
    std::ofstream f(path, std::ios::app);
    if (!f) throw ConfigError("cannot write " + path);
    json j;
    j["id"] = id;
    j["kind"] = kind;
    j["path"] = graph_path;
    j["n"] = g.node_count();
    j["m"] = g.edge_count();
    j["params"] = std::move(params);
    f << j.dump() << '\n';
  }

  int run(std::ostream& out) const {
    const CLI::App* sub = root->get_subcommands().front();
    const std::string kind = sub->get_name();
    if (kind == "suite") {
      fs::create_directories(out_dir);
      const std::string man = manifest.empty() ? (fs::path(out_dir) / "manifest.jsonl").string() : manifest;
      std::ofstream(man, std::ios::trunc);
      const auto suite = layered_suite(suite_seed, per_combination, min_n, max_n);
      for (const SuiteInstance& s : suite) {
        const WeightedDigraph g = gen_layered(s.config).graph;
        const std::string file = s.id + ".graph";
        save_graph(fs::path(out_dir) / file, g);
        // Paths in a manifest are relative to the manifest's directory.
        const fs::path rel = fs::relative(fs::path(out_dir) / file, fs::absolute(man).parent_path());
        append_manifest(man, s.id, "layered", rel.string(), g, layered_params(s.config));
      }
      out << "wrote " << suite.size() << " instances to " << out_dir << '\n';
      return kExitOk;
    }

    WeightedDigraph g;
    json params = json::object();
    if (kind == "layered") {
      LayeredDagConfig c = layered;
      c.level_cap = level_cap == "high" ? LevelCap::high : LevelCap::low;
      c.edges = edges == "sparse" ? EdgeDensity::sparse : EdgeDensity::dense;
      c.locality = locality == "near" ? Locality::near : Locality::free;
      g = gen_layered(c).graph;
      params = layered_params(c);
    } else if (kind == "rgg") {
      g = gen_rgg_dag(rgg);
      params["exponent"] = rgg.exponent;
      params["seed"] = rgg.seed;
      params["drop_isolated"] = rgg.drop_isolated;
    } else if (kind == "subset-sum") {
      g = gen_subset_sum_instance(values);
      params["values"] = values;
    } else if (kind == "three-partition") {
      g = gen_three_partition_instance(values, threshold);
      params["values"] = values;
      params["threshold"] = threshold;
    } else {
      g = gen_pipeline_stand_in();
    }
    save_graph(output, g);
    if (!manifest.empty()) {
      const fs::path rel = fs::relative(fs::absolute(output), fs::absolute(manifest).parent_path());
      append_manifest(manifest, id.empty() ? fs::path(output).stem().string() : id, kind, rel.string(), g,
                      std::move(params));
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

std::vector<BenchInstance> load_manifest(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read " + path.string());
  std::vector<BenchInstance> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(f, line)) {
    ++number;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad manifest line: ") + e.what(), number);
    }
    fs::path graph = j.at("path").get<std::string>();
    if (graph.is_relative()) graph = path.parent_path() / graph;
    out.push_back({j.at("id").get<std::string>(), load_graph(graph)});
  }
  return out;
}

struct Table1Cmd {
  std::string manifest;
  std::uint64_t suite_seed = 1;
  std::uint32_t per_combination = 25;
  std::vector<BlockId> ks{2, 4};
  std::vector<double> epsilons{0.2, 0.3, 0.4, 0.5};
  std::vector<std::string> heuristics{"all"};
  BudgetOpts budget;
  std::uint64_t seed = 1;
  std::string exact_cache;
  NodeId max_nodes = 20;
  std::optional<std::int64_t> exact_time_limit_ms;
  std::string output, summary, details;
  std::optional<unsigned> threads;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("bench-table1", "Gap to the exact optimum on small layered DAGs");
    auto* m = c->add_option("--manifest", manifest, "Instances from a manifest");
    c->add_option("--suite-seed", suite_seed, "Generate the default suite with this seed")->excludes(m)
        ->capture_default_str();
    c->add_option("--per-combination", per_combination)->excludes(m)->capture_default_str();
    c->add_option("--k", ks)->delimiter(',');
    c->add_option("--epsilon", epsilons)->delimiter(',');
    c->add_option("--heuristic", heuristics)->delimiter(',');
    budget.add(c, "default: --budget-ms 10");
    c->add_option("--seed", seed)->capture_default_str();
    c->add_option("--exact-cache", exact_cache, "JSON-lines cache of exact optima, read and updated");
    c->add_option("--max-nodes", max_nodes, "Exact solver size limit")->capture_default_str();
    c->add_option("--exact-time-limit-ms", exact_time_limit_ms, "Per-solve limit; unproven solves are an error");
    c->add_option("-o,--output", output, "Pivot CSV (default: stdout)");
    c->add_option("--summary", summary, "Long-format CSV per cell and heuristic");
    c->add_option("--details", details, "Per-instance CSV");
    c->add_option("--threads", threads, "Overrides DAGPART_THREADS");
  }

  int run(std::ostream& out, std::ostream& err) const {
    std::vector<BenchInstance> instances;
    if (!manifest.empty()) {
      instances = load_manifest(manifest);
    } else {
      for (const SuiteInstance& s : layered_suite(suite_seed, per_combination))
        instances.push_back({s.id, gen_layered(s.config).graph});
    }
    GapConfig cfg;
    cfg.ks = ks;
    cfg.epsilons = epsilons;
    cfg.heuristics = parse_heuristics(heuristics);
    cfg.budget = budget.get(Budget::wall_clock_ms(10.0));
    cfg.seed = seed;
    cfg.exact_limits.max_nodes = max_nodes;
    if (exact_time_limit_ms) cfg.exact_limits.time_limit = std::chrono::milliseconds(*exact_time_limit_ms);
    cfg.threads = threads ? *threads : worker_count();

    ExactCache cache;
    if (!exact_cache.empty() && fs::exists(exact_cache)) {
      std::ifstream f(exact_cache);
      cache = read_exact_cache(f);
    }
    const GapTable t = bench_table1(instances, cfg, cache);
    if (!exact_cache.empty()) {
      auto f = open_out(exact_cache);
      write_exact_cache(f, cache);
    }
    if (output.empty()) {
      write_gap_pivot_csv(out, t);
    } else {
      auto f = open_out(output);
      write_gap_pivot_csv(f, t);
    }
    if (!summary.empty()) {
      auto f = open_out(summary);
      write_gap_summary_csv(f, t);
    }
    if (!details.empty()) {
      auto f = open_out(details);
      write_gap_details_csv(f, t);
    }
    err << instances.size() << " instances, " << t.exact_solved << " exact solves\n";
    return kExitOk;
  }
};

struct ScalingCmd {
  std::vector<std::uint32_t> exponents{15, 16, 17, 18};
  BlockId k = 8;
  double epsilon = 0.03;
  std::uint32_t passes = 100;
  std::vector<std::string> heuristics{"all"};
  std::uint64_t seed = 1;
  std::string output;
  bool progress = false;

  void add(CLI::App& app) {
    auto* c = app.add_subcommand("bench-scaling", "Running time and cut on random geometric graphs");
    c->add_option("--exponents", exponents)->delimiter(',');
    c->add_option("--k", k)->capture_default_str();
    c->add_option("--epsilon", epsilon)->capture_default_str();
    c->add_option("--passes", passes)->capture_default_str();
    c->add_option("--heuristic", heuristics)->delimiter(',');
    c->add_option("--seed", seed)->capture_default_str();
    c->add_option("-o,--output", output, "CSV (default: stdout)");
    c->add_flag("--progress", progress, "Report progress on stderr");
  }

  int run(std::ostream& out, std::ostream& err) const {
    ScalingConfig cfg;
    cfg.exponents = exponents;
    cfg.k = k;
    cfg.epsilon = epsilon;
    if (passes == 0) throw ConfigError("passes must be positive");
    cfg.passes = passes;
    cfg.heuristics = parse_heuristics(heuristics);
    cfg.seed = seed;
    const auto rows = bench_scaling(cfg, progress ? &err : nullptr);
    if (output.empty()) {
      write_scaling_csv(out, rows);
    } else {
      auto f = open_out(output);
      write_scaling_csv(f, rows);
    }
    return kExitOk;
  }
};

}  // namespace

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what();
    if (e.line() > 0) err << " (line " << e.line() << ')';
    err << '\n';
    return kExitInputError;
  } catch (const CycleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ConstructionInfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Acyclic partitioning of weighted DAGs", "dagpart"};
  app.require_subcommand(1);
  PartitionCmd partition;
  TwoPassCmd two_pass;
  VerifyCmd verify;
  ExactCmd exact;
  GenCmd gen;
  Table1Cmd table1;
  ScalingCmd scaling;
  partition.add(app);
  two_pass.add(app);
  verify.add(app);
  exact.add(app);
  gen.add(app);
  table1.add(app);
  scaling.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  return guarded(
      [&]() -> int {
        if (name == "partition") return partition.run(out);
        if (name == "two-pass") return two_pass.run(out);
        if (name == "verify") return verify.run(out);
        if (name == "exact") return exact.run(out);
        if (name == "gen") return gen.run(out);
        if (name == "bench-table1") return table1.run(out, err);
        if (name == "bench-scaling") return scaling.run(out, err);
        throw ConfigError("unknown subcommand " + name);
      },
      err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"dagpart"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dagpart::cli
