#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dagpart/cli/bench.hpp"
#include "dagpart/errors.hpp"

namespace dagpart::cli {

unsigned worker_count() {
  if (const char* env = std::getenv("DAGPART_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    throw ConfigError("DAGPART_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string exact_cache_key(const std::string& instance, BlockId k, double epsilon) {
  std::ostringstream s;
  s << instance << "|k=" << k << "|eps=" << std::setprecision(6) << epsilon;
  return s.str();
}

ExactCache read_exact_cache(std::istream& in) {
  ExactCache cache;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    ExactRecord r;
    r.feasible = j.at("feasible").get<bool>();
    r.proven = j.at("proven").get<bool>();
    r.opt_cut = j.at("opt_cut").get<Weight>();
    r.explored = j.value("explored", std::uint64_t{0});
    r.wall_ms = j.value("wall_ms", 0.0);
    cache[exact_cache_key(j.at("instance").get<std::string>(), j.at("k").get<BlockId>(),
                          j.at("epsilon").get<double>())] = r;
  }
  return cache;
}

void write_exact_cache(std::ostream& out, const ExactCache& cache) {
  for (const auto& [key, r] : cache) {
    const auto k_pos = key.rfind("|k=");
    const auto e_pos = key.rfind("|eps=");
    nlohmann::ordered_json j;
    j["instance"] = key.substr(0, k_pos);
    j["k"] = std::stoul(key.substr(k_pos + 3, e_pos - k_pos - 3));
    j["epsilon"] = std::stod(key.substr(e_pos + 5));
    j["feasible"] = r.feasible;
    j["proven"] = r.proven;
    j["opt_cut"] = r.opt_cut;
    j["explored"] = r.explored;
    j["wall_ms"] = r.wall_ms;
    out << j.dump() << '\n';
  }
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Task {
  std::size_t instance;
  BlockId k;
  double epsilon;
  std::string key;
};

struct TaskResult {
  std::optional<ExactRecord> computed;  // set when not served from cache
  ExactRecord exact;
  std::vector<GapDetail> details;
  std::string error;
};

ExactRecord solve_cell(const WeightedDigraph& g, const BalanceSpec& spec, const ExactLimits& limits,
                       std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  ExactRecord r;
  std::optional<Assignment> warm;
  try {
    const RestartOutcome quick = run_with_budget(g, spec, Heuristic::fm_moves, Budget::restarts(8), seed);
    warm = quick.best->assignment();
  } catch (const ConstructionInfeasibleError&) {
  }
  try {
    const ExactResult e = solve_exact(g, spec, limits, warm ? &*warm : nullptr);
    r.feasible = e.found;
    r.proven = e.proven;
    r.opt_cut = e.cut;
    r.explored = e.explored;
  } catch (const InfeasibleError&) {
    r.feasible = false;
    r.proven = true;
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return r;
}

TaskResult run_task(const BenchInstance& inst, const Task& task, const GapConfig& cfg, const ExactCache& cache) {
  TaskResult out;
  BalanceSpec spec;
  try {
    spec = compute_l_max(inst.graph, task.k, task.epsilon);
  } catch (const InfeasibleError&) {
    out.exact = {false, true, 0, 0, 0.0};
    out.computed = out.exact;
    return out;
  }
  const std::uint64_t seed = derive_seed(cfg.seed, fnv1a(task.key));
  if (auto it = cache.find(task.key); it != cache.end()) {
    out.exact = it->second;
  } else {
    out.exact = solve_cell(inst.graph, spec, cfg.exact_limits, seed);
    out.computed = out.exact;
  }
  if (!out.exact.proven) {
    out.error = "exact solve unproven for " + task.key;
    return out;
  }
  if (!out.exact.feasible) return out;
  for (Heuristic h : cfg.heuristics) {
    GapDetail d;
    d.instance = inst.id;
    d.n = inst.graph.node_count();
    d.m = inst.graph.edge_count();
    d.k = task.k;
    d.epsilon = task.epsilon;
    d.opt_cut = out.exact.opt_cut;
    d.heuristic = heuristic_id(h);
    try {
      const RestartOutcome run = run_with_budget(inst.graph, spec, h, cfg.budget, seed);
      const Verdict v = verify_assignment(inst.graph, run.best->assignment(), spec);
      d.found = v.feasible();
      d.cut = v.cut;
      d.restarts = run.restarts;
    } catch (const ConstructionInfeasibleError&) {
      d.found = false;
    }
    out.details.push_back(d);
  }
  return out;
}

}  // namespace

GapTable bench_table1(const std::vector<BenchInstance>& instances, const GapConfig& cfg, ExactCache& cache) {
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (BlockId k : cfg.ks) {
      for (double eps : cfg.epsilons) tasks.push_back({i, k, eps, exact_cache_key(instances[i].id, k, eps)});
    }
  }
  std::vector<TaskResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      try {
        results[t] = run_task(instances[tasks[t].instance], tasks[t], cfg, cache);
      } catch (const std::exception& e) {
        results[t].error = tasks[t].key + ": " + e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(tasks.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  GapTable table;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (!results[t].error.empty()) throw Error(results[t].error);
    if (results[t].computed) {
      cache[tasks[t].key] = *results[t].computed;
      ++table.exact_solved;
    }
  }

  for (BlockId k : cfg.ks) {
    for (double eps : cfg.epsilons) {
      for (Heuristic h : cfg.heuristics) {
        GapCell cell;
        cell.k = k;
        cell.epsilon = eps;
        cell.heuristic = heuristic_id(h);
        double sum = 0.0;
        bool first = true;
        for (std::size_t t = 0; t < tasks.size(); ++t) {
          if (tasks[t].k != k || tasks[t].epsilon != eps) continue;
          if (!results[t].exact.feasible) {
            ++cell.infeasible;
            continue;
          }
          for (const GapDetail& d : results[t].details) {
            if (d.heuristic != cell.heuristic) continue;
            if (!d.found) {
              ++cell.heuristic_failures;
            } else if (d.opt_cut == 0) {
              ++cell.zero_opt_instances;
              if (d.cut == 0) ++cell.zero_opt_hits;
            } else {
              const double gap = 100.0 * (static_cast<double>(d.cut) - static_cast<double>(d.opt_cut)) /
                                 static_cast<double>(d.opt_cut);
              sum += gap;
              cell.min_gap_percent = first ? gap : std::min(cell.min_gap_percent, gap);
              first = false;
              ++cell.instances;
            }
          }
        }
        if (cell.instances > 0) cell.mean_gap_percent = sum / static_cast<double>(cell.instances);
        table.cells.push_back(cell);
      }
    }
  }
  for (auto& r : results) {
    for (auto& d : r.details) table.details.push_back(std::move(d));
  }
  return table;
}

void write_gap_summary_csv(std::ostream& out, const GapTable& t) {
  out << "k,epsilon,heuristic,instances,mean_gap_percent,min_gap_percent,zero_opt_instances,zero_opt_hits,"
         "infeasible,heuristic_failures\n";
  out << std::fixed;
  for (const GapCell& c : t.cells) {
    out << c.k << ',' << std::setprecision(2) << c.epsilon << ',' << c.heuristic << ',' << c.instances << ','
        << std::setprecision(4) << c.mean_gap_percent << ',' << c.min_gap_percent << ',' << c.zero_opt_instances
        << ',' << c.zero_opt_hits << ',' << c.infeasible << ',' << c.heuristic_failures << '\n';
  }
}

void write_gap_pivot_csv(std::ostream& out, const GapTable& t) {
  std::vector<std::string> heuristics;
  for (const GapCell& c : t.cells) {
    if (std::find(heuristics.begin(), heuristics.end(), c.heuristic) == heuristics.end())
      heuristics.push_back(c.heuristic);
  }
  out << "k,epsilon";
  for (const auto& h : heuristics) out << ',' << h;
  out << '\n' << std::fixed;
  for (std::size_t i = 0; i < t.cells.size(); i += heuristics.size()) {
    out << t.cells[i].k << ',' << std::setprecision(2) << t.cells[i].epsilon;
    for (std::size_t j = 0; j < heuristics.size(); ++j)
      out << ',' << std::setprecision(4) << t.cells[i + j].mean_gap_percent;
    out << '\n';
  }
}

void write_gap_details_csv(std::ostream& out, const GapTable& t) {
  out << "instance,n,m,k,epsilon,opt_cut,heuristic,found,cut,restarts\n";
  out << std::fixed;
  for (const GapDetail& d : t.details) {
    out << d.instance << ',' << d.n << ',' << d.m << ',' << d.k << ',' << std::setprecision(2) << d.epsilon << ','
        << d.opt_cut << ',' << d.heuristic << ',' << (d.found ? 1 : 0) << ',' << d.cut << ',' << d.restarts << '\n';
  }
}

}  // namespace dagpart::cli
