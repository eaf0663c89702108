#include <ctime>
#include <iomanip>
#include <ostream>

#include "dagpart/cli/bench.hpp"
#include "dagpart/construct.hpp"
#include "dagpart/instances.hpp"

namespace dagpart::cli {

namespace {

// CPU time of the calling thread; less sensitive to preemption than wall time.
double thread_ms() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) * 1e3 + static_cast<double>(ts.tv_nsec) * 1e-6;
}

struct Instance {
  std::uint32_t exponent;
  WeightedDigraph graph;
  BalanceSpec spec;
  std::size_t first_row;
  std::vector<double> cut_sum;
  double construct_ms = 0.0;
};

}  // namespace

std::vector<ScalingRow> bench_scaling(const ScalingConfig& cfg, std::ostream* progress) {
  std::vector<ScalingRow> rows;
  std::vector<Instance> instances;
  for (std::uint32_t exponent : cfg.exponents) {
    WeightedDigraph g = gen_rgg_dag({exponent, derive_seed(cfg.seed, exponent), false});
    const BalanceSpec spec = compute_l_max(g, cfg.k, cfg.epsilon);
    instances.push_back({exponent, std::move(g), spec, rows.size(), std::vector<double>(cfg.heuristics.size(), 0.0)});
    for (Heuristic h : cfg.heuristics) {
      ScalingRow r;
      r.exponent = exponent;
      r.n = instances.back().graph.node_count();
      r.m = instances.back().graph.edge_count();
      r.heuristic = heuristic_id(h);
      r.passes = cfg.passes;
      rows.push_back(r);
    }
  }
  // Passes interleave the sizes so slow drift of the machine affects all of them alike.
  for (std::uint32_t pass = 0; pass < cfg.passes; ++pass) {
    for (Instance& inst : instances) {
      const double t0 = thread_ms();
      const Partition initial = construct_initial(inst.graph, inst.spec, construction_seed(cfg.seed, pass));
      inst.construct_ms += thread_ms() - t0;
      for (std::size_t i = 0; i < cfg.heuristics.size(); ++i) {
        ScalingRow& row = rows[inst.first_row + i];
        Rng rng(search_seed(cfg.seed, pass));
        Partition p = initial;
        const double t1 = thread_ms();
        p = improve(cfg.heuristics[i], std::move(p), rng);
        row.mean_ms_per_pass += thread_ms() - t1;
        inst.cut_sum[i] += static_cast<double>(p.cut());
        if (pass == 0 || p.cut() < row.best_cut) row.best_cut = p.cut();
      }
    }
    if (progress) *progress << "pass " << pass + 1 << '/' << cfg.passes << '\n';
  }
  for (const Instance& inst : instances) {
    double sm_cut = 0.0;
    for (std::size_t i = 0; i < cfg.heuristics.size(); ++i) {
      ScalingRow& r = rows[inst.first_row + i];
      r.mean_ms_per_pass /= cfg.passes;
      r.mean_construct_ms = inst.construct_ms / cfg.passes;
      r.mean_cut = inst.cut_sum[i] / cfg.passes;
      if (cfg.heuristics[i] == Heuristic::simple_moves) sm_cut = r.mean_cut;
    }
    for (std::size_t i = 0; i < cfg.heuristics.size(); ++i) {
      ScalingRow& r = rows[inst.first_row + i];
      r.relative_cut_reduction = sm_cut > 0.0 ? (sm_cut - r.mean_cut) / sm_cut : 0.0;
    }
  }
  return rows;
}

void write_scaling_csv(std::ostream& out, const std::vector<ScalingRow>& rows) {
  out << "exponent,n,m,heuristic,passes,mean_ms_per_pass,mean_construct_ms,mean_cut,best_cut,"
         "relative_cut_reduction_vs_sm\n";
  out << std::fixed;
  for (const ScalingRow& r : rows) {
    out << r.exponent << ',' << r.n << ',' << r.m << ',' << r.heuristic << ',' << r.passes << ','
        << std::setprecision(3) << r.mean_ms_per_pass << ',' << r.mean_construct_ms << ',' << std::setprecision(2)
        << r.mean_cut << ',' << r.best_cut << ',' << std::setprecision(4) << r.relative_cut_reduction << '\n';
  }
}

}  // namespace dagpart::cli
