#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dagpart/errors.hpp"
#include "dagpart/instances.hpp"
#include "dagpart/random.hpp"

namespace dagpart {

double rgg_radius(NodeId n) {
  const double nn = static_cast<double>(n);
  return 0.55 * std::sqrt(std::log(nn) / nn);
}

RggPoints rgg_points(const RggConfig& cfg) {
  if (cfg.exponent < 1 || cfg.exponent > 26) throw ConfigError("rgg exponent must be in [1, 26]");
  const NodeId n = NodeId{1} << cfg.exponent;
  Rng rng(derive_seed(cfg.seed, 0x7966ULL));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, double>> raw(n);
  for (auto& [x, y] : raw) {
    x = unit(rng);
    y = unit(rng);
  }
  // Ids follow radius-sized grid cells in row-major order, so neighbors get
  // nearby ids (and the low-to-high orientation sweeps across the square).
  const auto cells = std::max<std::size_t>(1, static_cast<std::size_t>(1.0 / rgg_radius(n)));
  const auto cell_of = [&](double c) { return std::min(cells - 1, static_cast<std::size_t>(c * cells)); };
  std::vector<std::size_t> key(n);
  for (NodeId i = 0; i < n; ++i) key[i] = cell_of(raw[i].first) * cells + cell_of(raw[i].second);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return key[a] < key[b]; });
  RggPoints pts;
  pts.x.resize(n);
  pts.y.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    pts.x[i] = raw[order[i]].first;
    pts.y[i] = raw[order[i]].second;
  }
  return pts;
}

WeightedDigraph gen_rgg_dag(const RggConfig& cfg) {
  const RggPoints pts = rgg_points(cfg);
  const auto& x = pts.x;
  const auto& y = pts.y;
  const NodeId n = static_cast<NodeId>(x.size());
  const double r = rgg_radius(n);
  const double r2 = r * r;

  const auto cells = std::max<std::size_t>(1, static_cast<std::size_t>(1.0 / r));
  const auto cell_of = [&](double c) { return std::min(cells - 1, static_cast<std::size_t>(c * cells)); };
  std::vector<std::vector<NodeId>> grid(cells * cells);
  for (NodeId i = 0; i < n; ++i) grid[cell_of(x[i]) * cells + cell_of(y[i])].push_back(i);

  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) {
    const std::size_t cx = cell_of(x[i]);
    const std::size_t cy = cell_of(y[i]);
    for (std::size_t gx = cx > 0 ? cx - 1 : 0; gx <= std::min(cells - 1, cx + 1); ++gx) {
      for (std::size_t gy = cy > 0 ? cy - 1 : 0; gy <= std::min(cells - 1, cy + 1); ++gy) {
        for (const NodeId j : grid[gx * cells + gy]) {
          if (j <= i) continue;
          const double dx = x[i] - x[j];
          const double dy = y[i] - y[j];
          if (dx * dx + dy * dy < r2) edges.emplace_back(i, j);
        }
      }
    }
  }

  std::vector<NodeId> new_id(n);
  NodeId kept = 0;
  if (cfg.drop_isolated) {
    std::vector<bool> touched(n, false);
    for (const auto& [u, v] : edges) touched[u] = touched[v] = true;
    for (NodeId i = 0; i < n; ++i) new_id[i] = touched[i] ? kept++ : n;
  } else {
    for (NodeId i = 0; i < n; ++i) new_id[i] = kept++;
  }
  DigraphBuilder builder(kept);
  for (NodeId v = 0; v < kept; ++v) builder.set_node_weight(v, 1);
  // Relabeling keeps the relative order of ids, so edges stay low -> high.
  for (const auto& [u, v] : edges) builder.add_edge(new_id[u], new_id[v], 1);
  return std::move(builder).build();
}

}  // namespace dagpart
