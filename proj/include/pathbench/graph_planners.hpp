#pragma once

// Complete graph-search planners over the grid: A*, Dijkstra and wavefront.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "grid.hpp"
#include "outcome.hpp"

namespace pathbench {

namespace detail {

inline void require_endpoints(const GridMap& map, const char* who) {
  if (!map.has_endpoints()) throw std::invalid_argument(std::string(who) + ": map has no agent/goal");
}

inline Path trace_back(const GridMap& map, const std::vector<std::int32_t>& parent, std::size_t goal) {
  std::vector<Cell> cells;
  for (std::int64_t at = static_cast<std::int64_t>(goal); at >= 0; at = parent[static_cast<std::size_t>(at)])
    cells.push_back(map.cell_at(static_cast<std::size_t>(at)));
  std::reverse(cells.begin(), cells.end());
  return Path(std::move(cells));
}

struct OpenEntry {
  double f;
  double h;
  std::size_t idx;
};

// Priority order: lower f, then lower h, then lower linear index (which is
// lexicographic cell order).
struct OpenWorse {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.idx > b.idx;
  }
};

inline PlanOutcome best_first(const GridMap& map, const MoveModel& model, bool use_heuristic,
                              const PlanOptions& opts) {
  Stopwatch clock;
  MemoryMeter mem;
  const Cell start = *map.agent();
  const Cell goal = *map.goal();
  const std::size_t n = map.size();
  const std::size_t start_idx = map.index(start);
  const std::size_t goal_idx = map.index(goal);

  std::vector<double> g(n, std::numeric_limits<double>::infinity());
  std::vector<std::int32_t> parent(n, -1);
  std::vector<std::uint8_t> closed(n, 0);
  mem.add(bytes_of(g) + bytes_of(parent) + bytes_of(closed));

  std::vector<OpenEntry> heap_storage;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenWorse> open(OpenWorse{}, std::move(heap_storage));
  std::size_t open_bytes = 0;
  std::size_t explored_bytes = 0;

  PlanOutcome out;
  auto h_of = [&](const Cell& c) { return use_heuristic ? model.heuristic(c, goal) : 0.0; };

  g[start_idx] = 0.0;
  open.push({h_of(start), h_of(start), start_idx});
  bool found = false;
  while (!open.empty()) {
    out.trace.frontier_peak = std::max(out.trace.frontier_peak, open.size());
    mem.observe(open_bytes, open.size() * sizeof(OpenEntry));
    const OpenEntry top = open.top();
    open.pop();
    if (closed[top.idx]) continue;
    closed[top.idx] = 1;
    const Cell cur = map.cell_at(top.idx);
    out.trace.explored.push_back(cur);
    mem.observe(explored_bytes, bytes_of(out.trace.explored));
    if (opts.record_steps) out.trace.step_log.push_back({cur, top.f, g[top.idx]});
    if (top.idx == goal_idx) {
      found = true;
      break;
    }
    const double gc = g[top.idx];
    for_each_neighbor(map, model, cur, [&](const Cell& nb, int, double step) {
      const std::size_t ni = map.index(nb);
      if (closed[ni]) return;
      const double cand = gc + step;
      if (cand < g[ni]) {
        g[ni] = cand;
        parent[ni] = static_cast<std::int32_t>(top.idx);
        const double h = h_of(nb);
        open.push({cand + h, h, ni});
      }
    });
  }

  if (found) {
    out.success = true;
    out.path = trace_back(map, parent, goal_idx);
    out.terminal_cell = goal;
  } else {
    out.terminal_cell = start;
    out.failure = FailureReason::Unreachable;
  }
  out.peak_memory_bytes = mem.peak();
  out.elapsed_seconds = clock.seconds();
  return out;
}

}  // namespace detail

// Optimal under the admissible octile/Manhattan heuristic. Ties among equal
// f go to the lower heuristic, then to the lexicographically smaller cell.
inline PlanOutcome astar(const GridMap& map, const MoveModel& model = MoveModel{},
                         const PlanOptions& opts = {}) {
  detail::require_endpoints(map, "astar");
  return detail::best_first(map, model, true, opts);
}

inline PlanOutcome dijkstra(const GridMap& map, const MoveModel& model = MoveModel{},
                            const PlanOptions& opts = {}) {
  detail::require_endpoints(map, "dijkstra");
  return detail::best_first(map, model, false, opts);
}

// Integer wave values from the goal by breadth-first expansion; -1 where the
// wave never arrives.
inline std::vector<std::int32_t> wave_field(const GridMap& map, const MoveModel& model, const Cell& goal,
                                            std::vector<Cell>* visit_order = nullptr,
                                            std::size_t* frontier_peak = nullptr) {
  std::vector<std::int32_t> wave(map.size(), -1);
  std::deque<std::size_t> queue;
  const std::size_t gi = map.index(goal);
  wave[gi] = 0;
  queue.push_back(gi);
  while (!queue.empty()) {
    if (frontier_peak) *frontier_peak = std::max(*frontier_peak, queue.size());
    const std::size_t cur = queue.front();
    queue.pop_front();
    const Cell c = map.cell_at(cur);
    if (visit_order) visit_order->push_back(c);
    for_each_neighbor(map, model, c, [&](const Cell& nb, int, double) {
      const std::size_t ni = map.index(nb);
      if (wave[ni] >= 0) return;
      wave[ni] = wave[cur] + 1;
      queue.push_back(ni);
    });
  }
  return wave;
}

// Order in which wavefront descent considers moves when several neighbors
// share the lowest wave value: fewer changed axes first, then lexicographic.
inline std::vector<std::size_t> descent_order(const MoveModel& model, int dims) {
  const auto& ms = model.moves(dims);
  std::vector<std::size_t> order(ms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ms[a].axes < ms[b].axes; });
  return order;
}

// Full wave propagation from the goal, then greedy descent from the agent to
// the lowest-wave legal neighbor.
inline PlanOutcome wavefront(const GridMap& map, const MoveModel& model = MoveModel{},
                             const PlanOptions& opts = {}) {
  detail::require_endpoints(map, "wavefront");
  Stopwatch clock;
  MemoryMeter mem;
  const Cell start = *map.agent();
  const Cell goal = *map.goal();
  PlanOutcome out;

  std::size_t frontier_peak = 0;
  auto wave = wave_field(map, model, goal, &out.trace.explored, &frontier_peak);
  out.trace.frontier_peak = frontier_peak;
  mem.add(bytes_of(wave) + frontier_peak * sizeof(std::size_t) + bytes_of(out.trace.explored));
  if (opts.record_steps)
    for (const auto& c : out.trace.explored) {
      const double w = wave[map.index(c)];
      out.trace.step_log.push_back({c, w, w});
    }

  if (wave[map.index(start)] < 0) {
    out.terminal_cell = start;
    out.failure = FailureReason::Unreachable;
    out.peak_memory_bytes = mem.peak();
    out.elapsed_seconds = clock.seconds();
    return out;
  }

  const auto& ms = model.moves(map.dims());
  const auto order = descent_order(model, map.dims());
  std::vector<Cell> cells{start};
  Cell cur = start;
  while (cur != goal) {
    std::int32_t best = wave[map.index(cur)];
    std::optional<Cell> next;
    for (const std::size_t mi : order) {
      if (!model.can_move(map, cur, ms[mi])) continue;
      const Cell nb = MoveModel::apply(cur, ms[mi].delta);
      const std::int32_t w = wave[map.index(nb)];
      if (w >= 0 && w < best) {
        best = w;
        next = nb;
      }
    }
    // a reached cell with wave k always has a neighbor with wave k-1
    if (!next) throw std::logic_error("wavefront: descent stalled");
    cur = *next;
    cells.push_back(cur);
  }
  mem.add(bytes_of(cells));
  out.success = true;
  out.path = Path(std::move(cells));
  out.terminal_cell = goal;
  out.peak_memory_bytes = mem.peak();
  out.elapsed_seconds = clock.seconds();
  return out;
}

}  // namespace pathbench
