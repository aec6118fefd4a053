#pragma once

// Discretized sampling-based planners. Samples are free grid cells and tree
// or roadmap edges are discrete lines (see line.hpp) whose every move must be
// legal under the session MoveModel.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "grid.hpp"
#include "line.hpp"
#include "outcome.hpp"
#include "rng.hpp"

namespace pathbench {

struct SamplerParams {
  std::uint64_t seed = 0;
  long max_samples = 0;  // 0: 10 x free cells
  int step_cells = 0;    // 0: one cell, or 4 for d-RT
  double goal_bias = 0.05;
  long prm_nodes = 0;    // 0: free cells / 8
  double prm_radius = 8.0;
  double rewire_radius = 8.0;

  void validate() const {
    if (max_samples < 0) throw std::invalid_argument("max_samples must be positive (0 selects the default)");
    if (step_cells < 0) throw std::invalid_argument("step_cells must be positive (0 selects the default)");
    if (!(goal_bias >= 0.0 && goal_bias <= 1.0)) throw std::invalid_argument("goal_bias must lie in [0, 1]");
    if (prm_nodes < 0) throw std::invalid_argument("prm_nodes must be non-negative");
    if (!(prm_radius > 0.0) || !(rewire_radius > 0.0)) throw std::invalid_argument("radii must be positive");
  }

  SamplerParams resolved(const GridMap& map, int default_step = 1) const {
    validate();
    SamplerParams p = *this;
    const long free = static_cast<long>(map.free_count());
    if (p.step_cells == 0) p.step_cells = default_step;
    if (p.max_samples == 0) p.max_samples = std::max(1L, 10 * free);
    if (p.prm_nodes == 0) p.prm_nodes = free / 8;
    return p;
  }
};

// Walks at most step_cells legal moves along the line from `from` toward
// `toward`; nullopt when no move is possible.
inline std::optional<Cell> grid_steer(const Cell& from, const Cell& toward, int step_cells, const GridMap& map,
                                      const MoveModel& model = MoveModel{}) {
  const auto walk = walk_line(map, model, from, toward, step_cells);
  if (walk.size() < 2) return std::nullopt;
  return walk.back();
}

// Tree over grid cells; each node keeps the cells of its incoming edge.
class SampleTree {
 public:
  explicit SampleTree(const GridMap& map) : map_(&map), node_at_(map.size(), -1) {}

  int add(const Cell& c, int parent, std::vector<Cell> segment) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(c);
    parent_.push_back(parent);
    children_.emplace_back();
    double cost = 0.0;
    if (parent >= 0) {
      cost = cost_[static_cast<std::size_t>(parent)] + segment_cost(parent, segment);
      children_[static_cast<std::size_t>(parent)].push_back(id);
    }
    cost_.push_back(cost);
    segment_.push_back(std::move(segment));
    node_at_[map_->index(c)] = id;
    return id;
  }

  std::size_t size() const { return nodes_.size(); }
  const Cell& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  int parent(int i) const { return parent_[static_cast<std::size_t>(i)]; }
  double cost(int i) const { return cost_[static_cast<std::size_t>(i)]; }
  int find(const Cell& c) const { return node_at_[map_->index(c)]; }
  bool contains(const Cell& c) const { return find(c) >= 0; }

  // Nearest node by Euclidean distance; ties go to the older node.
  int nearest(const Cell& c) const {
    int best = -1;
    long best_d = std::numeric_limits<long>::max();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      long d = 0;
      for (int a = 0; a < c.dims; ++a) {
        const long x = nodes_[i][a] - c[a];
        d += x * x;
      }
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  std::vector<int> within(const Cell& c, double radius) const {
    std::vector<int> out;
    const double r2 = radius * radius;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      double d = 0.0;
      for (int a = 0; a < c.dims; ++a) {
        const double x = nodes_[i][a] - c[a];
        d += x * x;
      }
      if (d <= r2) out.push_back(static_cast<int>(i));
    }
    return out;
  }

  // Moves `node` under `new_parent`; costs of the whole subtree are updated.
  void reparent(int node, int new_parent, std::vector<Cell> segment) {
    const auto n = static_cast<std::size_t>(node);
    auto& old_children = children_[static_cast<std::size_t>(parent_[n])];
    old_children.erase(std::find(old_children.begin(), old_children.end(), node));
    parent_[n] = new_parent;
    children_[static_cast<std::size_t>(new_parent)].push_back(node);
    const double updated = cost_[static_cast<std::size_t>(new_parent)] + segment_cost(new_parent, segment);
    segment_[n] = std::move(segment);
    const double delta = updated - cost_[n];
    std::vector<int> stack{node};
    while (!stack.empty()) {
      const int at = stack.back();
      stack.pop_back();
      cost_[static_cast<std::size_t>(at)] += delta;
      for (const int ch : children_[static_cast<std::size_t>(at)]) stack.push_back(ch);
    }
  }

  // Cells from the root to `node`.
  std::vector<Cell> branch(int node) const {
    std::vector<int> chain;
    for (int at = node; at >= 0; at = parent_[static_cast<std::size_t>(at)]) chain.push_back(at);
    std::vector<Cell> cells{nodes_[static_cast<std::size_t>(chain.back())]};
    for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
      const auto& seg = segment_[static_cast<std::size_t>(*it)];
      cells.insert(cells.end(), seg.begin(), seg.end());
    }
    return cells;
  }

  bool acyclic() const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      std::size_t hops = 0;
      for (int at = static_cast<int>(i); at >= 0; at = parent_[static_cast<std::size_t>(at)])
        if (++hops > nodes_.size()) return false;
    }
    return true;
  }

  // Every edge's cells form legal moves from the parent to the child.
  bool edges_valid(const MoveModel& model) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (parent_[i] < 0) continue;
      Cell prev = nodes_[static_cast<std::size_t>(parent_[i])];
      for (const Cell& c : segment_[i]) {
        if (!model.can_step(*map_, prev, c)) return false;
        prev = c;
      }
      if (prev != nodes_[i]) return false;
    }
    return true;
  }

  std::vector<Cell> covered_cells() const { return nodes_; }

  std::size_t bytes() const {
    std::size_t b = bytes_of(nodes_) + bytes_of(parent_) + bytes_of(cost_) + bytes_of(node_at_) +
                    bytes_of(segment_) + bytes_of(children_);
    for (const auto& s : segment_) b += bytes_of(s);
    for (const auto& c : children_) b += bytes_of(c);
    return b;
  }

  TreeDump dump() const {
    TreeDump t;
    t.nodes = nodes_;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (parent_[i] >= 0) t.edges.emplace_back(parent_[i], static_cast<int>(i));
    return t;
  }

 private:
  double segment_cost(int parent, const std::vector<Cell>& segment) const {
    std::vector<Cell> walk{nodes_[static_cast<std::size_t>(parent)]};
    walk.insert(walk.end(), segment.begin(), segment.end());
    return walk_cost(walk);
  }

  const GridMap* map_;
  std::vector<Cell> nodes_;
  std::vector<int> parent_;
  std::vector<double> cost_;
  std::vector<std::vector<Cell>> segment_;
  std::vector<std::vector<int>> children_;
  std::vector<std::int32_t> node_at_;
};

namespace detail {

class CellSampler {
 public:
  CellSampler(const GridMap& map, const SamplerParams& p)
      : map_(map), free_(map.free_cells()), rng_(p.seed), bias_(p.goal_bias) {}

  Cell draw(const Cell& biased_target) {
    if (bernoulli(rng_, bias_)) return biased_target;
    return map_.cell_at(free_[uniform_index(rng_, free_.size())]);
  }

  Rng& rng() { return rng_; }

 private:
  const GridMap& map_;
  std::vector<std::size_t> free_;
  Rng rng_;
  double bias_;
};

inline std::vector<Cell> tail(const std::vector<Cell>& walk) { return {walk.begin() + 1, walk.end()}; }

inline int closest_to(const SampleTree& tree, const Cell& goal) { return tree.nearest(goal); }

inline void finish(PlanOutcome& out, MemoryMeter& mem, const SampleTree& tree, const Stopwatch& clock,
                   const PlanOptions& opts) {
  out.trace.explored = tree.covered_cells();
  out.trace.frontier_peak = tree.size();
  mem.add(tree.bytes());
  out.peak_memory_bytes = mem.peak();
  if (opts.record_tree) out.tree = tree.dump();
  out.elapsed_seconds = clock.seconds();
}

enum class ExtendFrom { Nearest, RandomNode };

inline PlanOutcome random_tree(const GridMap& map, const MoveModel& model, const SamplerParams& params,
                               const PlanOptions& opts, ExtendFrom rule) {
  if (!map.has_endpoints()) throw std::invalid_argument("sampling planner: map has no agent/goal");
  Stopwatch clock;
  MemoryMeter mem;
  // Extending from a random node rarely reaches new cells with one-cell
  // steps, so d-RT takes longer ones by default.
  const auto p = params.resolved(map, rule == ExtendFrom::RandomNode ? 4 : 1);
  const Cell start = *map.agent();
  const Cell goal = *map.goal();
  CellSampler sampler(map, p);
  SampleTree tree(map);
  tree.add(start, -1, {});
  PlanOutcome out;

  int goal_node = start == goal ? 0 : -1;
  for (long s = 0; s < p.max_samples && goal_node < 0; ++s) {
    const Cell target = sampler.draw(goal);
    if (tree.contains(target)) continue;
    const int from = rule == ExtendFrom::Nearest
                         ? tree.nearest(target)
                         : static_cast<int>(uniform_index(sampler.rng(), tree.size()));
    const auto walk = walk_line(map, model, tree.node(from), target, p.step_cells);
    if (walk.size() < 2 || tree.contains(walk.back())) continue;
    const int added = tree.add(walk.back(), from, tail(walk));
    if (walk.back() == goal) {
      goal_node = added;
    } else if (euclidean_distance(walk.back(), goal) <= p.step_cells &&
               segment_clear(map, model, walk.back(), goal)) {
      goal_node = tree.add(goal, added, tail(line_cells(walk.back(), goal, model)));
    }
  }

  if (goal_node >= 0) {
    out.success = true;
    out.path = Path(tree.branch(goal_node));
    out.terminal_cell = goal;
  } else {
    out.terminal_cell = tree.node(closest_to(tree, goal));
    out.failure = FailureReason::SampleBudget;
  }
  finish(out, mem, tree, clock, opts);
  return out;
}

}  // namespace detail

inline PlanOutcome d_rrt(const GridMap& map, const MoveModel& model, const SamplerParams& params,
                         const PlanOptions& opts = {}) {
  return detail::random_tree(map, model, params, opts, detail::ExtendFrom::Nearest);
}

// Random tree: extends from a uniformly chosen node instead of the nearest.
inline PlanOutcome d_rt(const GridMap& map, const MoveModel& model, const SamplerParams& params,
                        const PlanOptions& opts = {}) {
  return detail::random_tree(map, model, params, opts, detail::ExtendFrom::RandomNode);
}

inline PlanOutcome d_rrt_connect(const GridMap& map, const MoveModel& model, const SamplerParams& params,
                                 const PlanOptions& opts = {}) {
  if (!map.has_endpoints()) throw std::invalid_argument("d_rrt_connect: map has no agent/goal");
  Stopwatch clock;
  MemoryMeter mem;
  const auto p = params.resolved(map);
  const Cell start = *map.agent();
  const Cell goal = *map.goal();
  detail::CellSampler sampler(map, p);
  SampleTree from_start(map), from_goal(map);
  from_start.add(start, -1, {});
  from_goal.add(goal, -1, {});
  PlanOutcome out;

  SampleTree* a = &from_start;
  SampleTree* b = &from_goal;
  int joint_a = -1, joint_b = -1;
  if (start == goal) joint_a = joint_b = 0;

  for (long s = 0; s < p.max_samples && joint_a < 0; ++s) {
    const Cell target = sampler.draw(b->node(0));
    if (!a->contains(target)) {
      const int near = a->nearest(target);
      const auto walk = walk_line(map, model, a->node(near), target, p.step_cells);
      if (walk.size() >= 2 && !a->contains(walk.back())) {
        const int qa = a->add(walk.back(), near, detail::tail(walk));
        const Cell q = walk.back();
        // greedy connect of the other tree toward q
        int at = b->find(q);
        if (at < 0) at = b->nearest(q);
        while (b->node(at) != q) {
          const auto step = walk_line(map, model, b->node(at), q, p.step_cells);
          if (step.size() < 2) break;
          const int existing = b->find(step.back());
          at = existing >= 0 ? existing : b->add(step.back(), at, detail::tail(step));
          if (existing >= 0 && step.back() != q) break;
        }
        if (b->node(at) == q) {
          joint_a = qa;
          joint_b = at;
        }
      }
    }
    if (joint_a < 0) std::swap(a, b);
  }

  if (joint_a >= 0) {
    // a/b may have been swapped; map the joint back to the start/goal trees
    const int js = a == &from_start ? joint_a : joint_b;
    const int jg = a == &from_start ? joint_b : joint_a;
    auto cells = from_start.branch(js);
    auto back = from_goal.branch(jg);
    cells.insert(cells.end(), back.rbegin() + 1, back.rend());
    out.success = true;
    out.path = Path(std::move(cells));
    out.terminal_cell = goal;
  } else {
    out.terminal_cell = from_start.node(from_start.nearest(goal));
    out.failure = FailureReason::SampleBudget;
  }

  out.trace.explored = from_start.covered_cells();
  for (const Cell& c : from_goal.covered_cells())
    if (!from_start.contains(c)) out.trace.explored.push_back(c);
  out.trace.frontier_peak = from_start.size() + from_goal.size();
  mem.add(from_start.bytes() + from_goal.bytes());
  out.peak_memory_bytes = mem.peak();
  if (opts.record_tree) {
    TreeDump t = from_start.dump();
    const TreeDump g = from_goal.dump();
    const int offset = static_cast<int>(t.nodes.size());
    t.nodes.insert(t.nodes.end(), g.nodes.begin(), g.nodes.end());
    for (const auto& [x, y] : g.edges) t.edges.emplace_back(x + offset, y + offset);
    out.tree = std::move(t);
  }
  out.elapsed_seconds = clock.seconds();
  return out;
}

// RRT with choose-parent and rewiring inside rewire_radius. Runs the whole
// sample budget and returns the best branch to the goal.
inline PlanOutcome d_rrt_star(const GridMap& map, const MoveModel& model, const SamplerParams& params,
                              const PlanOptions& opts = {}) {
  if (!map.has_endpoints()) throw std::invalid_argument("d_rrt_star: map has no agent/goal");
  Stopwatch clock;
  MemoryMeter mem;
  const auto p = params.resolved(map);
  const Cell start = *map.agent();
  const Cell goal = *map.goal();
  detail::CellSampler sampler(map, p);
  SampleTree tree(map);
  tree.add(start, -1, {});
  PlanOutcome out;

  for (long s = 0; s < p.max_samples; ++s) {
    const Cell target = sampler.draw(goal);
    if (tree.contains(target)) continue;
    const int near = tree.nearest(target);
    const auto walk = walk_line(map, model, tree.node(near), target, p.step_cells);
    if (walk.size() < 2 || tree.contains(walk.back())) continue;
    const Cell q = walk.back();

    int parent = near;
    std::vector<Cell> segment = detail::tail(walk);
    double best = tree.cost(near) + walk_cost(walk);
    const auto around = tree.within(q, p.rewire_radius);
    for (const int j : around) {
      if (j == near || tree.cost(j) + euclidean_distance(tree.node(j), q) >= best) continue;
      const auto line = line_cells(tree.node(j), q, model);
      if (!segment_clear(map, model, tree.node(j), q)) continue;
      const double c = tree.cost(j) + walk_cost(line);
      if (c < best - 1e-9) {
        best = c;
        parent = j;
        segment = detail::tail(line);
      }
    }
    const int added = tree.add(q, parent, std::move(segment));

    for (const int j : around) {
      if (j == parent) continue;
      if (tree.cost(added) + euclidean_distance(q, tree.node(j)) >= tree.cost(j) - 1e-9) continue;
      const auto line = line_cells(q, tree.node(j), model);
      if (tree.cost(added) + walk_cost(line) >= tree.cost(j) - 1e-9) continue;
      if (!segment_clear(map, model, q, tree.node(j))) continue;
      tree.reparent(j, added, detail::tail(line));
    }

    if (!tree.contains(goal) && euclidean_distance(q, goal) <= p.step_cells && segment_clear(map, model, q, goal))
      tree.add(goal, added, detail::tail(line_cells(q, goal, model)));
  }

  const int goal_node = tree.find(goal);
  if (goal_node >= 0) {
    out.success = true;
    out.path = Path(tree.branch(goal_node));
    out.terminal_cell = goal;
  } else {
    out.terminal_cell = tree.node(tree.nearest(goal));
    out.failure = FailureReason::SampleBudget;
  }
  detail::finish(out, mem, tree, clock, opts);
  return out;
}

// Simple PRM: prm_nodes distinct free cells plus start and goal, every pair
// within prm_radius joined when its line is clear, queried with Dijkstra.
inline PlanOutcome d_sprm(const GridMap& map, const MoveModel& model, const SamplerParams& params,
                          const PlanOptions& opts = {}) {
  if (!map.has_endpoints()) throw std::invalid_argument("d_sprm: map has no agent/goal");
  Stopwatch clock;
  MemoryMeter mem;
  const auto p = params.resolved(map);
  const Cell start = *map.agent();
  const Cell goal = *map.goal();
  Rng rng(p.seed);
  PlanOutcome out;

  std::vector<Cell> nodes{start};
  if (goal != start) nodes.push_back(goal);
  std::vector<std::size_t> pool;
  for (const std::size_t i : map.free_cells()) {
    const Cell c = map.cell_at(i);
    if (c != start && c != goal) pool.push_back(i);
  }
  const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(p.prm_nodes), pool.size());
  for (std::size_t i = 0; i < want; ++i) {
    const std::size_t j = i + uniform_index(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
    nodes.push_back(map.cell_at(pool[i]));
  }

  struct Edge {
    int to;
    double cost;
  };
  std::vector<std::vector<Edge>> adj(nodes.size());
  const double r2 = p.prm_radius * p.prm_radius;
  std::size_t edge_count = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      double d2 = 0.0;
      for (int a = 0; a < start.dims; ++a) {
        const double x = nodes[i][a] - nodes[j][a];
        d2 += x * x;
      }
      if (d2 > r2) continue;
      // lines run from the lexicographically smaller endpoint so edges are symmetric
      const Cell& lo = std::min(nodes[i], nodes[j]);
      const Cell& hi = std::max(nodes[i], nodes[j]);
      if (!segment_clear(map, model, lo, hi)) continue;
      const double c = walk_cost(line_cells(lo, hi, model));
      adj[i].push_back({static_cast<int>(j), c});
      adj[j].push_back({static_cast<int>(i), c});
      ++edge_count;
    }

  std::vector<double> dist(nodes.size(), std::numeric_limits<double>::infinity());
  std::vector<int> prev(nodes.size(), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[0] = 0.0;
  open.push({0.0, 0});
  std::size_t open_peak = 0;
  const int goal_id = goal == start ? 0 : 1;
  while (!open.empty()) {
    open_peak = std::max(open_peak, open.size());
    const auto [d, u] = open.top();
    open.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    if (u == goal_id) break;
    for (const Edge& e : adj[static_cast<std::size_t>(u)]) {
      const double cand = d + e.cost;
      if (cand < dist[static_cast<std::size_t>(e.to)]) {
        dist[static_cast<std::size_t>(e.to)] = cand;
        prev[static_cast<std::size_t>(e.to)] = u;
        open.push({cand, e.to});
      }
    }
  }

  if (dist[static_cast<std::size_t>(goal_id)] < std::numeric_limits<double>::infinity()) {
    std::vector<int> chain;
    for (int at = goal_id; at >= 0; at = prev[static_cast<std::size_t>(at)]) chain.push_back(at);
    std::reverse(chain.begin(), chain.end());
    std::vector<Cell> cells{start};
    for (std::size_t k = 1; k < chain.size(); ++k) {
      const Cell& from = nodes[static_cast<std::size_t>(chain[k - 1])];
      const Cell& to = nodes[static_cast<std::size_t>(chain[k])];
      auto line = line_cells(std::min(from, to), std::max(from, to), model);
      if (line.front() != from) std::reverse(line.begin(), line.end());
      cells.insert(cells.end(), line.begin() + 1, line.end());
    }
    out.success = true;
    out.path = Path(std::move(cells));
    out.terminal_cell = goal;
  } else {
    // closest roadmap node reachable from the start
    int best = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (dist[i] < std::numeric_limits<double>::infinity() &&
          euclidean_distance(nodes[i], goal) < euclidean_distance(nodes[static_cast<std::size_t>(best)], goal))
        best = static_cast<int>(i);
    out.terminal_cell = nodes[static_cast<std::size_t>(best)];
    out.failure = FailureReason::Unreachable;
  }

  out.trace.explored = nodes;
  out.trace.frontier_peak = open_peak;
  mem.add(bytes_of(nodes) + bytes_of(pool) + bytes_of(dist) + bytes_of(prev) + bytes_of(adj) +
          edge_count * 2 * sizeof(Edge) + open_peak * sizeof(Item));
  out.peak_memory_bytes = mem.peak();
  if (opts.record_tree) {
    TreeDump t;
    t.nodes = nodes;
    for (std::size_t i = 0; i < adj.size(); ++i)
      for (const Edge& e : adj[i])
        if (static_cast<int>(i) < e.to) t.edges.emplace_back(static_cast<int>(i), e.to);
    out.tree = std::move(t);
  }
  out.elapsed_seconds = clock.seconds();
  return out;
}

}  // namespace pathbench
