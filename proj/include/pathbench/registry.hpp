#pragma once

// Planners by name, each with its own parameter namespace.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "graph_planners.hpp"
#include "local_planners.hpp"
#include "sampling_planners.hpp"

namespace pathbench {

struct UnknownPlanner : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& planner_names() {
  static const std::vector<std::string> names{"astar",         "dijkstra", "wavefront", "d-rrt",
                                              "d-rt",          "d-rrt-star", "d-rrt-connect", "d-sprm",
                                              "bug1",          "bug2",     "potential-field"};
  return names;
}

// The six planners a benchmark runs when none are named.
inline const std::vector<std::string>& classical_planners() {
  static const std::vector<std::string> names{"astar", "dijkstra", "wavefront", "d-rrt-connect", "d-rrt", "d-sprm"};
  return names;
}

inline bool is_planner(std::string_view name) {
  const auto& n = planner_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

inline std::string planner_list() {
  std::string s;
  for (const auto& n : planner_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

struct PlannerConfig {
  std::string name = "astar";
  SamplerParams sampler;
  BugParams bug;
  PotentialParams potential;
};

inline PlannerConfig planner_config(std::string name) {
  if (!is_planner(name)) throw UnknownPlanner("unknown planner '" + name + "' (available: " + planner_list() + ")");
  PlannerConfig c;
  c.name = std::move(name);
  return c;
}

// Runs one session. `seed` replaces the sampler seed, so a config can be
// reused across runs.
inline PlanOutcome run_planner(const PlannerConfig& config, const GridMap& map, const MoveModel& model,
                               std::uint64_t seed, const PlanOptions& opts = {}) {
  SamplerParams sp = config.sampler;
  sp.seed = seed;
  const std::string& n = config.name;
  if (n == "astar") return astar(map, model, opts);
  if (n == "dijkstra") return dijkstra(map, model, opts);
  if (n == "wavefront") return wavefront(map, model, opts);
  if (n == "d-rrt") return d_rrt(map, model, sp, opts);
  if (n == "d-rt") return d_rt(map, model, sp, opts);
  if (n == "d-rrt-star") return d_rrt_star(map, model, sp, opts);
  if (n == "d-rrt-connect") return d_rrt_connect(map, model, sp, opts);
  if (n == "d-sprm") return d_sprm(map, model, sp, opts);
  if (n == "bug1") return bug1(map, model, config.bug);
  if (n == "bug2") return bug2(map, model, config.bug);
  if (n == "potential-field") return potential_field(map, model, config.potential);
  throw UnknownPlanner("unknown planner '" + n + "' (available: " + planner_list() + ")");
}

}  // namespace pathbench
