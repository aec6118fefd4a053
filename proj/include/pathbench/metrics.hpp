#pragma once

// The nine evaluation metrics of one planning session, relative to the A*
// baseline on the same map and endpoints.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "distance_field.hpp"
#include "grid.hpp"
#include "outcome.hpp"

namespace pathbench {

struct InconsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

struct MetricReport {
  bool success = false;
  std::optional<double> path_length_cells;  // Euclidean-weighted cost
  std::optional<double> path_cells;         // raw cell count
  double distance_left_cells = 0.0;
  double time_seconds = 0.0;
  std::optional<double> path_deviation_pct;
  double search_space_pct = 0.0;
  double peak_memory_mb = 0.0;
  std::optional<double> obstacle_clearance_cells;
  std::optional<double> smoothness_deg;
};

inline double path_deviation_pct(double outcome_cost, double baseline_cost) {
  if (!(baseline_cost > 0.0)) throw std::domain_error("path_deviation_pct: baseline cost must be positive");
  return 100.0 * (outcome_cost - baseline_cost) / baseline_cost;
}

inline double search_space_pct(const SearchTrace& trace, const GridMap& map) {
  const std::size_t free = map.free_count();
  if (free == 0) return 0.0;
  return 100.0 * static_cast<double>(trace.explored.size()) / static_cast<double>(free);
}

inline std::optional<double> obstacle_clearance(const Path& path, const GridMap& map, const DistanceField& field) {
  if (field.unbounded() || path.empty()) return std::nullopt;
  double sum = 0.0;
  for (const Cell& c : path.cells) sum += field.at(map, c);
  return sum / static_cast<double>(path.size());
}

// Mean absolute turning angle, in degrees, over the interior vertices.
inline std::optional<double> smoothness_deg(const Path& path) {
  if (path.size() < 3) return std::nullopt;
  const int dims = path.front().dims;
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (int a = 0; a < dims; ++a) {
      const double u = path.cells[i][a] - path.cells[i - 1][a];
      const double v = path.cells[i + 1][a] - path.cells[i][a];
      dot += u * v;
      na += u * u;
      nb += v * v;
    }
    const double cosine = std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
    sum += std::acos(cosine) * 180.0 / std::numbers::pi;
  }
  return sum / static_cast<double>(path.size() - 2);
}

inline MetricReport compute_report(const PlanOutcome& outcome, const PlanOutcome& baseline, const GridMap& map,
                                   const DistanceField& field) {
  if (outcome.success && !baseline.success)
    throw InconsistencyError("baseline failed on a map the evaluated planner solved");
  MetricReport r;
  r.success = outcome.success;
  r.time_seconds = outcome.elapsed_seconds;
  r.search_space_pct = search_space_pct(outcome.trace, map);
  r.peak_memory_mb = static_cast<double>(outcome.peak_memory_bytes) / (1024.0 * 1024.0);
  r.distance_left_cells = outcome.success ? 0.0 : euclidean_distance(outcome.terminal_cell, map.goal().value());
  if (outcome.success && outcome.path) {
    const Path& p = *outcome.path;
    r.path_length_cells = p.cost;
    r.path_cells = static_cast<double>(p.size());
    const double base = baseline.path->cost;
    if (base > 0.0) r.path_deviation_pct = path_deviation_pct(p.cost, base);
    else if (p.cost == 0.0) r.path_deviation_pct = 0.0;
    r.obstacle_clearance_cells = obstacle_clearance(p, map, field);
    r.smoothness_deg = smoothness_deg(p);
  }
  return r;
}

}  // namespace pathbench
