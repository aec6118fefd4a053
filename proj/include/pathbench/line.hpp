#pragma once

// Discrete straight lines between cells. Step t of an n-step line sits at
// a + round(d * t / n) per axis (ties rounded away from a), where n is the
// largest |d| component, so every step is a single Full-connectivity move.
// Under the Orthogonal model each multi-axis step is split into unit steps
// taken in axis order.

#include <cstdlib>
#include <vector>

#include "grid.hpp"

namespace pathbench {

inline std::vector<Cell> line_cells(const Cell& a, const Cell& b, const MoveModel& model) {
  std::vector<Cell> out{a};
  std::array<int, 3> d = MoveModel::delta_between(a, b);
  int n = 0;
  for (int i = 0; i < a.dims; ++i) n = std::max(n, std::abs(d[static_cast<std::size_t>(i)]));
  const bool orthogonal = model.connectivity() == Connectivity::Orthogonal;
  for (int t = 1; t <= n; ++t) {
    Cell next = a;
    for (int i = 0; i < a.dims; ++i) {
      const int di = d[static_cast<std::size_t>(i)];
      const int mag = (2 * std::abs(di) * t + n) / (2 * n);
      next.coords[static_cast<std::size_t>(i)] = a[i] + (di < 0 ? -mag : mag);
    }
    if (orthogonal) {
      Cell cur = out.back();
      for (int i = 0; i < a.dims; ++i) {
        if (cur[i] != next[i]) {
          cur.coords[static_cast<std::size_t>(i)] = next[i];
          out.push_back(cur);
        }
      }
    } else {
      out.push_back(next);
    }
  }
  return out;
}

// Follows line_cells(from, toward) for at most max_steps legal moves and
// returns the cells walked, starting with `from`. Stops before the first
// illegal move.
inline std::vector<Cell> walk_line(const GridMap& map, const MoveModel& model, const Cell& from,
                                   const Cell& toward, int max_steps) {
  const auto line = line_cells(from, toward, model);
  std::vector<Cell> out{from};
  for (std::size_t i = 1; i < line.size() && static_cast<int>(i) <= max_steps; ++i) {
    if (!model.can_step(map, line[i - 1], line[i])) break;
    out.push_back(line[i]);
  }
  return out;
}

// True when every move of line_cells(a, b) is legal.
inline bool segment_clear(const GridMap& map, const MoveModel& model, const Cell& a, const Cell& b) {
  const auto line = line_cells(a, b, model);
  for (std::size_t i = 1; i < line.size(); ++i)
    if (!model.can_step(map, line[i - 1], line[i])) return false;
  return map.is_free(a);
}

}  // namespace pathbench
