#pragma once

// Brute-force reference implementations used to check the library. They
// share no code with it beyond GridMap storage.

#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include "pathbench/grid.hpp"
#include "pathbench/rng.hpp"

namespace oracle {

using pathbench::Cell;
using pathbench::GridMap;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::vector<std::array<int, 3>> all_deltas(int dims, bool orthogonal) {
  std::vector<std::array<int, 3>> out;
  const int zr = dims == 3 ? 1 : 0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -zr; c <= zr; ++c) {
        const int nz = (a != 0) + (b != 0) + (c != 0);
        if (nz == 0 || (orthogonal && nz > 1)) continue;
        out.push_back({a, b, c});
      }
  return out;
}

inline Cell shift(const Cell& c, const std::array<int, 3>& d) {
  return c.dims == 2 ? Cell(c[0] + d[0], c[1] + d[1]) : Cell(c[0] + d[0], c[1] + d[1], c[2] + d[2]);
}

// Target free and, for multi-axis moves, every partial move (a proper,
// non-empty subset of the changed axes) lands on a free cell.
inline bool legal(const GridMap& m, const Cell& from, const std::array<int, 3>& d) {
  if (!m.is_free(shift(from, d))) return false;
  for (int mask = 1; mask < 7; ++mask) {
    std::array<int, 3> part{};
    bool proper = false;
    for (int a = 0; a < 3; ++a) {
      if (mask & (1 << a)) part[static_cast<std::size_t>(a)] = d[static_cast<std::size_t>(a)];
      if (!(mask & (1 << a)) && d[static_cast<std::size_t>(a)] != 0) proper = true;
    }
    if (part == std::array<int, 3>{} || part == d || !proper) continue;
    if (!m.is_free(shift(from, part))) return false;
  }
  return true;
}

inline double step_cost(const std::array<int, 3>& d) { return std::sqrt(double(d[0] * d[0] + d[1] * d[1] + d[2] * d[2])); }

// Orthogonal unit-cost shortest path length; -1 when unreachable.
inline int bfs_length(const GridMap& m, const Cell& s, const Cell& g) {
  std::vector<int> dist(m.size(), -1);
  std::deque<Cell> q{s};
  dist[m.index(s)] = 0;
  const auto deltas = all_deltas(m.dims(), true);
  while (!q.empty()) {
    const Cell c = q.front();
    q.pop_front();
    if (c == g) return dist[m.index(c)];
    for (const auto& d : deltas) {
      const Cell n = shift(c, d);
      if (!m.is_free(n) || dist[m.index(n)] >= 0) continue;
      dist[m.index(n)] = dist[m.index(c)] + 1;
      q.push_back(n);
    }
  }
  return -1;
}

// Cells reachable from s under the move rules.
inline std::vector<bool> flood_fill(const GridMap& m, const Cell& s, bool orthogonal = false) {
  std::vector<bool> seen(m.size(), false);
  std::vector<Cell> stack{s};
  seen[m.index(s)] = true;
  const auto deltas = all_deltas(m.dims(), orthogonal);
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    for (const auto& d : deltas) {
      if (!legal(m, c, d)) continue;
      const Cell n = shift(c, d);
      if (seen[m.index(n)]) continue;
      seen[m.index(n)] = true;
      stack.push_back(n);
    }
  }
  return seen;
}

// Single-source costs by repeated relaxation of every edge.
inline std::vector<double> bellman_ford(const GridMap& m, const Cell& s, bool orthogonal = false) {
  std::vector<double> dist(m.size(), kInf);
  dist[m.index(s)] = 0.0;
  const auto deltas = all_deltas(m.dims(), orthogonal);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (dist[i] == kInf) continue;
      const Cell c = m.cell_at(i);
      for (const auto& d : deltas) {
        if (!legal(m, c, d)) continue;
        const std::size_t j = m.index(shift(c, d));
        if (dist[i] + step_cost(d) < dist[j] - 1e-12) {
          dist[j] = dist[i] + step_cost(d);
          changed = true;
        }
      }
    }
  }
  return dist;
}

// Distance to the nearest obstacle by scanning every obstacle; +inf when
// the map has none.
inline std::vector<double> brute_edt(const GridMap& m) {
  std::vector<double> out(m.size(), kInf);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m.is_obstacle(j)) out[i] = std::min(out[i], pathbench::euclidean_distance(m.cell_at(i), m.cell_at(j)));
  return out;
}

// Map with each cell blocked with probability p.
inline GridMap random_map(pathbench::Rng& rng, int rows, int cols, double p) {
  GridMap m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m.set_obstacle(i, pathbench::bernoulli(rng, p));
  return m;
}

inline GridMap random_map3(pathbench::Rng& rng, int a, int b, int c, double p) {
  GridMap m(a, b, c);
  for (std::size_t i = 0; i < m.size(); ++i) m.set_obstacle(i, pathbench::bernoulli(rng, p));
  return m;
}

}  // namespace oracle
