#pragma once

// Occupancy grid, cell addressing and movement semantics.
//
// Axis 0 is the slowest-varying axis and the last axis the fastest, so the
// linear index of (c0, c1[, c2]) is row-major. 2D maps keep a unit third
// extent internally; a 2D cell always has coords[2] == 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathbench {

inline constexpr double kSqrt2 = 1.4142135623730950488;
inline constexpr double kSqrt3 = 1.7320508075688772935;

struct Cell {
  std::array<int, 3> coords{};
  int dims = 2;

  constexpr Cell() = default;
  constexpr Cell(int a, int b) : coords{a, b, 0}, dims(2) {}
  constexpr Cell(int a, int b, int c) : coords{a, b, c}, dims(3) {}

  constexpr int operator[](int axis) const { return coords[static_cast<std::size_t>(axis)]; }

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;

  std::string str() const {
    std::string s = std::to_string(coords[0]) + "," + std::to_string(coords[1]);
    if (dims == 3) s += "," + std::to_string(coords[2]);
    return s;
  }
};

inline double euclidean_distance(const Cell& a, const Cell& b) {
  if (a.dims != b.dims) throw std::domain_error("euclidean_distance: dimensionality mismatch");
  double sum = 0.0;
  for (int i = 0; i < a.dims; ++i) {
    const double d = static_cast<double>(a[i] - b[i]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

class GridMap {
 public:
  GridMap() : GridMap(1, 1) {}
  GridMap(int rows, int cols) : GridMap(2, {rows, cols, 1}) {}
  GridMap(int a, int b, int c) : GridMap(3, {a, b, c}) {}

  GridMap(int dims, std::array<int, 3> extent) : dims_(dims), extent_(extent) {
    if (dims != 2 && dims != 3) throw std::invalid_argument("GridMap: dims must be 2 or 3");
    if (dims == 2) extent_[2] = 1;
    for (int i = 0; i < dims; ++i)
      if (extent_[static_cast<std::size_t>(i)] <= 0)
        throw std::invalid_argument("GridMap: extent must be positive");
    occupancy_.assign(static_cast<std::size_t>(extent_[0]) * extent_[1] * extent_[2], 0);
  }

  int dims() const { return dims_; }
  const std::array<int, 3>& extent() const { return extent_; }
  int extent(int axis) const { return extent_[static_cast<std::size_t>(axis)]; }
  std::size_t size() const { return occupancy_.size(); }

  bool in_bounds(const Cell& c) const {
    if (c.dims != dims_) return false;
    for (int i = 0; i < 3; ++i)
      if (c[i] < 0 || c[i] >= extent_[static_cast<std::size_t>(i)]) return false;
    return true;
  }

  std::size_t index(const Cell& c) const {
    return (static_cast<std::size_t>(c[0]) * extent_[1] + static_cast<std::size_t>(c[1])) *
               extent_[2] +
           static_cast<std::size_t>(c[2]);
  }

  Cell cell_at(std::size_t idx) const {
    const auto e2 = static_cast<std::size_t>(extent_[2]);
    const auto e1 = static_cast<std::size_t>(extent_[1]);
    const int c2 = static_cast<int>(idx % e2);
    idx /= e2;
    const int c1 = static_cast<int>(idx % e1);
    const int c0 = static_cast<int>(idx / e1);
    return dims_ == 2 ? Cell(c0, c1) : Cell(c0, c1, c2);
  }

  bool is_obstacle(std::size_t idx) const { return occupancy_[idx] != 0; }
  bool is_obstacle(const Cell& c) const { return occupancy_[index(c)] != 0; }
  bool is_free(const Cell& c) const { return in_bounds(c) && !is_obstacle(c); }

  void set_obstacle(const Cell& c, bool blocked = true) {
    occupancy_[checked_index(c)] = blocked ? 1 : 0;
  }
  void set_obstacle(std::size_t idx, bool blocked = true) { occupancy_[idx] = blocked ? 1 : 0; }
  void fill(bool blocked) { std::fill(occupancy_.begin(), occupancy_.end(), blocked ? 1 : 0); }

  std::span<const std::uint8_t> occupancy() const { return occupancy_; }

  std::size_t obstacle_count() const {
    return static_cast<std::size_t>(std::count(occupancy_.begin(), occupancy_.end(), 1));
  }
  std::size_t free_count() const { return size() - obstacle_count(); }

  std::vector<std::size_t> free_cells() const {
    std::vector<std::size_t> out;
    out.reserve(free_count());
    for (std::size_t i = 0; i < occupancy_.size(); ++i)
      if (!occupancy_[i]) out.push_back(i);
    return out;
  }

  const std::optional<Cell>& agent() const { return agent_; }
  const std::optional<Cell>& goal() const { return goal_; }

  void set_agent(const Cell& c) { agent_ = checked_free(c, "agent"); }
  void set_goal(const Cell& c) { goal_ = checked_free(c, "goal"); }
  void clear_endpoints() {
    agent_.reset();
    goal_.reset();
  }

  bool has_endpoints() const { return agent_.has_value() && goal_.has_value(); }

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  std::size_t checked_index(const Cell& c) const {
    if (!in_bounds(c)) throw std::domain_error("cell " + c.str() + " out of bounds");
    return index(c);
  }

  Cell checked_free(const Cell& c, const char* what) const {
    if (!in_bounds(c)) throw std::domain_error(std::string(what) + " " + c.str() + " out of bounds");
    if (is_obstacle(c)) throw std::domain_error(std::string(what) + " " + c.str() + " is an obstacle");
    return c;
  }

  int dims_ = 2;
  std::array<int, 3> extent_{1, 1, 1};
  std::vector<std::uint8_t> occupancy_;
  std::optional<Cell> agent_;
  std::optional<Cell> goal_;
};

enum class Connectivity { Orthogonal, Full };

struct Move {
  std::array<int, 3> delta{};
  int axes = 0;  // number of nonzero components
  double cost = 0.0;
  // Cells that must be free for the move to be legal, as deltas from the
  // origin: every move obtained by dropping a non-empty proper subset of the
  // nonzero components.
  std::vector<std::array<int, 3>> shoulders;
};

inline double step_cost_for_axes(int axes) {
  switch (axes) {
    case 1: return 1.0;
    case 2: return kSqrt2;
    case 3: return kSqrt3;
    default: return 0.0;
  }
}

// Connectivity plus Euclidean step costs. Orthogonal is 4/6-connected, Full
// is 8/26-connected. A diagonal move is legal only when all of its shoulder
// cells are free (no corner cutting).
class MoveModel {
 public:
  explicit MoveModel(Connectivity c = Connectivity::Full) : connectivity_(c) {
    build(2, moves2_);
    build(3, moves3_);
  }

  Connectivity connectivity() const { return connectivity_; }

  // Moves for the given dimensionality in lexicographic order of delta.
  const std::vector<Move>& moves(int dims) const { return dims == 3 ? moves3_ : moves2_; }

  int move_index(const std::array<int, 3>& delta, int dims) const {
    const auto& ms = moves(dims);
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (ms[i].delta == delta) return static_cast<int>(i);
    return -1;
  }

  // Admissible distance lower bound: octile (voxel octile in 3D) under Full,
  // Manhattan under Orthogonal.
  double heuristic(const Cell& a, const Cell& b) const {
    std::array<int, 3> d{};
    for (int i = 0; i < a.dims; ++i) d[static_cast<std::size_t>(i)] = std::abs(a[i] - b[i]);
    if (connectivity_ == Connectivity::Orthogonal) return d[0] + d[1] + d[2];
    std::sort(d.begin(), d.end());  // d[0] <= d[1] <= d[2]
    return kSqrt3 * d[0] + kSqrt2 * (d[1] - d[0]) + (d[2] - d[1]);
  }

  bool can_move(const GridMap& map, const Cell& from, const Move& m) const {
    const Cell to = apply(from, m.delta);
    if (!map.in_bounds(to) || map.is_obstacle(to)) return false;
    for (const auto& s : m.shoulders)
      if (map.is_obstacle(apply(from, s))) return false;
    return true;
  }

  // Legality of stepping between two cells; false if they are not adjacent.
  bool can_step(const GridMap& map, const Cell& from, const Cell& to) const {
    const int mi = move_index(delta_between(from, to), map.dims());
    if (mi < 0) return false;
    return map.in_bounds(from) && can_move(map, from, moves(map.dims())[static_cast<std::size_t>(mi)]);
  }

  static Cell apply(const Cell& c, const std::array<int, 3>& d) {
    Cell out = c;
    for (int i = 0; i < c.dims; ++i) out.coords[static_cast<std::size_t>(i)] += d[static_cast<std::size_t>(i)];
    return out;
  }

  static std::array<int, 3> delta_between(const Cell& from, const Cell& to) {
    std::array<int, 3> d{};
    for (int i = 0; i < from.dims; ++i) d[static_cast<std::size_t>(i)] = to[i] - from[i];
    return d;
  }

 private:
  void build(int dims, std::vector<Move>& out) const {
    const int lo2 = dims == 3 ? -1 : 0;
    const int hi2 = dims == 3 ? 1 : 0;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = lo2; c <= hi2; ++c) {
          Move m;
          m.delta = {a, b, c};
          m.axes = (a != 0) + (b != 0) + (c != 0);
          if (m.axes == 0) continue;
          if (connectivity_ == Connectivity::Orthogonal && m.axes != 1) continue;
          m.cost = step_cost_for_axes(m.axes);
          // proper non-empty subsets of the nonzero components
          for (int mask = 1; mask < 7; ++mask) {
            std::array<int, 3> s{};
            int kept = 0;
            bool valid = true;
            for (int i = 0; i < 3; ++i) {
              if (mask & (1 << i)) {
                if (m.delta[static_cast<std::size_t>(i)] == 0) valid = false;
                s[static_cast<std::size_t>(i)] = m.delta[static_cast<std::size_t>(i)];
                ++kept;
              }
            }
            if (valid && kept < m.axes) m.shoulders.push_back(s);
          }
          out.push_back(std::move(m));
        }
  }

  Connectivity connectivity_;
  std::vector<Move> moves2_;
  std::vector<Move> moves3_;
};

inline double heuristic(const Cell& a, const Cell& b, const MoveModel& model) {
  if (a.dims != b.dims) throw std::domain_error("heuristic: dimensionality mismatch");
  return model.heuristic(a, b);
}

struct Neighbor {
  Cell cell;
  double cost = 0.0;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Calls fn(neighbor_cell, move_index, step_cost) for every legal move out of
// `cell`, in lexicographic move order.
template <typename Fn>
void for_each_neighbor(const GridMap& map, const MoveModel& model, const Cell& cell, Fn&& fn) {
  const auto& ms = model.moves(map.dims());
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (model.can_move(map, cell, ms[i]))
      fn(MoveModel::apply(cell, ms[i].delta), static_cast<int>(i), ms[i].cost);
}

inline std::vector<Neighbor> neighbors(const GridMap& map, const Cell& cell, const MoveModel& model) {
  if (!map.in_bounds(cell)) throw std::domain_error("neighbors: cell " + cell.str() + " out of bounds");
  std::vector<Neighbor> out;
  for_each_neighbor(map, model, cell, [&](const Cell& n, int, double c) { out.push_back({n, c}); });
  return out;
}

// Cost of a cell walk, accumulated by move type so that equal-length walks
// compare exactly equal regardless of move order.
inline double walk_cost(std::span<const Cell> cells) {
  std::array<long, 4> counts{};
  for (std::size_t i = 1; i < cells.size(); ++i) {
    int axes = 0;
    for (int a = 0; a < cells[i].dims; ++a) axes += cells[i][a] != cells[i - 1][a];
    ++counts[static_cast<std::size_t>(std::min(axes, 3))];
  }
  return static_cast<double>(counts[1]) + kSqrt2 * static_cast<double>(counts[2]) +
         kSqrt3 * static_cast<double>(counts[3]);
}

struct Path {
  std::vector<Cell> cells;
  double cost = 0.0;

  Path() = default;
  explicit Path(std::vector<Cell> c) : cells(std::move(c)), cost(walk_cost(cells)) {}

  std::size_t size() const { return cells.size(); }
  bool empty() const { return cells.empty(); }
  const Cell& front() const { return cells.front(); }
  const Cell& back() const { return cells.back(); }
};

// Returns a description of the first violation, or nullopt for a valid path.
// Endpoints are checked only when given.
inline std::optional<std::string> validate_path(const GridMap& map, const MoveModel& model,
                                                const Path& path,
                                                const std::optional<Cell>& start = std::nullopt,
                                                const std::optional<Cell>& goal = std::nullopt) {
  if (path.empty()) return "empty path";
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Cell& c = path.cells[i];
    if (!map.in_bounds(c)) return "cell " + c.str() + " out of bounds";
    if (map.is_obstacle(c)) return "cell " + c.str() + " is an obstacle";
    if (i > 0 && !model.can_step(map, path.cells[i - 1], c))
      return "illegal step " + path.cells[i - 1].str() + " -> " + c.str();
  }
  if (start && path.front() != *start) return "path does not start at " + start->str();
  if (goal && path.back() != *goal) return "path does not end at " + goal->str();
  if (std::abs(walk_cost(path.cells) - path.cost) > 1e-9) return "recorded cost mismatch";
  return std::nullopt;
}

}  // namespace pathbench
