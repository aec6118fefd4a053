#pragma once

// Planners that act on local information only: Bug1, Bug2 and an artificial
// potential field. Bugs sense the eight (or four) adjacent cells and follow
// obstacle boundaries with a hand-on-wall rule; they are 2D only.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "distance_field.hpp"
#include "grid.hpp"
#include "line.hpp"
#include "outcome.hpp"

namespace pathbench {

enum class BugMode { MotionToGoal, BoundaryFollow };
enum class WallSide { Left, Right };

struct BugParams {
  long step_limit = 0;  // 0: 10 x free cells
  WallSide wall = WallSide::Left;
};

struct PotentialParams {
  double k_att = 0.0;  // 0: 1 / (largest extent)^2
  double k_rep = 100.0;
  double influence_radius = 5.0;
  long step_limit = 0;  // 0: 10 x free cells
};

struct LocalState {
  Cell position;
  BugMode mode = BugMode::MotionToGoal;
  std::optional<Cell> hit_point;
  std::optional<Cell> leave_point;
  std::vector<Cell> traversal_log;
  std::vector<Cell> hits;    // every hit point, in order
  std::vector<Cell> leaves;  // every leave point, in order
};

namespace detail {

inline long resolve_limit(long limit, const GridMap& map) {
  return limit > 0 ? limit : std::max(1L, 10 * static_cast<long>(map.free_count()));
}

// Directions in angular order; index + 1 is a 45 (or 90) degree turn to the
// left.
inline std::vector<std::array<int, 3>> ring_directions(const MoveModel& model) {
  if (model.connectivity() == Connectivity::Orthogonal) return {{0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {1, 0, 0}};
  return {{0, 1, 0}, {-1, 1, 0}, {-1, 0, 0}, {-1, -1, 0}, {0, -1, 0}, {1, -1, 0}, {1, 0, 0}, {1, 1, 0}};
}

class WallFollower {
 public:
  WallFollower(const GridMap& map, const MoveModel& model, WallSide side)
      : map_(map), model_(model), dirs_(ring_directions(model)), side_(side) {}

  // Orients the follower after bumping into an obstacle while trying to move
  // along `blocked`, so the obstacle ends up on the wall side.
  void begin(const std::array<int, 3>& blocked) {
    const int n = static_cast<int>(dirs_.size());
    const int quarter = n / 4;
    int d = 0;
    for (int i = 0; i < n; ++i)
      if (dirs_[static_cast<std::size_t>(i)] == blocked) d = i;
    heading_ = side_ == WallSide::Left ? (d - quarter + n) % n : (d + quarter) % n;
  }

  // Next direction from p, -1 when boxed in. Scans from the wall side
  // towards the open side.
  int choose(const Cell& p) const {
    const int n = static_cast<int>(dirs_.size());
    const int quarter = n / 4;
    for (int k = 0; k < n; ++k) {
      const int d = side_ == WallSide::Left ? ((heading_ + quarter - k) % n + n) % n : (heading_ - quarter + k + n) % n;
      const Cell to = MoveModel::apply(p, dirs_[static_cast<std::size_t>(d)]);
      if (model_.can_step(map_, p, to)) return d;
    }
    return -1;
  }

  Cell take(const Cell& p, int d) {
    heading_ = d;
    return MoveModel::apply(p, dirs_[static_cast<std::size_t>(d)]);
  }

 private:
  const GridMap& map_;
  const MoveModel& model_;
  std::vector<std::array<int, 3>> dirs_;
  WallSide side_;
  int heading_ = 0;
};

inline void require_2d_endpoints(const GridMap& map, const char* who) {
  if (!map.has_endpoints()) throw std::invalid_argument(std::string(who) + ": map has no agent/goal");
  if (map.dims() != 2) throw std::invalid_argument(std::string(who) + ": bug planners are 2D only");
}

inline PlanOutcome finish_local(const GridMap& map, LocalState& st, bool success, FailureReason why,
                                const Stopwatch& clock) {
  PlanOutcome out;
  st.position = st.traversal_log.back();
  out.success = success;
  out.failure = success ? FailureReason::None : why;
  out.terminal_cell = st.position;
  if (success) out.path = Path(st.traversal_log);
  std::vector<std::uint8_t> seen(map.size(), 0);
  for (const Cell& c : st.traversal_log) {
    auto& s = seen[map.index(c)];
    if (!s) out.trace.explored.push_back(c);
    s = 1;
  }
  out.trace.frontier_peak = 1;
  out.peak_memory_bytes = bytes_of(st.traversal_log) + bytes_of(seen);
  out.elapsed_seconds = clock.seconds();
  return out;
}

}  // namespace detail

// Bug1: on contact, circle the whole obstacle, return to the boundary cell
// closest to the goal and leave from there.
inline PlanOutcome bug1(const GridMap& map, const MoveModel& model, const BugParams& params,
                        LocalState* state_out = nullptr) {
  detail::require_2d_endpoints(map, "bug1");
  Stopwatch clock;
  const Cell goal = *map.goal();
  const long limit = detail::resolve_limit(params.step_limit, map);
  LocalState st;
  st.traversal_log = {*map.agent()};
  Cell pos = *map.agent();
  auto line = line_cells(pos, goal, model);
  std::size_t li = 0;
  long steps = 0;
  bool success = false;
  FailureReason why = FailureReason::None;

  auto step_to = [&](const Cell& c) {
    pos = c;
    st.traversal_log.push_back(c);
    ++steps;
  };

  while (true) {
    if (pos == goal) {
      success = true;
      break;
    }
    if (steps >= limit) {
      why = FailureReason::StepLimit;
      break;
    }
    st.mode = BugMode::MotionToGoal;
    const Cell next = line[li + 1];
    if (model.can_step(map, pos, next)) {
      step_to(next);
      ++li;
      continue;
    }

    // circumnavigate
    st.mode = BugMode::BoundaryFollow;
    st.hit_point = pos;
    st.hits.push_back(pos);
    const Cell hit = pos;
    detail::WallFollower follow(map, model, params.wall);
    follow.begin(MoveModel::delta_between(pos, next));
    const int first = follow.choose(pos);
    if (first < 0) {
      why = FailureReason::Unreachable;
      break;
    }
    std::vector<Cell> loop{hit};
    std::size_t best = 0;
    double best_d = euclidean_distance(hit, goal);
    bool reached_goal = false, out_of_steps = false;
    for (int d = first;;) {
      const Cell c = follow.take(pos, d);
      step_to(c);
      loop.push_back(c);
      if (c == goal) {
        reached_goal = true;
        break;
      }
      const double dist = euclidean_distance(c, goal);
      if (dist < best_d) {
        best_d = dist;
        best = loop.size() - 1;
      }
      if (steps >= limit) {
        out_of_steps = true;
        break;
      }
      d = follow.choose(pos);
      if (pos == hit && d == first) break;  // about to repeat the first move: loop closed
    }
    if (reached_goal) continue;
    if (out_of_steps) {
      why = FailureReason::StepLimit;
      break;
    }
    // walk the boundary again up to the closest cell
    for (std::size_t k = 1; k <= best && steps < limit; ++k) step_to(loop[k]);
    if (pos != loop[best]) {
      why = FailureReason::StepLimit;
      break;
    }
    st.leave_point = pos;
    st.leaves.push_back(pos);
    line = line_cells(pos, goal, model);
    li = 0;
    if (!model.can_step(map, pos, line[1])) {
      why = FailureReason::Unreachable;
      break;
    }
  }
  auto out = detail::finish_local(map, st, success, why, clock);
  if (state_out) *state_out = std::move(st);
  return out;
}

// Bug2: follow the fixed start-goal line; on contact, follow the boundary
// until the line is met again at a cell strictly closer to the goal than the
// hit point.
inline PlanOutcome bug2(const GridMap& map, const MoveModel& model, const BugParams& params,
                        LocalState* state_out = nullptr) {
  detail::require_2d_endpoints(map, "bug2");
  Stopwatch clock;
  const Cell goal = *map.goal();
  const long limit = detail::resolve_limit(params.step_limit, map);
  LocalState st;
  st.traversal_log = {*map.agent()};
  Cell pos = *map.agent();
  const auto mline = line_cells(pos, goal, model);
  std::vector<std::int32_t> on_line(map.size(), -1);
  for (std::size_t i = 0; i < mline.size(); ++i)
    if (on_line[map.index(mline[i])] < 0) on_line[map.index(mline[i])] = static_cast<std::int32_t>(i);
  std::size_t mi = 0;
  long steps = 0;
  bool success = false;
  FailureReason why = FailureReason::None;

  auto step_to = [&](const Cell& c) {
    pos = c;
    st.traversal_log.push_back(c);
    ++steps;
  };

  while (true) {
    if (pos == goal) {
      success = true;
      break;
    }
    if (steps >= limit) {
      why = FailureReason::StepLimit;
      break;
    }
    st.mode = BugMode::MotionToGoal;
    const Cell next = mline[mi + 1];
    if (model.can_step(map, pos, next)) {
      step_to(next);
      ++mi;
      continue;
    }

    st.mode = BugMode::BoundaryFollow;
    st.hit_point = pos;
    st.hits.push_back(pos);
    const Cell hit = pos;
    const double hit_d = euclidean_distance(hit, goal);
    detail::WallFollower follow(map, model, params.wall);
    follow.begin(MoveModel::delta_between(pos, next));
    const int first = follow.choose(pos);
    if (first < 0) {
      why = FailureReason::Unreachable;
      break;
    }
    bool left = false;
    for (int d = first;;) {
      step_to(follow.take(pos, d));
      if (pos == goal) break;
      const std::int32_t j = on_line[map.index(pos)];
      if (j > static_cast<std::int32_t>(mi) && euclidean_distance(pos, goal) < hit_d) {
        mi = static_cast<std::size_t>(j);
        st.leave_point = pos;
        st.leaves.push_back(pos);
        left = true;
        break;
      }
      if (steps >= limit) {
        why = FailureReason::StepLimit;
        break;
      }
      d = follow.choose(pos);
      if (pos == hit && d == first) {
        why = FailureReason::Unreachable;
        break;
      }
    }
    if (pos == goal || left) continue;
    break;
  }
  auto out = detail::finish_local(map, st, success, why, clock);
  if (state_out) *state_out = std::move(st);
  return out;
}

class PotentialField {
 public:
  PotentialField(const GridMap& map, const PotentialParams& params)
      : map_(map), field_(distance_transform(map)), goal_(map.goal().value()), p_(params) {
    if (p_.k_att <= 0.0) {
      const double e = *std::max_element(map.extent().begin(), map.extent().begin() + map.dims());
      p_.k_att = 1.0 / (e * e);
    }
  }

  // k_att |c - goal|^2 + k_rep (1/d - 1/r)^2 where d, the distance to the
  // nearest obstacle, is below the influence radius r.
  double operator()(const Cell& c) const {
    const double dg = euclidean_distance(c, goal_);
    double u = p_.k_att * dg * dg;
    if (!field_.unbounded()) {
      const double d = field_.at(map_, c);
      if (d < p_.influence_radius) {
        const double t = 1.0 / d - 1.0 / p_.influence_radius;
        u += p_.k_rep * t * t;
      }
    }
    return u;
  }

  const DistanceField& field() const { return field_; }
  const PotentialParams& params() const { return p_; }

 private:
  const GridMap& map_;
  DistanceField field_;
  Cell goal_;
  PotentialParams p_;
};

// Steepest descent over legal neighbors; fails with LocalMinimum when no
// neighbor strictly lowers the potential.
inline PlanOutcome potential_field(const GridMap& map, const MoveModel& model, const PotentialParams& params,
                                   std::vector<double>* potentials = nullptr) {
  if (!map.has_endpoints()) throw std::invalid_argument("potential_field: map has no agent/goal");
  Stopwatch clock;
  const PotentialField u(map, params);
  const long limit = detail::resolve_limit(params.step_limit, map);
  const Cell goal = *map.goal();
  LocalState st;
  st.traversal_log = {*map.agent()};
  Cell pos = *map.agent();
  double here = u(pos);
  if (potentials) potentials->assign(1, here);
  bool success = false;
  FailureReason why = FailureReason::None;
  for (long steps = 0;; ++steps) {
    if (pos == goal) {
      success = true;
      break;
    }
    if (steps >= limit) {
      why = FailureReason::StepLimit;
      break;
    }
    std::optional<Cell> best;
    double best_u = here;
    for_each_neighbor(map, model, pos, [&](const Cell& nb, int, double) {
      const double v = u(nb);
      if (v < best_u) {
        best_u = v;
        best = nb;
      }
    });
    if (!best) {
      why = FailureReason::LocalMinimum;
      break;
    }
    pos = *best;
    here = best_u;
    st.traversal_log.push_back(pos);
    if (potentials) potentials->push_back(here);
  }
  auto out = detail::finish_local(map, st, success, why, clock);
  out.peak_memory_bytes += bytes_of(u.field().values());
  return out;
}

}  // namespace pathbench
