#pragma once

// Procedural map families: uniform random fill, block and house maps, plus
// random agent/goal placement.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grid.hpp"
#include "rng.hpp"

namespace pathbench {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class MapType { UniformRandomFill, Block, House };

inline std::string_view to_string(MapType t) {
  switch (t) {
    case MapType::UniformRandomFill: return "uniform";
    case MapType::Block: return "block";
    case MapType::House: return "house";
  }
  return "unknown";
}

inline std::optional<MapType> map_type_from_string(std::string_view s) {
  if (s == "uniform" || s == "uniform_random_fill") return MapType::UniformRandomFill;
  if (s == "block") return MapType::Block;
  if (s == "house") return MapType::House;
  return std::nullopt;
}

template <typename T>
struct Range {
  T lo{};
  T hi{};
  friend bool operator==(const Range&, const Range&) = default;
};

struct GenConfig {
  MapType type = MapType::UniformRandomFill;
  int dims = 2;
  std::array<int, 3> extent{64, 64, 1};
  Range<double> fill_rate{0.1, 0.3};
  Range<int> obstacle_count{1, 6};
  Range<int> min_room{8, 15};
  Range<int> max_room{35, 45};
  std::uint64_t seed = 0;

  void validate() const {
    if (dims != 2 && dims != 3) throw ConfigError("dims must be 2 or 3");
    for (int i = 0; i < dims; ++i)
      if (extent[static_cast<std::size_t>(i)] <= 0) throw ConfigError("extent must be positive on every axis");
    if (!(0.0 <= fill_rate.lo && fill_rate.lo <= fill_rate.hi && fill_rate.hi <= 1.0))
      throw ConfigError("fill rate range must satisfy 0 <= lo <= hi <= 1");
    if (obstacle_count.lo < 0 || obstacle_count.lo > obstacle_count.hi)
      throw ConfigError("obstacle count range must satisfy 0 <= lo <= hi");
    if (min_room.lo <= 0 || min_room.lo > min_room.hi)
      throw ConfigError("minimum room range must satisfy 0 < lo <= hi");
    if (max_room.lo <= 0 || max_room.lo > max_room.hi)
      throw ConfigError("maximum room range must satisfy 0 < lo <= hi");
  }

  GridMap blank() const {
    return dims == 2 ? GridMap(extent[0], extent[1]) : GridMap(extent[0], extent[1], extent[2]);
  }
};

// Inclusive axis-aligned box of cells.
struct Box {
  std::array<int, 3> lo{};
  std::array<int, 3> hi{};

  int side(int axis) const { return hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)] + 1; }

  template <typename Fn>
  void for_each(int dims, Fn&& fn) const {
    for (int a = lo[0]; a <= hi[0]; ++a)
      for (int b = lo[1]; b <= hi[1]; ++b) {
        if (dims == 2) {
          fn(Cell(a, b));
        } else {
          for (int c = lo[2]; c <= hi[2]; ++c) fn(Cell(a, b, c));
        }
      }
  }
};

inline GridMap gen_uniform_random_fill(const GenConfig& config, Rng& rng) {
  config.validate();
  GridMap map = config.blank();
  const double f = uniform_real(rng, config.fill_rate.lo, config.fill_rate.hi);
  for (std::size_t i = 0; i < map.size(); ++i) map.set_obstacle(i, bernoulli(rng, f));
  return map;
}

namespace detail {

// Picks box sides whose volume is close to `area`; nullopt if it cannot fit.
inline std::optional<std::array<int, 3>> block_sides(long area, int dims, const std::array<int, 3>& e, Rng& rng) {
  std::array<int, 3> s{1, 1, 1};
  const long e0 = e[0], e1 = e[1], e2 = dims == 3 ? e[2] : 1;
  if (area > e0 * e1 * e2) return std::nullopt;
  const long lo0 = std::max<long>(1, (area + e1 * e2 - 1) / (e1 * e2));
  const long hi0 = std::min<long>(e0, area);
  s[0] = static_cast<int>(uniform_int(rng, lo0, hi0));
  const double rem = static_cast<double>(area) / s[0];
  if (dims == 2) {
    s[1] = static_cast<int>(std::clamp<long>(std::lround(rem), 1, e1));
  } else {
    const long lo1 = std::max<long>(1, static_cast<long>(std::ceil(rem / e2)));
    const long hi1 = std::clamp<long>(static_cast<long>(rem), 1, e1);
    s[1] = static_cast<int>(uniform_int(rng, std::min(lo1, hi1), hi1));
    s[2] = static_cast<int>(std::clamp<long>(std::lround(rem / s[1]), 1, e2));
  }
  return s;
}

}  // namespace detail

// Places k overlapping boxes. Block sizes are drawn to hit a fill rate drawn
// from the configured range; a layout whose fill misses the range is
// resampled, up to 100 attempts, after which the closest layout is kept.
inline GridMap gen_block_map(const GenConfig& config, Rng& rng) {
  config.validate();
  constexpr int kAttempts = 100;
  GridMap best = config.blank();
  const int k = static_cast<int>(uniform_int(rng, config.obstacle_count.lo, config.obstacle_count.hi));
  if (k == 0) return best;

  const double n = static_cast<double>(best.size());
  const long lo_cells = static_cast<long>(std::ceil(config.fill_rate.lo * n - 1e-9));
  const long hi_cells = static_cast<long>(std::floor(config.fill_rate.hi * n + 1e-9));
  const double f = uniform_real(rng, config.fill_rate.lo, config.fill_rate.hi);
  const long total = std::max<long>(k, std::lround(f * n));

  long best_err = -1;
  int infeasible = 0;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    GridMap map = config.blank();
    std::vector<double> weights(static_cast<std::size_t>(k));
    double wsum = 0.0;
    for (auto& w : weights) wsum += (w = uniform_real(rng, 0.5, 1.5));
    bool fits = true;
    for (const double w : weights) {
      const long area = std::max<long>(1, std::lround(static_cast<double>(total) * w / wsum));
      const auto sides = detail::block_sides(area, config.dims, config.extent, rng);
      if (!sides) {
        fits = false;
        break;
      }
      Box box;
      for (int a = 0; a < config.dims; ++a) {
        const auto ai = static_cast<std::size_t>(a);
        box.lo[ai] = static_cast<int>(uniform_int(rng, 0, config.extent[ai] - (*sides)[ai]));
        box.hi[ai] = box.lo[ai] + (*sides)[ai] - 1;
      }
      box.for_each(config.dims, [&](const Cell& c) { map.set_obstacle(c); });
    }
    if (!fits) {
      ++infeasible;
      continue;
    }
    const long cells = static_cast<long>(map.obstacle_count());
    const long err = cells < lo_cells ? lo_cells - cells : (cells > hi_cells ? cells - hi_cells : 0);
    if (best_err < 0 || err < best_err) {
      best_err = err;
      best = std::move(map);
    }
    if (err == 0) break;
  }
  if (infeasible == kAttempts) throw ConfigError("block map: blocks do not fit the map extent");
  return best;
}

struct HouseLayout {
  GridMap map;
  std::vector<Box> rooms;
  std::vector<Cell> doors;
  int min_room = 0;  // effective draws
  int max_room = 0;
};

namespace detail {

inline bool wall_abuts_door(const GridMap& map, const Box& region, int axis, int pos) {
  const int dims = map.dims();
  for (int b = 0; b < dims; ++b) {
    if (b == axis) continue;
    for (const int edge : {region.lo[static_cast<std::size_t>(b)] - 1, region.hi[static_cast<std::size_t>(b)] + 1}) {
      Box strip = region;
      strip.lo[static_cast<std::size_t>(axis)] = strip.hi[static_cast<std::size_t>(axis)] = pos;
      strip.lo[static_cast<std::size_t>(b)] = strip.hi[static_cast<std::size_t>(b)] = edge;
      bool open = false;
      strip.for_each(dims, [&](const Cell& c) { open = open || map.is_free(c); });
      if (open) return true;
    }
  }
  return false;
}

inline void partition(HouseLayout& h, const Box& region, Rng& rng) {
  const int dims = h.map.dims();
  int axis = 0;
  for (int a = 1; a < dims; ++a)
    if (region.side(a) > region.side(axis)) axis = a;
  if (region.side(axis) <= h.max_room) {
    h.rooms.push_back(region);
    return;
  }
  const auto ax = static_cast<std::size_t>(axis);
  std::vector<int> candidates;
  for (int p = region.lo[ax] + h.min_room; p <= region.hi[ax] - h.min_room; ++p)
    if (!wall_abuts_door(h.map, region, axis, p)) candidates.push_back(p);
  if (candidates.empty()) {
    h.rooms.push_back(region);
    return;
  }
  const int pos = candidates[uniform_index(rng, candidates.size())];
  Box wall = region;
  wall.lo[ax] = wall.hi[ax] = pos;
  wall.for_each(dims, [&](const Cell& c) { h.map.set_obstacle(c); });
  Cell door = dims == 2 ? Cell(0, 0) : Cell(0, 0, 0);
  for (int a = 0; a < dims; ++a) {
    const auto ai = static_cast<std::size_t>(a);
    door.coords[ai] = static_cast<int>(uniform_int(rng, wall.lo[ai], wall.hi[ai]));
  }
  h.map.set_obstacle(door, false);
  h.doors.push_back(door);

  Box first = region, second = region;
  first.hi[ax] = pos - 1;
  second.lo[ax] = pos + 1;
  partition(h, first, rng);
  partition(h, second, rng);
}

}  // namespace detail

// Walled outer boundary, interior split recursively by one-cell walls until
// no room side exceeds the maximum-room draw. Each wall gets a one-cell door.
inline HouseLayout gen_house_layout(const GenConfig& config, Rng& rng) {
  config.validate();
  HouseLayout h{config.blank(), {}, {}, 0, 0};
  Box interior;
  int smallest = 1 << 30;
  for (int a = 0; a < config.dims; ++a) {
    const auto ai = static_cast<std::size_t>(a);
    interior.lo[ai] = 1;
    interior.hi[ai] = config.extent[ai] - 2;
    smallest = std::min(smallest, interior.side(a));
  }
  if (smallest < std::max(1, config.min_room.lo))
    throw ConfigError("house map: extent " + std::to_string(smallest + 2) + " cannot host a room of side " +
                      std::to_string(config.min_room.lo));
  h.min_room = std::min(static_cast<int>(uniform_int(rng, config.min_room.lo, config.min_room.hi)), smallest);
  h.max_room = static_cast<int>(uniform_int(rng, config.max_room.lo, config.max_room.hi));

  h.map.fill(true);
  interior.for_each(config.dims, [&](const Cell& c) { h.map.set_obstacle(c, false); });
  detail::partition(h, interior, rng);
  return h;
}

inline GridMap gen_house_map(const GenConfig& config, Rng& rng) { return gen_house_layout(config, rng).map; }

// Map for config.seed; byte-identical for identical configs.
inline GridMap generate_map(const GenConfig& config) {
  Rng rng(config.seed);
  switch (config.type) {
    case MapType::UniformRandomFill: return gen_uniform_random_fill(config, rng);
    case MapType::Block: return gen_block_map(config, rng);
    case MapType::House: return gen_house_map(config, rng);
  }
  throw ConfigError("unknown map type");
}

// Two distinct uniformly drawn free cells. Solvability is not enforced.
inline GridMap place_agent_goal(GridMap map, Rng& rng) {
  const auto free = map.free_cells();
  if (free.size() < 2) throw MapError("place_agent_goal: map has fewer than 2 free cells");
  const std::size_t i = uniform_index(rng, free.size());
  std::size_t j = uniform_index(rng, free.size() - 1);
  if (j >= i) ++j;
  map.set_agent(map.cell_at(free[i]));
  map.set_goal(map.cell_at(free[j]));
  return map;
}

}  // namespace pathbench
