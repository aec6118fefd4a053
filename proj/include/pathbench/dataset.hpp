#pragma once

// Training-record labelling along A* paths, feature augmentation, the
// tab-separated dataset file and its summary statistics.

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "graph_planners.hpp"
#include "grid.hpp"
#include "map_gen.hpp"
#include "map_io.hpp"

namespace pathbench {

enum class Feature { DistanceToGoal, DirectionToGoal, GlobalMap, LocalView };

inline std::string_view to_string(Feature f) {
  switch (f) {
    case Feature::DistanceToGoal: return "distance_to_goal";
    case Feature::DirectionToGoal: return "direction_to_goal";
    case Feature::GlobalMap: return "global_map";
    case Feature::LocalView: return "local_view";
  }
  return "unknown";
}

inline Feature feature_from_string(std::string_view s) {
  for (auto f : {Feature::DistanceToGoal, Feature::DirectionToGoal, Feature::GlobalMap, Feature::LocalView})
    if (to_string(f) == s) return f;
  throw ConfigError("unknown feature '" + std::string(s) + "'");
}

inline const std::vector<Feature>& all_features() {
  static const std::vector<Feature> all{Feature::DistanceToGoal, Feature::DirectionToGoal, Feature::GlobalMap,
                                        Feature::LocalView};
  return all;
}

struct LocalView {
  int radius = 0;
  std::vector<std::uint8_t> cells;  // (2r+1)^dims, row-major, 1 = obstacle or outside
  friend bool operator==(const LocalView&, const LocalView&) = default;
};

struct TrainingRecord {
  std::string map_id;
  std::array<int, 3> extent{1, 1, 1};
  Cell agent_position;
  Cell goal;
  int label = -1;  // index into MoveModel::moves(dims)
  std::array<int, 3> move{};
  std::optional<double> distance_to_goal;
  std::optional<std::vector<double>> direction_to_goal;
  std::optional<std::vector<std::uint8_t>> global_map;
  std::optional<LocalView> local_view;

  friend bool operator==(const TrainingRecord&, const TrainingRecord&) = default;
};

inline LocalView local_view_at(const GridMap& map, const Cell& center, int radius) {
  LocalView v;
  v.radius = radius;
  const int side = 2 * radius + 1;
  const int third = map.dims() == 3 ? side : 1;
  for (int a = 0; a < side; ++a)
    for (int b = 0; b < side; ++b)
      for (int c = 0; c < third; ++c) {
        Cell q = center;
        q.coords[0] += a - radius;
        q.coords[1] += b - radius;
        if (map.dims() == 3) q.coords[2] += c - radius;
        v.cells.push_back(map.is_free(q) ? 0 : 1);
      }
  return v;
}

// Adds the requested features; features already present are left untouched.
inline std::vector<TrainingRecord> augment_dataset(std::vector<TrainingRecord> records,
                                                   const std::vector<std::string>& extra_features,
                                                   const GridMap& map, int local_view_radius = 2) {
  std::vector<Feature> wanted;
  for (const auto& name : extra_features) wanted.push_back(feature_from_string(name));
  for (auto& r : records) {
    for (const Feature f : wanted) {
      switch (f) {
        case Feature::DistanceToGoal:
          if (!r.distance_to_goal) r.distance_to_goal = euclidean_distance(r.agent_position, r.goal);
          break;
        case Feature::DirectionToGoal:
          if (!r.direction_to_goal) {
            const double n = euclidean_distance(r.agent_position, r.goal);
            std::vector<double> dir;
            for (int a = 0; a < map.dims(); ++a) dir.push_back(n > 0 ? (r.goal[a] - r.agent_position[a]) / n : 0.0);
            r.direction_to_goal = std::move(dir);
          }
          break;
        case Feature::GlobalMap:
          if (!r.global_map) r.global_map = std::vector<std::uint8_t>(map.occupancy().begin(), map.occupancy().end());
          break;
        case Feature::LocalView:
          if (!r.local_view) r.local_view = local_view_at(map, r.agent_position, local_view_radius);
          break;
      }
    }
  }
  return records;
}

// One record per transition of the A* path; empty when no path exists.
inline std::vector<TrainingRecord> label_dataset(const GridMap& map, int local_view_radius,
                                                 const MoveModel& model = MoveModel{},
                                                 const std::string& map_id = "map",
                                                 const std::vector<std::string>& features = {
                                                     "distance_to_goal", "direction_to_goal", "global_map",
                                                     "local_view"}) {
  const auto plan = astar(map, model);
  std::vector<TrainingRecord> out;
  if (!plan.success) return out;
  const auto& cells = plan.path->cells;
  for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
    TrainingRecord r;
    r.map_id = map_id;
    r.extent = map.extent();
    r.agent_position = cells[i];
    r.goal = *map.goal();
    r.move = MoveModel::delta_between(cells[i], cells[i + 1]);
    r.label = model.move_index(r.move, map.dims());
    out.push_back(std::move(r));
  }
  return augment_dataset(std::move(out), features, map, local_view_radius);
}

// Applies the labels from `start`; the result includes `start`.
inline std::vector<Cell> replay_labels(const std::vector<TrainingRecord>& records, const Cell& start,
                                       const MoveModel& model = MoveModel{}) {
  std::vector<Cell> cells{start};
  for (const auto& r : records) {
    const auto& m = model.moves(start.dims).at(static_cast<std::size_t>(r.label));
    cells.push_back(MoveModel::apply(cells.back(), m.delta));
  }
  return cells;
}

namespace detail {

inline std::string join_ints(const Cell& c) { return c.str(); }

inline std::string join_ints(const std::array<int, 3>& v, int dims) {
  std::string s;
  for (int i = 0; i < dims; ++i) s += (i ? "," : "") + std::to_string(v[static_cast<std::size_t>(i)]);
  return s;
}

inline std::string fmt_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string bits(const std::vector<std::uint8_t>& v) {
  std::string s(v.size(), '0');
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) s[i] = '1';
  return s;
}

}  // namespace detail

inline constexpr std::string_view kDatasetHeader =
    "map_id\tdims\textent\tagent_position\tgoal\tlabel\tmove\tdistance_to_goal\tdirection_to_goal\t"
    "local_view_radius\tlocal_view\tglobal_map";

// Header line naming the fields, then one tab-separated record per line.
// Absent features are written as '-'; cells and vectors are comma-separated
// and boolean fields are strings of 0/1 in row-major order.
inline std::string write_dataset(const std::vector<TrainingRecord>& records) {
  std::ostringstream os;
  os << kDatasetHeader << '\n';
  for (const auto& r : records) {
    const int d = r.agent_position.dims;
    os << r.map_id << '\t' << d << '\t' << detail::join_ints(r.extent, d) << '\t' << r.agent_position.str() << '\t'
       << r.goal.str() << '\t' << r.label << '\t' << detail::join_ints(r.move, d) << '\t';
    os << (r.distance_to_goal ? detail::fmt_real(*r.distance_to_goal) : "-") << '\t';
    if (r.direction_to_goal) {
      for (std::size_t i = 0; i < r.direction_to_goal->size(); ++i)
        os << (i ? "," : "") << detail::fmt_real((*r.direction_to_goal)[i]);
    } else {
      os << '-';
    }
    os << '\t';
    if (r.local_view) os << r.local_view->radius << '\t' << detail::bits(r.local_view->cells);
    else os << "-\t-";
    os << '\t' << (r.global_map ? detail::bits(*r.global_map) : "-") << '\n';
  }
  return os.str();
}

namespace detail {

inline std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t at = s.find(sep, pos);
    out.push_back(s.substr(pos, at == std::string_view::npos ? std::string_view::npos : at - pos));
    if (at == std::string_view::npos) break;
    pos = at + 1;
  }
  return out;
}

inline std::vector<int> int_list(std::string_view s, int line, int column, std::size_t expect) {
  std::vector<int> out;
  for (const auto part : split_on(s, ',')) {
    const auto v = parse_int(part);
    if (!v) throw ParseError(line, column, "expected integer list");
    out.push_back(*v);
  }
  if (out.size() != expect) throw ParseError(line, column, "expected " + std::to_string(expect) + " integers");
  return out;
}

inline std::vector<std::uint8_t> bit_list(std::string_view s, int line, int column) {
  std::vector<std::uint8_t> out;
  for (const char c : s) {
    if (c != '0' && c != '1') throw ParseError(line, column, "expected 0/1 string");
    out.push_back(c == '1');
  }
  return out;
}

inline Cell cell_of(const std::vector<int>& v) { return v.size() == 2 ? Cell(v[0], v[1]) : Cell(v[0], v[1], v[2]); }

}  // namespace detail

inline std::vector<TrainingRecord> read_dataset(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty() || lines[0] != kDatasetHeader) throw ParseError(1, 1, "missing dataset header");
  std::vector<TrainingRecord> out;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const int ln = static_cast<int>(li) + 1;
    const auto f = detail::split_on(lines[li], '\t');
    if (f.size() != 12) throw ParseError(ln, 0, "expected 12 tab-separated fields, found " + std::to_string(f.size()));
    auto column = [&](std::size_t i) { return static_cast<int>(f[i].data() - lines[li].data()) + 1; };
    TrainingRecord r;
    r.map_id = std::string(f[0]);
    const auto dims = detail::parse_int(f[1]);
    if (!dims || (*dims != 2 && *dims != 3)) throw ParseError(ln, column(1), "dims must be 2 or 3");
    const auto d = static_cast<std::size_t>(*dims);
    const auto ext = detail::int_list(f[2], ln, column(2), d);
    for (std::size_t i = 0; i < d; ++i) r.extent[i] = ext[i];
    r.agent_position = detail::cell_of(detail::int_list(f[3], ln, column(3), d));
    r.goal = detail::cell_of(detail::int_list(f[4], ln, column(4), d));
    const auto label = detail::parse_int(f[5]);
    if (!label) throw ParseError(ln, column(5), "expected integer label");
    r.label = *label;
    const auto mv = detail::int_list(f[6], ln, column(6), d);
    for (std::size_t i = 0; i < d; ++i) r.move[i] = mv[i];
    if (f[7] != "-") r.distance_to_goal = detail::real_of(f[7], ln, column(7));
    if (f[8] != "-") {
      std::vector<double> dir;
      for (const auto part : detail::split_on(f[8], ',')) dir.push_back(detail::real_of(part, ln, column(8)));
      r.direction_to_goal = std::move(dir);
    }
    if (f[9] != "-") {
      const auto rad = detail::parse_int(f[9]);
      if (!rad || *rad < 0) throw ParseError(ln, column(9), "expected local view radius");
      r.local_view = LocalView{*rad, detail::bit_list(f[10], ln, column(10))};
    }
    if (f[11] != "-") r.global_map = detail::bit_list(f[11], ln, column(11));
    out.push_back(std::move(r));
  }
  return out;
}

struct DatasetSummary {
  std::string map_id;
  std::optional<double> obstacle_ratio;  // needs the global_map feature
  double path_length = 0.0;              // ground-truth cost
  double euclidean_distance = 0.0;       // start to goal
  std::size_t steps = 0;                 // records
};

inline std::vector<DatasetSummary> summarize_dataset(const std::vector<TrainingRecord>& records) {
  std::vector<DatasetSummary> out;
  std::map<std::string, std::size_t> slot;
  for (const auto& r : records) {
    auto [it, fresh] = slot.emplace(r.map_id, out.size());
    if (fresh) {
      DatasetSummary s;
      s.map_id = r.map_id;
      s.euclidean_distance = euclidean_distance(r.agent_position, r.goal);
      if (r.global_map && !r.global_map->empty()) {
        std::size_t blocked = 0;
        for (const auto b : *r.global_map) blocked += b;
        s.obstacle_ratio = static_cast<double>(blocked) / static_cast<double>(r.global_map->size());
      }
      out.push_back(s);
    }
    auto& s = out[it->second];
    int axes = 0;
    for (int a = 0; a < r.agent_position.dims; ++a) axes += r.move[static_cast<std::size_t>(a)] != 0;
    s.path_length += step_cost_for_axes(axes);
    ++s.steps;
  }
  return out;
}

inline std::vector<DatasetSummary> dataset_analysis(const std::filesystem::path& records_path) {
  return summarize_dataset(read_dataset(read_text_file(records_path)));
}

}  // namespace pathbench
