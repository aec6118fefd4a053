#pragma once

// Benchmark harness: Simple and Complex analysis over generated or loaded
// maps, per-run result files (`pbr1` json-lines), aggregation and merging.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <json.hpp>

#include "distance_field.hpp"
#include "map_gen.hpp"
#include "map_io.hpp"
#include "metrics.hpp"
#include "registry.hpp"
#include "rng.hpp"

namespace pathbench {

inline constexpr std::string_view kResultSchema = "pbr1";

struct VersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeneratedSource {
  GenConfig config;  // config.seed is ignored; each map derives its own
  int count = 1;
};

struct FileSource {
  std::vector<std::filesystem::path> paths;
};

using MapSource = std::variant<GeneratedSource, FileSource>;

struct BenchmarkSpec {
  std::vector<PlannerConfig> planners;
  std::vector<MapSource> sources;
  int runs_per_map = 50;
  std::uint64_t master_seed = 0;
  int parallelism = 1;
  std::string hardware_tag = "default";
  int timing_repeats = 1;
  MoveModel model;

  void validate() const {
    if (planners.empty()) throw ConfigError("benchmark needs at least one planner");
    if (sources.empty()) throw ConfigError("benchmark needs at least one map source");
    for (const auto& s : sources)
      if (const auto* g = std::get_if<GeneratedSource>(&s)) {
        if (g->count < 1) throw ConfigError("map count must be at least 1");
        g->config.validate();
      }
    if (runs_per_map < 1) throw ConfigError("runs per map must be at least 1");
    if (parallelism < 1) throw ConfigError("parallelism must be at least 1");
    if (timing_repeats < 1) throw ConfigError("timing repeats must be at least 1");
    for (const auto& p : planners) {
      if (!is_planner(p.name)) throw UnknownPlanner("unknown planner '" + p.name + "' (available: " + planner_list() + ")");
      p.sampler.validate();
    }
  }
};

struct RunRecord {
  std::string planner;
  std::string map_id;
  std::string map_type;
  std::string hardware_tag;
  std::uint64_t seed = 0;
  int map_index = 0;
  int run_index = 0;
  MetricReport report;
  FailureReason failure = FailureReason::None;
  std::string failure_detail;
};

struct BenchmarkResult {
  std::vector<RunRecord> runs;
  std::vector<std::string> warnings;
};

struct MapInstance {
  std::string id;
  std::string type;
  GridMap map;
};

namespace detail {

inline std::vector<MapInstance> collect_maps(const BenchmarkSpec& spec, std::vector<std::string>& warnings) {
  std::vector<MapInstance> maps;
  for (std::size_t si = 0; si < spec.sources.size(); ++si) {
    if (const auto* g = std::get_if<GeneratedSource>(&spec.sources[si])) {
      for (int i = 0; i < g->count; ++i) {
        GenConfig c = g->config;
        c.seed = derive_seed(spec.master_seed, {si, static_cast<std::uint64_t>(i), hash_name("map")});
        std::string type(to_string(c.type));
        maps.push_back({type + "-" + std::to_string(si) + "-" + std::to_string(i), type, generate_map(c)});
      }
    } else {
      for (const auto& path : std::get<FileSource>(spec.sources[si]).paths) {
        try {
          maps.push_back({path.stem().string(), "external", load_map_file(path)});
        } catch (const std::exception& e) {
          warnings.push_back("skipped " + path.string() + ": " + e.what());
        }
      }
    }
  }
  return maps;
}

inline PlanOutcome timed_run(const PlannerConfig& config, const GridMap& map, const MoveModel& model,
                             std::uint64_t seed, int repeats) {
  PlanOutcome out = run_planner(config, map, model, seed);
  for (int k = 1; k < repeats; ++k)
    out.elapsed_seconds = std::min(out.elapsed_seconds, run_planner(config, map, model, seed).elapsed_seconds);
  return out;
}

inline RunRecord crashed_record(const GridMap& map, const std::string& what) {
  RunRecord r;
  r.report.success = false;
  r.report.distance_left_cells = euclidean_distance(*map.agent(), *map.goal());
  r.failure = FailureReason::Crashed;
  r.failure_detail = what;
  return r;
}

}  // namespace detail

// Runs every planner `runs_per_map` times on every map, each time with a
// fresh seeded agent/goal pair. Results are ordered by map, run, then the
// spec's planner order, whatever the worker count.
inline BenchmarkResult run_benchmark(const BenchmarkSpec& spec) {
  spec.validate();
  BenchmarkResult result;
  const auto maps = detail::collect_maps(spec, result.warnings);

  struct Job {
    int map_index;
    int run_index;
  };
  std::vector<Job> jobs;
  for (std::size_t m = 0; m < maps.size(); ++m)
    for (int r = 0; r < spec.runs_per_map; ++r) jobs.push_back({static_cast<int>(m), r});

  const std::size_t np = spec.planners.size();
  std::vector<std::optional<RunRecord>> slots(jobs.size() * np);
  std::vector<std::string> job_warnings(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_lock;
  std::exception_ptr error;

  auto work = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      {
        std::lock_guard lock(error_lock);
        if (error) return;
      }
      try {
        const auto& inst = maps[static_cast<std::size_t>(jobs[j].map_index)];
        const auto mi = static_cast<std::uint64_t>(jobs[j].map_index);
        const auto ri = static_cast<std::uint64_t>(jobs[j].run_index);
        Rng endpoint_rng(derive_seed(spec.master_seed, {mi, ri, hash_name("endpoints")}));
        GridMap map;
        try {
          map = place_agent_goal(inst.map, endpoint_rng);
        } catch (const MapError& e) {
          job_warnings[j] = "skipped " + inst.id + ": " + e.what();
          continue;
        }
        const PlanOutcome baseline = astar(map, spec.model);
        const DistanceField field = distance_transform(map);
        for (std::size_t p = 0; p < np; ++p) {
          const auto& config = spec.planners[p];
          const std::uint64_t seed = derive_seed(spec.master_seed, {mi, ri, hash_name(config.name)});
          RunRecord rec;
          try {
            const PlanOutcome out = detail::timed_run(config, map, spec.model, seed, spec.timing_repeats);
            rec.report = compute_report(out, baseline, map, field);
            rec.failure = out.failure;
            rec.failure_detail = out.failure_detail;
          } catch (const InconsistencyError&) {
            throw;
          } catch (const std::exception& e) {
            rec = detail::crashed_record(map, e.what());
          }
          rec.planner = config.name;
          rec.map_id = inst.id;
          rec.map_type = inst.type;
          rec.hardware_tag = spec.hardware_tag;
          rec.seed = seed;
          rec.map_index = jobs[j].map_index;
          rec.run_index = jobs[j].run_index;
          slots[j * np + p] = std::move(rec);
        }
      } catch (...) {
        std::lock_guard lock(error_lock);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  const int workers = std::min<int>(spec.parallelism, static_cast<int>(std::max<std::size_t>(1, jobs.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  for (auto& w : job_warnings)
    if (!w.empty() && std::find(result.warnings.begin(), result.warnings.end(), w) == result.warnings.end())
      result.warnings.push_back(std::move(w));
  for (auto& s : slots)
    if (s) result.runs.push_back(std::move(*s));
  return result;
}

// One run per map.
inline BenchmarkResult simple_analysis(BenchmarkSpec spec) {
  spec.runs_per_map = 1;
  return run_benchmark(spec);
}

// runs_per_map random agent/goal pairs per map.
inline BenchmarkResult complex_analysis(const BenchmarkSpec& spec) { return run_benchmark(spec); }

// ---- result files ----------------------------------------------------------

namespace detail {

inline nlohmann::json opt_json(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

inline nlohmann::json num_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline std::optional<double> json_opt(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw std::runtime_error(std::string("field '") + key + "' is not a number");
  return it->get<double>();
}

}  // namespace detail

inline nlohmann::json to_json(const RunRecord& r) {
  const auto& m = r.report;
  nlohmann::json j;
  j["planner"] = r.planner;
  j["map_id"] = r.map_id;
  j["map_type"] = r.map_type;
  j["hardware_tag"] = r.hardware_tag;
  j["seed"] = r.seed;
  j["map_index"] = r.map_index;
  j["run_index"] = r.run_index;
  j["success"] = m.success;
  j["path_length_cells"] = detail::opt_json(m.path_length_cells);
  j["path_cells"] = detail::opt_json(m.path_cells);
  j["distance_left_cells"] = detail::num_json(m.distance_left_cells);
  j["time_seconds"] = detail::num_json(m.time_seconds);
  j["path_deviation_pct"] = detail::opt_json(m.path_deviation_pct);
  j["search_space_pct"] = detail::num_json(m.search_space_pct);
  j["peak_memory_mb"] = detail::num_json(m.peak_memory_mb);
  j["obstacle_clearance_cells"] = detail::opt_json(m.obstacle_clearance_cells);
  j["smoothness_deg"] = detail::opt_json(m.smoothness_deg);
  j["failure_reason"] = std::string(to_string(r.failure));
  if (!r.failure_detail.empty()) j["failure_detail"] = r.failure_detail;
  return j;
}

inline RunRecord run_record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.planner = j.at("planner").get<std::string>();
  r.map_id = j.at("map_id").get<std::string>();
  r.map_type = j.at("map_type").get<std::string>();
  r.hardware_tag = j.at("hardware_tag").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.map_index = j.at("map_index").get<int>();
  r.run_index = j.at("run_index").get<int>();
  auto& m = r.report;
  m.success = j.at("success").get<bool>();
  m.path_length_cells = detail::json_opt(j, "path_length_cells");
  m.path_cells = detail::json_opt(j, "path_cells");
  m.distance_left_cells = detail::json_opt(j, "distance_left_cells").value_or(0.0);
  m.time_seconds = detail::json_opt(j, "time_seconds").value_or(0.0);
  m.path_deviation_pct = detail::json_opt(j, "path_deviation_pct");
  m.search_space_pct = detail::json_opt(j, "search_space_pct").value_or(0.0);
  m.peak_memory_mb = detail::json_opt(j, "peak_memory_mb").value_or(0.0);
  m.obstacle_clearance_cells = detail::json_opt(j, "obstacle_clearance_cells");
  m.smoothness_deg = detail::json_opt(j, "smoothness_deg");
  const auto reason = failure_reason_from_string(j.at("failure_reason").get<std::string>());
  if (!reason) throw std::runtime_error("unknown failure_reason");
  r.failure = *reason;
  if (j.contains("failure_detail")) r.failure_detail = j["failure_detail"].get<std::string>();
  return r;
}

// Header line `{"schema":"pbr1",...}` then one object per run.
inline std::string write_results(const BenchmarkResult& result) {
  std::string out;
  nlohmann::json header;
  header["schema"] = kResultSchema;
  header["warnings"] = result.warnings;
  out += header.dump() + '\n';
  for (const auto& r : result.runs) out += to_json(r).dump() + '\n';
  return out;
}

inline BenchmarkResult read_results(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty()) throw ParseError(1, 0, "empty result file");
  BenchmarkResult result;
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(lines[0]);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, 0, std::string("bad header: ") + e.what());
  }
  if (!header.is_object() || !header.contains("schema") || !header["schema"].is_string())
    throw ParseError(1, 0, "missing schema header");
  const auto schema = header["schema"].get<std::string>();
  if (schema != kResultSchema)
    throw VersionError("result schema '" + schema + "' is not " + std::string(kResultSchema));
  if (header.contains("warnings")) result.warnings = header["warnings"].get<std::vector<std::string>>();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    try {
      result.runs.push_back(run_record_from_json(nlohmann::json::parse(lines[i])));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(static_cast<int>(i) + 1, 0, e.what());
    } catch (const std::runtime_error& e) {
      throw ParseError(static_cast<int>(i) + 1, 0, e.what());
    }
  }
  return result;
}

// ---- aggregation -----------------------------------------------------------

struct MetricDef {
  std::string_view name;
  std::string_view label;
  std::optional<double> (*value)(const RunRecord&);
};

// Column order of every report. Deviation, length, clearance and smoothness
// are taken over successes, distance left over failures, the rest over all
// runs.
inline const std::vector<MetricDef>& metric_defs() {
  static const std::vector<MetricDef> defs{
      {"path_dev_pct", "path dev. (%)",
       [](const RunRecord& r) { return r.report.success ? r.report.path_deviation_pct : std::nullopt; }},
      {"distance_left", "distance left",
       [](const RunRecord& r) {
         return r.report.success ? std::nullopt : std::optional<double>(r.report.distance_left_cells);
       }},
      {"time_sec", "time (s)", [](const RunRecord& r) { return std::optional<double>(r.report.time_seconds); }},
      {"path_length", "path length",
       [](const RunRecord& r) { return r.report.success ? r.report.path_length_cells : std::nullopt; }},
      {"path_cells", "path cells",
       [](const RunRecord& r) { return r.report.success ? r.report.path_cells : std::nullopt; }},
      {"search_space_pct", "search space (%)",
       [](const RunRecord& r) { return std::optional<double>(r.report.search_space_pct); }},
      {"memory_mb", "memory (MB)", [](const RunRecord& r) { return std::optional<double>(r.report.peak_memory_mb); }},
      {"clearance", "clearance",
       [](const RunRecord& r) { return r.report.success ? r.report.obstacle_clearance_cells : std::nullopt; }},
      {"smoothness_deg", "smoothness (deg)",
       [](const RunRecord& r) { return r.report.success ? r.report.smoothness_deg : std::nullopt; }},
  };
  return defs;
}

struct MetricSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 when n < 2
  double min = 0.0;
  double max = 0.0;
};

inline MetricSummary summarize(const std::vector<double>& v) {
  MetricSummary s;
  s.n = v.size();
  if (v.empty()) return s;
  double sum = 0.0;
  for (const double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (const double x : v) ss += (x - s.mean) * (x - s.mean);
  s.stddev = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

struct AggregateCell {
  std::string hardware_tag;
  std::string planner;
  std::string map_type;  // "all" for the overall row
  std::size_t runs = 0;
  std::size_t successes = 0;
  std::vector<MetricSummary> metrics;         // parallel to metric_defs()
  std::vector<std::vector<double>> samples;   // parallel to metric_defs()
  std::map<std::string, std::size_t> failures;

  double success_rate_pct() const { return runs ? 100.0 * static_cast<double>(successes) / static_cast<double>(runs) : 0.0; }
  std::optional<double> mean(std::size_t metric) const {
    if (metrics[metric].n == 0) return std::nullopt;
    return metrics[metric].mean;
  }
};

struct AggregateStats {
  std::vector<AggregateCell> cells;
  std::vector<std::string> warnings;
};

inline std::size_t metric_index(std::string_view name) {
  const auto& d = metric_defs();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i].name == name) return i;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

namespace detail {

inline std::size_t planner_rank(const std::string& name) {
  const auto& n = planner_names();
  return static_cast<std::size_t>(std::find(n.begin(), n.end(), name) - n.begin());
}

inline int map_type_rank(const std::string& t) {
  if (t == "uniform") return 0;
  if (t == "block") return 1;
  if (t == "house") return 2;
  if (t == "all") return 4;
  return 3;
}

inline auto cell_key(const std::string& tag, const std::string& planner, const std::string& type) {
  return std::make_tuple(tag, planner_rank(planner), planner, map_type_rank(type), type);
}

}  // namespace detail

// Canonical run order, independent of how results were produced or merged.
inline void sort_runs(std::vector<RunRecord>& runs) {
  std::stable_sort(runs.begin(), runs.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::make_tuple(detail::cell_key(a.hardware_tag, a.planner, a.map_type), a.map_index, a.run_index,
                           a.map_id, a.seed) < std::make_tuple(detail::cell_key(b.hardware_tag, b.planner, b.map_type),
                                                               b.map_index, b.run_index, b.map_id, b.seed);
  });
}

// Cells per (hardware tag, planner, map type) plus a map type "all" row per
// (hardware tag, planner). Tags are never pooled.
inline AggregateStats aggregate(const BenchmarkResult& result) {
  std::vector<RunRecord> runs = result.runs;
  sort_runs(runs);
  std::map<decltype(detail::cell_key("", "", "")), AggregateCell> cells;
  const auto& defs = metric_defs();
  auto add = [&](const RunRecord& r, const std::string& type) {
    auto& c = cells[detail::cell_key(r.hardware_tag, r.planner, type)];
    if (c.runs == 0) {
      c.hardware_tag = r.hardware_tag;
      c.planner = r.planner;
      c.map_type = type;
      c.samples.resize(defs.size());
    }
    ++c.runs;
    if (r.report.success) ++c.successes;
    else ++c.failures[std::string(to_string(r.failure))];
    for (std::size_t i = 0; i < defs.size(); ++i)
      if (const auto v = defs[i].value(r); v && std::isfinite(*v)) c.samples[i].push_back(*v);
  };
  for (const auto& r : runs) {
    add(r, r.map_type);
    add(r, "all");
  }
  AggregateStats stats;
  stats.warnings = result.warnings;
  for (auto& [key, c] : cells) {
    for (const auto& s : c.samples) c.metrics.push_back(summarize(s));
    stats.cells.push_back(std::move(c));
  }
  return stats;
}

// Union of result files; canonical order makes the merge independent of
// argument order.
inline BenchmarkResult merge_result_files(const std::vector<std::filesystem::path>& files) {
  BenchmarkResult merged;
  for (const auto& f : files) {
    auto part = read_results(read_text_file(f));
    for (auto& w : part.warnings) merged.warnings.push_back(std::move(w));
    for (auto& r : part.runs) merged.runs.push_back(std::move(r));
  }
  sort_runs(merged.runs);
  std::sort(merged.warnings.begin(), merged.warnings.end());
  merged.warnings.erase(std::unique(merged.warnings.begin(), merged.warnings.end()), merged.warnings.end());
  return merged;
}

inline AggregateStats merge_results(const std::vector<std::filesystem::path>& files) {
  return aggregate(merge_result_files(files));
}

}  // namespace pathbench
