#pragma once

// The `pathbench` command line. Exit codes: 0 success, 1 usage error,
// 2 data or parse error, 3 internal inconsistency.

#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathbench/pathbench.hpp"

namespace pathbench::cli {

namespace fs = std::filesystem;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kInconsistent = 3 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string version_line() {
  return "pathbench " + std::string(kVersion) + " map-format=pbgrid-v1 results=" + std::string(kResultSchema);
}

// Options shared by subcommands that run planners.
struct PlannerFlags {
  std::string model = "full";
  int rrt_step = 0;
  long rrt_samples = 0;
  double rrt_goal_bias = 0.05;
  double rrt_rewire_radius = 8.0;
  long prm_nodes = 0;
  double prm_radius = 8.0;
  std::string bug_wall = "left";
  long bug_step_limit = 0;
  double pf_k_att = 0.0;
  double pf_k_rep = 100.0;
  double pf_radius = 5.0;
  long pf_step_limit = 0;

  void add_to(CLI::App& app) {
    app.add_option("--model", model, "Move model")->check(CLI::IsMember({"full", "orthogonal"}))->capture_default_str();
    app.add_option("--rrt.step", rrt_step, "Tree extension length in cells (0: 1, or 4 for d-rt)")->check(CLI::NonNegativeNumber);
    app.add_option("--rrt.samples", rrt_samples, "Sample budget (0: 10 x free cells)")->check(CLI::NonNegativeNumber);
    app.add_option("--rrt.goal-bias", rrt_goal_bias, "Goal sampling probability")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    app.add_option("--rrt.rewire-radius", rrt_rewire_radius, "d-RRT* rewiring radius")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--prm.nodes", prm_nodes, "Roadmap nodes (0: free cells / 8)")->check(CLI::NonNegativeNumber);
    app.add_option("--prm.radius", prm_radius, "Roadmap connection radius")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--bug.wall", bug_wall, "Wall-following side")->check(CLI::IsMember({"left", "right"}))->capture_default_str();
    app.add_option("--bug.step-limit", bug_step_limit, "Bug step limit (0: 10 x free cells)")->check(CLI::NonNegativeNumber);
    app.add_option("--pf.k-att", pf_k_att, "Attractive gain (0: 1 / largest extent squared)")->check(CLI::NonNegativeNumber);
    app.add_option("--pf.k-rep", pf_k_rep, "Repulsive gain")->check(CLI::NonNegativeNumber)->capture_default_str();
    app.add_option("--pf.radius", pf_radius, "Repulsion influence radius")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--pf.step-limit", pf_step_limit, "Descent step limit (0: 10 x free cells)")->check(CLI::NonNegativeNumber);
  }

  MoveModel move_model() const { return MoveModel(model == "orthogonal" ? Connectivity::Orthogonal : Connectivity::Full); }

  PlannerConfig config(const std::string& name) const {
    if (!is_planner(name)) throw UsageError("unknown planner '" + name + "' (available: " + planner_list() + ")");
    PlannerConfig c = planner_config(name);
    c.sampler.step_cells = rrt_step;
    c.sampler.max_samples = rrt_samples;
    c.sampler.goal_bias = rrt_goal_bias;
    c.sampler.rewire_radius = rrt_rewire_radius;
    c.sampler.prm_nodes = prm_nodes;
    c.sampler.prm_radius = prm_radius;
    c.bug.wall = bug_wall == "right" ? WallSide::Right : WallSide::Left;
    c.bug.step_limit = bug_step_limit;
    c.potential.k_att = pf_k_att;
    c.potential.k_rep = pf_k_rep;
    c.potential.influence_radius = pf_radius;
    c.potential.step_limit = pf_step_limit;
    return c;
  }
};

struct GenFlags {
  std::string type = "uniform";
  int dims = 2;
  std::vector<int> extent;
  std::pair<double, double> fill{0.1, 0.3};
  std::pair<int, int> obstacles{1, 6};
  std::pair<int, int> min_room{8, 15};
  std::pair<int, int> max_room{35, 45};

  void add_to(CLI::App& app, bool with_type) {
    if (with_type)
      app.add_option("--type", type, "Map family")->check(CLI::IsMember({"uniform", "block", "house"}))->capture_default_str();
    app.add_option("--dims", dims, "2 or 3")->check(CLI::IsMember({2, 3}))->capture_default_str();
    app.add_option("--extent", extent, "Cells per axis (default 64 64, or 28 28 28 in 3D)")->expected(2, 3);
    app.add_option("--fill", fill, "Uniform fill rate range lo hi")->capture_default_str();
    app.add_option("--obstacles", obstacles, "Block count range lo hi")->capture_default_str();
    app.add_option("--min-room", min_room, "House minimum room size range lo hi")->capture_default_str();
    app.add_option("--max-room", max_room, "House maximum room size range lo hi")->capture_default_str();
  }

  GenConfig config(MapType t) const {
    auto range = [](const char* flag, auto r) {
      if (r.first > r.second) throw UsageError(std::string(flag) + ": lower bound exceeds upper bound");
    };
    range("--fill", fill);
    range("--obstacles", obstacles);
    range("--min-room", min_room);
    range("--max-room", max_room);
    if (fill.first < 0.0 || fill.second > 1.0) throw UsageError("--fill: rates must lie in [0, 1]");
    if (obstacles.first < 0) throw UsageError("--obstacles: counts must be non-negative");
    if (min_room.first <= 0 || max_room.first <= 0) throw UsageError("--min-room/--max-room: sizes must be positive");
    GenConfig c;
    c.type = t;
    c.dims = dims;
    if (extent.empty()) c.extent = dims == 3 ? std::array<int, 3>{28, 28, 28} : std::array<int, 3>{64, 64, 1};
    else if (static_cast<int>(extent.size()) != dims)
      throw UsageError("--extent: expected " + std::to_string(dims) + " values for --dims " + std::to_string(dims));
    else c.extent = {extent[0], extent[1], dims == 3 ? extent[2] : 1};
    for (int i = 0; i < dims; ++i)
      if (c.extent[static_cast<std::size_t>(i)] <= 0) throw UsageError("--extent: sizes must be positive");
    c.fill_rate = {fill.first, fill.second};
    c.obstacle_count = {obstacles.first, obstacles.second};
    c.min_room = {min_room.first, min_room.second};
    c.max_room = {max_room.first, max_room.second};
    return c;
  }
};

inline nlohmann::ordered_json config_json(const GenConfig& c) {
  nlohmann::ordered_json j;
  j["type"] = std::string(to_string(c.type));
  j["dims"] = c.dims;
  j["extent"] = std::vector<int>(c.extent.begin(), c.extent.begin() + c.dims);
  j["fill_rate"] = {c.fill_rate.lo, c.fill_rate.hi};
  j["obstacle_count"] = {c.obstacle_count.lo, c.obstacle_count.hi};
  j["min_room"] = {c.min_room.lo, c.min_room.hi};
  j["max_room"] = {c.max_room.lo, c.max_room.hi};
  return j;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

inline Cell parse_cell(const std::string& flag, const std::string& text, int dims) {
  std::vector<int> v;
  for (const auto& part : split_list(text)) {
    const auto n = detail::parse_int(part);
    if (!n) throw UsageError(flag + ": '" + text + "' is not a comma-separated cell");
    v.push_back(*n);
  }
  if (static_cast<int>(v.size()) != dims)
    throw UsageError(flag + ": expected " + std::to_string(dims) + " coordinates, got '" + text + "'");
  return dims == 2 ? Cell(v[0], v[1]) : Cell(v[0], v[1], v[2]);
}

inline std::uint64_t effective_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

inline std::string metric_name(const std::string& s) {
  static const std::map<std::string, std::string> alias{
      {"time", "time_sec"}, {"deviation", "path_dev_pct"}, {"dev", "path_dev_pct"}, {"length", "path_length"},
      {"memory", "memory_mb"}, {"search", "search_space_pct"}, {"smoothness", "smoothness_deg"},
      {"distance-left", "distance_left"}};
  const auto it = alias.find(s);
  const std::string name = it == alias.end() ? s : it->second;
  try {
    metric_index(name);
  } catch (const std::invalid_argument&) {
    std::string all;
    for (const auto& d : metric_defs()) all += (all.empty() ? "" : ", ") + std::string(d.name);
    throw UsageError("unknown metric '" + s + "' (available: " + all + ")");
  }
  return name;
}

inline void write_file(const fs::path& p, std::string_view text) {
  try {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    write_text_file(p, text);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
}

inline std::vector<fs::path> expand_map_paths(const std::vector<std::string>& args) {
  std::vector<fs::path> out;
  for (const auto& a : args) {
    if (fs::is_directory(a)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(a)) {
        const auto ext = e.path().extension();
        if (e.is_regular_file() && (ext == ".map" || ext == ".pbgrid")) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (fs::exists(a)) {
      out.emplace_back(a);
    } else {
      throw DataError("no such map file or directory: " + a);
    }
  }
  return out;
}

inline std::string fmt_opt(const std::optional<double>& v, const char* fmt = "%.6g") {
  if (!v) return "undefined";
  char buf[40];
  std::snprintf(buf, sizeof buf, fmt, *v);
  return buf;
}

inline void print_report(std::ostream& out, const MetricReport& r, const PlanOutcome& o) {
  out << "success: " << (r.success ? "true" : "false") << '\n';
  out << "failure_reason: " << to_string(o.failure) << '\n';
  if (!o.failure_detail.empty()) out << "failure_detail: " << o.failure_detail << '\n';
  out << "path_length: " << fmt_opt(r.path_length_cells) << '\n';
  out << "path_cells: " << fmt_opt(r.path_cells) << '\n';
  out << "distance_left: " << fmt_opt(r.distance_left_cells) << '\n';
  out << "time_sec: " << fmt_opt(r.time_seconds) << '\n';
  out << "path_dev_pct: " << fmt_opt(r.path_deviation_pct, "%.2f") << '\n';
  out << "search_space_pct: " << fmt_opt(r.search_space_pct, "%.2f") << '\n';
  out << "memory_mb: " << fmt_opt(r.peak_memory_mb) << '\n';
  out << "clearance: " << fmt_opt(r.obstacle_clearance_cells) << '\n';
  out << "smoothness_deg: " << fmt_opt(r.smoothness_deg) << '\n';
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grid path-planning benchmark", "pathbench"};
  app.set_version_flag("--version", version_line());
  app.set_config("--config", "", "Read options from an INI/TOML file (flags override it)");
  app.require_subcommand(1);
  app.get_formatter()->column_width(34);

  std::optional<std::uint64_t> seed;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Master seed (random when omitted; always printed)")->envname("PATHBENCH_SEED");
  };

  // generate
  auto* gen = app.add_subcommand("generate", "Generate synthetic maps and a manifest");
  GenFlags gen_flags;
  gen_flags.add_to(*gen, true);
  int gen_count = 1;
  std::string gen_out = ".";
  bool gen_no_endpoints = false;
  gen->add_option("--count", gen_count, "Number of maps")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->capture_default_str();
  gen->add_flag("--no-endpoints", gen_no_endpoints, "Do not place agent and goal");
  add_seed(gen);

  // run
  auto* run = app.add_subcommand("run", "Run one planner on one map and print its metrics");
  PlannerFlags run_flags;
  run_flags.add_to(*run);
  std::string run_map, run_planner_name, run_start, run_goal, run_trace, run_tree;
  run->add_option("--map", run_map, "Map file (pbgrid or MovingAI)")->required();
  run->add_option("--planner", run_planner_name, "Planner: " + planner_list())->required();
  run->add_option("--start", run_start, "Agent cell, e.g. 3,4");
  run->add_option("--goal", run_goal, "Goal cell, e.g. 10,12");
  run->add_option("--trace", run_trace, "Write the expansion log here");
  run->add_option("--tree", run_tree, "Write the sampling tree or roadmap here");
  add_seed(run);

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "Simple or Complex analysis over many maps");
  PlannerFlags bench_flags;
  bench_flags.add_to(*bench);
  GenFlags bench_gen;
  bench_gen.add_to(*bench, false);
  bool simple = false, complex_mode = false;
  int bench_n = 10, bench_x = 50, jobs = 1, repeats = 1;
  std::string types = "uniform,block,house", planners, hardware_tag = "default", bench_out = "bench_out";
  std::string plots, plot_metric = "path_dev_pct", scatter_x = "time_sec", scatter_y = "clearance";
  std::vector<std::string> bench_maps;
  auto* simple_flag = bench->add_flag("--simple", simple, "One random agent/goal pair per map (default)");
  bench->add_flag("--complex", complex_mode, "--x random agent/goal pairs per map")->excludes(simple_flag);
  bench->add_option("--n", bench_n, "Generated maps per type")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--x", bench_x, "Runs per map in complex mode")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--types", types, "Generated map types")->capture_default_str();
  bench->add_option("--maps", bench_maps, "Map files or directories instead of generated maps");
  bench->add_option("--planners", planners, "Comma-separated planners (default: the six classical ones)");
  bench->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--repeat", repeats, "Timing repeats per run, minimum is kept")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--hardware-tag", hardware_tag, "Label stamped on every result")->envname("PATHBENCH_HARDWARE_TAG")->capture_default_str();
  bench->add_option("--out", bench_out, "Output directory")->capture_default_str();
  bench->add_option("--plots", plots, "Comma-separated plot kinds: bar, violin, scatter");
  bench->add_option("--plot-metric", plot_metric, "Metric for bar and violin plots")->capture_default_str();
  bench->add_option("--scatter-x", scatter_x, "Scatter x metric")->capture_default_str();
  bench->add_option("--scatter-y", scatter_y, "Scatter y metric")->capture_default_str();
  add_seed(bench);

  // convert
  auto* conv = app.add_subcommand("convert", "Convert MovingAI maps to pbgrid");
  std::vector<std::string> conv_inputs;
  std::string conv_out = ".";
  conv->add_option("inputs", conv_inputs, "MovingAI .map files")->required();
  conv->add_option("--out", conv_out, "Output directory")->capture_default_str();

  // plot
  auto* plot = app.add_subcommand("plot", "Plot one or more result files");
  std::vector<std::string> plot_inputs;
  std::string plot_kinds = "bar", plot_out = ".", plot_m = "path_dev_pct", plot_x = "time_sec", plot_y = "clearance";
  plot->add_option("results", plot_inputs, "pbr1 result files")->required();
  plot->add_option("--kind", plot_kinds, "Comma-separated: bar, violin, scatter")->capture_default_str();
  plot->add_option("--metric", plot_m, "Metric for bar and violin plots")->capture_default_str();
  plot->add_option("--x", plot_x, "Scatter x metric")->capture_default_str();
  plot->add_option("--y", plot_y, "Scatter y metric")->capture_default_str();
  plot->add_option("--out", plot_out, "Output directory")->capture_default_str();

  // label
  auto* label = app.add_subcommand("label", "Export A* training records for a map");
  std::string label_map, label_out, label_features = "distance_to_goal,direction_to_goal,global_map,local_view",
                                    label_model = "full";
  int label_radius = 2;
  label->add_option("--map", label_map, "Map file with agent and goal")->required();
  label->add_option("--out", label_out, "Dataset file")->required();
  label->add_option("--radius", label_radius, "Local view radius")->check(CLI::NonNegativeNumber)->capture_default_str();
  label->add_option("--features", label_features, "Comma-separated features")->capture_default_str();
  label->add_option("--model", label_model, "Move model")->check(CLI::IsMember({"full", "orthogonal"}))->capture_default_str();

  // analyze-dataset
  auto* ads = app.add_subcommand("analyze-dataset", "Summarize a training dataset per map");
  std::string ads_input;
  ads->add_option("dataset", ads_input, "Dataset file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      const auto type = map_type_from_string(gen_flags.type).value();
      GenConfig base = gen_flags.config(type);
      const std::uint64_t s = effective_seed(seed);
      out << "seed: " << s << '\n';
      try {
        base.validate();
      } catch (const ConfigError& e) {
        throw UsageError(e.what());
      }
      nlohmann::ordered_json manifest;
      manifest["generator"] = version_line();
      manifest["seed"] = s;
      manifest["config"] = config_json(base);
      manifest["endpoints"] = !gen_no_endpoints;
      manifest["files"] = nlohmann::ordered_json::array();
      const int width = std::max<int>(3, static_cast<int>(std::to_string(gen_count - 1).size()));
      for (int i = 0; i < gen_count; ++i) {
        GenConfig c = base;
        c.seed = derive_seed(s, {static_cast<std::uint64_t>(i)});
        GridMap m = generate_map(c);
        if (!gen_no_endpoints) {
          Rng rng(derive_seed(s, {static_cast<std::uint64_t>(i), hash_name("endpoints")}));
          m = place_agent_goal(std::move(m), rng);
        }
        std::string idx = std::to_string(i);
        idx.insert(0, static_cast<std::size_t>(std::max(0, width - static_cast<int>(idx.size()))), '0');
        const std::string name = gen_flags.type + "_" + idx + ".pbgrid";
        write_file(fs::path(gen_out) / name, save_native(m));
        manifest["files"].push_back({{"file", name}, {"seed", c.seed}});
      }
      write_file(fs::path(gen_out) / "manifest.json", manifest.dump(2) + "\n");
      out << "wrote " << gen_count << " maps to " << gen_out << '\n';
      return kOk;
    }

    if (*run) {
      if (!is_planner(run_planner_name))
        throw UsageError("unknown planner '" + run_planner_name + "' (available: " + planner_list() + ")");
      const auto config = run_flags.config(run_planner_name);
      const auto model = run_flags.move_model();
      GridMap map = load_map_file(run_map);
      const std::uint64_t s = effective_seed(seed);
      out << "seed: " << s << '\n';
      try {
        if (!run_start.empty() || !run_goal.empty()) {
          const auto start = run_start.empty() ? map.agent() : parse_cell("--start", run_start, map.dims());
          const auto goal = run_goal.empty() ? map.goal() : parse_cell("--goal", run_goal, map.dims());
          map.clear_endpoints();
          if (start) map.set_agent(*start);
          if (goal) map.set_goal(*goal);
        }
      } catch (const std::domain_error& e) {
        throw UsageError(std::string(!run_start.empty() && !map.agent() ? "--start: " : "--goal: ") + e.what());
      }
      if (!map.has_endpoints()) {
        Rng rng(derive_seed(s, {hash_name("endpoints")}));
        map = place_agent_goal(std::move(map), rng);
      }
      out << "planner: " << config.name << '\n';
      out << "agent: " << map.agent()->str() << '\n';
      out << "goal: " << map.goal()->str() << '\n';
      PlanOptions opts;
      opts.record_steps = !run_trace.empty();
      opts.record_tree = !run_tree.empty();
      const PlanOutcome outcome = run_planner(config, map, model, s, opts);
      const PlanOutcome baseline = astar(map, model);
      const MetricReport report = compute_report(outcome, baseline, map, distance_transform(map));
      print_report(out, report, outcome);
      if (!run_trace.empty()) {
        std::ostringstream os;
        write_step_trace(os, outcome.trace);
        write_file(run_trace, os.str());
      }
      if (!run_tree.empty()) {
        if (!outcome.tree) err << "warning: " << config.name << " builds no tree; " << run_tree << " not written\n";
        else {
          std::ostringstream os;
          write_tree_dump(os, *outcome.tree);
          write_file(run_tree, os.str());
        }
      }
      return kOk;
    }

    if (*bench) {
      BenchmarkSpec spec;
      for (const auto& name : planners.empty() ? classical_planners() : split_list(planners))
        spec.planners.push_back(bench_flags.config(name));
      if (spec.planners.empty()) throw UsageError("--planners: no planner given");
      spec.model = bench_flags.move_model();
      if (!bench_maps.empty()) {
        spec.sources.push_back(FileSource{expand_map_paths(bench_maps)});
      } else {
        for (const auto& t : split_list(types)) {
          const auto mt = map_type_from_string(t);
          if (!mt) throw UsageError("--types: unknown map type '" + t + "' (available: uniform, block, house)");
          spec.sources.push_back(GeneratedSource{bench_gen.config(*mt), bench_n});
        }
        if (spec.sources.empty()) throw UsageError("--types: no map type given");
      }
      spec.runs_per_map = complex_mode ? bench_x : 1;
      spec.master_seed = effective_seed(seed);
      spec.parallelism = jobs;
      spec.hardware_tag = hardware_tag;
      spec.timing_repeats = repeats;
      std::vector<std::string> kinds = split_list(plots);
      const std::string pm = metric_name(plot_metric), sx = metric_name(scatter_x), sy = metric_name(scatter_y);
      for (const auto& k : kinds)
        if (k != "bar" && k != "violin" && k != "scatter") throw UsageError("--plots: unknown plot kind '" + k + "'");
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      out << "seed: " << spec.master_seed << '\n';
      const BenchmarkResult result = run_benchmark(spec);
      for (const auto& w : result.warnings) err << "warning: " << w << '\n';
      const AggregateStats stats = aggregate(result);
      const auto rows = report_rows(stats);
      const fs::path dir(bench_out);
      write_file(dir / "results.jsonl", write_results(result));
      write_file(dir / "report.csv", write_csv(rows));
      write_file(dir / "report.jsonl", write_aggregate_jsonl(stats));
      write_file(dir / "samples.csv", write_samples_csv(stats));
      const std::string table = write_text_table(rows);
      write_file(dir / "table.txt", table);
      for (const auto& k : kinds) {
        const PlotResult p = k == "scatter" ? plot_scatter(stats, sx, sy)
                                            : plot_distribution(stats, pm, k == "bar" ? PlotKind::Bar : PlotKind::Violin);
        for (const auto& w : p.warnings) err << "warning: " << w << '\n';
        write_file(dir / (k == "scatter" ? "scatter_" + sx + "_" + sy + ".svg" : k + "_" + pm + ".svg"), p.svg);
      }
      out << table;
      return kOk;
    }

    if (*conv) {
      int failed = 0;
      for (const auto& in : conv_inputs) {
        try {
          const GridMap m = parse_movingai(read_text_file(in));
          const fs::path dest = fs::path(conv_out) / (fs::path(in).stem().string() + ".pbgrid");
          write_file(dest, save_native(m));
          out << in << " -> " << dest.string() << '\n';
        } catch (const std::exception& e) {
          err << in << ": " << e.what() << '\n';
          ++failed;
        }
      }
      return failed ? kData : kOk;
    }

    if (*plot) {
      std::vector<fs::path> files(plot_inputs.begin(), plot_inputs.end());
      const std::string pm = metric_name(plot_m), px = metric_name(plot_x), py = metric_name(plot_y);
      const auto kinds = split_list(plot_kinds);
      for (const auto& k : kinds)
        if (k != "bar" && k != "violin" && k != "scatter") throw UsageError("--kind: unknown plot kind '" + k + "'");
      const AggregateStats stats = merge_results(files);
      for (const auto& k : kinds) {
        const PlotResult p = k == "scatter" ? plot_scatter(stats, px, py)
                                            : plot_distribution(stats, pm, k == "bar" ? PlotKind::Bar : PlotKind::Violin);
        for (const auto& w : p.warnings) err << "warning: " << w << '\n';
        const fs::path dest = fs::path(plot_out) / (k == "scatter" ? "scatter_" + px + "_" + py + ".svg" : k + "_" + pm + ".svg");
        write_file(dest, p.svg);
        out << "wrote " << dest.string() << '\n';
      }
      return kOk;
    }

    if (*label) {
      const GridMap map = load_map_file(label_map);
      if (!map.has_endpoints()) throw DataError(label_map + ": map has no agent/goal");
      const MoveModel model(label_model == "orthogonal" ? Connectivity::Orthogonal : Connectivity::Full);
      std::vector<TrainingRecord> records;
      try {
        records = label_dataset(map, label_radius, model, fs::path(label_map).stem().string(), split_list(label_features));
      } catch (const ConfigError& e) {
        throw UsageError(std::string("--features: ") + e.what());
      }
      write_file(label_out, write_dataset(records));
      out << "wrote " << records.size() << " records to " << label_out << '\n';
      return kOk;
    }

    if (*ads) {
      const auto summary = dataset_analysis(ads_input);
      out << "map_id\tobstacle_ratio\tpath_length\teuclidean_distance\tsteps\n";
      for (const auto& s : summary)
        out << s.map_id << '\t' << fmt_opt(s.obstacle_ratio) << '\t' << fmt_opt(s.path_length) << '\t'
            << fmt_opt(s.euclidean_distance) << '\t' << s.steps << '\n';
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownPlanner& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kInconsistent;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace pathbench::cli
