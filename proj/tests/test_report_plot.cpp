#include <gtest/gtest.h>

#include <cmath>
#include <regex>

#include "pathbench/plot.hpp"
#include "pathbench/report.hpp"

using namespace pathbench;

namespace {

BenchmarkResult small_result(std::string tag = "default", std::uint64_t seed = 5) {
  BenchmarkSpec s;
  for (const auto& p : {"astar", "wavefront", "d-rrt", "potential-field"}) s.planners.push_back(planner_config(p));
  for (const auto t : {MapType::UniformRandomFill, MapType::Block}) {
    GenConfig c;
    c.type = t;
    c.extent = {20, 20, 1};
    s.sources.emplace_back(GeneratedSource{c, 4});
  }
  s.master_seed = seed;
  s.hardware_tag = std::move(tag);
  s.runs_per_map = 2;
  return run_benchmark(s);
}

bool close6(double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)); }

void expect_rows_close(const std::vector<ReportRow>& a, const std::vector<ReportRow>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].planner, b[i].planner);
    EXPECT_EQ(a[i].map_type, b[i].map_type);
    EXPECT_EQ(a[i].hardware_tag, b[i].hardware_tag);
    EXPECT_EQ(a[i].runs, b[i].runs);
    EXPECT_EQ(a[i].successes, b[i].successes);
    EXPECT_TRUE(close6(a[i].success_rate_pct, b[i].success_rate_pct));
    ASSERT_EQ(a[i].means.size(), b[i].means.size());
    for (std::size_t k = 0; k < a[i].means.size(); ++k) {
      ASSERT_EQ(static_cast<bool>(a[i].means[k]), static_cast<bool>(b[i].means[k]));
      if (a[i].means[k]) {
        EXPECT_TRUE(close6(*a[i].means[k], *b[i].means[k])) << i << "," << k;
      }
    }
  }
}

// Heights of the bar rectangles in drawing order, without the trailing
// legend swatches.
std::vector<double> bar_heights(const std::string& svg, std::size_t legend_entries) {
  std::vector<double> out;
  const std::regex rect(R"re(<rect x="[^"]+" y="[^"]+" width="[^"]+" height="([^"]+)" fill="#)re");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), rect); it != std::sregex_iterator(); ++it)
    out.push_back(std::stod((*it)[1]));
  out.resize(out.size() >= legend_entries ? out.size() - legend_entries : 0);
  return out;
}

}  // namespace

TEST(Csv, ColumnLayout) {
  const auto cols = csv_columns();
  ASSERT_GE(cols.size(), 6u);
  const std::vector<std::string> head(cols.begin(), cols.begin() + 6);
  EXPECT_EQ(head, (std::vector<std::string>{"planner", "map_type", "path_dev_pct", "distance_left", "time_sec",
                                             "success_rate_pct"}));
  EXPECT_EQ(cols.back(), "hardware_tag");
  const auto text = write_csv(report_rows(aggregate(small_result())));
  EXPECT_EQ(text.substr(0, text.find('\n')), [&] {
    std::string s;
    for (const auto& c : cols) s += (s.empty() ? "" : ",") + c;
    return s;
  }());
}

TEST(Csv, RoundTripThroughJsonLines) {
  const auto stats = aggregate(small_result("rig \"a\", v2"));
  const auto rows = report_rows(stats);
  const auto csv = write_csv(rows);
  const auto from_csv = read_csv(csv);
  expect_rows_close(from_csv, rows);
  const auto from_jsonl = read_rows_jsonl(write_rows_jsonl(from_csv));
  expect_rows_close(from_jsonl, rows);
  expect_rows_close(read_csv(write_csv(from_jsonl)), rows);
  expect_rows_close(read_rows_jsonl(write_aggregate_jsonl(stats)), rows);
}

TEST(Csv, MalformedInputIsLocated) {
  EXPECT_THROW(read_csv("planner,map_type\n"), ParseError);
  const auto good = write_csv(report_rows(aggregate(small_result())));
  const auto header = good.substr(0, good.find('\n') + 1);
  try {
    read_csv(header + "astar,uniform,1\n");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(TextTable, MirrorsCsvRows) {
  const auto rows = report_rows(aggregate(small_result()));
  const auto table = write_text_table(rows);
  std::size_t lines = 0;
  for (const char c : table) lines += c == '\n';
  EXPECT_EQ(lines, rows.size() + 1);
  EXPECT_EQ(table.rfind("planner", 0), 0u);
  EXPECT_NE(table.find("astar"), std::string::npos);
}

TEST(SamplesCsv, OneLinePerSample) {
  const auto stats = aggregate(small_result());
  const auto text = write_samples_csv(stats);
  std::size_t expect = 1;
  for (const auto& c : stats.cells)
    if (c.map_type != "all")
      for (const auto& s : c.samples) expect += s.size();
  std::size_t lines = 0;
  for (const char c : text) lines += c == '\n';
  EXPECT_EQ(lines, expect);
  EXPECT_EQ(text.rfind("hardware_tag,planner,map_type,metric,value\n", 0), 0u);
}

TEST(Plot, BarHeightsFollowMeans) {
  const auto stats = aggregate(small_result());
  const auto mi = metric_index("search_space_pct");
  const auto plot = plot_distribution(stats, "search_space_pct", PlotKind::Bar);
  EXPECT_TRUE(plot.warnings.empty());
  EXPECT_NE(plot.svg.find("<svg"), std::string::npos);
  EXPECT_NE(plot.svg.find("hardware_tag,planner,map_type,n,mean,std,min,max"), std::string::npos);

  // groups uniform, block, all; series in planner order
  std::vector<double> means;
  for (const auto* type : {"uniform", "block", "all"})
    for (const auto& c : stats.cells)
      if (c.map_type == type) means.push_back(c.metrics[mi].mean);
  const auto heights = bar_heights(plot.svg, 4);
  ASSERT_EQ(heights.size(), means.size());
  const double top = detail::nice_ceiling(*std::max_element(means.begin(), means.end()));
  const double plot_h = detail::Canvas{}.plot_h();
  for (std::size_t i = 0; i < means.size(); ++i) EXPECT_NEAR(heights[i], plot_h * means[i] / top, 0.011) << i;
}

TEST(Plot, Deterministic) {
  const auto stats = aggregate(small_result());
  for (const auto kind : {PlotKind::Bar, PlotKind::Violin})
    EXPECT_EQ(plot_distribution(stats, "path_length", kind).svg, plot_distribution(stats, "path_length", kind).svg);
  EXPECT_EQ(plot_scatter(stats, "time_sec", "path_dev_pct").svg, plot_scatter(stats, "time_sec", "path_dev_pct").svg);
}

TEST(Plot, ViolinFallsBackToBarForConstantSamples) {
  const auto stats = aggregate(small_result());
  // A* deviation is always zero
  const auto plot = plot_distribution(stats, "path_dev_pct", PlotKind::Violin);
  bool astar_warned = false;
  for (const auto& w : plot.warnings) astar_warned |= w.find("astar") != std::string::npos;
  EXPECT_TRUE(astar_warned);
  EXPECT_NE(plot.svg.find("<path"), std::string::npos);
}

TEST(Plot, ScatterColorsByHardwareTag) {
  auto merged = small_result("laptop");
  const auto other = small_result("server", 6);
  merged.runs.insert(merged.runs.end(), other.runs.begin(), other.runs.end());
  const auto stats = aggregate(merged);
  const auto plot = plot_scatter(stats, "time_sec", "path_length");
  std::set<std::string> fills;
  const std::regex marker(R"re(<circle [^>]*fill="(#[0-9a-f]{6})")re");
  for (auto it = std::sregex_iterator(plot.svg.begin(), plot.svg.end(), marker); it != std::sregex_iterator(); ++it)
    fills.insert((*it)[1]);
  EXPECT_EQ(fills.size(), 2u);
  EXPECT_NE(plot.svg.find("laptop"), std::string::npos);
  EXPECT_NE(plot.svg.find("server"), std::string::npos);
}

TEST(Plot, UnknownMetricThrows) {
  const auto stats = aggregate(small_result());
  EXPECT_THROW(plot_distribution(stats, "speed", PlotKind::Bar), std::invalid_argument);
}
