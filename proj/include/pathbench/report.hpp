#pragma once

// Aggregate reports: a CSV with one row per planner and map type, aggregate
// json-lines, a fixed-width text table and a long-format raw sample sidecar.

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "analyzer.hpp"

namespace pathbench {

// One report line: cell identity plus the mean of every metric.
struct ReportRow {
  std::string planner;
  std::string map_type;
  std::string hardware_tag;
  std::size_t runs = 0;
  std::size_t successes = 0;
  double success_rate_pct = 0.0;
  std::vector<std::optional<double>> means;  // parallel to metric_defs()

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

inline std::vector<ReportRow> report_rows(const AggregateStats& stats) {
  std::vector<ReportRow> rows;
  for (const auto& c : stats.cells) {
    ReportRow r{c.planner, c.map_type, c.hardware_tag, c.runs, c.successes, c.success_rate_pct(), {}};
    for (std::size_t i = 0; i < c.metrics.size(); ++i) r.means.push_back(c.mean(i));
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace detail {

inline std::string g10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<std::string> csv_columns() {
  std::vector<std::string> cols{"planner", "map_type", "path_dev_pct", "distance_left", "time_sec",
                                "success_rate_pct"};
  for (const auto& d : metric_defs())
    if (d.name != "path_dev_pct" && d.name != "distance_left" && d.name != "time_sec")
      cols.emplace_back(d.name);
  for (const char* c : {"runs", "successes", "hardware_tag"}) cols.emplace_back(c);
  return cols;
}

// Undefined means are written as empty fields.
inline std::string write_csv(const std::vector<ReportRow>& rows) {
  const auto cols = csv_columns();
  std::ostringstream os;
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) os << ',';
      const auto& c = cols[i];
      if (c == "planner") os << detail::csv_field(r.planner);
      else if (c == "map_type") os << detail::csv_field(r.map_type);
      else if (c == "hardware_tag") os << detail::csv_field(r.hardware_tag);
      else if (c == "runs") os << r.runs;
      else if (c == "successes") os << r.successes;
      else if (c == "success_rate_pct") os << detail::g10(r.success_rate_pct);
      else if (const auto& v = r.means[metric_index(c)]) os << detail::g10(*v);
    }
    os << '\n';
  }
  return os.str();
}

inline std::vector<ReportRow> read_csv(std::string_view text) {
  const auto lines = detail::split_lines(text);
  const auto cols = csv_columns();
  if (lines.empty() || detail::csv_split(lines[0]) != cols) throw ParseError(1, 1, "unexpected CSV header");
  std::vector<ReportRow> rows;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const int ln = static_cast<int>(li) + 1;
    const auto f = detail::csv_split(lines[li]);
    if (f.size() != cols.size()) throw ParseError(ln, 0, "expected " + std::to_string(cols.size()) + " fields");
    ReportRow r;
    r.means.resize(metric_defs().size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const auto& c = cols[i];
      if (c == "planner") r.planner = f[i];
      else if (c == "map_type") r.map_type = f[i];
      else if (c == "hardware_tag") r.hardware_tag = f[i];
      else if (c == "runs" || c == "successes") {
        const auto v = detail::parse_int(f[i]);
        if (!v || *v < 0) throw ParseError(ln, 0, "bad count in column " + c);
        (c == "runs" ? r.runs : r.successes) = static_cast<std::size_t>(*v);
      } else if (!f[i].empty()) {
        const double v = detail::real_of(f[i], ln, 0);
        if (c == "success_rate_pct") r.success_rate_pct = v;
        else r.means[metric_index(c)] = v;
      } else if (c == "success_rate_pct") {
        throw ParseError(ln, 0, "missing success rate");
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

// One object per cell with mean, std, min, max and sample count per metric.
inline std::string write_aggregate_jsonl(const AggregateStats& stats) {
  std::string out;
  const auto& defs = metric_defs();
  for (const auto& c : stats.cells) {
    nlohmann::ordered_json j;
    j["planner"] = c.planner;
    j["map_type"] = c.map_type;
    j["hardware_tag"] = c.hardware_tag;
    j["runs"] = c.runs;
    j["successes"] = c.successes;
    j["success_rate_pct"] = c.success_rate_pct();
    for (std::size_t i = 0; i < defs.size(); ++i) {
      const auto& m = c.metrics[i];
      nlohmann::ordered_json s;
      s["n"] = m.n;
      if (m.n) {
        s["mean"] = m.mean;
        s["std"] = m.stddev;
        s["min"] = m.min;
        s["max"] = m.max;
      } else {
        s["mean"] = s["std"] = s["min"] = s["max"] = nullptr;
      }
      j[std::string(defs[i].name)] = s;
    }
    nlohmann::ordered_json fails = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.failures) fails[k] = v;
    j["failures"] = fails;
    out += j.dump() + '\n';
  }
  return out;
}

// Same object layout as write_aggregate_jsonl, or the flat row layout
// written by write_rows_jsonl.
inline std::vector<ReportRow> read_rows_jsonl(std::string_view text) {
  std::vector<ReportRow> rows;
  const auto lines = detail::split_lines(text);
  const auto& defs = metric_defs();
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    try {
      const auto j = nlohmann::json::parse(lines[li]);
      ReportRow r;
      r.planner = j.at("planner").get<std::string>();
      r.map_type = j.at("map_type").get<std::string>();
      r.hardware_tag = j.at("hardware_tag").get<std::string>();
      r.runs = j.at("runs").get<std::size_t>();
      r.successes = j.at("successes").get<std::size_t>();
      r.success_rate_pct = j.at("success_rate_pct").get<double>();
      for (const auto& d : defs) {
        const auto& v = j.at(std::string(d.name));
        const auto& mean = v.is_object() ? v.at("mean") : v;
        r.means.push_back(mean.is_null() ? std::nullopt : std::optional<double>(mean.get<double>()));
      }
      rows.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(static_cast<int>(li) + 1, 0, e.what());
    }
  }
  return rows;
}

inline std::string write_rows_jsonl(const std::vector<ReportRow>& rows) {
  std::string out;
  const auto& defs = metric_defs();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["planner"] = r.planner;
    j["map_type"] = r.map_type;
    j["hardware_tag"] = r.hardware_tag;
    j["runs"] = r.runs;
    j["successes"] = r.successes;
    j["success_rate_pct"] = r.success_rate_pct;
    for (std::size_t i = 0; i < defs.size(); ++i)
      j[std::string(defs[i].name)] = r.means[i] ? nlohmann::ordered_json(*r.means[i]) : nlohmann::ordered_json(nullptr);
    out += j.dump() + '\n';
  }
  return out;
}

inline std::string write_text_table(const std::vector<ReportRow>& rows) {
  const auto& defs = metric_defs();
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> head{"planner", "map type", "path dev. (%)", "distance left", "time (s)", "success (%)"};
  for (std::size_t i = 3; i < defs.size(); ++i) head.emplace_back(defs[i].label);
  bool tagged = false;
  for (const auto& r : rows) tagged |= r.hardware_tag != rows.front().hardware_tag;
  if (tagged) head.emplace_back("hardware");
  table.push_back(head);
  auto num = [](const std::optional<double>& v, const char* fmt) {
    if (!v) return std::string("-");
    char buf[40];
    std::snprintf(buf, sizeof buf, fmt, *v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    std::vector<std::string> line{r.planner, r.map_type, num(r.means[0], "%.2f"), num(r.means[1], "%.2f"),
                                  num(r.means[2], "%.4f"), num(r.success_rate_pct, "%.2f")};
    for (std::size_t i = 3; i < defs.size(); ++i) line.push_back(num(r.means[i], "%.3f"));
    if (tagged) line.push_back(r.hardware_tag);
    table.push_back(std::move(line));
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& line : table)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  std::ostringstream os;
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) os << "  ";
      if (i < 2) os << line[i] << std::string(width[i] - line[i].size(), ' ');
      else os << std::string(width[i] - line[i].size(), ' ') << line[i];
    }
    os << '\n';
  }
  return os.str();
}

// Long format: hardware_tag,planner,map_type,metric,value.
inline std::string write_samples_csv(const AggregateStats& stats) {
  std::ostringstream os;
  os << "hardware_tag,planner,map_type,metric,value\n";
  const auto& defs = metric_defs();
  for (const auto& c : stats.cells) {
    if (c.map_type == "all") continue;
    for (std::size_t i = 0; i < defs.size(); ++i)
      for (const double v : c.samples[i])
        os << detail::csv_field(c.hardware_tag) << ',' << detail::csv_field(c.planner) << ','
           << detail::csv_field(c.map_type) << ',' << defs[i].name << ',' << detail::g10(v) << '\n';
  }
  return os.str();
}

}  // namespace pathbench
