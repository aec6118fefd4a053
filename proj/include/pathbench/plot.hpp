#pragma once

// Static SVG plots of aggregate results: grouped bars, violins and a
// per-planner scatter. Every file embeds its data table as an XML comment.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "report.hpp"

namespace pathbench {

enum class PlotKind { Bar, Violin, Scatter };

struct PlotResult {
  std::string svg;
  std::vector<std::string> warnings;
};

namespace detail {

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                 "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};
  return colors[i % (sizeof colors / sizeof colors[0])];
}

inline std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Comments may not contain "--".
inline std::string comment_safe(std::string s) {
  for (std::size_t p; (p = s.find("--")) != std::string::npos;) s.replace(p, 2, "- -");
  return s;
}

inline double nice_ceiling(double v) {
  if (!(v > 0.0)) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(v)));
  for (const double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (v <= m * mag) return m * mag;
  return 10.0 * mag;
}

struct Canvas {
  double width = 720, height = 420, left = 70, right = 170, top = 40, bottom = 60;
  double plot_w() const { return width - left - right; }
  double plot_h() const { return height - top - bottom; }
};

inline std::string svg_open(const Canvas& c, const std::string& title, const std::string& data_comment) {
  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + f2(c.width) + "\" height=\"" + f2(c.height) +
       "\" viewBox=\"0 0 " + f2(c.width) + " " + f2(c.height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<!--\n" + comment_safe(data_comment) + "-->\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + f2(c.width / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + xml_escape(title) +
       "</text>\n";
  return s;
}

inline std::string y_axis(const Canvas& c, double lo, double hi, const std::string& label) {
  std::string s;
  const double x0 = c.left, y0 = c.top + c.plot_h();
  s += "<line x1=\"" + f2(x0) + "\" y1=\"" + f2(c.top) + "\" x2=\"" + f2(x0) + "\" y2=\"" + f2(y0) +
       "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + f2(x0) + "\" y1=\"" + f2(y0) + "\" x2=\"" + f2(x0 + c.plot_w()) + "\" y2=\"" + f2(y0) +
       "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double v = lo + (hi - lo) * t / 5.0;
    const double y = y0 - c.plot_h() * t / 5.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    s += "<line x1=\"" + f2(x0 - 4) + "\" y1=\"" + f2(y) + "\" x2=\"" + f2(x0) + "\" y2=\"" + f2(y) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + f2(x0 - 6) + "\" y=\"" + f2(y + 4) + "\" text-anchor=\"end\">" + buf + "</text>\n";
  }
  s += "<text transform=\"translate(16," + f2(c.top + c.plot_h() / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
       xml_escape(label) + "</text>\n";
  return s;
}

inline std::string legend(const Canvas& c, const std::vector<std::string>& names) {
  std::string s;
  const double x = c.width - c.right + 15;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double y = c.top + 18.0 * static_cast<double>(i);
    s += "<rect x=\"" + f2(x) + "\" y=\"" + f2(y) + "\" width=\"12\" height=\"12\" fill=\"" + palette(i) + "\"/>\n";
    s += "<text x=\"" + f2(x + 18) + "\" y=\"" + f2(y + 10) + "\">" + xml_escape(names[i]) + "</text>\n";
  }
  return s;
}

// Cells grouped by map type; one series per planner (and tag, when mixed).
struct Grouping {
  std::vector<std::string> groups;
  std::vector<std::string> series;
  std::vector<std::vector<const AggregateCell*>> at;  // [group][series]
};

inline Grouping group_cells(const AggregateStats& stats) {
  std::set<std::string> tags;
  std::vector<std::string> types;
  for (const auto& c : stats.cells) {
    tags.insert(c.hardware_tag);
    if (c.map_type != "all" && std::find(types.begin(), types.end(), c.map_type) == types.end())
      types.push_back(c.map_type);
  }
  Grouping g;
  g.groups = types.size() == 1 ? types : std::vector<std::string>{};
  if (types.size() > 1) {
    g.groups = types;
    g.groups.emplace_back("all");
  }
  auto series_name = [&](const AggregateCell& c) {
    return tags.size() > 1 ? c.planner + " @ " + c.hardware_tag : c.planner;
  };
  for (const auto& c : stats.cells) {
    const auto n = series_name(c);
    if (std::find(g.series.begin(), g.series.end(), n) == g.series.end()) g.series.push_back(n);
  }
  g.at.assign(g.groups.size(), std::vector<const AggregateCell*>(g.series.size(), nullptr));
  for (const auto& c : stats.cells) {
    const auto gi = std::find(g.groups.begin(), g.groups.end(), c.map_type) - g.groups.begin();
    if (gi == static_cast<long>(g.groups.size())) continue;
    const auto si = std::find(g.series.begin(), g.series.end(), series_name(c)) - g.series.begin();
    g.at[static_cast<std::size_t>(gi)][static_cast<std::size_t>(si)] = &c;
  }
  return g;
}

inline std::string data_table(const Grouping& g, std::size_t metric) {
  std::string s = "hardware_tag,planner,map_type,n,mean,std,min,max\n";
  for (const auto& row : g.at)
    for (const auto* c : row) {
      if (!c) continue;
      const auto& m = c->metrics[metric];
      s += c->hardware_tag + "," + c->planner + "," + c->map_type + "," + std::to_string(m.n);
      for (const double v : {m.mean, m.stddev, m.min, m.max}) {
        char buf[40];
        std::snprintf(buf, sizeof buf, ",%.10g", v);
        s += m.n ? std::string(buf) : std::string(",");
      }
      s += '\n';
    }
  return s;
}

// Gaussian kernel density with Silverman's bandwidth, on `points` levels.
inline std::vector<double> kde(const std::vector<double>& xs, double lo, double hi, int points) {
  const auto s = summarize(xs);
  double h = 1.06 * s.stddev * std::pow(static_cast<double>(xs.size()), -0.2);
  if (!(h > 0.0)) h = std::max(1e-9, (hi - lo) / 50.0);
  std::vector<double> dens(static_cast<std::size_t>(points), 0.0);
  for (int i = 0; i < points; ++i) {
    const double y = lo + (hi - lo) * i / (points - 1);
    double acc = 0.0;
    for (const double x : xs) acc += std::exp(-0.5 * ((y - x) / h) * ((y - x) / h));
    dens[static_cast<std::size_t>(i)] = acc / (static_cast<double>(xs.size()) * h * std::sqrt(2 * std::numbers::pi));
  }
  return dens;
}

}  // namespace detail

// Bars (heights = cell means) or violins (raw samples) of one metric.
inline PlotResult plot_distribution(const AggregateStats& stats, std::string_view metric, PlotKind kind) {
  const std::size_t mi = metric_index(metric);
  const auto& def = metric_defs()[mi];
  const auto g = detail::group_cells(stats);
  PlotResult out;
  detail::Canvas c;
  c.width = std::max(720.0, 120.0 + 60.0 * static_cast<double>(g.groups.size() * g.series.size()) + c.right);

  double lo = 0.0, hi = 0.0;
  for (const auto& row : g.at)
    for (const auto* cell : row) {
      if (!cell || cell->metrics[mi].n == 0) continue;
      const auto& m = cell->metrics[mi];
      hi = std::max(hi, kind == PlotKind::Violin ? m.max : m.mean);
      lo = std::min(lo, kind == PlotKind::Violin ? m.min : m.mean);
    }
  hi = detail::nice_ceiling(hi);
  if (lo < 0.0) lo = -detail::nice_ceiling(-lo);

  const std::string title = std::string(def.label) + (kind == PlotKind::Violin ? " distribution" : " (mean)");
  out.svg = detail::svg_open(c, title, detail::data_table(g, mi));
  out.svg += detail::y_axis(c, lo, hi, std::string(def.label));
  const double y0 = c.top + c.plot_h();
  auto ypos = [&](double v) { return y0 - c.plot_h() * (v - lo) / (hi - lo); };
  const double group_w = c.plot_w() / static_cast<double>(std::max<std::size_t>(1, g.groups.size()));
  const double slot = group_w / static_cast<double>(g.series.size() + 1);

  for (std::size_t gi = 0; gi < g.groups.size(); ++gi) {
    const double gx = c.left + group_w * static_cast<double>(gi);
    out.svg += "<text x=\"" + detail::f2(gx + group_w / 2) + "\" y=\"" + detail::f2(y0 + 18) +
               "\" text-anchor=\"middle\">" + detail::xml_escape(g.groups[gi]) + "</text>\n";
    for (std::size_t si = 0; si < g.series.size(); ++si) {
      const AggregateCell* cell = g.at[gi][si];
      if (!cell || cell->metrics[mi].n == 0) continue;
      const double cx = gx + slot * (static_cast<double>(si) + 1.0);
      const auto& samples = cell->samples[mi];
      const auto& m = cell->metrics[mi];
      const bool violin = kind == PlotKind::Violin && samples.size() >= 2 && m.max > m.min;
      if (kind == PlotKind::Violin && !violin)
        out.warnings.push_back("violin for " + cell->planner + "/" + cell->map_type +
                               " has fewer than 2 distinct samples; drawn as a bar");
      if (!violin) {
        const double top = ypos(std::max(m.mean, 0.0)), base = ypos(std::min(m.mean, 0.0));
        out.svg += "<rect x=\"" + detail::f2(cx - slot * 0.4) + "\" y=\"" + detail::f2(top) + "\" width=\"" +
                   detail::f2(slot * 0.8) + "\" height=\"" + detail::f2(base - top) + "\" fill=\"" +
                   detail::palette(si) + "\"/>\n";
        continue;
      }
      constexpr int kPoints = 40;
      const auto dens = detail::kde(samples, m.min, m.max, kPoints);
      const double peak = *std::max_element(dens.begin(), dens.end());
      std::string left, right;
      for (int i = 0; i < kPoints; ++i) {
        const double v = m.min + (m.max - m.min) * i / (kPoints - 1);
        const double half = peak > 0 ? slot * 0.45 * dens[static_cast<std::size_t>(i)] / peak : 0.0;
        left += (i ? " L" : "M") + detail::f2(cx - half) + "," + detail::f2(ypos(v));
        right = " L" + detail::f2(cx + half) + "," + detail::f2(ypos(v)) + right;
      }
      out.svg += "<path d=\"" + left + right + " Z\" fill=\"" + detail::palette(si) +
                 "\" fill-opacity=\"0.7\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
      out.svg += "<line x1=\"" + detail::f2(cx - slot * 0.15) + "\" y1=\"" + detail::f2(ypos(m.mean)) + "\" x2=\"" +
                 detail::f2(cx + slot * 0.15) + "\" y2=\"" + detail::f2(ypos(m.mean)) +
                 "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
  }
  out.svg += detail::legend(c, g.series);
  out.svg += "</svg>\n";
  return out;
}

// One marker per (planner, hardware tag) at the overall means: shape by
// planner, color by tag.
inline PlotResult plot_scatter(const AggregateStats& stats, std::string_view metric_x, std::string_view metric_y) {
  const std::size_t mx = metric_index(metric_x), my = metric_index(metric_y);
  PlotResult out;
  struct Point {
    const AggregateCell* cell;
    double x, y;
  };
  std::vector<Point> pts;
  std::vector<std::string> planners, tags;
  std::string table = "hardware_tag,planner," + std::string(metric_x) + "," + std::string(metric_y) + "\n";
  for (const auto& c : stats.cells) {
    if (c.map_type != "all") continue;
    const auto x = c.mean(mx), y = c.mean(my);
    if (!x || !y) {
      out.warnings.push_back("no " + std::string(!x ? metric_x : metric_y) + " samples for " + c.planner + " @ " +
                             c.hardware_tag + "; omitted");
      continue;
    }
    pts.push_back({&c, *x, *y});
    if (std::find(planners.begin(), planners.end(), c.planner) == planners.end()) planners.push_back(c.planner);
    if (std::find(tags.begin(), tags.end(), c.hardware_tag) == tags.end()) tags.push_back(c.hardware_tag);
    table += c.hardware_tag + "," + c.planner + "," + detail::g10(*x) + "," + detail::g10(*y) + "\n";
  }
  double xhi = 0, yhi = 0, xlo = 0, ylo = 0;
  for (const auto& p : pts) {
    xhi = std::max(xhi, p.x);
    yhi = std::max(yhi, p.y);
    xlo = std::min(xlo, p.x);
    ylo = std::min(ylo, p.y);
  }
  xhi = detail::nice_ceiling(xhi);
  yhi = detail::nice_ceiling(yhi);
  if (xlo < 0) xlo = -detail::nice_ceiling(-xlo);
  if (ylo < 0) ylo = -detail::nice_ceiling(-ylo);

  detail::Canvas c;
  const auto& dx = metric_defs()[mx];
  const auto& dy = metric_defs()[my];
  out.svg = detail::svg_open(c, std::string(dy.label) + " vs " + std::string(dx.label), table);
  out.svg += detail::y_axis(c, ylo, yhi, std::string(dy.label));
  const double y0 = c.top + c.plot_h();
  for (int t = 0; t <= 5; ++t) {
    const double x = c.left + c.plot_w() * t / 5.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", xlo + (xhi - xlo) * t / 5.0);
    out.svg += "<text x=\"" + detail::f2(x) + "\" y=\"" + detail::f2(y0 + 16) + "\" text-anchor=\"middle\">" + buf +
               "</text>\n";
  }
  out.svg += "<text x=\"" + detail::f2(c.left + c.plot_w() / 2) + "\" y=\"" + detail::f2(y0 + 38) +
             "\" text-anchor=\"middle\">" + detail::xml_escape(dx.label) + "</text>\n";

  auto marker = [](std::size_t shape, double x, double y, const char* color) {
    const std::string fill = "\" fill=\"" + std::string(color) + "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    const double r = 6;
    switch (shape % 4) {
      case 0: return "<circle cx=\"" + detail::f2(x) + "\" cy=\"" + detail::f2(y) + "\" r=\"" + detail::f2(r) + fill;
      case 1:
        return "<rect x=\"" + detail::f2(x - r) + "\" y=\"" + detail::f2(y - r) + "\" width=\"" + detail::f2(2 * r) +
               "\" height=\"" + detail::f2(2 * r) + fill;
      case 2:
        return "<polygon points=\"" + detail::f2(x) + "," + detail::f2(y - r) + " " + detail::f2(x + r) + "," +
               detail::f2(y + r) + " " + detail::f2(x - r) + "," + detail::f2(y + r) + fill;
      default:
        return "<polygon points=\"" + detail::f2(x) + "," + detail::f2(y - r) + " " + detail::f2(x + r) + "," +
               detail::f2(y) + " " + detail::f2(x) + "," + detail::f2(y + r) + " " + detail::f2(x - r) + "," +
               detail::f2(y) + fill;
    }
  };
  for (const auto& p : pts) {
    const auto shape = static_cast<std::size_t>(std::find(planners.begin(), planners.end(), p.cell->planner) - planners.begin());
    const auto color = static_cast<std::size_t>(std::find(tags.begin(), tags.end(), p.cell->hardware_tag) - tags.begin());
    const double x = c.left + c.plot_w() * (p.x - xlo) / (xhi - xlo);
    const double y = y0 - c.plot_h() * (p.y - ylo) / (yhi - ylo);
    out.svg += marker(shape, x, y, detail::palette(color));
  }
  double ly = c.top;
  const double lx = c.width - c.right + 15;
  for (std::size_t i = 0; i < planners.size(); ++i, ly += 18)
    out.svg += marker(i, lx + 6, ly + 6, "white") + "<text x=\"" + detail::f2(lx + 18) + "\" y=\"" +
               detail::f2(ly + 10) + "\">" + detail::xml_escape(planners[i]) + "</text>\n";
  ly += 8;
  for (std::size_t i = 0; i < tags.size(); ++i, ly += 18)
    out.svg += "<rect x=\"" + detail::f2(lx) + "\" y=\"" + detail::f2(ly) + "\" width=\"12\" height=\"12\" fill=\"" +
               detail::palette(i) + "\"/><text x=\"" + detail::f2(lx + 18) + "\" y=\"" + detail::f2(ly + 10) + "\">" +
               detail::xml_escape(tags[i]) + "</text>\n";
  out.svg += "</svg>\n";
  return out;
}

}  // namespace pathbench
