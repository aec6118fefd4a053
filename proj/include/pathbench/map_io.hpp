#pragma once

// Native `pbgrid v1` map files and MovingAI `.map` ingestion.
//
// Native layout (UTF-8, '\n' line ends):
//   pbgrid v1
//   dims D
//   extent e1 e2 [e3]
//   agent c1 c2 [c3]      (or `agent none`)
//   goal c1 c2 [c3]       (or `goal none`)
//   rows of '.' (free) and '#' (obstacle), last axis fastest; a 3D map is e1
//   slices of e2 rows separated by one blank line.

#include <charconv>
#include <cstdlib>
#include <optional>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "grid.hpp"

namespace pathbench {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error(format(line, column, what)), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(int line, int column, const std::string& what) {
    std::string s = "line " + std::to_string(line);
    if (column > 0) s += ", column " + std::to_string(column);
    return s + ": " + what;
  }
  int line_;
  int column_;
};

struct UnsupportedVersion : ParseError {
  using ParseError::ParseError;
};

namespace detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

inline std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t j = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

inline std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline double real_of(std::string_view s, int line, int column) {
  const std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) throw ParseError(line, column, "expected number");
  return v;
}

// `key v1 v2 ...` with exactly `count` integers.
inline std::vector<int> keyed_ints(const std::vector<std::string_view>& lines, std::size_t at,
                                   std::string_view key, int count) {
  const int line_no = static_cast<int>(at) + 1;
  if (at >= lines.size()) throw ParseError(line_no, 0, "missing '" + std::string(key) + "' line");
  const auto words = split_words(lines[at]);
  if (words.empty() || words[0] != key) throw ParseError(line_no, 1, "expected '" + std::string(key) + "'");
  if (static_cast<int>(words.size()) != count + 1)
    throw ParseError(line_no, 0, "expected " + std::to_string(count) + " values after '" + std::string(key) + "'");
  std::vector<int> out;
  for (std::size_t i = 1; i < words.size(); ++i) {
    const auto v = parse_int(words[i]);
    if (!v) throw ParseError(line_no, static_cast<int>(words[i].data() - lines[at].data()) + 1, "not an integer");
    out.push_back(*v);
  }
  return out;
}

inline std::optional<Cell> endpoint_line(const std::vector<std::string_view>& lines, std::size_t at,
                                         std::string_view key, int dims) {
  if (at < lines.size()) {
    const auto words = split_words(lines[at]);
    if (words.size() == 2 && words[0] == key && words[1] == "none") return std::nullopt;
  }
  const auto v = keyed_ints(lines, at, key, dims);
  return dims == 2 ? Cell(v[0], v[1]) : Cell(v[0], v[1], v[2]);
}

}  // namespace detail

inline std::string save_native(const GridMap& map) {
  std::ostringstream os;
  const int d = map.dims();
  const auto& e = map.extent();
  os << "pbgrid v1\n";
  os << "dims " << d << '\n';
  os << "extent " << e[0] << ' ' << e[1];
  if (d == 3) os << ' ' << e[2];
  os << '\n';
  auto endpoint = [&](const char* key, const std::optional<Cell>& c) {
    os << key << ' ';
    if (!c) {
      os << "none\n";
      return;
    }
    os << (*c)[0] << ' ' << (*c)[1];
    if (d == 3) os << ' ' << (*c)[2];
    os << '\n';
  };
  endpoint("agent", map.agent());
  endpoint("goal", map.goal());
  std::string row;
  for (int a = 0; a < e[0]; ++a) {
    if (d == 3 && a > 0) os << '\n';
    if (d == 2) {
      row.clear();
      for (int b = 0; b < e[1]; ++b) row += map.is_obstacle(Cell(a, b)) ? '#' : '.';
      os << row << '\n';
    } else {
      for (int b = 0; b < e[1]; ++b) {
        row.clear();
        for (int c = 0; c < e[2]; ++c) row += map.is_obstacle(Cell(a, b, c)) ? '#' : '.';
        os << row << '\n';
      }
    }
  }
  return os.str();
}

inline GridMap load_native(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty() || lines[0] != "pbgrid v1") {
    if (!lines.empty() && lines[0].starts_with("pbgrid "))
      throw UnsupportedVersion(1, 8, "unsupported version '" + std::string(lines[0].substr(7)) + "'");
    throw ParseError(1, 1, "expected 'pbgrid v1'");
  }
  const auto dims_v = detail::keyed_ints(lines, 1, "dims", 1);
  const int d = dims_v[0];
  if (d != 2 && d != 3) throw ParseError(2, 6, "dims must be 2 or 3");
  const auto ext = detail::keyed_ints(lines, 2, "extent", d);
  for (int i = 0; i < d; ++i)
    if (ext[static_cast<std::size_t>(i)] <= 0) throw ParseError(3, 0, "extent must be positive");
  const long long rows_needed =
      d == 3 ? static_cast<long long>(ext[0]) * ext[1] + ext[0] - 1 : static_cast<long long>(ext[0]);
  long long cells = 1;
  for (int i = 0; i < d; ++i) cells *= ext[static_cast<std::size_t>(i)];
  // every cell takes one character, so larger extents cannot be satisfied
  if (rows_needed > static_cast<long long>(lines.size()) || cells > static_cast<long long>(text.size()))
    throw ParseError(static_cast<int>(lines.size()) + 1, 0, "file ends before the occupancy rows do");
  GridMap map = d == 2 ? GridMap(ext[0], ext[1]) : GridMap(ext[0], ext[1], ext[2]);
  const auto agent = detail::endpoint_line(lines, 3, "agent", d);
  const auto goal = detail::endpoint_line(lines, 4, "goal", d);

  const int slices = d == 3 ? ext[0] : 1;
  const int rows = d == 3 ? ext[1] : ext[0];
  const int width = d == 3 ? ext[2] : ext[1];
  std::size_t at = 5;
  for (int s = 0; s < slices; ++s) {
    if (s > 0) {
      if (at >= lines.size() || !lines[at].empty())
        throw ParseError(static_cast<int>(at) + 1, 0, "expected blank line between slices");
      ++at;
    }
    for (int r = 0; r < rows; ++r, ++at) {
      const int line_no = static_cast<int>(at) + 1;
      if (at >= lines.size()) throw ParseError(line_no, 0, "missing occupancy row");
      const auto row = lines[at];
      if (static_cast<int>(row.size()) != width)
        throw ParseError(line_no, 0, "row width " + std::to_string(row.size()) + " != " + std::to_string(width));
      for (int c = 0; c < width; ++c) {
        const char ch = row[static_cast<std::size_t>(c)];
        if (ch != '.' && ch != '#')
          throw ParseError(line_no, c + 1, std::string("unexpected occupancy character '") + ch + "'");
        const Cell cell = d == 3 ? Cell(s, r, c) : Cell(r, c);
        map.set_obstacle(cell, ch == '#');
      }
    }
  }
  if (at < lines.size()) throw ParseError(static_cast<int>(at) + 1, 0, "unexpected content after map");

  try {
    if (agent) map.set_agent(*agent);
    if (goal) map.set_goal(*goal);
  } catch (const std::domain_error& e) {
    throw ParseError(agent && !map.agent() ? 4 : 5, 0, e.what());
  }
  return map;
}

// MovingAI grid: `.`, `G`, `S` are passable; `@`, `O`, `T`, `W` are not.
inline GridMap parse_movingai(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty() || detail::split_words(lines[0]) != std::vector<std::string_view>{"type", "octile"})
    throw ParseError(1, 1, "expected 'type octile'");
  const int h = detail::keyed_ints(lines, 1, "height", 1)[0];
  const int w = detail::keyed_ints(lines, 2, "width", 1)[0];
  if (h <= 0) throw ParseError(2, 0, "height must be positive");
  if (w <= 0) throw ParseError(3, 0, "width must be positive");
  if (lines.size() < 4 || detail::split_words(lines[3]) != std::vector<std::string_view>{"map"})
    throw ParseError(4, 1, "expected 'map'");
  if (static_cast<std::size_t>(h) > lines.size() - 4 ||
      static_cast<long long>(h) * w > static_cast<long long>(text.size()))
    throw ParseError(static_cast<int>(lines.size()) + 1, 0,
                     "expected " + std::to_string(h) + " rows, found " + std::to_string(lines.size() - 4));
  GridMap map(h, w);
  for (int r = 0; r < h; ++r) {
    const std::size_t at = 4 + static_cast<std::size_t>(r);
    const int line_no = static_cast<int>(at) + 1;
    if (at >= lines.size()) throw ParseError(line_no, 0, "expected " + std::to_string(h) + " rows, found " + std::to_string(r));
    const auto row = lines[at];
    if (static_cast<int>(row.size()) != w)
      throw ParseError(line_no, 0, "row width " + std::to_string(row.size()) + " != " + std::to_string(w));
    for (int c = 0; c < w; ++c) {
      switch (row[static_cast<std::size_t>(c)]) {
        case '.': case 'G': case 'S': break;
        case '@': case 'O': case 'T': case 'W': map.set_obstacle(Cell(r, c)); break;
        default: throw ParseError(line_no, c + 1, "unknown map character");
      }
    }
  }
  for (std::size_t at = 4 + static_cast<std::size_t>(h); at < lines.size(); ++at)
    if (!detail::split_words(lines[at]).empty())
      throw ParseError(static_cast<int>(at) + 1, 0, "expected " + std::to_string(h) + " rows, found more");
  return map;
}

inline std::string save_movingai(const GridMap& map) {
  if (map.dims() != 2) throw std::invalid_argument("save_movingai: only 2D maps");
  std::ostringstream os;
  os << "type octile\nheight " << map.extent(0) << "\nwidth " << map.extent(1) << "\nmap\n";
  for (int r = 0; r < map.extent(0); ++r) {
    for (int c = 0; c < map.extent(1); ++c) os << (map.is_obstacle(Cell(r, c)) ? '@' : '.');
    os << '\n';
  }
  return os.str();
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

// Native or MovingAI, decided by the first line.
inline GridMap load_map_text(std::string_view text) {
  if (text.starts_with("pbgrid")) return load_native(text);
  return parse_movingai(text);
}

inline GridMap load_map_file(const std::filesystem::path& path) { return load_map_text(read_text_file(path)); }

}  // namespace pathbench
