#pragma once

// Result of a single planning session, shared by every planner family.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "grid.hpp"

namespace pathbench {

enum class FailureReason {
  None,
  Unreachable,    // search exhausted or boundary loop closed without progress
  SampleBudget,   // sampling planner ran out of samples
  StepLimit,      // local planner exceeded its step limit
  LocalMinimum,   // potential field trapped
  Crashed,        // planner threw; recorded by the harness
};

inline std::string_view to_string(FailureReason r) {
  switch (r) {
    case FailureReason::None: return "none";
    case FailureReason::Unreachable: return "unreachable";
    case FailureReason::SampleBudget: return "sample_budget";
    case FailureReason::StepLimit: return "step_limit";
    case FailureReason::LocalMinimum: return "local_minimum";
    case FailureReason::Crashed: return "crashed";
  }
  return "unknown";
}

inline std::optional<FailureReason> failure_reason_from_string(std::string_view s) {
  for (auto r : {FailureReason::None, FailureReason::Unreachable, FailureReason::SampleBudget,
                 FailureReason::StepLimit, FailureReason::LocalMinimum, FailureReason::Crashed})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

struct TraceStep {
  Cell cell;
  double f = 0.0;
  double g = 0.0;
};

struct SearchTrace {
  std::vector<Cell> explored;  // unique cells, in first-visit order
  std::size_t frontier_peak = 0;
  std::vector<TraceStep> step_log;  // filled only when requested
};

// Edges of a sampling tree or roadmap, for external rendering.
struct TreeDump {
  std::vector<Cell> nodes;
  std::vector<std::pair<int, int>> edges;  // (parent, child) or (a, b)
};

struct PlanOutcome {
  bool success = false;
  std::optional<Path> path;
  SearchTrace trace;
  double elapsed_seconds = 0.0;
  std::size_t peak_memory_bytes = 0;
  Cell terminal_cell;
  FailureReason failure = FailureReason::None;
  std::string failure_detail;
  std::optional<TreeDump> tree;
};

// Bookkeeping of planner-owned memory: callers report allocations and
// releases, the meter keeps the high-water mark.
class MemoryMeter {
 public:
  void add(std::size_t bytes) {
    current_ += bytes;
    peak_ = std::max(peak_, current_);
  }
  void release(std::size_t bytes) { current_ -= std::min(bytes, current_); }
  // Reports a container whose size changes: only growth beyond the last
  // reported value counts.
  void observe(std::size_t& last, std::size_t now) {
    if (now > last) add(now - last);
    else release(last - now);
    last = now;
  }
  std::size_t peak() const { return peak_; }

 private:
  std::size_t current_ = 0;
  std::size_t peak_ = 0;
};

template <typename T>
std::size_t bytes_of(const std::vector<T>& v) {
  return v.capacity() * sizeof(T);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct PlanOptions {
  bool record_steps = false;
  bool record_tree = false;
};

// One line per expansion: `cell f g`.
inline void write_step_trace(std::ostream& os, const SearchTrace& trace) {
  for (const auto& s : trace.step_log) os << s.cell.str() << ' ' << s.f << ' ' << s.g << '\n';
}

// `node <id> <cell>` lines followed by `edge <a> <b>` lines.
inline void write_tree_dump(std::ostream& os, const TreeDump& tree) {
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) os << "node " << i << ' ' << tree.nodes[i].str() << '\n';
  for (const auto& [a, b] : tree.edges) os << "edge " << a << ' ' << b << '\n';
}

}  // namespace pathbench
