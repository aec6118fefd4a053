#pragma once

#include "analyzer.hpp"
#include "dataset.hpp"
#include "distance_field.hpp"
#include "graph_planners.hpp"
#include "grid.hpp"
#include "line.hpp"
#include "local_planners.hpp"
#include "map_gen.hpp"
#include "map_io.hpp"
#include "metrics.hpp"
#include "outcome.hpp"
#include "plot.hpp"
#include "registry.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "sampling_planners.hpp"

namespace pathbench {

inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace pathbench
