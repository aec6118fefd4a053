#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pathbench/graph_planners.hpp"
#include "pathbench/map_io.hpp"
#include "pathbench/metrics.hpp"

using namespace pathbench;

namespace {

const std::filesystem::path kData = PATHBENCH_TEST_DATA;
const double r2 = std::sqrt(2.0), r5 = std::sqrt(5.0);

GridMap fixture() { return load_map_file(kData / "fixture_6x6.pbgrid"); }

Path detour() {
  return Path({Cell(5, 0), Cell(5, 1), Cell(4, 2), Cell(4, 3), Cell(4, 4), Cell(4, 5), Cell(3, 5), Cell(2, 5),
               Cell(1, 5), Cell(0, 5)});
}

}  // namespace

// Golden values below were computed by hand and by a separate brute-force
// script, not by this library.

TEST(Golden, DistanceTransform) {
  const GridMap m = fixture();
  const auto f = distance_transform(m);
  const double expect[6][6] = {{r2, 1, r2, 2, 2, r5},     {1, 0, 1, 1, 1, r2},       {r2, 1, 1, 0, 0, 1},
                               {2, 1, 0, 1, 1, r2},       {r5, r2, 1, 1, r2, r5},    {2 * r2, 2, 1, 0, 1, 2}};
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) EXPECT_NEAR(f.at(m, Cell(r, c)), expect[r][c], 1e-9) << r << "," << c;
  const auto brute = oracle::brute_edt(m);
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(f.at(i), brute[i], 1e-9);
}

TEST(Golden, AStarPathAndSearchSpace) {
  const GridMap m = fixture();
  const auto o = astar(m);
  ASSERT_TRUE(o.success);
  const std::vector<Cell> expect{Cell(5, 0), Cell(4, 1), Cell(4, 2), Cell(4, 3), Cell(3, 4),
                                 Cell(3, 5), Cell(2, 5), Cell(1, 5), Cell(0, 5)};
  EXPECT_EQ(o.path->cells, expect);
  EXPECT_NEAR(o.path->cost, 6 + 2 * r2, 1e-9);
  EXPECT_EQ(m.free_count(), 31u);
  EXPECT_EQ(o.trace.explored.size(), 17u);
  EXPECT_NEAR(search_space_pct(o.trace, m), 100.0 * 17 / 31, 1e-9);
}

TEST(Golden, AStarPathClearanceAndSmoothness) {
  const GridMap m = fixture();
  const auto f = distance_transform(m);
  const auto o = astar(m);
  EXPECT_NEAR(*obstacle_clearance(*o.path, m, f), (4 + 5 * r2 + r5) / 9, 1e-9);
  EXPECT_NEAR(*smoothness_deg(*o.path), 225.0 / 7, 1e-9);
}

TEST(Golden, DetourMetrics) {
  const GridMap m = fixture();
  const auto f = distance_transform(m);
  const Path p = detour();
  ASSERT_FALSE(validate_path(m, MoveModel{}, p, m.agent(), m.goal()));
  EXPECT_NEAR(p.cost, 8 + r2, 1e-12);
  EXPECT_NEAR(path_deviation_pct(p.cost, 6 + 2 * r2), 100 * (2 - r2) / (6 + 2 * r2), 1e-9);
  EXPECT_NEAR(*obstacle_clearance(p, m, f), (5 + 5 * r2 + 2 * r5) / 10, 1e-9);
  EXPECT_NEAR(*smoothness_deg(p), 22.5, 1e-9);

  PlanOutcome out;
  out.success = true;
  out.path = p;
  const auto r = compute_report(out, astar(m), m, f);
  EXPECT_NEAR(*r.path_deviation_pct, 6.635229915246617, 1e-9);
  EXPECT_EQ(*r.path_cells, 10.0);
  EXPECT_EQ(r.distance_left_cells, 0.0);
}

TEST(Deviation, Examples) {
  EXPECT_EQ(path_deviation_pct(10.0, 10.0), 0.0);
  EXPECT_DOUBLE_EQ(path_deviation_pct(13.5, 10.0), 35.0);
  EXPECT_THROW(path_deviation_pct(1.0, 0.0), std::domain_error);
}

TEST(SearchSpace, Examples) {
  GridMap m(3, 3);
  m.set_obstacle(Cell(1, 1));
  SearchTrace t;
  EXPECT_EQ(search_space_pct(t, m), 0.0);
  for (const auto i : m.free_cells()) t.explored.push_back(m.cell_at(i));
  EXPECT_EQ(search_space_pct(t, m), 100.0);
}

TEST(Clearance, Examples) {
  GridMap m(4, 6);
  for (int c = 0; c < 6; ++c) m.set_obstacle(Cell(0, c));
  const Path hug({Cell(1, 0), Cell(1, 1), Cell(1, 2), Cell(1, 3)});
  EXPECT_EQ(*obstacle_clearance(hug, m, distance_transform(m)), 1.0);
  const GridMap open(4, 6);
  EXPECT_FALSE(obstacle_clearance(hug, open, distance_transform(open)));
}

TEST(Clearance, TranslationInvariant) {
  const GridMap m = fixture();
  GridMap big(10, 12);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Cell c = m.cell_at(i);
    if (m.is_obstacle(i)) big.set_obstacle(Cell(c[0] + 2, c[1] + 3));
  }
  const Path p = *astar(m).path;
  std::vector<Cell> shifted;
  for (const auto& c : p.cells) shifted.push_back(Cell(c[0] + 2, c[1] + 3));
  const Path q(shifted);
  EXPECT_NEAR(*obstacle_clearance(p, m, distance_transform(m)), *obstacle_clearance(q, big, distance_transform(big)),
              1e-12);
}

TEST(Smoothness, Examples) {
  EXPECT_EQ(*smoothness_deg(Path({Cell(0, 0), Cell(0, 1), Cell(0, 2), Cell(0, 3)})), 0.0);
  EXPECT_NEAR(*smoothness_deg(Path({Cell(0, 0), Cell(0, 1), Cell(1, 1), Cell(1, 2), Cell(2, 2)})), 90.0, 1e-12);
  EXPECT_NEAR(*smoothness_deg(Path({Cell(0, 0), Cell(0, 1), Cell(1, 2), Cell(1, 3)})), 45.0, 1e-12);
  EXPECT_FALSE(smoothness_deg(Path({Cell(0, 0), Cell(0, 1)})));
}

TEST(Smoothness, ReversalInvariant) {
  Path p = detour();
  std::vector<Cell> rev(p.cells.rbegin(), p.cells.rend());
  EXPECT_NEAR(*smoothness_deg(p), *smoothness_deg(Path(rev)), 1e-12);
}

TEST(Report, SelfDeviationIsZero) {
  const GridMap m = fixture();
  const auto a = astar(m);
  const auto r = compute_report(a, a, m, distance_transform(m));
  EXPECT_EQ(*r.path_deviation_pct, 0.0);
  EXPECT_EQ(r.distance_left_cells, 0.0);
  EXPECT_TRUE(r.success);
}

TEST(Report, FailedRunDistanceLeft) {
  GridMap m(6, 6);
  m.set_agent(Cell(3, 4));
  m.set_goal(Cell(0, 0));
  PlanOutcome failed;
  failed.terminal_cell = Cell(3, 4);
  failed.failure = FailureReason::StepLimit;
  const auto r = compute_report(failed, astar(m), m, distance_transform(m));
  EXPECT_EQ(r.distance_left_cells, 5.0);
  EXPECT_FALSE(r.path_deviation_pct);
  EXPECT_FALSE(r.path_length_cells);
}

TEST(Report, BaselineFailureIsInconsistent) {
  GridMap m(3, 3);
  for (int c = 0; c < 3; ++c) m.set_obstacle(Cell(1, c));
  m.set_agent(Cell(0, 0));
  m.set_goal(Cell(2, 2));
  PlanOutcome fake;
  fake.success = true;
  fake.path = Path({Cell(0, 0), Cell(2, 2)});
  EXPECT_THROW(compute_report(fake, astar(m), m, distance_transform(m)), InconsistencyError);
}
