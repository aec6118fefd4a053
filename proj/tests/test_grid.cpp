#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pathbench/distance_field.hpp"
#include "pathbench/grid.hpp"
#include "pathbench/line.hpp"
#include "pathbench/rng.hpp"

using namespace pathbench;

TEST(Grid, IndexIsRowMajorLastAxisFastest) {
  GridMap m2(3, 5);
  EXPECT_EQ(m2.index(Cell(0, 1)), 1u);
  EXPECT_EQ(m2.index(Cell(1, 0)), 5u);
  GridMap m3(2, 3, 4);
  EXPECT_EQ(m3.index(Cell(0, 0, 1)), 1u);
  EXPECT_EQ(m3.index(Cell(0, 1, 0)), 4u);
  EXPECT_EQ(m3.index(Cell(1, 0, 0)), 12u);
  for (std::size_t i = 0; i < m3.size(); ++i) EXPECT_EQ(m3.index(m3.cell_at(i)), i);
}

TEST(Grid, RejectsBadExtents) {
  EXPECT_THROW(GridMap(0, 4), std::invalid_argument);
  EXPECT_THROW(GridMap(2, 2, -1), std::invalid_argument);
}

TEST(Grid, EndpointsMustBeFreeAndInBounds) {
  GridMap m(3, 3);
  m.set_obstacle(Cell(1, 1));
  EXPECT_THROW(m.set_agent(Cell(1, 1)), std::domain_error);
  EXPECT_THROW(m.set_goal(Cell(3, 0)), std::domain_error);
  m.set_agent(Cell(0, 0));
  EXPECT_TRUE(m.agent());
  EXPECT_FALSE(m.has_endpoints());
}

TEST(Neighbors, InteriorCounts) {
  const MoveModel full;
  EXPECT_EQ(neighbors(GridMap(5, 5), Cell(2, 2), full).size(), 8u);
  EXPECT_EQ(neighbors(GridMap(5, 5, 5), Cell(2, 2, 2), full).size(), 26u);
  const MoveModel orth(Connectivity::Orthogonal);
  EXPECT_EQ(neighbors(GridMap(5, 5), Cell(2, 2), orth).size(), 4u);
  EXPECT_EQ(neighbors(GridMap(5, 5, 5), Cell(2, 2, 2), orth).size(), 6u);
}

TEST(Neighbors, CornerIsClipped) {
  EXPECT_EQ(neighbors(GridMap(5, 5), Cell(0, 0), MoveModel{}).size(), 3u);
}

TEST(Neighbors, OutOfBoundsThrows) {
  EXPECT_THROW(neighbors(GridMap(5, 5), Cell(5, 0), MoveModel{}), std::domain_error);
}

TEST(Neighbors, DiagonalNeedsBothShoulders) {
  GridMap m(3, 3);
  m.set_obstacle(Cell(0, 1));
  const auto ns = neighbors(m, Cell(1, 1), MoveModel{});
  // (0,0) and (0,2) lose their diagonals, (0,1) itself is blocked
  EXPECT_EQ(ns.size(), 5u);
  for (const auto& n : ns) EXPECT_NE(n.cell[0], 0);
}

TEST(Neighbors, CostsAndSymmetry) {
  const MoveModel model;
  pathbench::Rng rng(7);
  const GridMap m = oracle::random_map3(rng, 5, 5, 5, 0.3);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.is_obstacle(i)) continue;
    const Cell c = m.cell_at(i);
    for (const auto& n : neighbors(m, c, model)) {
      EXPECT_DOUBLE_EQ(n.cost, euclidean_distance(c, n.cell));
      bool back = false;
      for (const auto& r : neighbors(m, n.cell, model)) back |= r.cell == c && r.cost == n.cost;
      EXPECT_TRUE(back) << c.str() << " -> " << n.cell.str();
    }
  }
}

TEST(Neighbors, MatchIndependentLegality) {
  pathbench::Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const GridMap m = t % 2 ? oracle::random_map(rng, 6, 7, 0.35) : oracle::random_map3(rng, 4, 4, 4, 0.35);
    for (const bool orth : {false, true}) {
      const MoveModel model(orth ? Connectivity::Orthogonal : Connectivity::Full);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m.is_obstacle(i)) continue;
        const Cell c = m.cell_at(i);
        std::vector<Cell> expect;
        for (const auto& d : oracle::all_deltas(m.dims(), orth))
          if (oracle::legal(m, c, d)) expect.push_back(oracle::shift(c, d));
        std::vector<Cell> got;
        for (const auto& n : neighbors(m, c, model)) got.push_back(n.cell);
        EXPECT_EQ(got, expect);
      }
    }
  }
}

TEST(Euclidean, Examples) {
  EXPECT_EQ(euclidean_distance(Cell(0, 0), Cell(0, 0)), 0.0);
  EXPECT_EQ(euclidean_distance(Cell(0, 0), Cell(3, 4)), 5.0);
  EXPECT_EQ(euclidean_distance(Cell(1, 2, 2), Cell(3, 5, 8)), 7.0);
  EXPECT_THROW(euclidean_distance(Cell(0, 0), Cell(0, 0, 0)), std::domain_error);
}

TEST(Heuristic, Examples) {
  const MoveModel full;
  EXPECT_EQ(heuristic(Cell(2, 3), Cell(2, 3), full), 0.0);
  EXPECT_DOUBLE_EQ(heuristic(Cell(0, 0), Cell(3, 1), full), std::sqrt(2.0) + 2.0);
  EXPECT_DOUBLE_EQ(heuristic(Cell(0, 0, 0), Cell(1, 2, 3), full), std::sqrt(3.0) + std::sqrt(2.0) + 1.0);
  EXPECT_EQ(heuristic(Cell(0, 0), Cell(3, 1), MoveModel(Connectivity::Orthogonal)), 4.0);
}

TEST(WalkCost, CountsMoveTypes) {
  const std::vector<Cell> w{Cell(0, 0), Cell(1, 1), Cell(1, 2), Cell(2, 3)};
  EXPECT_DOUBLE_EQ(walk_cost(w), 1.0 + 2.0 * std::sqrt(2.0));
  const std::vector<Cell> v{Cell(0, 0), Cell(0, 1), Cell(1, 2), Cell(2, 3)};
  EXPECT_EQ(walk_cost(w), walk_cost(v));
}

TEST(ValidatePath, ReportsViolations) {
  GridMap m(3, 3);
  m.set_obstacle(Cell(1, 0));
  const MoveModel model;
  EXPECT_FALSE(validate_path(m, model, Path({Cell(0, 0), Cell(0, 1), Cell(1, 1)})));
  EXPECT_TRUE(validate_path(m, model, Path({Cell(0, 0), Cell(1, 1)})));  // corner cut
  EXPECT_TRUE(validate_path(m, model, Path({Cell(0, 0), Cell(0, 2)})));  // not adjacent
  EXPECT_TRUE(validate_path(m, model, Path({Cell(0, 0), Cell(1, 0)})));  // obstacle
  EXPECT_TRUE(validate_path(m, model, Path{}));
}

TEST(DistanceTransform, NoObstaclesIsUnbounded) {
  const auto f = distance_transform(GridMap(4, 4));
  EXPECT_TRUE(f.unbounded());
  for (const double v : f.values()) EXPECT_TRUE(std::isinf(v));
}

TEST(DistanceTransform, SingleObstacle) {
  GridMap m(8, 8);
  m.set_obstacle(Cell(0, 0));
  const auto f = distance_transform(m);
  EXPECT_FALSE(f.unbounded());
  EXPECT_EQ(f.at(m, Cell(3, 4)), 5.0);
  EXPECT_EQ(f.at(m, Cell(0, 0)), 0.0);
}

TEST(DistanceTransform, MatchesBruteForce) {
  pathbench::Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const GridMap m = t % 4 == 3 ? oracle::random_map3(rng, 4, 5, 3, 0.15) : oracle::random_map(rng, 5, 5, 0.2);
    const auto f = distance_transform(m);
    const auto expect = oracle::brute_edt(m);
    ASSERT_EQ(f.unbounded(), m.obstacle_count() == 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (std::isinf(expect[i])) {
        EXPECT_TRUE(std::isinf(f.at(i)));
      } else {
        EXPECT_NEAR(f.at(i), expect[i], 1e-12);
      }
    }
  }
}

TEST(Line, StepsAreSingleMoves) {
  const MoveModel full, orth(Connectivity::Orthogonal);
  const auto a = line_cells(Cell(0, 0), Cell(2, 5), full);
  EXPECT_EQ(a.size(), 6u);
  EXPECT_EQ(a.back(), Cell(2, 5));
  const auto b = line_cells(Cell(0, 0), Cell(2, 5), orth);
  EXPECT_EQ(b.size(), 8u);
  for (std::size_t i = 1; i < b.size(); ++i) EXPECT_EQ(euclidean_distance(b[i - 1], b[i]), 1.0);
  EXPECT_EQ(line_cells(Cell(1, 1), Cell(1, 1), full).size(), 1u);
}

TEST(Rng, DeriveSeedIsOrderSensitive) {
  EXPECT_EQ(derive_seed(1, {2, 3}), derive_seed(1, {2, 3}));
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(1, {3, 2}));
  EXPECT_NE(derive_seed(1, {2, 3}), derive_seed(2, {2, 3}));
}

TEST(Rng, MappingsStayInRange) {
  pathbench::Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const auto k = uniform_index(rng, 7);
    EXPECT_LT(k, 7u);
    const double x = uniform_real(rng);
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    const auto v = uniform_int(rng, -3, 3);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 3);
  }
}

TEST(Rng, EngineOutputIsStandardMt19937_64) {
  // 10000th output of a default-seeded mt19937_64, fixed by the C++ standard
  std::mt19937_64 rng;
  rng.discard(9999);
  EXPECT_EQ(rng(), 9981545732273789042ULL);
}
