#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "pathbench/map_gen.hpp"
#include "pathbench/map_io.hpp"

using namespace pathbench;

namespace {

GenConfig cfg(MapType t, std::array<int, 3> extent, int dims = 2) {
  GenConfig c;
  c.type = t;
  c.dims = dims;
  c.extent = extent;
  return c;
}

bool connected(const GridMap& m) {
  const auto free = m.free_cells();
  if (free.empty()) return true;
  const auto seen = oracle::flood_fill(m, m.cell_at(free[0]), true);
  for (const auto i : free)
    if (!seen[i]) return false;
  return true;
}

}  // namespace

TEST(UniformFill, ZeroAndFullRates) {
  auto c = cfg(MapType::UniformRandomFill, {16, 16, 1});
  c.fill_rate = {0.0, 0.0};
  Rng rng(1);
  EXPECT_EQ(gen_uniform_random_fill(c, rng).obstacle_count(), 0u);
  c.extent = {4, 4, 1};
  c.fill_rate = {1.0, 1.0};
  EXPECT_EQ(gen_uniform_random_fill(c, rng).obstacle_count(), 16u);
}

TEST(UniformFill, ZeroExtentIsConfigError) {
  auto c = cfg(MapType::UniformRandomFill, {0, 8, 1});
  Rng rng(1);
  EXPECT_THROW(gen_uniform_random_fill(c, rng), ConfigError);
}

TEST(UniformFill, FillStatisticsOverSeeds) {
  auto c = cfg(MapType::UniformRandomFill, {64, 64, 1});
  double sum = 0.0;
  for (int s = 0; s < 100; ++s) {
    c.seed = 42 + static_cast<std::uint64_t>(s);
    const double f = static_cast<double>(generate_map(c).obstacle_count()) / (64.0 * 64.0);
    EXPECT_GE(f, 0.05);
    EXPECT_LE(f, 0.35);
    sum += f;
  }
  EXPECT_GE(sum / 100, 0.15);
  EXPECT_LE(sum / 100, 0.25);
}

TEST(GenConfig, ValidatesRanges) {
  auto c = cfg(MapType::UniformRandomFill, {8, 8, 1});
  c.fill_rate = {0.4, 0.2};
  EXPECT_THROW(c.validate(), ConfigError);
  c = cfg(MapType::Block, {8, 8, 1});
  c.obstacle_count = {3, 1};
  EXPECT_THROW(c.validate(), ConfigError);
  c = cfg(MapType::House, {8, 8, 1});
  c.min_room = {0, 4};
  EXPECT_THROW(c.validate(), ConfigError);
  c.dims = 4;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(BlockMap, ZeroBlocksIsEmpty) {
  auto c = cfg(MapType::Block, {16, 16, 1});
  c.obstacle_count = {0, 0};
  Rng rng(3);
  EXPECT_EQ(gen_block_map(c, rng).obstacle_count(), 0u);
}

TEST(BlockMap, OneBlockQuarterFillIsOneRectangle) {
  auto c = cfg(MapType::Block, {8, 8, 1});
  c.obstacle_count = {1, 1};
  c.fill_rate = {0.25, 0.25};
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    const GridMap m = gen_block_map(c, rng);
    ASSERT_EQ(m.obstacle_count(), 16u) << "seed " << s;
    int lo0 = 99, hi0 = -1, lo1 = 99, hi1 = -1;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m.is_obstacle(i)) continue;
      const Cell cell = m.cell_at(i);
      lo0 = std::min(lo0, cell[0]);
      hi0 = std::max(hi0, cell[0]);
      lo1 = std::min(lo1, cell[1]);
      hi1 = std::max(hi1, cell[1]);
    }
    EXPECT_EQ((hi0 - lo0 + 1) * (hi1 - lo1 + 1), 16) << "seed " << s;
  }
}

TEST(BlockMap, FullFillCoversMap) {
  auto c = cfg(MapType::Block, {4, 4, 1});
  c.obstacle_count = {1, 1};
  c.fill_rate = {1.0, 1.0};
  Rng rng(2);
  EXPECT_EQ(gen_block_map(c, rng).obstacle_count(), 16u);
}

TEST(BlockMap, ThreeDimensional) {
  auto c = cfg(MapType::Block, {12, 12, 12}, 3);
  c.seed = 9;
  const GridMap m = generate_map(c);
  EXPECT_EQ(m.dims(), 3);
  EXPECT_GT(m.obstacle_count(), 0u);
}

TEST(HouseMap, SmallExtentIsOneWalledRoom) {
  auto c = cfg(MapType::House, {12, 10, 1});
  c.seed = 4;
  const GridMap m = generate_map(c);
  for (int r = 0; r < 12; ++r)
    for (int col = 0; col < 10; ++col) {
      const bool border = r == 0 || r == 11 || col == 0 || col == 9;
      EXPECT_EQ(m.is_obstacle(Cell(r, col)), border) << r << "," << col;
    }
}

TEST(HouseMap, TooSmallForAnyRoomIsConfigError) {
  auto c = cfg(MapType::House, {2, 8, 1});
  EXPECT_THROW(generate_map(c), ConfigError);
}

TEST(HouseMap, DoorsKeepEveryRoomReachable) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto c = cfg(MapType::House, {64, 64, 1});
    c.seed = s;
    Rng rng(s);
    const auto h = gen_house_layout(c, rng);
    EXPECT_GT(h.rooms.size(), 1u);
    EXPECT_EQ(h.doors.size() + 1, h.rooms.size());
    EXPECT_TRUE(connected(h.map)) << "seed " << s;
  }
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto c = cfg(MapType::House, {28, 28, 28}, 3);
    c.seed = s;
    EXPECT_TRUE(connected(generate_map(c))) << "seed " << s;
  }
}

TEST(Generate, DeterministicPerSeed) {
  for (const auto t : {MapType::UniformRandomFill, MapType::Block, MapType::House}) {
    auto c = cfg(t, {64, 64, 1});
    c.seed = 123;
    EXPECT_EQ(save_native(generate_map(c)), save_native(generate_map(c)));
    auto d = c;
    d.seed = 124;
    EXPECT_NE(generate_map(c), generate_map(d));
  }
}

TEST(PlaceAgentGoal, TwoFreeCellsAreForced) {
  GridMap m(3, 3);
  m.fill(true);
  m.set_obstacle(Cell(0, 2), false);
  m.set_obstacle(Cell(2, 1), false);
  Rng rng(8);
  const GridMap p = place_agent_goal(m, rng);
  EXPECT_NE(*p.agent(), *p.goal());
  for (const auto& c : {*p.agent(), *p.goal()}) EXPECT_TRUE(c == Cell(0, 2) || c == Cell(2, 1));
}

TEST(PlaceAgentGoal, FewerThanTwoFreeIsMapError) {
  GridMap m(2, 2);
  m.fill(true);
  m.set_obstacle(Cell(0, 0), false);
  Rng rng(1);
  EXPECT_THROW(place_agent_goal(m, rng), MapError);
}

TEST(PlaceAgentGoal, StartIsUniform) {
  const GridMap m(8, 8);
  Rng rng(2024);
  std::vector<int> hits(64, 0);
  for (int i = 0; i < 1000; ++i) ++hits[m.index(*place_agent_goal(m, rng).agent())];
  const double p = 1.0 / 64, mean = 1000 * p, sd = std::sqrt(1000 * p * (1 - p));
  for (const int h : hits) {
    EXPECT_GE(h, mean - 3 * sd - 1e-9);
    EXPECT_LE(h, mean + 3 * sd + 1e-9);
  }
}

TEST(PlaceAgentGoal, SameSeedSamePlacement) {
  const GridMap m(8, 8);
  Rng a(77), b(77);
  const auto pa = place_agent_goal(m, a), pb = place_agent_goal(m, b);
  EXPECT_EQ(pa.agent(), pb.agent());
  EXPECT_EQ(pa.goal(), pb.goal());
}
