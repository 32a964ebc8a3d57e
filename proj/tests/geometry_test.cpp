#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace manet;

TEST(LevelTable, RangesFollowProductRule)
{
    EXPECT_EQ(level_range_sectors(1), 2);
    EXPECT_EQ(level_range_sectors(2), 6);
    EXPECT_EQ(level_range_sectors(3), 12);
    EXPECT_THROW(level_range_sectors(0), InvalidLevelError);
    EXPECT_THROW(level_range_sectors(-3), InvalidLevelError);
}

TEST(LevelTable, CostsAreSquaredRanges)
{
    EXPECT_EQ(level_cost(1), 4);
    EXPECT_EQ(level_cost(2), 36);
    EXPECT_EQ(level_cost(3), 144);
    EXPECT_THROW(level_cost(0), InvalidLevelError);
}

TEST(LevelTable, StrictlyMonotoneAndComposed)
{
    for (LevelIndex l = 1; l < 50; ++l) {
        EXPECT_LT(level_range_sectors(l), level_range_sectors(l + 1));
        EXPECT_LT(level_cost(l), level_cost(l + 1));
        const auto r = level_range_sectors(l);
        EXPECT_EQ(level_cost(l), static_cast<Energy>(r * r));
    }
    const auto table = default_levels(3);
    ASSERT_EQ(table.size(), 3u);
    EXPECT_EQ(table[2], (PowerLevel{3, 12, 144}));
}

TEST(Distance, Euclidean)
{
    EXPECT_DOUBLE_EQ(euclidean_distance({0, 0, 0}, {3, 4, 0}), 5.0);
    EXPECT_NEAR(euclidean_distance({107, 501, 0}, {261, 433, 0}), 168.34488409215172, 1e-9);
    EXPECT_EQ(euclidean_distance({7, 9, 0}, {7, 9, 0}), 0.0);
    EXPECT_DOUBLE_EQ(euclidean_distance({1, 2, 3}, {4, 6, 3}), euclidean_distance({4, 6, 3}, {1, 2, 3}));
}

TEST(Distance, PairEnergy)
{
    EXPECT_DOUBLE_EQ(pair_energy({0, 0, 0}, {3, 4, 0}, 2), 25.0);
    EXPECT_EQ(pair_energy({5, 5, 0}, {5, 5, 0}, 3.3), 0.0);
    EXPECT_DOUBLE_EQ(pair_energy({0, 0, 0}, {1, 0, 0}, 4), 1.0);
    EXPECT_THROW(pair_energy({0, 0, 0}, {1, 0, 0}, 1.9), ConfigError);
    EXPECT_THROW(pair_energy({0, 0, 0}, {1, 0, 0}, 4.1), ConfigError);
}

TEST(Sectors, FloorDivision)
{
    const SectorGrid grid(26, 702, 702);
    EXPECT_EQ(grid.columns(), 27);
    EXPECT_EQ(grid.rows(), 27);
    EXPECT_EQ(sector_of({107, 501, 0}, grid), (SectorCoord{4, 19}));
    EXPECT_EQ(sector_of({0, 0, 0}, grid), (SectorCoord{0, 0}));
    EXPECT_EQ(sector_of({682, 16, 0}, grid), (SectorCoord{26, 0}));
    // far boundary belongs to the last sector
    EXPECT_EQ(sector_of({702, 702, 0}, grid), (SectorCoord{26, 26}));
    EXPECT_THROW(sector_of({703, 0, 0}, grid), OutOfBoundsError);
    EXPECT_THROW(sector_of({-1, 0, 0}, grid), OutOfBoundsError);
    EXPECT_THROW(SectorGrid(0, 10, 10), ConfigError);
}

TEST(Sectors, ChebyshevDistance)
{
    EXPECT_EQ(sector_distance({4, 19}, {10, 16}), 6);
    EXPECT_EQ(sector_distance({3, 3}, {3, 3}), 0);
    EXPECT_EQ(sector_distance({14, 13}, {24, 2}), 11);
}

TEST(Sectors, ChebyshevIsAMetric)
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> c(0, 40);
    for (int i = 0; i < 2000; ++i) {
        const SectorCoord a{c(rng), c(rng)}, b{c(rng), c(rng)}, m{c(rng), c(rng)};
        EXPECT_EQ(sector_distance(a, b), sector_distance(b, a));
        EXPECT_EQ(sector_distance(a, b) == 0, a == b);
        EXPECT_LE(sector_distance(a, b), sector_distance(a, m) + sector_distance(m, b));
    }
}

// Every hop of the three reference routes is explained by the lowest
// level whose range covers the Chebyshev sector distance.
TEST(Sectors, ReferenceHopLevelsAreLowestCoveringLevels)
{
    const auto net = fixtures::reference();
    const auto grid = net.grid();
    int checked = 0;
    for (const auto* path : {&fixtures::reference_route1(), &fixtures::reference_route2(), &fixtures::reference_route3()}) {
        for (std::size_t i = 0; i + 1 < path->size(); ++i) {
            const auto& a = net.device((*path)[i].device);
            const auto& b = net.device((*path)[i + 1].device);
            const auto dist = sector_distance(sector_of(a.position, grid), sector_of(b.position, grid));
            LevelIndex lowest = 1;
            while (level_range_sectors(lowest) < dist)
                ++lowest;
            EXPECT_EQ(lowest, (*path)[i].level) << a.id << "->" << b.id;
            ++checked;
        }
    }
    EXPECT_EQ(checked, 17);
}

TEST(Sectors, EuclideanRangeWouldMissReferenceLevel)
{
    // 12 -> 37 uses level 2 although it is longer than 6 sectors in
    // straight-line distance; only the sector metric explains it.
    const Point a{107, 501, 0}, b{261, 433, 0};
    EXPECT_GT(euclidean_distance(a, b), 6.0 * 26);
    EXPECT_FALSE(euclidean_reaches(a, b, 26, 2.0, level_cost(2)));
    EXPECT_TRUE(euclidean_reaches(a, b, 26, 2.0, level_cost(3)));
}
