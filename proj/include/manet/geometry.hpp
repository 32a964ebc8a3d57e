#ifndef MANET_GEOMETRY_HPP
#define MANET_GEOMETRY_HPP

#include "manet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace manet {

using Energy = double;
using LevelIndex = int;

// Position in pixels. The library is 2D by default, z is carried but 0.
struct Point
{
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

// Extent of the simulated space; valid coordinates are 0..x, 0..y, 0..z.
struct Space
{
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;

    friend bool operator==(const Space&, const Space&) = default;

    bool contains(const Point& p) const noexcept
    {
        return p.x >= 0 && p.y >= 0 && p.z >= 0 && p.x <= x && p.y <= y && p.z <= z;
    }
};

struct SectorCoord
{
    std::int64_t col = 0;
    std::int64_t row = 0;

    friend auto operator<=>(const SectorCoord&, const SectorCoord&) = default;
};

// Square sectors covering the space; the last column/row may be partial.
struct SectorGrid
{
    std::int64_t sector_size = 0;
    std::int64_t space_width = 0;
    std::int64_t space_height = 0;

    SectorGrid() = default;
    SectorGrid(std::int64_t size, std::int64_t width, std::int64_t height)
        : sector_size(size), space_width(width), space_height(height)
    {
        if (size <= 0)
            throw ConfigError("sector size must be positive");
        if (width < 0 || height < 0)
            throw ConfigError("space dimensions must be non-negative");
    }

    std::int64_t columns() const noexcept { return std::max<std::int64_t>(1, (space_width + sector_size - 1) / sector_size); }
    std::int64_t rows() const noexcept { return std::max<std::int64_t>(1, (space_height + sector_size - 1) / sector_size); }
};

// How reachability between two devices is decided.
//  sector:    Chebyshev distance between sector coordinates <= level range
//  euclidean: (distance in sector units)^alpha <= level energy
enum class DistanceMode
{
    sector,
    euclidean,
};

inline std::string to_string(DistanceMode mode)
{
    return mode == DistanceMode::sector ? "sector" : "euclidean";
}

inline DistanceMode parse_distance_mode(const std::string& s)
{
    if (s == "sector")
        return DistanceMode::sector;
    if (s == "euclidean")
        return DistanceMode::euclidean;
    throw ConfigError("unknown distance mode '" + s + "'");
}

struct PowerLevel
{
    LevelIndex id = 0;
    std::int64_t range_sectors = 0;
    Energy cost = 0;

    friend bool operator==(const PowerLevel&, const PowerLevel&) = default;
};

/// Range in sectors covered by level `l`: l * (l + 1).
constexpr std::int64_t level_range_sectors(LevelIndex l)
{
    if (l < 1)
        throw InvalidLevelError("power level must be >= 1, got " + std::to_string(l));
    return static_cast<std::int64_t>(l) * (l + 1);
}

/// Energy to cover the level's range: range squared.
constexpr Energy level_cost(LevelIndex l)
{
    const auto d = level_range_sectors(l);
    return static_cast<Energy>(d * d);
}

/// Standard level table {1..count}.
inline std::vector<PowerLevel> default_levels(int count)
{
    if (count < 1)
        throw ConfigError("level count must be >= 1");
    std::vector<PowerLevel> levels;
    levels.reserve(static_cast<std::size_t>(count));
    for (LevelIndex l = 1; l <= count; ++l)
        levels.push_back({l, level_range_sectors(l), level_cost(l)});
    return levels;
}

inline double euclidean_distance(const Point& p, const Point& q)
{
    const double dx = static_cast<double>(p.x - q.x);
    const double dy = static_cast<double>(p.y - q.y);
    const double dz = static_cast<double>(p.z - q.z);
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline void check_alpha(double alpha)
{
    if (!(alpha >= 2.0 && alpha <= 4.0))
        throw ConfigError("channel-loss exponent must lie in [2, 4]");
}

/// Minimum transmit energy from p to q with unit proportionality: d^alpha.
inline Energy pair_energy(const Point& p, const Point& q, double alpha)
{
    check_alpha(alpha);
    return std::pow(euclidean_distance(p, q), alpha);
}

/// Sector containing `p`. Points on the far boundary of a space whose size
/// is a multiple of the sector size fall into the last sector.
inline SectorCoord sector_of(const Point& p, const SectorGrid& grid)
{
    if (p.x < 0 || p.y < 0 || p.x > grid.space_width || p.y > grid.space_height)
        throw OutOfBoundsError("point (" + std::to_string(p.x) + "," + std::to_string(p.y) + ") lies outside the space");
    return {std::min(p.x / grid.sector_size, grid.columns() - 1),
            std::min(p.y / grid.sector_size, grid.rows() - 1)};
}

/// Chebyshev distance between sectors.
constexpr std::int64_t sector_distance(const SectorCoord& a, const SectorCoord& b) noexcept
{
    const auto dc = a.col > b.col ? a.col - b.col : b.col - a.col;
    const auto dr = a.row > b.row ? a.row - b.row : b.row - a.row;
    return dc > dr ? dc : dr;
}

// Link-budget helper shared by edge construction and constraint checks.
// Energy needed for a link, in sector-normalised units so it compares
// directly against level costs.
inline Energy link_energy(const Point& p, const Point& q, std::int64_t sector_size, double alpha)
{
    const double d = euclidean_distance(p, q) / static_cast<double>(sector_size);
    return std::pow(d, alpha);
}

inline bool euclidean_reaches(const Point& p, const Point& q, std::int64_t sector_size, double alpha, Energy budget)
{
    if (alpha == 2.0) {
        // exact integer test: |pq|^2 <= budget * size^2
        const auto dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
        const double lhs = static_cast<double>(dx * dx + dy * dy + dz * dz);
        return lhs <= budget * static_cast<double>(sector_size * sector_size);
    }
    return link_energy(p, q, sector_size, alpha) <= budget * (1.0 + 1e-12);
}

} // namespace manet

#endif // MANET_GEOMETRY_HPP
