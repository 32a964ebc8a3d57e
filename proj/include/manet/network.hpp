#ifndef MANET_NETWORK_HPP
#define MANET_NETWORK_HPP

#include "manet/errors.hpp"
#include "manet/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace manet {

using DeviceId = std::int64_t;

// A positioned device. Supported levels are always the prefix 1..max_level.
struct Device
{
    DeviceId id = 0;
    Point position;
    LevelIndex max_level = 1;

    bool supports(LevelIndex l) const noexcept { return l >= 1 && l <= max_level; }

    friend bool operator==(const Device&, const Device&) = default;
};

struct NetworkParams
{
    Space space{702, 702, 0};
    std::int64_t sector_size = 26;
    double alpha = 2.0;
    Energy swing_cost = 1;       // Cb
    Energy destination_cost = 2; // Cd
    std::vector<PowerLevel> levels = default_levels(3);
    std::optional<std::uint64_t> seed;

    friend bool operator==(const NetworkParams&, const NetworkParams&) = default;
};

// Immutable snapshot of an ad-hoc network. Construction validates every
// invariant; devices are kept sorted by id.
class Network
{
public:
    Network(NetworkParams params, std::vector<Device> devices)
        : params_(std::move(params)), devices_(std::move(devices))
    {
        std::sort(devices_.begin(), devices_.end(), [](const Device& a, const Device& b) { return a.id < b.id; });
        validate();
        index_.reserve(devices_.size());
        for (std::size_t i = 0; i < devices_.size(); ++i)
            index_.emplace(devices_[i].id, i);
    }

    const NetworkParams& params() const noexcept { return params_; }
    const Space& space() const noexcept { return params_.space; }
    std::int64_t sector_size() const noexcept { return params_.sector_size; }
    SectorGrid grid() const { return {params_.sector_size, params_.space.x, params_.space.y}; }
    double alpha() const noexcept { return params_.alpha; }
    Energy swing_cost() const noexcept { return params_.swing_cost; }
    Energy destination_cost() const noexcept { return params_.destination_cost; }
    const std::vector<PowerLevel>& levels() const noexcept { return params_.levels; }
    LevelIndex level_count() const noexcept { return static_cast<LevelIndex>(params_.levels.size()); }
    const std::vector<Device>& devices() const noexcept { return devices_; }
    std::size_t size() const noexcept { return devices_.size(); }
    const std::optional<std::uint64_t>& seed() const noexcept { return params_.seed; }

    const PowerLevel& level(LevelIndex l) const
    {
        if (l < 1 || l > level_count())
            throw InvalidLevelError("level " + std::to_string(l) + " is not defined by the network");
        return params_.levels[static_cast<std::size_t>(l - 1)];
    }

    std::optional<std::size_t> index_of(DeviceId id) const
    {
        auto it = index_.find(id);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    bool contains(DeviceId id) const { return index_.contains(id); }

    const Device& device(DeviceId id) const
    {
        auto idx = index_of(id);
        if (!idx)
            throw ValidationError("unknown device id " + std::to_string(id));
        return devices_[*idx];
    }

    // Same devices, different Cb/Cd.
    Network with_costs(Energy swing_cost, Energy destination_cost) const
    {
        NetworkParams p = params_;
        p.swing_cost = swing_cost;
        p.destination_cost = destination_cost;
        return Network(std::move(p), devices_);
    }

    friend bool operator==(const Network& a, const Network& b)
    {
        return a.params_ == b.params_ && a.devices_ == b.devices_;
    }

private:
    void validate() const
    {
        const auto& p = params_;
        if (p.space.x <= 0 || p.space.y <= 0 || p.space.z < 0)
            throw ValidationError("space dimensions must be positive");
        if (p.sector_size <= 0)
            throw ValidationError("sector_size must be positive");
        if (!(p.alpha >= 2.0 && p.alpha <= 4.0))
            throw ValidationError("alpha must lie in [2, 4]");
        if (!(p.swing_cost >= 0) || !(p.destination_cost >= 0))
            throw ValidationError("cb and cd must be non-negative");
        if (p.levels.empty())
            throw ValidationError("at least one power level is required");
        for (std::size_t i = 0; i < p.levels.size(); ++i) {
            const auto& lv = p.levels[i];
            if (lv.id != static_cast<LevelIndex>(i + 1))
                throw ValidationError("level ids must be 1..L in order");
            if (lv.range_sectors <= 0 || !(lv.cost > 0))
                throw ValidationError("level " + std::to_string(lv.id) + " must have positive range and cost");
            if (i > 0 && (lv.range_sectors <= p.levels[i - 1].range_sectors || lv.cost <= p.levels[i - 1].cost))
                throw ValidationError("level ranges and costs must strictly increase");
        }
        for (std::size_t i = 0; i < devices_.size(); ++i) {
            const auto& d = devices_[i];
            if (d.id < 0)
                throw ValidationError("device ids must be non-negative");
            if (i > 0 && devices_[i - 1].id == d.id)
                throw ValidationError("duplicate device id " + std::to_string(d.id));
            if (!p.space.contains(d.position))
                throw ValidationError("device " + std::to_string(d.id) + " lies outside the space");
            if (d.max_level < 1 || d.max_level > static_cast<LevelIndex>(p.levels.size()))
                throw ValidationError("device " + std::to_string(d.id) + " has invalid max_level");
        }
    }

    NetworkParams params_;
    std::vector<Device> devices_;
    std::unordered_map<DeviceId, std::size_t> index_;
};

} // namespace manet

#endif // MANET_NETWORK_HPP
