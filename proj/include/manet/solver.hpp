#ifndef MANET_SOLVER_HPP
#define MANET_SOLVER_HPP

#include "manet/errors.hpp"
#include "manet/geometry.hpp"
#include "manet/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace manet {

enum class EdgePolicy
{
    lowest_level, // one edge per reachable pair, at the sender's lowest feasible level
    all_levels,   // one edge per supported level that reaches
};

struct EdgeOptions
{
    DistanceMode mode = DistanceMode::sector;
    EdgePolicy policy = EdgePolicy::lowest_level;
};

// ---------------------------------------------------------------------------
// Reachability

/// True when `from` transmitting at level `l` reaches `to`. Support is not
/// checked here.
inline bool level_reaches(const Network& net, const Device& from, const Device& to, LevelIndex l, DistanceMode mode)
{
    const auto& lv = net.level(l);
    if (mode == DistanceMode::sector) {
        const auto grid = net.grid();
        return sector_distance(sector_of(from.position, grid), sector_of(to.position, grid)) <= lv.range_sectors;
    }
    return euclidean_reaches(from.position, to.position, net.sector_size(), net.alpha(), lv.cost);
}

/// Lowest level of the network's table reaching `to`, ignoring what `from` supports.
inline std::optional<LevelIndex> min_reaching_level(const Network& net, const Device& from, const Device& to, DistanceMode mode)
{
    for (LevelIndex l = 1; l <= net.level_count(); ++l)
        if (level_reaches(net, from, to, l, mode))
            return l;
    return std::nullopt;
}

/// Lowest level supported by `from` that reaches `to`.
inline std::optional<LevelIndex> lowest_feasible_level(const Network& net, const Device& from, const Device& to, DistanceMode mode)
{
    auto l = min_reaching_level(net, from, to, mode);
    if (l && *l <= from.max_level)
        return l;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Edge set

struct LevelEdge
{
    DeviceId from = 0;
    DeviceId to = 0;
    LevelIndex level = 0;
    Energy cost = 0;

    friend bool operator==(const LevelEdge&, const LevelEdge&) = default;
};

// Directed edges in compressed-row form, indexed by device position in
// Network::devices() (which is id order). Arcs of one device are sorted by
// (level, target).
class EdgeSet
{
public:
    struct Arc
    {
        std::uint32_t to;
        LevelIndex level;
    };

    EdgeSet() = default;
    EdgeSet(EdgeOptions options, std::vector<std::size_t> offsets, std::vector<Arc> arcs)
        : options_(options), offsets_(std::move(offsets)), arcs_(std::move(arcs))
    {}

    const EdgeOptions& options() const noexcept { return options_; }
    std::size_t device_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t arc_count() const noexcept { return arcs_.size(); }

    std::span<const Arc> out(std::size_t index) const
    {
        return {arcs_.data() + offsets_[index], arcs_.data() + offsets_[index + 1]};
    }

    std::vector<LevelEdge> edges(const Network& net) const
    {
        std::vector<LevelEdge> result;
        result.reserve(arcs_.size());
        const auto& devs = net.devices();
        for (std::size_t u = 0; u < device_count(); ++u)
            for (const auto& a : out(u))
                result.push_back({devs[u].id, devs[a.to].id, a.level, net.level(a.level).cost});
        return result;
    }

private:
    EdgeOptions options_;
    std::vector<std::size_t> offsets_;
    std::vector<Arc> arcs_;
};

/// Connect every ordered pair of devices that some supported level can
/// bridge. Candidate neighbours are found through the sector grid.
inline EdgeSet build_edges(const Network& net, EdgeOptions options = {})
{
    const auto& devs = net.devices();
    const auto n = devs.size();
    const auto grid = net.grid();
    const auto cols = grid.columns();
    const auto rows = grid.rows();
    const auto L = net.level_count();
    const bool sector_mode = options.mode == DistanceMode::sector;

    std::vector<SectorCoord> sectors(n);
    std::vector<std::size_t> bucket_start(static_cast<std::size_t>(cols * rows) + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        sectors[i] = sector_of(devs[i].position, grid);
        ++bucket_start[static_cast<std::size_t>(sectors[i].row * cols + sectors[i].col) + 1];
    }
    for (std::size_t b = 1; b < bucket_start.size(); ++b)
        bucket_start[b] += bucket_start[b - 1];
    std::vector<std::uint32_t> bucket(n);
    {
        auto fill = bucket_start;
        for (std::size_t i = 0; i < n; ++i)
            bucket[fill[static_cast<std::size_t>(sectors[i].row * cols + sectors[i].col)]++] = static_cast<std::uint32_t>(i);
    }

    // scan radius in sectors for each level
    std::vector<std::int64_t> scan(static_cast<std::size_t>(L) + 1, 0);
    for (LevelIndex l = 1; l <= L; ++l) {
        const auto& lv = net.level(l);
        if (sector_mode)
            scan[static_cast<std::size_t>(l)] = lv.range_sectors;
        else
            scan[static_cast<std::size_t>(l)] = static_cast<std::int64_t>(std::ceil(std::pow(lv.cost, 1.0 / net.alpha()))) + 1;
    }
    // sector mode: lowest level covering each Chebyshev distance
    std::int64_t max_scan = 0;
    for (auto r : scan)
        max_scan = std::max(max_scan, r);
    std::vector<LevelIndex> lowest_for(static_cast<std::size_t>(max_scan) + 1, 0);
    if (sector_mode)
        for (std::int64_t dist = 0; dist <= max_scan; ++dist)
            for (LevelIndex l = 1; l <= L; ++l)
                if (net.level(l).range_sectors >= dist) {
                    lowest_for[static_cast<std::size_t>(dist)] = l;
                    break;
                }

    // sector mode: exact arc count up front, from bucket sizes alone
    std::vector<EdgeSet::Arc> arcs;
    const bool all_levels = options.policy == EdgePolicy::all_levels;
    if (sector_mode) {
        std::size_t total = 0;
        for (std::size_t u = 0; u < n; ++u) {
            const auto max_level = devs[u].max_level;
            const auto r = scan[static_cast<std::size_t>(max_level)];
            for (auto row = std::max<std::int64_t>(0, sectors[u].row - r); row <= std::min(rows - 1, sectors[u].row + r); ++row)
                for (auto col = std::max<std::int64_t>(0, sectors[u].col - r); col <= std::min(cols - 1, sectors[u].col + r); ++col) {
                    const auto b = static_cast<std::size_t>(row * cols + col);
                    const auto l = lowest_for[static_cast<std::size_t>(std::max(std::abs(col - sectors[u].col), std::abs(row - sectors[u].row)))];
                    if (l != 0 && l <= max_level)
                        total += (bucket_start[b + 1] - bucket_start[b]) * static_cast<std::size_t>(all_levels ? max_level - l + 1 : 1);
                }
            total -= all_levels ? static_cast<std::size_t>(max_level) : 1; // u itself
        }
        arcs.reserve(total);
    }

    // Per source: record the lowest level reaching each candidate, then emit
    // arcs grouped by level with ascending targets. Large candidate sets are
    // emitted by one sweep over all devices, small ones by sorting.
    std::vector<LevelIndex> mark(n, 0);
    std::vector<std::uint32_t> touched;
    std::vector<std::size_t> per_level(static_cast<std::size_t>(L) + 2, 0);
    std::vector<std::size_t> offsets(n + 1, 0);
    for (std::size_t u = 0; u < n; ++u) {
        touched.clear();
        const auto& du = devs[u];
        const auto r = scan[static_cast<std::size_t>(du.max_level)];
        const auto c0 = std::max<std::int64_t>(0, sectors[u].col - r), c1 = std::min(cols - 1, sectors[u].col + r);
        const auto r0 = std::max<std::int64_t>(0, sectors[u].row - r), r1 = std::min(rows - 1, sectors[u].row + r);
        for (auto row = r0; row <= r1; ++row) {
            for (auto col = c0; col <= c1; ++col) {
                const auto b = static_cast<std::size_t>(row * cols + col);
                if (bucket_start[b] == bucket_start[b + 1])
                    continue;
                if (sector_mode) {
                    const auto dist = std::max(std::abs(col - sectors[u].col), std::abs(row - sectors[u].row));
                    const auto l = lowest_for[static_cast<std::size_t>(dist)];
                    if (l == 0 || l > du.max_level)
                        continue;
                    for (auto k = bucket_start[b]; k < bucket_start[b + 1]; ++k) {
                        const auto v = bucket[k];
                        if (v != u) {
                            mark[v] = l;
                            touched.push_back(v);
                        }
                    }
                    continue;
                }
                for (auto k = bucket_start[b]; k < bucket_start[b + 1]; ++k) {
                    const auto v = bucket[k];
                    if (v == u)
                        continue;
                    for (LevelIndex l = 1; l <= du.max_level; ++l) {
                        if (euclidean_reaches(du.position, devs[v].position, net.sector_size(), net.alpha(), net.level(l).cost)) {
                            mark[v] = l;
                            touched.push_back(v);
                            break;
                        }
                    }
                }
            }
        }

        // slot of the first arc at each level
        std::fill(per_level.begin(), per_level.end(), 0);
        for (auto v : touched) {
            if (all_levels)
                for (auto l = mark[v]; l <= du.max_level; ++l)
                    ++per_level[static_cast<std::size_t>(l) + 1];
            else
                ++per_level[static_cast<std::size_t>(mark[v]) + 1];
        }
        const auto base = arcs.size();
        for (std::size_t l = 1; l < per_level.size(); ++l)
            per_level[l] += per_level[l - 1];
        arcs.resize(base + per_level.back());
        auto emit = [&](std::uint32_t v) {
            if (all_levels)
                for (auto l = mark[v]; l <= du.max_level; ++l)
                    arcs[base + per_level[static_cast<std::size_t>(l)]++] = {v, l};
            else
                arcs[base + per_level[static_cast<std::size_t>(mark[v])]++] = {v, mark[v]};
        };
        if (touched.size() * 16 < n) {
            std::sort(touched.begin(), touched.end());
            for (auto v : touched)
                emit(v);
        } else {
            for (std::uint32_t v = 0; v < n; ++v)
                if (mark[v] != 0)
                    emit(v);
        }
        for (auto v : touched)
            mark[v] = 0;
        offsets[u + 1] = arcs.size();
    }
    return EdgeSet(options, std::move(offsets), std::move(arcs));
}

// ---------------------------------------------------------------------------
// Paths

// One step of a route. For the final element (the destination) `level` is 0.
struct Hop
{
    DeviceId device = 0;
    LevelIndex level = 0;

    friend bool operator==(const Hop&, const Hop&) = default;
};

struct HopCost
{
    DeviceId from = 0;
    DeviceId to = 0;
    LevelIndex level = 0;
    Energy cost = 0;

    friend bool operator==(const HopCost&, const HopCost&) = default;
};

struct PathResult
{
    DeviceId source = 0;
    DeviceId destination = 0;
    std::vector<Hop> hops; // senders with their level, then the destination with level 0
    int swings = 0;
    std::vector<HopCost> breakdown;
    Energy hop_cost_total = 0;
    Energy swing_cost = 0;       // Cb applied per swing
    Energy destination_cost = 0; // Cd, 0 for an empty path
    Energy total_cost = 0;

    std::size_t hop_count() const noexcept { return hops.empty() ? 0 : hops.size() - 1; }

    // Relays whose transmit level differs from the level they received at.
    std::vector<DeviceId> swing_devices() const
    {
        std::vector<DeviceId> out;
        for (std::size_t i = 1; i + 1 < hops.size(); ++i)
            if (hops[i].level != hops[i - 1].level)
                out.push_back(hops[i].device);
        return out;
    }

    friend bool operator==(const PathResult&, const PathResult&) = default;
};

/// Number of adjacent sender pairs whose levels differ.
inline int count_swings(std::span<const Hop> hops)
{
    int nb = 0;
    for (std::size_t i = 1; i + 1 < hops.size(); ++i)
        if (hops[i].level != hops[i - 1].level)
            ++nb;
    return nb;
}

/// Ordering used to break ties between equal-cost routes: cost, then hop
/// count, then device-id sequence, then level sequence.
inline int compare_routes(const PathResult& a, const PathResult& b)
{
    if (a.total_cost != b.total_cost)
        return a.total_cost < b.total_cost ? -1 : 1;
    if (a.hops.size() != b.hops.size())
        return a.hops.size() < b.hops.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.hops.size(); ++i)
        if (a.hops[i].device != b.hops[i].device)
            return a.hops[i].device < b.hops[i].device ? -1 : 1;
    for (std::size_t i = 0; i < a.hops.size(); ++i)
        if (a.hops[i].level != b.hops[i].level)
            return a.hops[i].level < b.hops[i].level ? -1 : 1;
    return 0;
}

/// Total cost of one explicit route: hop costs + swings * Cb + Cd.
/// Every hop must be supported by its sender and reach the next device.
inline PathResult evaluate_path(const Network& net, std::span<const Hop> hops, DistanceMode mode = DistanceMode::sector)
{
    if (hops.empty())
        throw ValidationError("a route needs at least one device");
    PathResult r;
    r.source = hops.front().device;
    r.destination = hops.back().device;
    r.hops.assign(hops.begin(), hops.end());
    r.hops.back().level = 0;

    std::vector<DeviceId> seen;
    for (const auto& h : hops) {
        net.device(h.device); // throws on unknown id
        if (std::find(seen.begin(), seen.end(), h.device) != seen.end())
            throw ValidationError("device " + std::to_string(h.device) + " appears twice in the route");
        seen.push_back(h.device);
    }
    if (hops.size() == 1)
        return r;

    for (std::size_t i = 0; i + 1 < hops.size(); ++i) {
        const auto& from = net.device(hops[i].device);
        const auto& to = net.device(hops[i + 1].device);
        const auto l = hops[i].level;
        const std::string name = "hop " + std::to_string(from.id) + "->" + std::to_string(to.id);
        if (l < 1 || l > net.level_count())
            throw ValidationError(name + ": level " + std::to_string(l) + " is not defined");
        if (!from.supports(l))
            throw ValidationError(name + ": device does not support level " + std::to_string(l));
        if (!level_reaches(net, from, to, l, mode))
            throw ValidationError(name + ": level " + std::to_string(l) + " does not reach");
        const auto c = net.level(l).cost;
        r.breakdown.push_back({from.id, to.id, l, c});
        r.hop_cost_total += c;
    }
    r.swings = count_swings(r.hops);
    r.swing_cost = net.swing_cost();
    r.destination_cost = net.destination_cost();
    r.total_cost = r.hop_cost_total + r.swings * r.swing_cost + r.destination_cost;
    return r;
}

inline PathResult evaluate_path(const Network& net, const std::vector<Hop>& hops, DistanceMode mode = DistanceMode::sector)
{
    return evaluate_path(net, std::span<const Hop>(hops), mode);
}

namespace detail {

inline std::size_t require_index(const Network& net, DeviceId id)
{
    auto idx = net.index_of(id);
    if (!idx)
        throw ValidationError("unknown device id " + std::to_string(id));
    return *idx;
}

inline void check_edges_match(const Network& net, const EdgeSet& edges)
{
    if (edges.device_count() != net.size())
        throw ValidationError("edge set was built for a different network");
}

// Whole-number level costs and swing cost keep search keys exact.
inline bool integral_costs(const Network& net)
{
    auto whole = [](Energy v) { return std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15; };
    for (const auto& lv : net.levels())
        if (!whole(lv.cost))
            return false;
    return whole(net.swing_cost());
}

inline PathResult empty_route(DeviceId s)
{
    PathResult r;
    r.source = r.destination = s;
    r.hops = {{s, 0}};
    return r;
}

// Exact search over simple paths: depth-first branch and bound, pruned with
// walk-relaxation lower bounds. Only used when the state search returns a
// walk that revisits a device (possible when Cb is large).
class SimplePathSearch
{
public:
    SimplePathSearch(const Network& net, const EdgeSet& edges, std::size_t s, std::size_t d)
        : net_(net), edges_(edges), s_(s), d_(d), levels_(static_cast<std::size_t>(net.level_count()) + 1)
    {
        compute_bounds();
    }

    std::optional<PathResult> run()
    {
        visited_.assign(net_.size(), false);
        visited_[s_] = true;
        path_.clear();
        path_.push_back({s_, 0});
        dfs(0.0);
        return best_;
    }

private:
    std::size_t state(std::size_t dev, LevelIndex lin) const { return dev * levels_ + static_cast<std::size_t>(lin); }

    Energy step_cost(LevelIndex lin, LevelIndex l) const
    {
        return net_.level(l).cost + ((lin != 0 && lin != l) ? net_.swing_cost() : 0.0);
    }

    void compute_bounds()
    {
        const auto n = net_.size();
        constexpr auto inf = std::numeric_limits<Energy>::infinity();
        togo_.assign(n * levels_, inf);

        // reverse adjacency
        std::vector<std::size_t> start(n + 1, 0);
        for (std::size_t u = 0; u < n; ++u)
            for (const auto& a : edges_.out(u))
                ++start[a.to + 1];
        for (std::size_t i = 1; i <= n; ++i)
            start[i] += start[i - 1];
        std::vector<std::pair<std::uint32_t, LevelIndex>> in(start[n]);
        auto fill = start;
        for (std::size_t u = 0; u < n; ++u)
            for (const auto& a : edges_.out(u))
                in[fill[a.to]++] = {static_cast<std::uint32_t>(u), a.level};

        using Item = std::pair<Energy, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        for (std::size_t l = 0; l < levels_; ++l) {
            togo_[state(d_, static_cast<LevelIndex>(l))] = net_.destination_cost();
            pq.push({net_.destination_cost(), state(d_, static_cast<LevelIndex>(l))});
        }
        while (!pq.empty()) {
            auto [c, y] = pq.top();
            pq.pop();
            if (c != togo_[y])
                continue;
            const auto v = y / levels_;
            const auto l = static_cast<LevelIndex>(y % levels_);
            if (l == 0)
                continue; // (v, 0) has no inbound edge
            for (auto k = start[v]; k < start[v + 1]; ++k) {
                const auto [u, lev] = in[k];
                if (lev != l || u == d_)
                    continue;
                for (std::size_t lin = 0; lin < levels_; ++lin) {
                    const auto x = state(u, static_cast<LevelIndex>(lin));
                    const auto nc = c + step_cost(static_cast<LevelIndex>(lin), l);
                    if (nc < togo_[x]) {
                        togo_[x] = nc;
                        pq.push({nc, x});
                    }
                }
            }
        }
    }

    void dfs(Energy g)
    {
        const auto cur = path_.back();
        if (cur.first == d_) {
            consider(g);
            return;
        }
        const auto lin = cur.second;
        if (best_ && g + togo_[state(cur.first, lin)] > best_->total_cost)
            return;

        struct Child
        {
            Energy bound;
            std::uint32_t to;
            LevelIndex level;
            Energy cost;
        };
        std::vector<Child> children;
        for (const auto& a : edges_.out(cur.first)) {
            if (visited_[a.to])
                continue;
            const auto c = step_cost(lin, a.level);
            const auto bound = g + c + togo_[state(a.to, a.level)];
            if (!std::isfinite(bound))
                continue;
            children.push_back({bound, a.to, a.level, c});
        }
        std::sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
            return std::tie(a.bound, a.to, a.level) < std::tie(b.bound, b.to, b.level);
        });
        for (const auto& ch : children) {
            if (best_ && ch.bound > best_->total_cost)
                break;
            visited_[ch.to] = true;
            path_.push_back({ch.to, ch.level});
            dfs(g + ch.cost);
            path_.pop_back();
            visited_[ch.to] = false;
        }
    }

    void consider(Energy g)
    {
        // path_ holds (device, inbound level); rebuild hop form
        PathResult r;
        const auto& devs = net_.devices();
        r.source = devs[s_].id;
        r.destination = devs[d_].id;
        for (std::size_t i = 0; i + 1 < path_.size(); ++i)
            r.hops.push_back({devs[path_[i].first].id, path_[i + 1].second});
        r.hops.push_back({devs[d_].id, 0});
        r.total_cost = g + net_.destination_cost();
        if (!best_ || compare_routes(r, *best_) < 0)
            best_ = std::move(r);
    }

    const Network& net_;
    const EdgeSet& edges_;
    std::size_t s_, d_;
    std::size_t levels_;
    std::vector<Energy> togo_;
    std::vector<bool> visited_;
    std::vector<std::pair<std::size_t, LevelIndex>> path_;
    std::optional<PathResult> best_;
};

} // namespace detail

/// Minimum-energy route from `s` to `d` under hop costs, swing cost Cb and
/// destination cost Cd.
///
/// Dijkstra over (device, inbound level) states: the cost of leaving a
/// device depends on the level the message arrived at, so a per-device
/// label is not enough. Level 0 marks the source, which never pays a swing.
/// Labels are ordered by (cost, hops, device sequence, level sequence), so
/// the returned route is the unique minimum under compare_routes().
inline PathResult min_energy_path(const Network& net, const EdgeSet& edges, DeviceId s, DeviceId d)
{
    detail::check_edges_match(net, edges);
    const auto si = detail::require_index(net, s);
    const auto di = detail::require_index(net, d);
    if (si == di)
        return detail::empty_route(s);

    const auto n = net.size();
    const auto& devs = net.devices();
    const std::size_t stride = static_cast<std::size_t>(net.level_count()) + 1;
    const auto cb = net.swing_cost();
    constexpr auto inf = std::numeric_limits<Energy>::infinity();
    constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

    std::vector<Energy> level_cost_of(stride, 0);
    for (LevelIndex l = 1; l < static_cast<LevelIndex>(stride); ++l)
        level_cost_of[static_cast<std::size_t>(l)] = net.level(l).cost;

    std::vector<Energy> dist(n * stride, inf);
    std::vector<std::uint32_t> hops(n * stride, 0);
    std::vector<std::uint32_t> pred(n * stride, none);
    std::vector<bool> settled(n * stride, false);
    // first expanded label per device
    std::vector<Energy> first_cost(n, inf);
    std::vector<std::uint32_t> first_hops(n, 0);
    std::vector<LevelIndex> first_level(n, 0);

    // chain comparison for equal (cost, hops) labels: walk both
    // predecessor chains back in lockstep; the last difference seen is the
    // one closest to the source and decides the lexicographic order.
    auto compare_chains = [&](std::uint32_t a, std::uint32_t b) {
        int dev_cmp = 0, lvl_cmp = 0;
        while (a != b) {
            const auto da = a / stride, db = b / stride;
            const auto la = a % stride, lb = b % stride;
            if (da != db)
                dev_cmp = da < db ? -1 : 1;
            if (la != lb)
                lvl_cmp = la < lb ? -1 : 1;
            a = pred[a];
            b = pred[b];
        }
        return dev_cmp != 0 ? dev_cmp : lvl_cmp;
    };

    // Lower bound on the remaining hop cost (sector mode): every hop at
    // level l costs at least k * range(l) with k = min cost/range, so k times
    // the sector distance to the destination never overestimates. Queue
    // keys are cost + bound, which is Dijkstra on non-negative reduced
    // costs and leaves the label order at every state unchanged.
    std::vector<Energy> togo(n, 0);
    if (edges.options().mode == DistanceMode::sector && detail::integral_costs(net)) {
        Energy k = inf;
        for (const auto& lv : net.levels())
            k = std::min(k, std::floor(lv.cost / static_cast<Energy>(lv.range_sectors)));
        const auto grid = net.grid();
        const auto target = sector_of(devs[di].position, grid);
        for (std::size_t i = 0; i < n; ++i)
            togo[i] = k * static_cast<Energy>(sector_distance(sector_of(devs[i].position, grid), target));
    }

    struct Item
    {
        Energy key;
        Energy cost;
        std::uint32_t hops;
        std::uint32_t state;
        bool operator>(const Item& o) const { return std::tie(key, hops) > std::tie(o.key, o.hops); }
    };
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;

    const auto start = static_cast<std::uint32_t>(si * stride);
    dist[start] = 0;
    pq.push({togo[si], 0, 0, start});
    std::uint32_t best = none;

    while (!pq.empty()) {
        const auto item = pq.top();
        pq.pop();
        const auto x = item.state;
        if (settled[x] || item.cost != dist[x] || item.hops != hops[x])
            continue;
        if (best != none && std::tie(item.key, item.hops) > std::tie(dist[best], hops[best]))
            break;
        settled[x] = true;
        const auto u = x / stride;
        const auto lin = static_cast<LevelIndex>(x % stride);

        if (u == di) {
            if (best == none || compare_chains(x, best) < 0)
                best = x;
            continue;
        }
        // A later label at u pays at least as much as the first one, so it
        // can only win on arcs that keep its own level (no swing), and only
        // while the swing it saves is not already spent. Equal labels are
        // expanded in full to keep the tie-break exact.
        auto arcs = edges.out(u);
        if (first_cost[u] == inf) {
            first_cost[u] = item.cost;
            first_hops[u] = item.hops;
            first_level[u] = lin;
        } else if (item.cost != first_cost[u] || item.hops != first_hops[u]) {
            if (first_cost[u] + cb < item.cost || lin == first_level[u])
                continue;
            const auto range = std::equal_range(arcs.begin(), arcs.end(), EdgeSet::Arc{0, lin},
                                                [](const EdgeSet::Arc& a, const EdgeSet::Arc& b) { return a.level < b.level; });
            arcs = arcs.subspan(static_cast<std::size_t>(range.first - arcs.begin()), static_cast<std::size_t>(range.second - range.first));
        }

        for (const auto& a : arcs) {
            if (a.to == si)
                continue;
            const auto y = static_cast<std::uint32_t>(a.to * stride + static_cast<std::size_t>(a.level));
            if (settled[y])
                continue;
            const auto nc = item.cost + level_cost_of[static_cast<std::size_t>(a.level)] + ((lin != 0 && lin != a.level) ? cb : 0.0);
            const auto nh = item.hops + 1;
            if (nc < dist[y] || (nc == dist[y] && nh < hops[y])) {
                dist[y] = nc;
                hops[y] = nh;
                pred[y] = x;
                pq.push({nc + togo[a.to], nc, nh, y});
            } else if (nc == dist[y] && nh == hops[y] && compare_chains(x, pred[y]) < 0) {
                pred[y] = x;
            }
        }
    }

    if (best == none)
        throw NoFeasiblePathError("no feasible path from " + std::to_string(s) + " to " + std::to_string(d));

    // states from destination back to source
    std::vector<std::uint32_t> chain;
    for (auto x = best; x != none; x = pred[x])
        chain.push_back(x);
    std::reverse(chain.begin(), chain.end());

    std::vector<Hop> route;
    std::vector<bool> seen(n, false);
    bool simple = true;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto dev = chain[i] / stride;
        simple = simple && !seen[dev];
        seen[dev] = true;
        const LevelIndex out_level = i + 1 < chain.size() ? static_cast<LevelIndex>(chain[i + 1] % stride) : 0;
        route.push_back({devs[dev].id, out_level});
    }

    if (!simple) {
        auto exact = detail::SimplePathSearch(net, edges, si, di).run();
        if (!exact)
            throw NoFeasiblePathError("no feasible path from " + std::to_string(s) + " to " + std::to_string(d));
        route = exact->hops;
    }
    return evaluate_path(net, route, edges.options().mode);
}

inline PathResult min_energy_path(const Network& net, DeviceId s, DeviceId d, EdgeOptions options = {})
{
    return min_energy_path(net, build_edges(net, options), s, d);
}

inline constexpr std::size_t default_brute_force_limit = 14;

/// Verification oracle: enumerate every simple path from `s` to `d` and keep
/// the one that sorts first under compare_routes().
inline PathResult brute_force_min_path(const Network& net, const EdgeSet& edges, DeviceId s, DeviceId d,
                                       std::size_t device_limit = default_brute_force_limit)
{
    if (net.size() > device_limit)
        throw LimitExceededError("brute force limited to " + std::to_string(device_limit) + " devices, network has " +
                                 std::to_string(net.size()));
    detail::check_edges_match(net, edges);
    const auto si = detail::require_index(net, s);
    const auto di = detail::require_index(net, d);
    if (si == di)
        return detail::empty_route(s);

    const auto& devs = net.devices();
    const auto mode = edges.options().mode;
    std::optional<PathResult> best;
    std::vector<Hop> route{{s, 0}};
    std::vector<bool> on_path(net.size(), false);
    on_path[si] = true;

    auto dfs = [&](auto&& self, std::size_t u) -> void {
        if (u == di) {
            auto r = evaluate_path(net, route, mode);
            if (!best || compare_routes(r, *best) < 0)
                best = std::move(r);
            return;
        }
        for (const auto& a : edges.out(u)) {
            if (on_path[a.to])
                continue;
            on_path[a.to] = true;
            route.back().level = a.level;
            route.push_back({devs[a.to].id, 0});
            self(self, a.to);
            route.pop_back();
            route.back().level = 0;
            on_path[a.to] = false;
        }
    };
    dfs(dfs, si);

    if (!best)
        throw NoFeasiblePathError("no feasible path from " + std::to_string(s) + " to " + std::to_string(d));
    return *best;
}

inline PathResult brute_force_min_path(const Network& net, DeviceId s, DeviceId d, EdgeOptions options = {},
                                       std::size_t device_limit = default_brute_force_limit)
{
    if (net.size() > device_limit)
        throw LimitExceededError("brute force limited to " + std::to_string(device_limit) + " devices, network has " +
                                 std::to_string(net.size()));
    return brute_force_min_path(net, build_edges(net, options), s, d, device_limit);
}

} // namespace manet

#endif // MANET_SOLVER_HPP
