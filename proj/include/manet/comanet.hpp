#ifndef MANET_COMANET_HPP
#define MANET_COMANET_HPP

// Constraint-optimisation view of a network snapshot: binary level
// indicators per device, binary edge indicators per ordered pair, the
// one-level / link-energy / connectivity constraints and the energy
// objective.

#include "manet/errors.hpp"
#include "manet/geometry.hpp"
#include "manet/netgen.hpp"
#include "manet/network.hpp"
#include "manet/solver.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace manet {

// Level 0 is the idle level: the device does not transmit and costs nothing.
inline constexpr LevelIndex idle_level = 0;

struct LevelChoice
{
    DeviceId device = 0;
    LevelIndex level = idle_level;

    friend bool operator==(const LevelChoice&, const LevelChoice&) = default;
};

using DevicePair = std::pair<DeviceId, DeviceId>;

// Variable state of the model. `levels` is a list rather than a map so that
// malformed states (missing or repeated devices) can be represented and
// reported by check_one_level().
struct Assignment
{
    std::vector<LevelChoice> levels;
    std::set<DevicePair> edges;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct CheckReport
{
    bool ok = true;
    std::vector<DeviceId> devices;
    std::vector<DevicePair> edges;
    std::string detail;

    explicit operator bool() const noexcept { return ok; }
};

// Directed graph over device ids.
class InducedGraph
{
public:
    InducedGraph() = default;

    InducedGraph(std::vector<DeviceId> vertices, std::vector<LevelEdge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges))
    {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (!index_.emplace(vertices_[i], i).second)
                throw ValidationError("duplicate vertex " + std::to_string(vertices_[i]));
        out_.resize(vertices_.size());
        for (const auto& e : edges_) {
            if (e.from == e.to)
                throw ValidationError("self-loop on " + std::to_string(e.from));
            out_.at(index(e.from)).push_back(index(e.to));
        }
    }

    // Unweighted convenience form.
    static InducedGraph from_pairs(std::vector<DeviceId> vertices, const std::vector<DevicePair>& pairs)
    {
        std::vector<LevelEdge> edges;
        for (const auto& [a, b] : pairs)
            edges.push_back({a, b, 0, 0});
        return InducedGraph(std::move(vertices), std::move(edges));
    }

    const std::vector<DeviceId>& vertices() const noexcept { return vertices_; }
    const std::vector<LevelEdge>& edges() const noexcept { return edges_; }

    bool has_vertex(DeviceId id) const { return index_.contains(id); }

    std::size_t index(DeviceId id) const
    {
        auto it = index_.find(id);
        if (it == index_.end())
            throw ValidationError("vertex " + std::to_string(id) + " is not in the graph");
        return it->second;
    }

    const std::vector<std::size_t>& out(std::size_t i) const { return out_[i]; }

    std::set<DevicePair> edge_pairs() const
    {
        std::set<DevicePair> s;
        for (const auto& e : edges_)
            s.emplace(e.from, e.to);
        return s;
    }

private:
    std::vector<DeviceId> vertices_;
    std::vector<LevelEdge> edges_;
    std::unordered_map<DeviceId, std::size_t> index_;
    std::vector<std::vector<std::size_t>> out_;
};

namespace detail {

// id -> level; throws on missing, repeated, unknown ids or undefined levels
inline std::vector<LevelIndex> level_vector(const Network& net, const std::vector<LevelChoice>& levels)
{
    std::vector<LevelIndex> v(net.size(), -1);
    for (const auto& c : levels) {
        auto idx = net.index_of(c.device);
        if (!idx)
            throw ValidationError("unknown device id " + std::to_string(c.device));
        if (v[*idx] != -1)
            throw ValidationError("device " + std::to_string(c.device) + " has more than one level");
        if (c.level < idle_level || c.level > net.level_count())
            throw ValidationError("device " + std::to_string(c.device) + " has undefined level " + std::to_string(c.level));
        v[*idx] = c.level;
    }
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == -1)
            throw ValidationError("device " + std::to_string(net.devices()[i].id) + " has no level");
    return v;
}

} // namespace detail

/// Graph induced by each device operating at its assigned level: edge (i, j)
/// iff i transmits at l >= 1 and j is within level l's reach; cost En(l).
inline InducedGraph induce_graph(const Network& net, const std::vector<LevelChoice>& levels, DistanceMode mode = DistanceMode::sector)
{
    const auto v = detail::level_vector(net, levels);
    const auto& devs = net.devices();
    std::vector<DeviceId> vertices;
    vertices.reserve(devs.size());
    for (const auto& d : devs)
        vertices.push_back(d.id);

    std::vector<LevelEdge> edges;
    for (std::size_t i = 0; i < devs.size(); ++i) {
        if (v[i] == idle_level)
            continue;
        const auto cost = net.level(v[i]).cost;
        for (std::size_t j = 0; j < devs.size(); ++j)
            if (j != i && level_reaches(net, devs[i], devs[j], v[i], mode))
                edges.push_back({devs[i].id, devs[j].id, v[i], cost});
    }
    return InducedGraph(std::move(vertices), std::move(edges));
}

/// Every device holds exactly one level (idle counts as a level).
inline CheckReport check_one_level(const Assignment& a, const Network& net)
{
    CheckReport rep;
    std::map<DeviceId, int> seen;
    std::set<DeviceId> bad;
    for (const auto& c : a.levels) {
        ++seen[c.device];
        if (!net.contains(c.device) || c.level < idle_level || c.level > net.level_count())
            bad.insert(c.device);
    }
    for (const auto& d : net.devices()) {
        auto it = seen.find(d.id);
        if (it == seen.end() || it->second != 1)
            bad.insert(d.id);
    }
    if (!bad.empty()) {
        rep.ok = false;
        rep.devices.assign(bad.begin(), bad.end());
        rep.detail = "devices without exactly one valid level";
    }
    return rep;
}

/// Energy a sender needs to reach `to`. In sector mode it is the cost of the
/// lowest level of the table whose range covers the sector distance
/// (infinite beyond the top level); in euclidean mode it is d^alpha.
inline Energy required_energy(const Network& net, const Device& from, const Device& to, DistanceMode mode)
{
    if (mode == DistanceMode::sector) {
        auto l = min_reaching_level(net, from, to, mode);
        return l ? net.level(*l).cost : std::numeric_limits<Energy>::infinity();
    }
    return link_energy(from.position, to.position, net.sector_size(), net.alpha());
}

/// Every selected edge is affordable at its sender's level. A level the
/// sender does not support provides no energy.
inline CheckReport check_edge_feasibility(const Assignment& a, const Network& net, DistanceMode mode = DistanceMode::sector)
{
    CheckReport rep;
    std::unordered_map<DeviceId, LevelIndex> level;
    for (const auto& c : a.levels)
        level.emplace(c.device, c.level);

    for (const auto& e : a.edges) {
        const auto [i, j] = e;
        bool ok = i != j && net.contains(i) && net.contains(j);
        if (ok) {
            auto it = level.find(i);
            const LevelIndex l = it == level.end() ? idle_level : it->second;
            const auto& from = net.device(i);
            const auto& to = net.device(j);
            if (l < 1 || l > net.level_count() || !from.supports(l))
                ok = false;
            else if (mode == DistanceMode::sector)
                ok = required_energy(net, from, to, mode) <= net.level(l).cost;
            else
                ok = euclidean_reaches(from.position, to.position, net.sector_size(), net.alpha(), net.level(l).cost);
        }
        if (!ok)
            rep.edges.push_back(e);
    }
    if (!rep.edges.empty()) {
        rep.ok = false;
        rep.detail = "edges exceeding their sender's energy";
    }
    return rep;
}

struct PathCount
{
    std::uint64_t count = 0;
    bool cap_exceeded = false;
};

inline constexpr std::uint64_t default_path_count_cap = 1'000'000;

/// Number of simple paths from s to d, counting stops once it exceeds `cap`.
/// Defined as 0 when s == d.
inline PathCount count_simple_paths(const InducedGraph& g, DeviceId s, DeviceId d, std::uint64_t cap = default_path_count_cap)
{
    if (cap < 1)
        throw ConfigError("path count cap must be >= 1");
    const auto si = g.index(s);
    const auto di = g.index(d);
    PathCount pc;
    if (si == di)
        return pc;

    std::vector<bool> on_path(g.vertices().size(), false);
    on_path[si] = true;
    auto dfs = [&](auto&& self, std::size_t u) -> void {
        for (auto v : g.out(u)) {
            if (pc.cap_exceeded)
                return;
            if (v == di) {
                if (++pc.count > cap)
                    pc.cap_exceeded = true;
                continue;
            }
            if (on_path[v])
                continue;
            on_path[v] = true;
            self(self, v);
            on_path[v] = false;
        }
    };
    dfs(dfs, si);
    return pc;
}

/// d is reachable from s.
inline CheckReport check_connectivity(const InducedGraph& g, DeviceId s, DeviceId d)
{
    CheckReport rep;
    const auto si = g.index(s);
    const auto di = g.index(d);
    std::vector<bool> seen(g.vertices().size(), false);
    std::vector<std::size_t> stack{si};
    seen[si] = true;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto v : g.out(u))
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
    }
    if (!seen[di]) {
        rep.ok = false;
        rep.devices = {s, d};
        rep.detail = "destination " + std::to_string(d) + " unreachable from " + std::to_string(s);
    }
    return rep;
}

/// Sum of the energy of every device's level; idle devices cost 0.
inline Energy objective_value(const Assignment& a, const Network& net)
{
    const auto v = detail::level_vector(net, a.levels);
    Energy total = 0;
    for (auto l : v)
        if (l != idle_level)
            total += net.level(l).cost;
    return total;
}

/// Assignment realising a route: senders at their hop level, everyone else
/// idle, edges = the induced graph of that level map.
inline Assignment assignment_from_path(const PathResult& path, const Network& net, DistanceMode mode = DistanceMode::sector)
{
    evaluate_path(net, path.hops, mode); // throws ValidationError on an infeasible hop
    std::unordered_map<DeviceId, LevelIndex> sender;
    for (std::size_t i = 0; i + 1 < path.hops.size(); ++i)
        sender[path.hops[i].device] = path.hops[i].level;

    Assignment a;
    a.levels.reserve(net.size());
    for (const auto& d : net.devices()) {
        auto it = sender.find(d.id);
        a.levels.push_back({d.id, it == sender.end() ? idle_level : it->second});
    }
    a.edges = induce_graph(net, a.levels, mode).edge_pairs();
    return a;
}

// ---------------------------------------------------------------------------
// LP export

namespace detail {

inline std::string lp_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Writes "name: t1 + t2 ... <op> rhs", wrapping long sums.
class LpRow
{
public:
    LpRow(std::ostream& out, const std::string& name) : out_(out) { out_ << " " << name << ":"; }

    void term(double coef, const std::string& var)
    {
        if (count_ > 0 && count_ % 8 == 0)
            out_ << "\n  ";
        if (coef < 0)
            out_ << " - " << (coef == -1 ? "" : lp_number(-coef) + " ") << var;
        else
            out_ << (count_ > 0 ? " + " : " ") << (coef == 1 ? "" : lp_number(coef) + " ") << var;
        ++count_;
    }

    void end(const char* op, double rhs) { out_ << " " << op << " " << lp_number(rhs) << "\n"; }

private:
    std::ostream& out_;
    int count_ = 0;
};

inline std::string v_name(DeviceId i, LevelIndex l) { return "v_" + std::to_string(i) + "_" + std::to_string(l); }
inline std::string x_name(DeviceId i, DeviceId j) { return "x_" + std::to_string(i) + "_" + std::to_string(j); }
inline std::string f_name(DeviceId i, DeviceId j) { return "f_" + std::to_string(i) + "_" + std::to_string(j); }

} // namespace detail

/// Integer program in CPLEX LP format. Rows: `one_level_<i>` per device,
/// `link_<i>_<j>` and `flow_cap_<i>_<j>` per ordered pair, `flow_<i>` per
/// device.
inline void export_lp(const Network& net, DeviceId s, DeviceId d, std::ostream& out, DistanceMode mode = DistanceMode::sector)
{
    if (!net.contains(s) || !net.contains(d))
        throw ValidationError("source and destination must be devices of the network");
    if (s == d)
        throw ValidationError("source and destination must differ");

    const auto& devs = net.devices();
    const auto n = devs.size();
    const auto top_cost = net.levels().back().cost;

    out << "\\ Minimum-energy transmission model\n";
    out << "\\ devices: " << n << ", power levels: " << net.level_count() << ", source: " << s << ", destination: " << d
        << ", reach: " << to_string(mode) << "\n";
    out << "\\ v_<i>_<l> = 1 iff device i operates at level l (level 0 = idle, energy 0).\n";
    out << "\\ x_<i>_<j> = 1 iff edge (i, j) is available at i's level.\n";
    out << "\\ Connectivity (at least one path from source to destination) is\n";
    out << "\\ linearised as a unit flow f from source to destination with f_<i>_<j> <= x_<i>_<j>.\n";
    if (mode == DistanceMode::sector)
        out << "\\ link rows use the cost of the lowest level covering the sector distance;\n"
               "\\ pairs no level can cover get coefficient " << detail::lp_number(top_cost + 1) << " (forces x = 0).\n";

    out << "Minimize\n";
    {
        detail::LpRow obj(out, "energy");
        for (const auto& dv : devs)
            for (LevelIndex l = 1; l <= dv.max_level; ++l)
                obj.term(net.level(l).cost, detail::v_name(dv.id, l));
        out << "\n";
    }

    out << "Subject To\n";
    for (const auto& dv : devs) {
        detail::LpRow row(out, "one_level_" + std::to_string(dv.id));
        for (LevelIndex l = idle_level; l <= dv.max_level; ++l)
            row.term(1, detail::v_name(dv.id, l));
        row.end("=", 1);
    }
    for (const auto& di : devs) {
        for (const auto& dj : devs) {
            if (di.id == dj.id)
                continue;
            double req = required_energy(net, di, dj, mode);
            if (!std::isfinite(req))
                req = top_cost + 1;
            detail::LpRow row(out, "link_" + std::to_string(di.id) + "_" + std::to_string(dj.id));
            row.term(req, detail::x_name(di.id, dj.id));
            for (LevelIndex l = 1; l <= di.max_level; ++l)
                row.term(-net.level(l).cost, detail::v_name(di.id, l));
            row.end("<=", 0);
        }
    }
    for (const auto& di : devs)
        for (const auto& dj : devs) {
            if (di.id == dj.id)
                continue;
            detail::LpRow row(out, "flow_cap_" + std::to_string(di.id) + "_" + std::to_string(dj.id));
            row.term(1, detail::f_name(di.id, dj.id));
            row.term(-1, detail::x_name(di.id, dj.id));
            row.end("<=", 0);
        }
    for (const auto& di : devs) {
        detail::LpRow row(out, "flow_" + std::to_string(di.id));
        for (const auto& dj : devs)
            if (dj.id != di.id)
                row.term(1, detail::f_name(di.id, dj.id));
        for (const auto& dj : devs)
            if (dj.id != di.id)
                row.term(-1, detail::f_name(dj.id, di.id));
        row.end("=", di.id == s ? 1 : (di.id == d ? -1 : 0));
    }

    out << "Bounds\n";
    for (const auto& di : devs)
        for (const auto& dj : devs)
            if (di.id != dj.id)
                out << " 0 <= " << detail::f_name(di.id, dj.id) << " <= 1\n";

    out << "Binary\n";
    for (const auto& dv : devs)
        for (LevelIndex l = idle_level; l <= dv.max_level; ++l)
            out << " " << detail::v_name(dv.id, l) << "\n";
    for (const auto& di : devs)
        for (const auto& dj : devs)
            if (di.id != dj.id)
                out << " " << detail::x_name(di.id, dj.id) << "\n";
    out << "End\n";
}

inline std::string export_lp_string(const Network& net, DeviceId s, DeviceId d, DistanceMode mode = DistanceMode::sector)
{
    std::ostringstream ss;
    export_lp(net, s, d, ss, mode);
    return ss.str();
}

inline void export_lp_file(const Network& net, DeviceId s, DeviceId d, const std::string& path, DistanceMode mode = DistanceMode::sector)
{
    detail::write_file(path, export_lp_string(net, s, d, mode));
}

} // namespace manet

#endif // MANET_COMANET_HPP
