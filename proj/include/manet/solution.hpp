#ifndef MANET_SOLUTION_HPP
#define MANET_SOLUTION_HPP

#include "manet/comanet.hpp"
#include "manet/errors.hpp"
#include "manet/netgen.hpp"
#include "manet/network.hpp"
#include "manet/solver.hpp"

#include <json.hpp>

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace manet {

// A solved route plus the context needed to re-check it later.
struct Solution
{
    PathResult path;
    std::string network_fingerprint; // empty when unknown
    DistanceMode mode = DistanceMode::sector;
};

inline nlohmann::ordered_json solution_to_json(const Solution& sol)
{
    using detail::put_number;
    const auto& p = sol.path;
    nlohmann::ordered_json j;
    j["source"] = p.source;
    j["destination"] = p.destination;
    auto hops = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < p.hops.size(); ++i) {
        if (i + 1 < p.hops.size())
            hops.push_back({{"device", p.hops[i].device}, {"level", p.hops[i].level}});
        else
            hops.push_back({{"device", p.hops[i].device}});
    }
    j["hops"] = std::move(hops);
    j["swings"] = p.swings;
    put_number(j, "total_cost", p.total_cost);
    auto br = nlohmann::ordered_json::array();
    for (const auto& h : p.breakdown) {
        nlohmann::ordered_json o;
        o["from"] = h.from;
        o["to"] = h.to;
        o["level"] = h.level;
        put_number(o, "cost", h.cost);
        br.push_back(std::move(o));
    }
    j["breakdown"] = std::move(br);
    put_number(j, "cb", p.swing_cost);
    put_number(j, "cd", p.destination_cost);
    j["mode"] = to_string(sol.mode);
    j["network"] = sol.network_fingerprint;
    return j;
}

inline std::string solution_to_string(const Solution& sol)
{
    return solution_to_json(sol).dump(1) + "\n";
}

inline Solution solution_from_json(const nlohmann::json& j)
{
    using detail::get_int;
    using detail::get_real;
    using detail::require;
    if (!j.is_object())
        throw ParseError("", "solution document must be an object");
    detail::reject_unknown(j, "", {"source", "destination", "hops", "swings", "total_cost", "breakdown", "cb", "cd", "mode", "network"});

    Solution sol;
    auto& p = sol.path;
    p.source = get_int(j, "", "source");
    p.destination = get_int(j, "", "destination");
    const auto& hops = require(j, "", "hops");
    if (!hops.is_array() || hops.empty())
        throw ParseError("hops", "expected a non-empty array");
    for (std::size_t i = 0; i < hops.size(); ++i) {
        const std::string where = "hops[" + std::to_string(i) + "]";
        detail::reject_unknown(hops[i], where, {"device", "level"});
        Hop h;
        h.device = get_int(hops[i], where, "device");
        if (i + 1 < hops.size())
            h.level = static_cast<LevelIndex>(get_int(hops[i], where, "level"));
        p.hops.push_back(h);
    }
    p.swings = static_cast<int>(get_int(j, "", "swings"));
    p.total_cost = get_real(j, "", "total_cost");
    const auto& br = require(j, "", "breakdown");
    if (!br.is_array())
        throw ParseError("breakdown", "expected an array");
    for (std::size_t i = 0; i < br.size(); ++i) {
        const std::string where = "breakdown[" + std::to_string(i) + "]";
        detail::reject_unknown(br[i], where, {"from", "to", "level", "cost"});
        p.breakdown.push_back({get_int(br[i], where, "from"), get_int(br[i], where, "to"),
                               static_cast<LevelIndex>(get_int(br[i], where, "level")), get_real(br[i], where, "cost")});
        p.hop_cost_total += p.breakdown.back().cost;
    }
    p.swing_cost = get_real(j, "", "cb");
    p.destination_cost = get_real(j, "", "cd");
    if (j.contains("mode")) {
        if (!j["mode"].is_string())
            throw ParseError("mode", "expected a string");
        try {
            sol.mode = parse_distance_mode(j["mode"].get<std::string>());
        } catch (const ConfigError& e) {
            throw ParseError("mode", e.what());
        }
    }
    if (j.contains("network")) {
        if (!j["network"].is_string())
            throw ParseError("network", "expected a string");
        sol.network_fingerprint = j["network"].get<std::string>();
    }
    if (p.hops.front().device != p.source || p.hops.back().device != p.destination)
        throw ParseError("hops", "first and last hop must be source and destination");
    return sol;
}

inline Solution solution_from_string(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("", e.what());
    }
    return solution_from_json(j);
}

inline void save_solution(const Solution& sol, const std::string& path)
{
    detail::write_file(path, solution_to_string(sol));
}

inline Solution load_solution(const std::string& path)
{
    return solution_from_string(detail::read_file(path));
}

// ---------------------------------------------------------------------------
// Arrow notation
//
//   45[10;521;0] -C2-> 12[107;501;0] -C2-> 37[261;433;0] -Cb-> 37[261;433;0] -C1-> ...
//     ... -C1-> 49[682;16;0] -Cd-> 49[682;16;0]
//
// A device whose transmit level differs from the level it received at is
// written twice around a -Cb-> arrow; the destination is repeated after -Cd->.

inline std::string format_device(const Device& d)
{
    std::ostringstream ss;
    ss << d.id << "[" << d.position.x << ";" << d.position.y << ";" << d.position.z << "]";
    return ss.str();
}

inline std::string format_arrow_path(const Network& net, const PathResult& path)
{
    std::ostringstream ss;
    const auto& hops = path.hops;
    ss << format_device(net.device(hops.front().device));
    if (hops.size() == 1)
        return ss.str();
    for (std::size_t i = 0; i + 1 < hops.size(); ++i) {
        if (i > 0 && hops[i].level != hops[i - 1].level)
            ss << " -Cb-> " << format_device(net.device(hops[i].device));
        ss << " -C" << hops[i].level << "-> " << format_device(net.device(hops[i + 1].device));
    }
    ss << " -Cd-> " << format_device(net.device(hops.back().device));
    return ss.str();
}

/// Cost line in the "(k * Cl) + ... + (nb * Cb) + Cd = total" style.
inline std::string format_cost_summary(const Network& net, const PathResult& path)
{
    std::ostringstream ss;
    if (path.hop_count() == 0) {
        ss << "Total Cost: C = 0";
        return ss.str();
    }
    std::map<LevelIndex, int> per_level;
    for (const auto& h : path.breakdown)
        ++per_level[h.level];
    ss << "Total Cost: C = ";
    for (LevelIndex l = 1; l <= net.level_count(); ++l)
        ss << "(" << per_level[l] << " * C" << l << ") + ";
    ss << "(" << path.swings << " * Cb) + Cd = ";
    for (LevelIndex l = 1; l <= net.level_count(); ++l)
        ss << "(" << per_level[l] << " * " << detail::lp_number(net.level(l).cost) << ") + ";
    ss << "(" << path.swings << " * " << detail::lp_number(path.swing_cost) << ") + " << detail::lp_number(path.destination_cost)
       << " = " << detail::lp_number(path.total_cost);
    return ss.str();
}

/// Inverse of format_arrow_path(): the hop sequence (destination level 0).
inline std::vector<Hop> parse_arrow_path(const std::string& text)
{
    std::istringstream in(text);
    std::vector<std::string> tokens;
    for (std::string t; in >> t;)
        tokens.push_back(t);
    if (tokens.empty())
        throw ParseError("path", "empty path");

    auto parse_device = [](const std::string& tok) {
        const auto br = tok.find('[');
        if (br == std::string::npos || br == 0 || tok.back() != ']')
            throw ParseError("path", "bad device token '" + tok + "'");
        for (std::size_t i = 0; i < br; ++i)
            if (!std::isdigit(static_cast<unsigned char>(tok[i])))
                throw ParseError("path", "bad device id in '" + tok + "'");
        return static_cast<DeviceId>(std::stoll(tok.substr(0, br)));
    };

    if (tokens.size() % 2 == 0)
        throw ParseError("path", "dangling arrow");
    std::vector<Hop> hops{{parse_device(tokens[0]), 0}};
    bool closed = false;
    for (std::size_t i = 1; i < tokens.size(); i += 2) {
        if (closed)
            throw ParseError("path", "tokens after the destination");
        const auto& arrow = tokens[i];
        const auto dev = parse_device(tokens[i + 1]);
        if (arrow.size() < 5 || arrow.rfind("-C", 0) != 0 || arrow.substr(arrow.size() - 2) != "->")
            throw ParseError("path", "bad arrow '" + arrow + "'");
        const auto tag = arrow.substr(2, arrow.size() - 4);
        if (tag == "b" || tag == "d") {
            if (dev != hops.back().device)
                throw ParseError("path", "-C" + tag + "-> must repeat the device");
            closed = tag == "d";
            continue;
        }
        for (char c : tag)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("path", "bad arrow '" + arrow + "'");
        hops.back().level = std::stoi(tag);
        hops.push_back({dev, 0});
    }
    if (hops.size() > 1 && !closed)
        throw ParseError("path", "missing -Cd-> terminator");
    return hops;
}

} // namespace manet

#endif // MANET_SOLUTION_HPP
