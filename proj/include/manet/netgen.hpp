#ifndef MANET_NETGEN_HPP
#define MANET_NETGEN_HPP

#include "manet/errors.hpp"
#include "manet/network.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace manet {

struct GenerationParams
{
    std::int64_t devices = 50;
    std::int64_t width = 702;
    std::int64_t height = 702;
    std::int64_t sector_size = 26;
    int level_count = 3;
    double alpha = 2.0;
    Energy swing_cost = 1;
    Energy destination_cost = 2;
    std::uint64_t seed = 0;
};

// Probability that a device supporting level l-1 also supports level l.
// Level 1 is always supported; 3/4 for level 2; 1/2 for every level above.
inline double conditional_support_probability(LevelIndex l)
{
    if (l <= 1)
        return 1.0;
    return l == 2 ? 0.75 : 0.5;
}

/// Marginal probability that a generated device supports level l.
inline double support_probability(LevelIndex l)
{
    double p = 1.0;
    for (LevelIndex k = 2; k <= l; ++k)
        p *= conditional_support_probability(k);
    return p;
}

namespace detail {

// Generator stream: std::mt19937_64 seeded with the seed. Integers in [0, n)
// take the high 64 bits of a 128-bit product, probabilities use the top
// 53 bits. Both are spelled out so files are reproducible across standard
// libraries (std distributions are implementation-defined).
class GenStream
{
public:
    explicit GenStream(std::uint64_t seed) : engine_(seed) {}

    std::int64_t below(std::int64_t n)
    {
        const auto r = static_cast<unsigned __int128>(engine_()) * static_cast<std::uint64_t>(n);
        return static_cast<std::int64_t>(r >> 64);
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace detail

inline constexpr const char* generator_rng_name = "mt19937_64";

inline Network generate(const GenerationParams& gp)
{
    if (gp.devices < 1)
        throw ConfigError("device count must be >= 1");
    if (gp.width <= 0 || gp.height <= 0)
        throw ConfigError("space dimensions must be positive");
    if (gp.sector_size <= 0)
        throw ConfigError("sector size must be positive");
    if (gp.level_count < 1)
        throw ConfigError("level count must be >= 1");
    check_alpha(gp.alpha);

    NetworkParams params;
    params.space = {gp.width, gp.height, 0};
    params.sector_size = gp.sector_size;
    params.alpha = gp.alpha;
    params.swing_cost = gp.swing_cost;
    params.destination_cost = gp.destination_cost;
    params.levels = default_levels(gp.level_count);
    params.seed = gp.seed;

    detail::GenStream rng(gp.seed);
    std::vector<Device> devices;
    devices.reserve(static_cast<std::size_t>(gp.devices));
    for (std::int64_t i = 0; i < gp.devices; ++i) {
        Device d;
        d.id = i;
        d.position.x = rng.below(gp.width);
        d.position.y = rng.below(gp.height);
        d.max_level = 1;
        while (d.max_level < gp.level_count && rng.unit() < conditional_support_probability(d.max_level + 1))
            ++d.max_level;
        devices.push_back(d);
    }
    return Network(std::move(params), std::move(devices));
}

// ---------------------------------------------------------------------------
// Network document (JSON)

inline constexpr int network_format_version = 1;

namespace detail {

using ojson = nlohmann::ordered_json;

inline void put_number(ojson& j, const char* key, double v)
{
    if (std::floor(v) == v && std::fabs(v) < 9.0e15)
        j[key] = static_cast<std::int64_t>(v);
    else
        j[key] = v;
}

inline void reject_unknown(const nlohmann::json& obj, const std::string& where, std::initializer_list<const char*> allowed)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || it.key() == a;
        if (!ok)
            throw ParseError(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
    }
}

inline const nlohmann::json& require(const nlohmann::json& obj, const std::string& where, const char* key)
{
    if (!obj.is_object())
        throw ParseError(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(where.empty() ? key : where + "." + key, "missing field");
    return *it;
}

inline std::int64_t get_int(const nlohmann::json& obj, const std::string& where, const char* key)
{
    const auto& v = require(obj, where, key);
    if (!v.is_number_integer())
        throw ParseError(where.empty() ? key : where + "." + key, "expected an integer");
    return v.get<std::int64_t>();
}

inline double get_real(const nlohmann::json& obj, const std::string& where, const char* key)
{
    const auto& v = require(obj, where, key);
    if (!v.is_number())
        throw ParseError(where.empty() ? key : where + "." + key, "expected a number");
    return v.get<double>();
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

} // namespace detail

inline nlohmann::ordered_json network_to_json(const Network& net)
{
    detail::ojson j;
    j["version"] = network_format_version;
    if (net.seed())
        j["seed"] = *net.seed();
    else
        j["seed"] = nullptr;
    j["space"] = {{"x", net.space().x}, {"y", net.space().y}, {"z", net.space().z}};
    j["sector_size"] = net.sector_size();
    detail::put_number(j, "alpha", net.alpha());
    detail::put_number(j, "cb", net.swing_cost());
    detail::put_number(j, "cd", net.destination_cost());
    auto levels = detail::ojson::array();
    for (const auto& lv : net.levels()) {
        detail::ojson o;
        o["id"] = lv.id;
        o["range_sectors"] = lv.range_sectors;
        detail::put_number(o, "cost", lv.cost);
        levels.push_back(std::move(o));
    }
    j["levels"] = std::move(levels);
    auto devices = detail::ojson::array();
    for (const auto& d : net.devices())
        devices.push_back({{"id", d.id}, {"x", d.position.x}, {"y", d.position.y}, {"z", d.position.z}, {"max_level", d.max_level}});
    j["devices"] = std::move(devices);
    return j;
}

/// Canonical text form: one key order, devices sorted by id, trailing newline.
inline std::string network_to_string(const Network& net)
{
    return network_to_json(net).dump(1) + "\n";
}

inline Network network_from_json(const nlohmann::json& j)
{
    using detail::get_int;
    using detail::get_real;
    using detail::require;
    if (!j.is_object())
        throw ParseError("", "network document must be an object");
    detail::reject_unknown(j, "", {"version", "seed", "space", "sector_size", "alpha", "cb", "cd", "levels", "devices"});

    if (get_int(j, "", "version") != network_format_version)
        throw ParseError("version", "unsupported version");

    NetworkParams p;
    const auto& seed = require(j, "", "seed");
    if (seed.is_null())
        p.seed.reset();
    else if (seed.is_number_unsigned() || (seed.is_number_integer() && seed.get<std::int64_t>() >= 0))
        p.seed = seed.get<std::uint64_t>();
    else
        throw ParseError("seed", "expected a non-negative integer or null");

    const auto& space = require(j, "", "space");
    detail::reject_unknown(space, "space", {"x", "y", "z"});
    p.space = {get_int(space, "space", "x"), get_int(space, "space", "y"), get_int(space, "space", "z")};
    p.sector_size = get_int(j, "", "sector_size");
    p.alpha = get_real(j, "", "alpha");
    p.swing_cost = get_real(j, "", "cb");
    p.destination_cost = get_real(j, "", "cd");

    const auto& levels = require(j, "", "levels");
    if (!levels.is_array())
        throw ParseError("levels", "expected an array");
    p.levels.clear();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const std::string where = "levels[" + std::to_string(i) + "]";
        const auto& o = levels[i];
        detail::reject_unknown(o, where, {"id", "range_sectors", "cost"});
        p.levels.push_back({static_cast<LevelIndex>(get_int(o, where, "id")), get_int(o, where, "range_sectors"),
                            get_real(o, where, "cost")});
    }

    const auto& devs = require(j, "", "devices");
    if (!devs.is_array())
        throw ParseError("devices", "expected an array");
    std::vector<Device> devices;
    devices.reserve(devs.size());
    for (std::size_t i = 0; i < devs.size(); ++i) {
        const std::string where = "devices[" + std::to_string(i) + "]";
        const auto& o = devs[i];
        detail::reject_unknown(o, where, {"id", "x", "y", "z", "max_level"});
        Device d;
        d.id = get_int(o, where, "id");
        d.position = {get_int(o, where, "x"), get_int(o, where, "y"), get_int(o, where, "z")};
        d.max_level = static_cast<LevelIndex>(get_int(o, where, "max_level"));
        devices.push_back(d);
    }
    return Network(std::move(p), std::move(devices));
}

inline Network network_from_string(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("", e.what());
    }
    return network_from_json(j);
}

inline void save_network(const Network& net, const std::string& path)
{
    detail::write_file(path, network_to_string(net));
}

inline Network load_network(const std::string& path)
{
    return network_from_string(detail::read_file(path));
}

/// FNV-1a over the canonical document; used to tie solutions to networks.
inline std::string network_fingerprint(const Network& net)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : network_to_string(net)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace manet

#endif // MANET_NETGEN_HPP
