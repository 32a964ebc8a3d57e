#ifndef MANET_RENDER_HPP
#define MANET_RENDER_HPP

#include "manet/network.hpp"
#include "manet/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace manet {

struct RenderOptions
{
    bool show_links = true; // every lowest-level edge, thin and translucent
    bool show_grid = true;
    int margin = 20;
    DistanceMode mode = DistanceMode::sector;
};

/// Stroke colour for a level. Up to three levels use the usual palette
/// (green low, blue middle, red high). Larger tables use a hue ramp from
/// green (120 deg) through blue (240 deg) to red (360 deg), evenly spaced.
inline std::string level_color(LevelIndex l, LevelIndex level_count)
{
    if (level_count <= 3) {
        static constexpr const char* palette[] = {"#2ca02c", "#1f77b4", "#d62728"};
        const int offset = level_count == 1 ? 0 : (level_count == 2 ? (l == 1 ? 0 : 1) : l - 1);
        return palette[std::clamp(offset, 0, 2)];
    }
    const double hue = 120.0 + 240.0 * static_cast<double>(l - 1) / static_cast<double>(level_count - 1);
    // HSV(hue, 0.8, 0.8) -> RGB
    const double h = std::fmod(hue, 360.0) / 60.0;
    const double c = 0.8 * 0.8;
    const double x = c * (1 - std::fabs(std::fmod(h, 2.0) - 1));
    const double m = 0.8 - c;
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(h)) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((r + m) * 255)),
                  static_cast<int>(std::lround((g + m) * 255)), static_cast<int>(std::lround((b + m) * 255)));
    return buf;
}

inline std::string render_svg(const Network& net, const std::vector<PathResult>& paths = {}, const RenderOptions& opt = {})
{
    const auto W = net.space().x, H = net.space().y;
    const auto m = opt.margin;
    const auto L = net.level_count();
    std::ostringstream s;
    auto X = [&](std::int64_t x) { return x + m; };
    auto Y = [&](std::int64_t y) { return y + m; };

    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W + 2 * m << "\" height=\"" << H + 2 * m
      << "\" viewBox=\"0 0 " << W + 2 * m << " " << H + 2 * m << "\">\n";
    s << "<rect x=\"0\" y=\"0\" width=\"" << W + 2 * m << "\" height=\"" << H + 2 * m << "\" fill=\"white\"/>\n";

    if (opt.show_grid) {
        s << "<g class=\"grid\" stroke=\"#dddddd\" stroke-width=\"0.5\">\n";
        for (std::int64_t x = 0; x <= W; x += net.sector_size())
            s << " <line x1=\"" << X(x) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(x) << "\" y2=\"" << Y(H) << "\"/>\n";
        for (std::int64_t y = 0; y <= H; y += net.sector_size())
            s << " <line x1=\"" << X(0) << "\" y1=\"" << Y(y) << "\" x2=\"" << X(W) << "\" y2=\"" << Y(y) << "\"/>\n";
        s << " <rect x=\"" << X(0) << "\" y=\"" << Y(0) << "\" width=\"" << W << "\" height=\"" << H
          << "\" fill=\"none\" stroke=\"#999999\"/>\n";
        s << "</g>\n";
    }

    const auto& devs = net.devices();
    if (opt.show_links) {
        const auto edges = build_edges(net, {opt.mode, EdgePolicy::lowest_level});
        s << "<g class=\"links\" stroke-width=\"0.4\" stroke-opacity=\"0.35\">\n";
        for (std::size_t u = 0; u < devs.size(); ++u)
            for (const auto& a : edges.out(u)) {
                const auto& p = devs[u].position;
                const auto& q = devs[a.to].position;
                s << " <line class=\"link l" << a.level << "\" x1=\"" << X(p.x) << "\" y1=\"" << Y(p.y) << "\" x2=\"" << X(q.x)
                  << "\" y2=\"" << Y(q.y) << "\" stroke=\"" << level_color(a.level, L) << "\"/>\n";
            }
        s << "</g>\n";
    }

    for (const auto& path : paths) {
        s << "<g class=\"path\" data-source=\"" << path.source << "\" data-destination=\"" << path.destination << "\">\n";
        for (std::size_t i = 0; i + 1 < path.hops.size(); ++i) {
            const auto& p = net.device(path.hops[i].device).position;
            const auto& q = net.device(path.hops[i + 1].device).position;
            s << " <line class=\"path-hop\" x1=\"" << X(p.x) << "\" y1=\"" << Y(p.y) << "\" x2=\"" << X(q.x) << "\" y2=\"" << Y(q.y)
              << "\" stroke=\"" << level_color(path.hops[i].level, L) << "\" stroke-width=\"4\"/>\n";
        }
        for (auto id : path.swing_devices()) {
            const auto& p = net.device(id).position;
            s << " <circle class=\"swing\" cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y)
              << "\" r=\"9\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
        }
        s << "</g>\n";
    }

    // device glyph: a dot plus one short connector per supported level
    s << "<g class=\"devices\" font-family=\"sans-serif\" font-size=\"9\">\n";
    for (const auto& d : devs) {
        const auto cx = X(d.position.x), cy = Y(d.position.y);
        s << " <g class=\"device\" id=\"device-" << d.id << "\" data-max-level=\"" << d.max_level << "\">";
        for (LevelIndex l = 1; l <= d.max_level; ++l) {
            const auto dx = -6 + 4 * (l - 1);
            s << "<line x1=\"" << cx + dx << "\" y1=\"" << cy - 3 << "\" x2=\"" << cx + dx << "\" y2=\"" << cy - 9 << "\" stroke=\""
              << level_color(l, L) << "\" stroke-width=\"2\"/>";
        }
        s << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"3\" fill=\"black\"/>";
        s << "<text x=\"" << cx + 4 << "\" y=\"" << cy + 10 << "\">" << d.id << "</text>";
        s << "</g>\n";
    }
    s << "</g>\n";
    s << "</svg>\n";
    return s.str();
}

inline std::string render_dot(const Network& net, const std::vector<PathResult>& paths = {}, const RenderOptions& opt = {})
{
    std::set<std::pair<DeviceId, DeviceId>> on_path;
    for (const auto& p : paths)
        for (std::size_t i = 0; i + 1 < p.hops.size(); ++i)
            on_path.emplace(p.hops[i].device, p.hops[i + 1].device);

    const auto L = net.level_count();
    std::ostringstream s;
    s << "digraph manet {\n";
    s << "  node [shape=point];\n";
    for (const auto& d : net.devices())
        s << "  n" << d.id << " [label=\"" << d.id << "\", xlabel=\"" << d.id << "\", pos=\"" << d.position.x << "," << -d.position.y
          << "!\", max_level=" << d.max_level << "];\n";
    const auto edges = build_edges(net, {opt.mode, EdgePolicy::lowest_level});
    for (const auto& e : edges.edges(net)) {
        const bool bold = on_path.contains({e.from, e.to});
        if (!opt.show_links && !bold)
            continue;
        s << "  n" << e.from << " -> n" << e.to << " [color=\"" << level_color(e.level, L) << "\", label=\"C" << e.level << "\"";
        if (bold)
            s << ", penwidth=3";
        s << "];\n";
    }
    s << "}\n";
    return s.str();
}

} // namespace manet

#endif // MANET_RENDER_HPP
