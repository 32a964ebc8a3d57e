#ifndef MANET_CLI_HPP
#define MANET_CLI_HPP

// Command-line front end. Kept in a header so tests can drive run_cli()
// in-process; tools/manet.cpp is only a main() wrapper.

#include "manet/bench.hpp"
#include "manet/comanet.hpp"
#include "manet/errors.hpp"
#include "manet/netgen.hpp"
#include "manet/render.hpp"
#include "manet/solution.hpp"
#include "manet/solver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace manet::cli {

enum ExitCode : int
{
    exit_ok = 0,
    exit_check_failed = 1, // validate found violations, or the oracle disagreed
    exit_usage = 2,
    exit_io = 3,
    exit_validation = 4, // malformed or inconsistent input documents
    exit_no_path = 5,
};

enum class OutputFormat
{
    text,
    json,
};

struct RunConfig
{
    std::string command;
    std::string network_path;
    std::optional<DeviceId> source;
    std::optional<DeviceId> destination;
    DistanceMode mode = DistanceMode::sector;
    bool all_levels = false;
    std::optional<Energy> swing_cost;
    std::optional<Energy> destination_cost;
    std::string out_path;
    std::string dot_path;
    std::vector<std::string> solution_paths;
    OutputFormat format = OutputFormat::text;
    bool oracle = false;
    bool no_links = false;
    GenerationParams generation;
    std::vector<std::int64_t> sizes{100, 500, 1000, 2000, 3000, 4000, 5000};
    int repeats = 5;
};

namespace detail {

inline Network load_with_overrides(const RunConfig& cfg)
{
    auto net = load_network(cfg.network_path);
    if (cfg.swing_cost || cfg.destination_cost)
        net = net.with_costs(cfg.swing_cost.value_or(net.swing_cost()), cfg.destination_cost.value_or(net.destination_cost()));
    return net;
}

inline std::string fmt_ms(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

} // namespace detail

inline int cmd_generate(const RunConfig& cfg, std::ostream& out)
{
    const auto net = generate(cfg.generation);
    save_network(net, cfg.out_path);
    out << "generated " << net.size() << " devices (seed " << cfg.generation.seed << ", rng " << generator_rng_name << ") -> "
        << cfg.out_path << "\n";
    return exit_ok;
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& out)
{
    const auto file_net = load_network(cfg.network_path);
    const auto net = detail::load_with_overrides(cfg);
    const EdgeOptions opts{cfg.mode, cfg.all_levels ? EdgePolicy::all_levels : EdgePolicy::lowest_level};
    const auto edges = build_edges(net, opts);
    const auto path = min_energy_path(net, edges, *cfg.source, *cfg.destination);

    const Solution sol{path, network_fingerprint(file_net), cfg.mode};
    if (!cfg.out_path.empty())
        save_solution(sol, cfg.out_path);

    int rc = exit_ok;
    std::string oracle_line;
    if (cfg.oracle) {
        if (net.size() > default_brute_force_limit) {
            oracle_line = "oracle: skipped (" + std::to_string(net.size()) + " devices > " +
                          std::to_string(default_brute_force_limit) + ")";
        } else {
            const auto check = brute_force_min_path(net, edges, *cfg.source, *cfg.destination);
            if (compare_routes(check, path) == 0 && check.total_cost == path.total_cost) {
                oracle_line = "oracle: match";
            } else {
                oracle_line = "oracle: MISMATCH (brute force " + manet::detail::lp_number(check.total_cost) + ")";
                rc = exit_check_failed;
            }
        }
    }

    if (cfg.format == OutputFormat::json) {
        out << solution_to_string(sol);
        if (!oracle_line.empty())
            out << oracle_line << "\n";
        return rc;
    }
    out << format_arrow_path(net, path) << "\n";
    out << format_cost_summary(net, path) << "\n";
    out << "swings: " << path.swings << "\n";
    out << "total: " << manet::detail::lp_number(path.total_cost) << "\n";
    if (!oracle_line.empty())
        out << oracle_line << "\n";
    return rc;
}

inline int cmd_validate(const RunConfig& cfg, std::ostream& out)
{
    const auto file_net = load_network(cfg.network_path);
    const auto sol = load_solution(cfg.solution_paths.at(0));
    if (!sol.network_fingerprint.empty() && sol.network_fingerprint != network_fingerprint(file_net))
        throw ValidationError("solution was produced for a different network (fingerprint " + sol.network_fingerprint + ")");
    for (const auto& h : sol.path.hops)
        if (!file_net.contains(h.device))
            throw ValidationError("solution refers to unknown device " + std::to_string(h.device));

    const auto net = file_net.with_costs(sol.path.swing_cost, sol.path.destination_cost);
    const auto& hops = sol.path.hops;

    // model state realised by the route: senders at their hop level, the
    // rest idle; selected edges are the hops actually used
    Assignment a;
    std::vector<LevelIndex> level_of(net.size(), idle_level);
    std::vector<int> sends(net.size(), 0);
    for (std::size_t i = 0; i + 1 < hops.size(); ++i) {
        const auto idx = *net.index_of(hops[i].device);
        ++sends[idx];
        level_of[idx] = hops[i].level;
        a.edges.emplace(hops[i].device, hops[i + 1].device);
    }
    for (std::size_t i = 0; i < net.size(); ++i) {
        const auto id = net.devices()[i].id;
        a.levels.push_back({id, level_of[i]});
        for (int k = 1; k < sends[i]; ++k) // a device transmitting twice holds two levels
            a.levels.push_back({id, level_of[i]});
    }

    bool all_ok = true;
    auto report = [&](const char* name, const CheckReport& r) {
        all_ok = all_ok && r.ok;
        out << name << ": " << (r.ok ? "pass" : "FAIL");
        if (!r.ok) {
            out << " (" << r.detail;
            for (auto d : r.devices)
                out << " " << d;
            for (const auto& [i, j] : r.edges)
                out << " " << i << "->" << j;
            out << ")";
        }
        out << "\n";
    };

    report("one level per device", check_one_level(a, net));
    report("edge energy", check_edge_feasibility(a, net, sol.mode));
    std::vector<DeviceId> vertices;
    for (const auto& d : net.devices())
        vertices.push_back(d.id);
    const auto g = InducedGraph::from_pairs(vertices, {a.edges.begin(), a.edges.end()});
    if (sol.path.source != sol.path.destination)
        report("connectivity", check_connectivity(g, sol.path.source, sol.path.destination));
    else
        report("connectivity", CheckReport{});

    CheckReport cost;
    try {
        const auto r = evaluate_path(net, hops, sol.mode);
        if (r.total_cost != sol.path.total_cost || r.swings != sol.path.swings) {
            cost.ok = false;
            cost.detail = "recomputed " + manet::detail::lp_number(r.total_cost) + " with " + std::to_string(r.swings) + " swings";
        }
    } catch (const ValidationError& e) {
        cost.ok = false;
        cost.detail = e.what();
    }
    report("cost", cost);
    out << (all_ok ? "all constraints satisfied" : "constraint violations found") << "\n";
    return all_ok ? exit_ok : exit_check_failed;
}

inline int cmd_export(const RunConfig& cfg, std::ostream& out)
{
    const auto net = load_network(cfg.network_path);
    if (cfg.out_path.empty() || cfg.out_path == "-") {
        export_lp(net, *cfg.source, *cfg.destination, out, cfg.mode);
    } else {
        export_lp_file(net, *cfg.source, *cfg.destination, cfg.out_path, cfg.mode);
        out << "wrote LP model for " << net.size() << " devices -> " << cfg.out_path << "\n";
    }
    return exit_ok;
}

inline int cmd_render(const RunConfig& cfg, std::ostream& out)
{
    const auto file_net = load_network(cfg.network_path);
    std::vector<PathResult> paths;
    for (const auto& p : cfg.solution_paths) {
        auto sol = load_solution(p);
        if (!sol.network_fingerprint.empty() && sol.network_fingerprint != network_fingerprint(file_net))
            throw ValidationError("solution '" + p + "' was produced for a different network");
        auto net = file_net.with_costs(sol.path.swing_cost, sol.path.destination_cost);
        paths.push_back(evaluate_path(net, sol.path.hops, sol.mode));
    }
    RenderOptions opt;
    opt.show_links = !cfg.no_links;
    opt.mode = cfg.mode;
    if (file_net.level_count() > 3)
        out << "note: " << file_net.level_count() << " levels, using the hue ramp palette\n";
    manet::detail::write_file(cfg.out_path, render_svg(file_net, paths, opt));
    out << "wrote " << cfg.out_path << "\n";
    if (!cfg.dot_path.empty()) {
        manet::detail::write_file(cfg.dot_path, render_dot(file_net, paths, opt));
        out << "wrote " << cfg.dot_path << "\n";
    }
    return exit_ok;
}

inline int cmd_bench(const RunConfig& cfg, std::ostream& out)
{
    BenchConfig bc;
    bc.sizes = cfg.sizes;
    bc.repeats = cfg.repeats;
    bc.seed = cfg.generation.seed;
    bc.generation = cfg.generation;
    if (bc.sizes.empty())
        throw ConfigError("--sizes must not be empty");

    if (cfg.format == OutputFormat::json) {
        auto arr = nlohmann::ordered_json::array();
        for (auto n : bc.sizes) {
            const auto r = bench_size(n, bc);
            arr.push_back({{"devices", r.devices}, {"generate_ms", r.generate_ms}, {"solve_ms", r.solve_ms},
                           {"total_ms", r.total_ms}, {"edges", r.edges}, {"solved", r.solved}, {"runs", r.runs}});
        }
        out << arr.dump(1) << "\n";
        return exit_ok;
    }
    out << std::left << std::setw(8) << "devices" << std::right << std::setw(12) << "gen_ms" << std::setw(12) << "solve_ms"
        << std::setw(12) << "total_ms" << std::setw(12) << "edges" << std::setw(9) << "solved" << "\n";
    for (auto n : bc.sizes) {
        const auto r = bench_size(n, bc);
        out << std::left << std::setw(8) << r.devices << std::right << std::setw(12) << detail::fmt_ms(r.generate_ms) << std::setw(12)
            << detail::fmt_ms(r.solve_ms) << std::setw(12) << detail::fmt_ms(r.total_ms) << std::setw(12) << r.edges << std::setw(9)
            << (std::to_string(r.solved) + "/" + std::to_string(r.runs)) << "\n";
    }
    return exit_ok;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.command == "generate")
        return cmd_generate(cfg, out);
    if (cfg.command == "solve")
        return cmd_solve(cfg, out);
    if (cfg.command == "validate")
        return cmd_validate(cfg, out);
    if (cfg.command == "export")
        return cmd_export(cfg, out);
    if (cfg.command == "render")
        return cmd_render(cfg, out);
    if (cfg.command == "bench")
        return cmd_bench(cfg, out);
    throw ConfigError("unknown command '" + cfg.command + "'");
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Minimum-energy routing in ad-hoc network snapshots"};
    app.require_subcommand(1);
    std::string mode = "sector";
    std::string format = "text";
    const std::vector<std::string> modes{"sector", "euclidean"};
    const std::vector<std::string> formats{"text", "json"};

    auto* gen = app.add_subcommand("generate", "Generate a random network");
    gen->add_option("--devices,-n", cfg.generation.devices, "Device count")->required()->check(CLI::PositiveNumber);
    gen->add_option("--width", cfg.generation.width, "Space width in pixels")->check(CLI::PositiveNumber);
    gen->add_option("--height", cfg.generation.height, "Space height in pixels")->check(CLI::PositiveNumber);
    gen->add_option("--sector-size", cfg.generation.sector_size, "Sector side in pixels")->check(CLI::PositiveNumber);
    gen->add_option("--levels", cfg.generation.level_count, "Power level count")->check(CLI::PositiveNumber);
    gen->add_option("--alpha", cfg.generation.alpha, "Channel-loss exponent")->check(CLI::Range(2.0, 4.0));
    gen->add_option("--cb", cfg.generation.swing_cost, "Swing cost")->check(CLI::NonNegativeNumber);
    gen->add_option("--cd", cfg.generation.destination_cost, "Destination cost")->check(CLI::NonNegativeNumber);
    gen->add_option("--seed", cfg.generation.seed, "Generator seed");
    gen->add_option("--out,-o", cfg.out_path, "Network file to write")->required();

    auto add_network = [&](CLI::App* sub) { sub->add_option("--network", cfg.network_path, "Network file")->required(); };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", mode, "Reachability: sector or euclidean")->check(CLI::IsMember(modes));
    };
    auto add_endpoints = [&](CLI::App* sub) {
        sub->add_option("--source,-s", cfg.source, "Source device id")->required();
        sub->add_option("--dest,-d", cfg.destination, "Destination device id")->required();
    };

    auto* solve = app.add_subcommand("solve", "Find the minimum-energy path");
    add_network(solve);
    add_endpoints(solve);
    add_mode(solve);
    solve->add_option("--cb", cfg.swing_cost, "Override swing cost")->check(CLI::NonNegativeNumber);
    solve->add_option("--cd", cfg.destination_cost, "Override destination cost")->check(CLI::NonNegativeNumber);
    solve->add_option("--out,-o", cfg.out_path, "Solution file to write");
    solve->add_option("--format", format, "text or json")->check(CLI::IsMember(formats));
    solve->add_flag("--oracle", cfg.oracle, "Cross-check against brute force (small networks)");
    solve->add_flag("--all-levels", cfg.all_levels, "Allow every feasible level per edge, not only the lowest");

    auto* validate = app.add_subcommand("validate", "Check a solution against the model constraints");
    add_network(validate);
    validate->add_option("--solution", cfg.solution_paths, "Solution file")->required()->expected(1);

    auto* exp = app.add_subcommand("export", "Write the integer program in LP format");
    add_network(exp);
    add_endpoints(exp);
    add_mode(exp);
    exp->add_option("--out,-o", cfg.out_path, "LP file to write (- for stdout)");

    auto* render = app.add_subcommand("render", "Draw the network as SVG (and DOT)");
    add_network(render);
    add_mode(render);
    render->add_option("--solution", cfg.solution_paths, "Solution file(s) to highlight");
    render->add_option("--out,-o", cfg.out_path, "SVG file to write")->required();
    render->add_option("--dot", cfg.dot_path, "Also write a DOT file");
    render->add_flag("--no-links", cfg.no_links, "Omit possible connections");

    auto* bench = app.add_subcommand("bench", "Time generation and search");
    bench->add_option("--sizes", cfg.sizes, "Device counts")->check(CLI::PositiveNumber);
    bench->add_option("--repeats", cfg.repeats, "Runs per size (median reported)")->check(CLI::PositiveNumber);
    bench->add_option("--seed", cfg.generation.seed, "Base seed");
    bench->add_option("--format", format, "text or json")->check(CLI::IsMember(formats));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    for (auto* sub : app.get_subcommands())
        cfg.command = sub->get_name();
    cfg.mode = parse_distance_mode(mode);
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::text;

    try {
        return dispatch(cfg, out);
    } catch (const NoFeasiblePathError& e) {
        err << "no feasible path: " << e.what() << "\n";
        return exit_no_path;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const ParseError& e) {
        err << "invalid input: " << e.what() << "\n";
        return exit_validation;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return exit_validation;
    } catch (const ConfigError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const LimitExceededError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_validation;
    }
}

} // namespace manet::cli

#endif // MANET_CLI_HPP
