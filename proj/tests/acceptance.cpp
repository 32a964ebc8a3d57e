// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runs under ctest as the `acceptance` test.

#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace manet;

namespace {

struct Outcome
{
    bool ok = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (ok)
            detail = why;
        ok = false;
    }
};

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0)
{
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::string ms_text(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

Outcome level_table()
{
    Outcome o;
    const auto table = default_levels(3);
    const std::int64_t ranges[] = {2, 6, 12};
    const Energy costs[] = {4, 36, 144};
    for (int i = 0; i < 3; ++i)
        if (table[static_cast<std::size_t>(i)].range_sectors != ranges[i] || table[static_cast<std::size_t>(i)].cost != costs[i])
            o.fail("level " + std::to_string(i + 1) + " differs");
    std::ostringstream ss;
    ss << "ranges (2, 6, 12), costs (4, 36, 144)";
    if (o.ok)
        o.detail = ss.str();
    return o;
}

Outcome golden_routes()
{
    Outcome o;
    const auto net = fixtures::reference();
    struct Case
    {
        const std::vector<Hop>* route;
        Energy cost;
        int swings;
    };
    const Case cases[] = {{&fixtures::reference_route1(), 237, 3}, {&fixtures::reference_route2(), 192, 2}, {&fixtures::reference_route3(), 110, 0}};
    int hops = 0;
    for (const auto& c : cases) {
        const auto r = evaluate_path(net, *c.route);
        if (r.total_cost != c.cost || r.swings != c.swings)
            o.fail("route from " + std::to_string(c.route->front().device) + " gives " + detail::lp_number(r.total_cost) + "/" +
                   std::to_string(r.swings));
        for (std::size_t i = 0; i + 1 < c.route->size(); ++i, ++hops) {
            const auto l = lowest_feasible_level(net, net.device((*c.route)[i].device), net.device((*c.route)[i + 1].device),
                                                 DistanceMode::sector);
            if (l != std::optional<LevelIndex>((*c.route)[i].level))
                o.fail("hop " + std::to_string((*c.route)[i].device) + " level mismatch");
        }
    }
    if (o.ok)
        o.detail = "237/3, 192/2, 110/0; " + std::to_string(hops) + " hop levels reproduced";
    return o;
}

Outcome fixture_solve()
{
    Outcome o;
    const auto net = fixtures::route3_network();
    const auto r = min_energy_path(net, 13, 42);
    const auto bf = brute_force_min_path(net, 13, 42);
    if (r.hops != fixtures::reference_route3())
        o.fail("different route");
    if (r.total_cost != 110 || bf.total_cost != r.total_cost)
        o.fail("cost " + detail::lp_number(r.total_cost) + ", brute force " + detail::lp_number(bf.total_cost));
    if (o.ok)
        o.detail = "13 -> 34 -> 46 -> 42 at 110, brute force 110";
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    fixtures::SmallNetworkGen gen(20240601);
    std::mt19937_64 rng(42);
    int compared = 0, infeasible = 0;
    const auto t0 = clock_type::now();
    for (int t = 0; t < 300; ++t) {
        const auto net = gen.next(12);
        const auto& devs = net.devices();
        const auto s = devs[rng() % devs.size()].id;
        const auto d = devs[rng() % devs.size()].id;
        const auto edges = build_edges(net);
        std::optional<PathResult> expected, got;
        try {
            expected = brute_force_min_path(net, edges, s, d);
        } catch (const NoFeasiblePathError&) {
        }
        try {
            got = min_energy_path(net, edges, s, d);
        } catch (const NoFeasiblePathError&) {
        }
        if (expected.has_value() != got.has_value()) {
            o.fail("feasibility differs on network " + std::to_string(t));
            continue;
        }
        if (!expected) {
            ++infeasible;
            continue;
        }
        ++compared;
        if (got->total_cost != expected->total_cost || got->hops != expected->hops)
            o.fail("mismatch on network " + std::to_string(t));
    }
    const auto elapsed = ms_since(t0);
    if (compared + infeasible < 200)
        o.fail("only " + std::to_string(compared + infeasible) + " networks");
    if (elapsed > 60000)
        o.fail("took " + std::to_string(elapsed) + " ms");
    if (o.ok)
        o.detail = std::to_string(compared + infeasible) + " networks (" + std::to_string(compared) + " with a path), 0 mismatches, " +
                   ms_text(elapsed) + " ms";
    return o;
}

Outcome constraint_closure()
{
    Outcome o;
    int solved = 0;
    for (std::uint64_t seed = 0; solved < 100 && seed < 1000; ++seed) {
        GenerationParams gp;
        gp.devices = 60;
        gp.seed = seed;
        const auto net = generate(gp);
        detail::GenStream pick(seed + 17);
        const auto s = static_cast<DeviceId>(pick.below(60));
        const auto d = static_cast<DeviceId>(pick.below(60));
        if (s == d)
            continue;
        PathResult r;
        try {
            r = min_energy_path(net, s, d);
        } catch (const NoFeasiblePathError&) {
            continue;
        }
        ++solved;
        const auto a = assignment_from_path(r, net);
        if (!check_one_level(a, net))
            o.fail("one-level check failed, seed " + std::to_string(seed));
        if (!check_edge_feasibility(a, net))
            o.fail("edge check failed, seed " + std::to_string(seed));
        if (!check_connectivity(induce_graph(net, a.levels), s, d))
            o.fail("connectivity check failed, seed " + std::to_string(seed));
        if (objective_value(a, net) != r.total_cost - r.swings * net.swing_cost() - net.destination_cost())
            o.fail("objective mismatch, seed " + std::to_string(seed));
    }
    if (solved < 100)
        o.fail("only " + std::to_string(solved) + " solves");
    if (o.ok)
        o.detail = "100 solves, all three checks and the objective identity hold";
    return o;
}

Outcome generator_marginals()
{
    Outcome o;
    GenerationParams gp;
    gp.devices = 10000;
    gp.seed = 7;
    const auto net = generate(gp);
    int l2 = 0, l3 = 0;
    for (const auto& d : net.devices()) {
        l2 += d.supports(2);
        l3 += d.supports(3);
    }
    const double f2 = l2 / 10000.0, f3 = l3 / 10000.0;
    if (std::abs(f2 - 0.75) > 0.02 || std::abs(f3 - 0.375) > 0.02)
        o.ok = false;
    char buf[96];
    std::snprintf(buf, sizeof buf, "level 2: %.4f, level 3: %.4f", f2, f3);
    o.detail = buf;
    return o;
}

Outcome performance()
{
    Outcome o;
    GenerationParams gp;
    gp.devices = 5000;
    gp.seed = 11;
    // warm-up so the first allocation of large buffers is not measured
    {
        const auto net = generate(gp);
        (void)min_energy_path(net, 0, 4999);
    }

    std::vector<double> full;
    for (int r = 0; r < 3; ++r) {
        gp.seed = 11 + static_cast<std::uint64_t>(r);
        const auto t0 = clock_type::now();
        const auto net = generate(gp);
        const auto edges = build_edges(net);
        try {
            (void)min_energy_path(net, edges, 0, 4999);
        } catch (const NoFeasiblePathError&) {
        }
        full.push_back(ms_since(t0));
    }

    gp.seed = 11;
    const auto net = generate(gp);
    const auto edges = build_edges(net);
    detail::GenStream pick(99);
    std::vector<double> solve;
    for (int r = 0; r < 11; ++r) {
        const auto s = static_cast<DeviceId>(pick.below(5000));
        const auto d = static_cast<DeviceId>(pick.below(5000));
        const auto t0 = clock_type::now();
        try {
            (void)min_energy_path(net, edges, s, d);
        } catch (const NoFeasiblePathError&) {
        }
        solve.push_back(ms_since(t0));
    }
    const auto full_ms = *std::max_element(full.begin(), full.end());
    const auto solve_ms = detail::median(solve);
    if (full_ms >= 1000)
        o.fail("");
    if (solve_ms >= 50)
        o.fail("");
    o.detail = "generate+edges+solve max " + ms_text(full_ms) + " ms (< 1000), solve median " + ms_text(solve_ms) +
               " ms (< 50), " + std::to_string(edges.arc_count()) + " edges";
    return o;
}

Outcome known_discrepancy()
{
    Outcome o;
    const auto r = evaluate_path(fixtures::illustration(), fixtures::illustration_route());
    if (r.total_cost != 192 || r.swings != 2)
        o.fail("evaluator gives " + detail::lp_number(r.total_cost));
    else
        o.detail = "green, green, blue, red evaluates to 188 + 2 swings + 2 = 192, not 191";
    return o;
}

} // namespace

int main()
{
    struct Criterion
    {
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"level table exactness", level_table},
        {"golden route costs and hop levels", golden_routes},
        {"fixture solve matches route and oracle", fixture_solve},
        {"solver equals brute-force oracle", oracle_equivalence},
        {"constraint closure of solved routes", constraint_closure},
        {"generator level marginals", generator_marginals},
        {"performance at 5000 devices", performance},
        {"known discrepancy: 192 not 191", known_discrepancy},
    };
    int failed = 0, index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.ok;
        std::printf("[%s] %d. %s: %s\n", o.ok ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
