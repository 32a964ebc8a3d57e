#ifndef MANET_BENCH_HPP
#define MANET_BENCH_HPP

#include "manet/netgen.hpp"
#include "manet/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <vector>

namespace manet {

struct BenchConfig
{
    std::vector<std::int64_t> sizes{100, 500, 1000, 2000, 3000, 4000, 5000};
    int repeats = 5;
    std::uint64_t seed = 1;
    GenerationParams generation; // `devices` and `seed` are overridden per run
};

struct BenchRow
{
    std::int64_t devices = 0;
    double generate_ms = 0; // network generation + edge construction, median
    double solve_ms = 0;    // search only on prebuilt edges, median
    double total_ms = 0;    // generate + edges + solve, median
    std::size_t edges = 0;  // edge count of the last run
    int solved = 0;         // runs where a path existed
    int runs = 0;
};

namespace detail {

inline double median(std::vector<double> v)
{
    if (v.empty())
        return 0;
    std::sort(v.begin(), v.end());
    const auto mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

} // namespace detail

/// One timed run: generate, build edges, solve between a seeded random pair.
/// Unreachable pairs still count as a completed search.
inline BenchRow bench_size(std::int64_t n, const BenchConfig& cfg)
{
    using clock = std::chrono::steady_clock;
    auto ms = [](clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };

    BenchRow row;
    row.devices = n;
    std::vector<double> gen, solve, total;
    for (int r = 0; r < std::max(1, cfg.repeats); ++r) {
        auto gp = cfg.generation;
        gp.devices = n;
        gp.seed = cfg.seed + static_cast<std::uint64_t>(r) * 7919 + static_cast<std::uint64_t>(n);

        const auto t0 = clock::now();
        const auto net = generate(gp);
        const auto edges = build_edges(net);
        const auto t1 = clock::now();

        detail::GenStream pick(gp.seed ^ 0x9e3779b97f4a7c15ULL);
        const auto s = net.devices()[static_cast<std::size_t>(pick.below(n))].id;
        const auto d = net.devices()[static_cast<std::size_t>(pick.below(n))].id;
        try {
            (void)min_energy_path(net, edges, s, d);
            ++row.solved;
        } catch (const NoFeasiblePathError&) {
        }
        const auto t2 = clock::now();

        gen.push_back(ms(t1 - t0));
        solve.push_back(ms(t2 - t1));
        total.push_back(ms(t2 - t0));
        row.edges = edges.arc_count();
        ++row.runs;
    }
    row.generate_ms = detail::median(gen);
    row.solve_ms = detail::median(solve);
    row.total_ms = detail::median(total);
    return row;
}

inline std::vector<BenchRow> run_benchmark(const BenchConfig& cfg)
{
    std::vector<BenchRow> rows;
    for (auto n : cfg.sizes)
        rows.push_back(bench_size(n, cfg));
    return rows;
}

} // namespace manet

#endif // MANET_BENCH_HPP
