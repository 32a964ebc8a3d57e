#include "test_support.hpp"

#include "manet/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace manet;
namespace fs = std::filesystem;

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "manet");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test
{
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / ("manet_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

} // namespace

TEST_F(CliTest, GenerateIsDeterministic)
{
    const auto a = tmp("a.json"), b = tmp("b.json");
    auto r = run({"generate", "--devices", "50", "--seed", "3", "--out", a});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("generated 50 devices"), std::string::npos);
    ASSERT_EQ(run({"generate", "-n", "50", "--seed", "3", "-o", b}).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(load_network(a).size(), 50u);
}

TEST_F(CliTest, UsageErrors)
{
    EXPECT_EQ(run({}).code, cli::exit_usage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::exit_usage);
    EXPECT_EQ(run({"generate", "--devices", "0", "--out", tmp("x.json")}).code, cli::exit_usage);
    EXPECT_EQ(run({"generate", "--devices", "5", "--alpha", "5", "--out", tmp("x.json")}).code, cli::exit_usage);
    EXPECT_EQ(run({"solve", "--network", fixtures::fixture("reference.json"), "-s", "45"}).code, cli::exit_usage);
    EXPECT_EQ(run({"solve", "--network", fixtures::fixture("reference.json"), "-s", "45", "-d", "49", "--mode", "taxicab"}).code,
              cli::exit_usage);
    EXPECT_EQ(run({"--help"}).code, cli::exit_ok);
}

TEST_F(CliTest, SolveText)
{
    auto r = run({"solve", "--network", fixtures::fixture("reference_route3.json"), "-s", "13", "-d", "42"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("13[57;408;0] -C2-> 34[224;365;0] -C2-> 46[332;276;0] -C2-> 42[341;116;0] -Cd-> 42[341;116;0]"),
              std::string::npos)
        << r.out;
    EXPECT_NE(r.out.find("total: 110"), std::string::npos);
    EXPECT_NE(r.out.find("swings: 0"), std::string::npos);
}

TEST_F(CliTest, SolveJsonAndOracle)
{
    auto r = run({"solve", "--network", fixtures::fixture("reference_route3.json"), "-s", "13", "-d", "42", "--format", "json", "--oracle"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto nl = r.out.rfind("oracle: match");
    ASSERT_NE(nl, std::string::npos);
    const auto sol = solution_from_string(r.out.substr(0, nl));
    EXPECT_EQ(sol.path.total_cost, 110);

    r = run({"solve", "--network", fixtures::fixture("reference.json"), "-s", "45", "-d", "49", "--oracle"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("oracle: skipped"), std::string::npos);
}

TEST_F(CliTest, SolveFailures)
{
    const auto net = tmp("far.json");
    save_network(Network(NetworkParams{}, {{1, {13, 13, 0}, 1}, {2, {650, 650, 0}, 1}}), net);
    EXPECT_EQ(run({"solve", "--network", net, "-s", "1", "-d", "2"}).code, cli::exit_no_path);
    EXPECT_EQ(run({"solve", "--network", net, "-s", "1", "-d", "7"}).code, cli::exit_validation);
    EXPECT_EQ(run({"solve", "--network", tmp("missing.json"), "-s", "1", "-d", "2"}).code, cli::exit_io);
    std::ofstream(tmp("bad.json")) << "{\"version\": 1}";
    auto r = run({"solve", "--network", tmp("bad.json"), "-s", "1", "-d", "2"});
    EXPECT_EQ(r.code, cli::exit_validation);
    EXPECT_NE(r.err.find("invalid input"), std::string::npos);
}

TEST_F(CliTest, CostOverrides)
{
    auto r = run({"solve", "--network", fixtures::fixture("reference_route3.json"), "-s", "13", "-d", "42", "--cd", "10"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("total: 118"), std::string::npos);
}

TEST_F(CliTest, ValidateRoundTrip)
{
    const auto sol = tmp("sol.json");
    ASSERT_EQ(run({"solve", "--network", fixtures::fixture("reference.json"), "-s", "45", "-d", "49", "--out", sol}).code, 0);
    auto r = run({"validate", "--network", fixtures::fixture("reference.json"), "--solution", sol});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("one level per device: pass"), std::string::npos);
    EXPECT_NE(r.out.find("edge energy: pass"), std::string::npos);
    EXPECT_NE(r.out.find("connectivity: pass"), std::string::npos);
    EXPECT_NE(r.out.find("cost: pass"), std::string::npos);

    r = run({"validate", "--network", fixtures::fixture("reference_route3.json"), "--solution", sol});
    EXPECT_EQ(r.code, cli::exit_validation);
}

TEST_F(CliTest, ValidateDetectsTampering)
{
    const auto net = fixtures::reference();
    auto s = Solution{evaluate_path(net, fixtures::reference_route1()), network_fingerprint(net), DistanceMode::sector};
    s.path.hops[2].level = 3; // 37 would need to pay more than recorded
    save_solution(s, tmp("tampered.json"));
    auto r = run({"validate", "--network", fixtures::fixture("reference.json"), "--solution", tmp("tampered.json")});
    EXPECT_EQ(r.code, cli::exit_check_failed);
    EXPECT_NE(r.out.find("cost: FAIL"), std::string::npos);

    s = Solution{evaluate_path(net, fixtures::reference_route1()), network_fingerprint(net), DistanceMode::sector};
    s.path.hops[0].level = 1; // 45 -> 12 is out of range at level 1
    save_solution(s, tmp("short.json"));
    r = run({"validate", "--network", fixtures::fixture("reference.json"), "--solution", tmp("short.json")});
    EXPECT_EQ(r.code, cli::exit_check_failed);
    EXPECT_NE(r.out.find("edge energy: FAIL"), std::string::npos);

    s = Solution{evaluate_path(net, fixtures::reference_route1()), "", DistanceMode::sector};
    s.path.hops.insert(s.path.hops.begin() + 3, {12, 2}); // device 12 transmits twice
    s.path.hops[2].level = 2;
    save_solution(s, tmp("loop.json"));
    r = run({"validate", "--network", fixtures::fixture("reference.json"), "--solution", tmp("loop.json")});
    EXPECT_EQ(r.code, cli::exit_check_failed);
    EXPECT_NE(r.out.find("one level per device: FAIL"), std::string::npos);
}

TEST_F(CliTest, Export)
{
    auto r = run({"export", "--network", fixtures::fixture("reference_route3.json"), "-s", "13", "-d", "42"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("Minimize"), std::string::npos);
    EXPECT_NE(r.out.find(" one_level_13:"), std::string::npos);
    EXPECT_EQ(r.out.substr(r.out.size() - 4), "End\n");

    r = run({"export", "--network", fixtures::fixture("reference_route3.json"), "-s", "13", "-d", "42", "-o", tmp("m.lp")});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(slurp(tmp("m.lp")), export_lp_string(fixtures::route3_network(), 13, 42));

    EXPECT_EQ(run({"export", "--network", fixtures::fixture("reference_route3.json"), "-s", "13", "-d", "13"}).code, cli::exit_validation);
}

TEST_F(CliTest, Render)
{
    const auto sol = tmp("sol.json");
    ASSERT_EQ(run({"solve", "--network", fixtures::fixture("reference.json"), "-s", "45", "-d", "49", "-o", sol}).code, 0);
    auto r = run({"render", "--network", fixtures::fixture("reference.json"), "--solution", sol, "-o", tmp("n.svg"), "--dot",
                  tmp("n.dot")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto svg = slurp(tmp("n.svg"));
    EXPECT_NE(svg.find("<svg "), std::string::npos);
    EXPECT_NE(svg.find("class=\"path-hop\""), std::string::npos);
    EXPECT_NE(slurp(tmp("n.dot")).find("penwidth=3"), std::string::npos);

    EXPECT_EQ(run({"render", "--network", fixtures::fixture("reference_route3.json"), "--solution", sol, "-o", tmp("x.svg")}).code,
              cli::exit_validation);
}

TEST_F(CliTest, BenchJson)
{
    auto r = run({"bench", "--sizes", "50", "100", "--repeats", "1", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0]["devices"], 50);
    EXPECT_EQ(j[1]["runs"], 1);

    r = run({"bench", "--sizes", "50", "--repeats", "1"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("devices", 0), 0u);
}
