#include "efk/errors.hpp"
#include "efk/report/run.hpp"
#include "efk/scalars/sample_plan.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace efk;
using namespace efk::report;
using nlohmann::json;

namespace {

RunConfig small(Suite s)
{
    RunConfig c;
    c.suite = s;
    c.n = 3;
    c.seed = 5;
    return c;
}

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST(Config, SuiteNamesRoundTrip)
{
    for (Suite s : {Suite::identities, Suite::pieri, Suite::operators, Suite::funceq, Suite::hilbert,
                    Suite::degenerate})
        EXPECT_EQ(suite_from_string(to_string(s)), s);
    EXPECT_THROW(suite_from_string("verify everything"), ConfigError);
}

TEST(Config, IndexSetParsing)
{
    EXPECT_EQ(parse_index_sets("1,2;1,3"), (std::vector<std::vector<int>>{{1, 2}, {1, 3}}));
    EXPECT_EQ(parse_index_sets("4"), (std::vector<std::vector<int>>{{4}}));
    EXPECT_TRUE(parse_index_sets("").empty());
    EXPECT_THROW(parse_index_sets("1,x"), ConfigError);
    EXPECT_THROW(parse_index_sets("1,2a"), ConfigError);
}

TEST(Config, ValidationRejectsBadSettings)
{
    RunConfig ok = small(Suite::pieri);
    EXPECT_NO_THROW(ok.validate());
    const auto rejects = [&](auto&& edit) {
        RunConfig c = ok;
        edit(c);
        EXPECT_THROW(c.validate(), ConfigError);
    };
    rejects([](RunConfig& c) { c.n = 1; });
    rejects([](RunConfig& c) { c.n = 7; });
    rejects([](RunConfig& c) { c.k = 0; });
    rejects([](RunConfig& c) { c.k = 4; });
    rejects([](RunConfig& c) { c.index_sets = {{1, 4}}; });
    rejects([](RunConfig& c) { c.index_sets = {{2, 2}}; });
    rejects([](RunConfig& c) { c.family = "all"; });
    rejects([](RunConfig& c) { c.tau = Complex{0.0, 0.3}; });
    rejects([](RunConfig& c) { c.tol = 0.0; });
    rejects([](RunConfig& c) { c.precision = "quad"; });
    rejects([](RunConfig& c) { c.phi = "psi"; });
    rejects([](RunConfig& c) { c.delta = 0.5; });
    rejects([](RunConfig& c) { c.jobs = 0; });
    RunConfig h = small(Suite::hilbert);
    h.root_type = "C3";
    EXPECT_THROW(h.validate(), ConfigError);
}

TEST(Config, MergeKeepsAbsentKeysAndRejectsUnknown)
{
    RunConfig c = small(Suite::pieri);
    c.merge_json(json{{"k", 2}, {"index_sets", "1,2"}, {"tau", 1.5}});
    EXPECT_EQ(c.k, 2);
    EXPECT_EQ(c.n, 3);
    EXPECT_EQ(c.index_sets, (std::vector<std::vector<int>>{{1, 2}}));
    EXPECT_EQ(c.tau, Complex(0.0, 1.5));
    EXPECT_THROW(c.merge_json(json{{"colour", 1}}), ConfigError);
    EXPECT_THROW(c.merge_json(json{{"n", "three"}}), ConfigError);
    EXPECT_THROW(c.merge_json(json::array()), ConfigError);

    RunConfig back;
    back.merge_json(c.to_json());
    EXPECT_EQ(back.to_json(), c.to_json());
}

TEST(Jobs, SeedsFollowIdsNotScheduling)
{
    std::vector<Job> jobs;
    for (int i = 0; i < 6; ++i)
        jobs.push_back({"job" + std::to_string(i), [i](std::uint64_t seed) {
                            return json{{"seed_mod", seed % 97}, {"pass", i != 3}};
                        }});
    jobs.push_back({"throws", [](std::uint64_t) -> json { throw ParamError("bad parameter"); }});
    const auto one = run_jobs(jobs, 9, 1);
    const auto many = run_jobs(jobs, 9, 4);
    ASSERT_EQ(one.size(), jobs.size());
    for (std::size_t t = 0; t < one.size(); ++t) {
        EXPECT_EQ(one[t].id, jobs[t].id);
        EXPECT_EQ(one[t].seed, job_seed(9, jobs[t].id));
        EXPECT_EQ(one[t].to_json(), many[t].to_json());
    }
    EXPECT_EQ(one[3].status, "fail");
    EXPECT_EQ(one[0].status, "pass");
    EXPECT_EQ(one.back().status, "error");
}

TEST(Run, ReportShapeAndExitCode)
{
    const RunResult r = run(small(Suite::identities));
    EXPECT_EQ(r.exit_code, 0) << r.summary;
    EXPECT_EQ(r.report["schema"], schema_version);
    EXPECT_EQ(r.report["verdict"], "PASS");
    EXPECT_EQ(r.report["summary"]["total"].get<int>(), static_cast<int>(r.report["jobs"].size()));
    EXPECT_EQ(r.report["config"]["subcommand"], "verify identities");
}

TEST(Run, PieriResolvesOneConvention)
{
    RunConfig c = small(Suite::pieri);
    c.k = 2;
    const RunResult r = run(c);
    EXPECT_EQ(r.exit_code, 0) << r.summary;
    EXPECT_EQ(r.report["summary"]["convention"]["resolved"], "x");
}

TEST(Run, ForcedLosingConventionFails)
{
    RunConfig c = small(Suite::pieri);
    c.k = 2;
    c.index_sets = {{1, 2}};
    c.phi = "lambda";
    const RunResult r = run(c);
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_EQ(r.report["verdict"], "FAIL");
}

TEST(Run, DeterministicAcrossRepeatsAndWorkers)
{
    RunConfig c = small(Suite::degenerate);
    const std::string a = run(c).report.dump();
    EXPECT_EQ(run(c).report.dump(), a);
    c.jobs = 3;
    json threaded = run(c).report;
    threaded["config"]["jobs"] = 1;
    EXPECT_EQ(threaded.dump(), a);
    c.seed = 6;
    c.jobs = 1;
    EXPECT_NE(run(c).report.dump(), a);
}

TEST(Run, HilbertRanks)
{
    RunConfig c;
    c.suite = Suite::hilbert;
    c.root_type = "B2";
    c.max_degree = 4;
    const RunResult r = run(c);
    EXPECT_EQ(r.exit_code, 0);
    std::vector<long> ranks;
    for (const auto& j : r.report["jobs"])
        if (j["id"].get<std::string>().rfind("hilbert/", 0) == 0)
            ranks.push_back(j["result"]["rank"].get<long>());
    EXPECT_EQ(ranks, (std::vector<long>{1, 4, 8, 12, 14}));
}

TEST(Output, AtomicWriteReplacesContent)
{
    const auto dir = std::filesystem::temp_directory_path() / "efk_report_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "r.json").string();
    write_atomic(path, "first");
    write_atomic(path, "second");
    EXPECT_EQ(slurp(path), "second");
    EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
    EXPECT_THROW(write_atomic((dir / "missing" / "r.json").string(), "x"), ConfigError);
    std::filesystem::remove_all(dir);
}
