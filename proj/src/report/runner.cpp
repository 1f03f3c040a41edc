#include "efk/errors.hpp"
#include "efk/report/run.hpp"
#include "efk/scalars/sample_plan.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace efk::report {

using nlohmann::json;

json JobResult::to_json() const
{
    return json{{"id", id}, {"seed", seed}, {"status", status}, {"result", result}};
}

std::vector<JobResult> run_jobs(const std::vector<Job>& jobs, std::uint64_t global_seed, int threads)
{
    std::vector<JobResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (std::size_t t = next++; t < jobs.size(); t = next++) {
            JobResult& r = results[t];
            r.id = jobs[t].id;
            r.seed = job_seed(global_seed, r.id);
            try {
                r.result = jobs[t].run(r.seed);
                r.status = r.result.value("pass", false) ? "pass" : "fail";
            } catch (const Error& e) {
                r.status = "error";
                r.result = json{{"pass", false}, {"error", e.what()}};
            }
        }
    };
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    return results;
}

namespace {

// Conventions under which every instance that involves phi succeeded.
json resolve_convention(const std::vector<JobResult>& results)
{
    std::set<std::string> common{"x", "lambda"};
    int instances = 0;
    for (const auto& r : results) {
        if (!r.result.contains("winners"))
            continue;
        std::set<std::string> w;
        for (const auto& s : r.result["winners"])
            w.insert(s.get<std::string>());
        if (w.count("any"))
            continue;
        ++instances;
        std::set<std::string> keep;
        for (const auto& c : common)
            if (w.count(c))
                keep.insert(c);
        common = keep;
    }
    json j{{"instances", instances}, {"consistent", std::vector<std::string>(common.begin(), common.end())}};
    j["resolved"] = instances == 0 ? "none needed" : (common.size() == 1 ? *common.begin() : common.empty() ? "none" : "both");
    j["pass"] = instances == 0 || !common.empty();
    return j;
}

} // namespace

RunResult run(const RunConfig& cfg)
{
    cfg.validate();
    const std::vector<Job> jobs = build_jobs(cfg);
    const std::vector<JobResult> results = run_jobs(jobs, cfg.seed, cfg.jobs);

    int passed = 0, failed = 0, errors = 0;
    json list = json::array();
    std::vector<std::string> bad;
    for (const auto& r : results) {
        list.push_back(r.to_json());
        if (r.status == "pass")
            ++passed;
        else {
            (r.status == "error" ? errors : failed)++;
            bad.push_back(r.id + " (" + r.status + ")");
        }
    }
    json summary{{"total", results.size()}, {"passed", passed}, {"failed", failed}, {"errors", errors}};
    bool convention_ok = true;
    if (cfg.suite == Suite::pieri) {
        summary["convention"] = resolve_convention(results);
        convention_ok = summary["convention"]["pass"].get<bool>();
    }

    RunResult out;
    out.exit_code = errors > 0 ? 3 : (failed > 0 || !convention_ok) ? 1 : 0;
    const std::string verdict = out.exit_code == 0 ? "PASS" : out.exit_code == 1 ? "FAIL" : "ERROR";
    out.report = json{{"schema", schema_version},
                      {"version", artifact_version()},
                      {"config", cfg.to_json()},
                      {"jobs", list},
                      {"summary", summary},
                      {"verdict", verdict}};

    std::ostringstream s;
    s << to_string(cfg.suite) << ": " << passed << "/" << results.size() << " jobs pass";
    if (cfg.suite == Suite::pieri)
        s << ", phi convention " << summary["convention"]["resolved"].get<std::string>();
    s << " -> " << verdict << "\n";
    for (const auto& b : bad)
        s << "  not passing: " << b << "\n";
    out.summary = s.str();
    return out;
}

void write_atomic(const std::string& path, const std::string& content)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw ConfigError("cannot write report: " + path);
        f << content;
        if (!f.flush())
            throw ConfigError("cannot write report: " + path);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ConfigError("cannot move report into place: " + path);
    }
}

} // namespace efk::report
