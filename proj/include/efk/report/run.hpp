#pragma once

#include "efk/scalars/complex.hpp"
#include "json.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace efk::report {

inline constexpr const char* schema_version = "efk-report/1";
std::string artifact_version();

// Name of the environment variable holding the default global seed.
inline constexpr const char* seed_env = "EFK_SEED";

enum class Suite { identities, pieri, operators, funceq, hilbert, degenerate };
std::string to_string(Suite s);
Suite suite_from_string(const std::string& s);

struct RunConfig {
    Suite suite = Suite::identities;
    int n = 4;
    int k = -1;                               // -1: every k of the suite
    std::vector<std::vector<int>> index_sets; // empty: every nonempty subset
    std::string family;                       // empty: the suite default
    Complex tau{0.0, 1.0};
    std::uint64_t seed = 1;
    double tol = 1e-8;
    std::string precision = "standard";
    int degree_bound = -1;
    std::string phi = "auto";
    std::string root_type = "B2";
    int max_degree = 5;
    double delta = 1e-3;
    int jobs = 1;
    std::string out;

    // Throws ConfigError.
    void validate() const;
    nlohmann::json to_json() const;
    // Keys mirror the command-line flags; absent keys keep the current values.
    void merge_json(const nlohmann::json& j);
};

// "1,2;1,3" -> {{1,2},{1,3}}. Throws ConfigError.
std::vector<std::vector<int>> parse_index_sets(const std::string& s);

// An independent unit of work. `run` receives the job seed and returns a
// JSON object with a boolean "pass".
struct Job {
    std::string id;
    std::function<nlohmann::json(std::uint64_t seed)> run;
};

struct JobResult {
    std::string id;
    std::uint64_t seed = 0;
    std::string status; // pass | fail | error
    nlohmann::json result;
    nlohmann::json to_json() const;
};

// Runs the jobs on up to `threads` workers; results keep the job order and
// each job seed is job_seed(global_seed, id), so the outcome does not depend
// on scheduling.
std::vector<JobResult> run_jobs(const std::vector<Job>& jobs, std::uint64_t global_seed, int threads);

// Builds the jobs of a suite. Throws ConfigError or ParamError on
// inconsistent settings.
std::vector<Job> build_jobs(const RunConfig& cfg);

struct RunResult {
    nlohmann::json report;
    int exit_code = 0; // 0 all pass, 1 some fail, 3 some backend error
    std::string summary;
};

// Validates, builds and runs the suite.
RunResult run(const RunConfig& cfg);

// Writes to a sibling temporary file and renames it over the target.
void write_atomic(const std::string& path, const std::string& content);

} // namespace efk::report
