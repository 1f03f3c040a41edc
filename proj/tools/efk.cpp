#include "CLI11.hpp"
#include "efk/errors.hpp"
#include "efk/report/run.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

using efk::report::RunConfig;
using efk::report::Suite;

namespace {

struct Flags {
    int n = 4;
    int k = -1;
    std::string index_sets;
    std::string family;
    double tau = 1.0;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    std::string precision = "standard";
    int degree_bound = -1;
    std::string phi = "auto";
    std::string type = "B2";
    int max_degree = 5;
    double delta = 1e-3;
    int jobs = 1;
    std::string out;
    std::string config;
};

struct Options {
    std::map<std::string, CLI::Option*> given;
};

void add_common(CLI::App* app, Flags& f, Options& o, bool hilbert)
{
    const auto add = [&](const std::string& flag, auto& target, const std::string& help) {
        o.given[flag] = app->add_option("--" + flag, target, help);
    };
    if (hilbert) {
        add("type", f.type, "root system: A2, A3, B2 or G2");
        add("max-degree", f.max_degree, "highest degree");
    } else {
        add("n", f.n, "rank of the algebra");
        add("k", f.k, "degree; -1 runs every degree of the suite");
        add("index-sets", f.index_sets, "index sets such as \"1,2;1,3\"");
        add("family", f.family, "elliptic, trig, rational (or all for operator suites)");
        add("tau", f.tau, "imaginary part of the modular parameter");
        add("tol", f.tol, "residual tolerance");
        add("precision", f.precision, "standard or extended");
        add("degree-bound", f.degree_bound, "ideal membership degree bound; -1 uses the target degree");
        add("phi", f.phi, "phi convention: auto, x or lambda");
        add("delta", f.delta, "degeneration scale");
    }
    add("seed", f.seed, "global seed; defaults to $EFK_SEED or 1");
    add("jobs", f.jobs, "worker threads");
    add("out", f.out, "report path");
    add("config", f.config, "JSON file whose keys mirror the flags");
}

bool given(const Options& o, const std::string& flag)
{
    const auto it = o.given.find(flag);
    return it != o.given.end() && it->second->count() > 0;
}

RunConfig resolve(Suite suite, const Flags& f, const Options& o)
{
    RunConfig cfg;
    cfg.suite = suite;
    if (const char* env = std::getenv(efk::report::seed_env)) {
        try {
            cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw efk::ConfigError(std::string("bad ") + efk::report::seed_env + ": " + env);
        }
    }
    if (given(o, "config")) {
        std::ifstream in(f.config);
        if (!in)
            throw efk::ConfigError("cannot read config file: " + f.config);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw efk::ConfigError(std::string("config file is not valid JSON: ") + e.what());
        }
        cfg.merge_json(j);
        cfg.suite = suite;
    }
    if (given(o, "n")) cfg.n = f.n;
    if (given(o, "k")) cfg.k = f.k;
    if (given(o, "index-sets")) cfg.index_sets = efk::report::parse_index_sets(f.index_sets);
    if (given(o, "family")) cfg.family = f.family;
    if (given(o, "tau")) cfg.tau = {0.0, f.tau};
    if (given(o, "seed")) cfg.seed = f.seed;
    if (given(o, "tol")) cfg.tol = f.tol;
    if (given(o, "precision")) cfg.precision = f.precision;
    if (given(o, "degree-bound")) cfg.degree_bound = f.degree_bound;
    if (given(o, "phi")) cfg.phi = f.phi;
    if (given(o, "type")) cfg.root_type = f.type;
    if (given(o, "max-degree")) cfg.max_degree = f.max_degree;
    if (given(o, "delta")) cfg.delta = f.delta;
    if (given(o, "jobs")) cfg.jobs = f.jobs;
    if (given(o, "out")) cfg.out = f.out;
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Deformed Fomin-Kirillov algebra verification engine"};
    app.require_subcommand(1);
    app.set_version_flag("--version", efk::report::artifact_version());

    Flags flags;
    std::map<Suite, Options> options;
    std::map<Suite, CLI::App*> commands;

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->require_subcommand(1);
    const std::vector<std::tuple<Suite, CLI::App*, std::string, std::string>> leaves{
        {Suite::identities, verify, "identities", "Dunkl commutativity and the cyclic and star identities"},
        {Suite::pieri, verify, "pieri", "the deformed Pieri formula, its full-set form and the E3 example"},
        {Suite::operators, verify, "operators", "operator representations, conjugation, G2 and B2 relations"},
        {Suite::funceq, verify, "funceq", "the scalar functional equations and their perturbation controls"},
        {Suite::hilbert, &app, "hilbert", "braided symmetrizer ranks"},
        {Suite::degenerate, &app, "degenerate", "psi = 0 and multiparameter degenerations, limit coherence"}};
    for (const auto& [suite, parent, name, help] : leaves) {
        CLI::App* sub = parent->add_subcommand(name, help);
        add_common(sub, flags, options[suite], suite == Suite::hilbert);
        commands[suite] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Suite suite = Suite::identities;
    for (const auto& [s, sub] : commands)
        if (sub->parsed())
            suite = s;

    RunConfig cfg;
    try {
        cfg = resolve(suite, flags, options[suite]);
        cfg.validate();
    } catch (const efk::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    efk::report::RunResult result;
    try {
        result = efk::report::run(cfg);
    } catch (const efk::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const efk::ParamError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const efk::Error& e) {
        std::cerr << "backend error: " << e.what() << "\n";
        return 3;
    }

    std::cout << result.summary;
    if (!cfg.out.empty()) {
        try {
            efk::report::write_atomic(cfg.out, result.report.dump(2) + "\n");
        } catch (const efk::Error& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        }
    }
    return result.exit_code;
}
