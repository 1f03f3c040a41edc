#include "efk/errors.hpp"
#include "efk/report/run.hpp"
#include "efk/scalars/params.hpp"

#include <sstream>

namespace efk::report {

using nlohmann::json;

std::string artifact_version()
{
#ifdef EFK_VERSION
    return EFK_VERSION;
#else
    return "0.0.0";
#endif
}

std::string to_string(Suite s)
{
    switch (s) {
    case Suite::identities: return "verify identities";
    case Suite::pieri: return "verify pieri";
    case Suite::operators: return "verify operators";
    case Suite::funceq: return "verify funceq";
    case Suite::hilbert: return "hilbert";
    case Suite::degenerate: return "degenerate";
    }
    return "?";
}

Suite suite_from_string(const std::string& s)
{
    for (Suite v : {Suite::identities, Suite::pieri, Suite::operators, Suite::funceq, Suite::hilbert,
                    Suite::degenerate})
        if (s == to_string(v))
            return v;
    throw ConfigError("unknown subcommand: " + s);
}

std::vector<std::vector<int>> parse_index_sets(const std::string& s)
{
    std::vector<std::vector<int>> out;
    std::stringstream sets(s);
    std::string set;
    while (std::getline(sets, set, ';')) {
        std::vector<int> I;
        std::stringstream items(set);
        std::string item;
        while (std::getline(items, item, ',')) {
            if (item.empty())
                continue;
            try {
                std::size_t used = 0;
                I.push_back(std::stoi(item, &used));
                if (used != item.size())
                    throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw ConfigError("bad index in index set: " + item);
            }
        }
        if (!I.empty())
            out.push_back(std::move(I));
    }
    return out;
}

void RunConfig::validate() const
{
    const auto fail = [](const std::string& m) { throw ConfigError(m); };
    const bool algebra = suite == Suite::identities || suite == Suite::pieri || suite == Suite::degenerate;
    if (suite != Suite::hilbert) {
        if (n < 2 || n > 6)
            fail("--n must lie in 2..6");
        if (suite == Suite::identities && n > 5)
            fail("verify identities supports n <= 5");
    }
    if (k < -1 || k == 0 || (suite != Suite::hilbert && k > n))
        fail("--k must be -1 or lie in 1..n");
    for (const auto& I : index_sets) {
        std::vector<int> seen;
        for (int i : I) {
            if (i < 1 || i > n)
                fail("index set entries must lie in 1..n");
            if (std::find(seen.begin(), seen.end(), i) != seen.end())
                fail("index set entries must be distinct");
            seen.push_back(i);
        }
    }
    if (!family.empty()) {
        const bool psi = family == "elliptic" || family == "trig" || family == "rational";
        if (algebra && !psi)
            fail("--family must be elliptic, trig or rational for this subcommand");
        if (!algebra && !psi && family != "all")
            fail("--family must be elliptic, trig, rational or all");
    }
    if (tau.imag() < 0.5)
        fail("--tau needs imaginary part >= 0.5");
    if (!(tol > 0.0) || tol >= 1.0)
        fail("--tol must lie in (0, 1)");
    if (precision != "standard" && precision != "extended")
        fail("--precision must be standard or extended");
    if (degree_bound < -1 || degree_bound > 8)
        fail("--degree-bound must be -1 or lie in 0..8");
    if (phi != "auto" && phi != "x" && phi != "lambda")
        fail("--phi must be auto, x or lambda");
    if (suite == Suite::hilbert) {
        if (root_type != "A2" && root_type != "A3" && root_type != "B2" && root_type != "G2")
            fail("--type must be A2, A3, B2 or G2");
        if (max_degree < 0 || max_degree > 8)
            fail("--max-degree must lie in 0..8");
    }
    if (!(delta > 0.0) || delta > 0.1)
        fail("--delta must lie in (0, 0.1]");
    if (jobs < 1 || jobs > 256)
        fail("--jobs must lie in 1..256");
}

json RunConfig::to_json() const
{
    return json{{"subcommand", to_string(suite)},
                {"n", n},
                {"k", k},
                {"index_sets", index_sets},
                {"family", family},
                {"tau", complex_to_json(tau)},
                {"seed", seed},
                {"tol", tol},
                {"precision", precision},
                {"degree_bound", degree_bound},
                {"phi", phi},
                {"type", root_type},
                {"max_degree", max_degree},
                {"delta", delta},
                {"jobs", jobs},
                {"out", out}};
}

void RunConfig::merge_json(const json& j)
{
    if (!j.is_object())
        throw ConfigError("config file must hold a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "n")
                n = v.get<int>();
            else if (key == "k")
                k = v.get<int>();
            else if (key == "index_sets")
                index_sets = v.is_string() ? parse_index_sets(v.get<std::string>())
                                           : v.get<std::vector<std::vector<int>>>();
            else if (key == "family")
                family = v.get<std::string>();
            else if (key == "tau")
                tau = v.is_number() ? Complex{0.0, v.get<double>()} : complex_from_json(v);
            else if (key == "seed")
                seed = v.get<std::uint64_t>();
            else if (key == "tol")
                tol = v.get<double>();
            else if (key == "precision")
                precision = v.get<std::string>();
            else if (key == "degree_bound")
                degree_bound = v.get<int>();
            else if (key == "phi")
                phi = v.get<std::string>();
            else if (key == "type")
                root_type = v.get<std::string>();
            else if (key == "max_degree")
                max_degree = v.get<int>();
            else if (key == "delta")
                delta = v.get<double>();
            else if (key == "jobs")
                jobs = v.get<int>();
            else if (key == "out")
                out = v.get<std::string>();
            else if (key == "subcommand")
                suite = suite_from_string(v.get<std::string>());
            else
                throw ConfigError("unknown config key: " + key);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
}

} // namespace efk::report
