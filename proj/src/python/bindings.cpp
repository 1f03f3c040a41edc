#include "efk/dunkl/verify.hpp"
#include "efk/errors.hpp"
#include "efk/nichols/symmetrizer.hpp"
#include "efk/report/run.hpp"
#include "efk/scalars/elliptic.hpp"
#include "efk/scalars/jacobi.hpp"
#include "efk/scalars/sample_plan.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace efk;

namespace {

EllipticContext context(Complex tau)
{
    EllipticContext ctx;
    ctx.tau = tau;
    return ctx;
}

// Runs a suite from a JSON config string; returns (report JSON, exit code, summary).
std::tuple<std::string, int, std::string> run_json(const std::string& subcommand, const std::string& config)
{
    report::RunConfig cfg;
    cfg.merge_json(nlohmann::json::parse(config));
    cfg.suite = report::suite_from_string(subcommand);
    const auto r = report::run(cfg);
    return {r.report.dump(), r.exit_code, r.summary};
}

std::vector<long> hilbert_ranks(const std::string& type, int max_degree)
{
    std::vector<long> out;
    for (const auto& e : nichols::hilbert_series(nichols::RootSystemData::from_name(type), max_degree))
        out.push_back(e.rank);
    return out;
}

std::string pieri_json(int n, int k, const std::vector<int>& I, const std::string& family, const std::string& phi)
{
    const auto rs = freealg::RelationSet::family(n, psi_kind_from_string(family), ParamSet::generic(n));
    std::optional<dunkl::PhiConvention> conv;
    if (phi != "auto")
        conv = dunkl::phi_convention_from_string(phi);
    dunkl::VerifyOptions opts;
    opts.oracle_bank_size = 8;
    return dunkl::verify_pieri(n, k, I, rs, opts, conv).to_json().dump();
}

} // namespace

PYBIND11_MODULE(_efk, m)
{
    m.doc() = "Deformed Fomin-Kirillov algebra verification engine";

    // Translators are tried newest first, so the base class goes first.
    const auto base = py::register_exception<Error>(m, "EngineError");
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<ParamError>(m, "ParamError", base.ptr());

    m.def("version", &report::artifact_version);
    m.def("job_seed", &job_seed, py::arg("global_seed"), py::arg("job_id"));
    m.def("run_json", &run_json, py::arg("subcommand"), py::arg("config"));
    m.def("hilbert_ranks", &hilbert_ranks, py::arg("type"), py::arg("max_degree"));
    m.def("pieri_json", &pieri_json, py::arg("n"), py::arg("k"), py::arg("index_set"), py::arg("family") = "elliptic",
          py::arg("phi") = "auto");
    m.def("theta", [](int i, int n) { return dunkl::theta<ExactScalar>(i, n).to_string(); }, py::arg("i"),
          py::arg("n"));
    m.def("theta1", [](Complex z, Complex tau) { return theta1(z, context(tau)); }, py::arg("z"),
          py::arg("tau") = Complex{0.0, 1.0});
    m.def("wp", [](Complex z, Complex tau) { return wp(z, context(tau)); }, py::arg("z"),
          py::arg("tau") = Complex{0.0, 1.0});
    m.def("sigma_lambda", [](Complex z, Complex lambda, Complex tau) { return sigma_lambda(z, lambda, context(tau)); },
          py::arg("z"), py::arg("lam"), py::arg("tau") = Complex{0.0, 1.0});
    m.def("jacobi_sn", &jacobi_sn, py::arg("u"), py::arg("modulus"));
}
