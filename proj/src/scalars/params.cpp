#include "efk/scalars/params.hpp"

#include "efk/errors.hpp"

namespace efk {

Complex ParamSet::alpha_diff(int i, int j) const
{
    if (exp_alpha.empty())
        return {0.0, 0.0};
    return exp_alpha.at(i - 1) - exp_alpha.at(j - 1);
}

void ParamSet::validate() const
{
    const int n = rank();
    if (!exp_alpha.empty() && static_cast<int>(exp_alpha.size()) != n)
        throw ParamError("ParamSet: exp_alpha length differs from lambda length");
    if (!Lambda.empty() && static_cast<int>(Lambda.size()) != n)
        throw ParamError("ParamSet: Lambda length differs from lambda length");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(lambda[i] - lambda[j]) < 1e-12)
                throw ParamError("ParamSet: spectral parameters must be pairwise distinct");
            if (!Lambda.empty() && std::abs(Lambda[i] - Lambda[j]) < 1e-12)
                throw ParamError("ParamSet: degeneration offsets must be pairwise distinct");
        }
}

ParamSet ParamSet::generic(int n)
{
    ParamSet p;
    p.a = {0.3, 0.0};
    p.k_const = {1.0, 0.0};
    p.b = {1.0, 0.0};
    for (int i = 0; i < n; ++i) {
        p.lambda.push_back({0.11 + 0.137 * i, 0.05 + 0.093 * i});
        p.exp_alpha.push_back({0.07 * i - 0.1, 0.03 * i});
        p.Lambda.push_back({0.5 + 0.7 * i, 0.2 - 0.3 * i});
    }
    return p;
}

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2)
        throw ConfigError("complex numbers are encoded as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

namespace {

nlohmann::json vec_to_json(const std::vector<Complex>& v)
{
    auto out = nlohmann::json::array();
    for (const Complex& z : v)
        out.push_back(complex_to_json(z));
    return out;
}

std::vector<Complex> vec_from_json(const nlohmann::json& j)
{
    std::vector<Complex> out;
    for (const auto& e : j)
        out.push_back(complex_from_json(e));
    return out;
}

} // namespace

nlohmann::json to_json(const ParamSet& p)
{
    return {
        {"a", complex_to_json(p.a)},
        {"A", complex_to_json(p.A())},
        {"k_const", complex_to_json(p.k_const)},
        {"K", complex_to_json(p.K())},
        {"b", complex_to_json(p.b)},
        {"lambda", vec_to_json(p.lambda)},
        {"exp_alpha", vec_to_json(p.exp_alpha)},
        {"Lambda", vec_to_json(p.Lambda)},
        {"kappa", complex_to_json(p.kappa)},
        {"delta", complex_to_json(p.delta)},
    };
}

ParamSet param_set_from_json(const nlohmann::json& j)
{
    ParamSet p;
    if (j.contains("a"))
        p.a = complex_from_json(j.at("a"));
    if (j.contains("k_const"))
        p.k_const = complex_from_json(j.at("k_const"));
    if (j.contains("b"))
        p.b = complex_from_json(j.at("b"));
    if (j.contains("lambda"))
        p.lambda = vec_from_json(j.at("lambda"));
    if (j.contains("exp_alpha"))
        p.exp_alpha = vec_from_json(j.at("exp_alpha"));
    if (j.contains("Lambda"))
        p.Lambda = vec_from_json(j.at("Lambda"));
    if (j.contains("kappa"))
        p.kappa = complex_from_json(j.at("kappa"));
    if (j.contains("delta"))
        p.delta = complex_from_json(j.at("delta"));
    // A and K are derived; a stored value must agree.
    if (j.contains("A") && std::abs(complex_from_json(j.at("A")) - p.A()) > 1e-12 * std::max(1.0, std::abs(p.A())))
        throw ConfigError("ParamSet: A must equal a^2");
    if (j.contains("K") && std::abs(complex_from_json(j.at("K")) - p.K()) > 1e-12 * std::max(1.0, std::abs(p.K())))
        throw ConfigError("ParamSet: K must equal k_const^2");
    return p;
}

nlohmann::json to_json(const EllipticContext& ctx)
{
    return {
        {"tau", complex_to_json(ctx.tau)},
        {"series_truncation", ctx.series_truncation},
        {"tol", ctx.tol},
        {"pole_threshold", ctx.pole_threshold},
    };
}

EllipticContext elliptic_context_from_json(const nlohmann::json& j)
{
    EllipticContext ctx;
    if (j.contains("tau"))
        ctx.tau = complex_from_json(j.at("tau"));
    if (j.contains("series_truncation"))
        ctx.series_truncation = j.at("series_truncation").get<int>();
    if (j.contains("tol"))
        ctx.tol = j.at("tol").get<double>();
    if (j.contains("pole_threshold"))
        ctx.pole_threshold = j.at("pole_threshold").get<double>();
    return ctx;
}

} // namespace efk
