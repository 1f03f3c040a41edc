#include "efk/dunkl/verify.hpp"

#include "efk/errors.hpp"
#include "efk/oprep/families.hpp"
#include "efk/oprep/identities.hpp"

#include <algorithm>
#include <cmath>

namespace efk::dunkl {

using freealg::RelationMode;
using freealg::RelationSet;
using nlohmann::json;

namespace {

json index_json(const std::vector<int>& I)
{
    return json(I);
}

ExactScalar exact_constant(const RelationSet& rs, int i, int j)
{
    if (rs.mode() == RelationMode::multiparam)
        return ExactScalar::p(i, j);
    return ExactScalar(0L);
}

// phi(I0) in the exact backends: -h vanishes there, and the constants are
// either the symbols p_ab or 0.
ExactScalar exact_phi(const std::vector<int>& I0, PhiConvention conv, const RelationSet& rs)
{
    if (I0.empty())
        return ExactScalar(1L);
    if (conv == PhiConvention::x || rs.mode() != RelationMode::multiparam)
        return ExactScalar(0L);
    ExactScalar sum(0L);
    for (const auto& m : perfect_matchings(I0)) {
        ExactScalar prod(1L);
        for (const auto& [a, b] : m)
            prod *= ExactScalar::p(a, b);
        sum += prod;
    }
    return sum;
}

ExactElem exact_pieri_rhs(int n, int k, const std::vector<int>& I, const RelationSet& rs, PhiConvention conv)
{
    ExactElem sum(n);
    const std::vector<int> out = complement(n, I);
    for (int l = 0; 2 * l <= k; ++l)
        for (const auto& I0 : subsets_of_size(I, 2 * l)) {
            const ExactScalar phi = exact_phi(I0, conv, rs);
            if (phi.is_zero())
                continue;
            const ExactElem words = pieri_words<ExactScalar>(n, set_minus(I, I0), out, k - 2 * l);
            if (!words.is_zero())
                sum += phi * words;
        }
    return sum;
}

ExactElem exact_ek(int n, const std::vector<int>& order, int k, const RelationSet& rs)
{
    return ek_deformed<ExactScalar>(n, order, k, [&rs](int i, int j) { return exact_constant(rs, i, j); });
}

Check from_certificate(const std::string& identity, json params, const freealg::MembershipCertificate& cert)
{
    Check c;
    c.identity = identity;
    c.params = std::move(params);
    c.backend = cert.backend;
    c.member = cert.member;
    c.max_residual = cert.max_residual;
    c.degree_bound = cert.degree_bound;
    c.certificate = cert.to_json();
    return c;
}

void attach_oracle(Check& c, const NumericElem& target, const RelationSet& rs, const VerifyOptions& opts)
{
    if (opts.oracle_bank_size <= 0 || rs.mode() != RelationMode::family || rs.psi() == nullptr)
        return;
    const oprep::OperatorFamily fam = oprep::cm_family(*rs.psi()).reflection_part();
    const oprep::TestFunctionBank bank(rs.rank(), opts.membership.plan.rng_seed, opts.oracle_bank_size);
    c.oracle = oprep::verify_operator_identity(c.identity, target, fam, bank, opts.membership.plan, opts.oracle_tol);
}

Check numeric_with_oracle(const std::string& identity, json params, const NumericElem& target, const RelationSet& rs,
                          const VerifyOptions& opts)
{
    Check c = check_numeric(identity, std::move(params), target, rs, opts);
    attach_oracle(c, target, rs, opts);
    return c;
}

} // namespace

json Check::to_json() const
{
    json j;
    j["identity"] = identity;
    j["params"] = params;
    j["backend"] = backend;
    j["convention"] = convention;
    j["verdict"] = pass() ? "member" : "non-member";
    j["membership"] = member;
    j["max_residual"] = max_residual;
    j["residuals"] = certificate.contains("residuals") ? certificate["residuals"] : json::array();
    j["degree_bound"] = degree_bound;
    j["certificate"] = certificate;
    j["oracle"] = oracle ? oracle->to_json() : json(nullptr);
    return j;
}

Check check_numeric(const std::string& identity, json params, const NumericElem& target, const RelationSet& rs,
                    const VerifyOptions& opts)
{
    auto cert = freealg::is_zero_mod_ideal(target, rs, opts.membership);
    if (!cert.member) {
        freealg::MembershipOptions retry = opts.membership;
        retry.plan = opts.membership.plan.reseeded(1);
        retry.plan.pole_margin *= 2.0;
        cert = freealg::is_zero_mod_ideal(target, rs, retry);
    }
    return from_certificate(identity, std::move(params), cert);
}

Check check_exact(const std::string& identity, json params, const ExactElem& target, const RelationSet& rs,
                  const VerifyOptions& opts)
{
    return from_certificate(identity, std::move(params), freealg::is_zero_mod_ideal(target, rs, opts.membership));
}

Check commutator_check(int i, int j, const RelationSet& rs, const VerifyOptions& opts)
{
    const int n = rs.rank();
    json params{{"n", n}, {"i", i}, {"j", j}, {"relations", rs.to_json()}};
    if (rs.exact_capable()) {
        const ExactElem ti = theta<ExactScalar>(i, n);
        const ExactElem tj = theta<ExactScalar>(j, n);
        return check_exact("dunkl_commute", params, ti * tj - tj * ti, rs, opts);
    }
    const NumericElem ti = theta<NumericScalar>(i, n);
    const NumericElem tj = theta<NumericScalar>(j, n);
    return numeric_with_oracle("dunkl_commute", params, ti * tj - tj * ti, rs, opts);
}

Check q_k_check(const std::vector<int>& idx, const RelationSet& rs, const VerifyOptions& opts)
{
    if (idx.size() < 3)
        throw ParamError("the cyclic identity needs k >= 3");
    const int n = rs.rank();
    json params{{"n", n}, {"indices", index_json(idx)}, {"relations", rs.to_json()}};
    if (rs.exact_capable())
        return check_exact("cyclic_sum", params, q_k<ExactScalar>(n, idx), rs, opts);
    return numeric_with_oracle("cyclic_sum", params, q_k<NumericScalar>(n, idx), rs, opts);
}

Check p_k_check(const std::vector<int>& idx, int m, const RelationSet& rs, const VerifyOptions& opts)
{
    if (idx.size() < 2)
        throw ParamError("the star identity needs k >= 2");
    if (std::find(idx.begin(), idx.end(), m) != idx.end())
        throw ParamError("the star index must differ from the cycle indices");
    const int n = rs.rank();
    json params{{"n", n}, {"indices", index_json(idx)}, {"m", m}, {"relations", rs.to_json()}};
    if (rs.exact_capable()) {
        const std::function<ExactScalar(int, int)> c = [&rs](int i, int j) { return exact_constant(rs, i, j); };
        return check_exact("star_sum", params, p_k_lhs<ExactScalar>(n, idx, m) - p_k_rhs<ExactScalar>(n, idx, m, c),
                           rs, opts);
    }
    const std::function<NumericScalar(int, int)> c = [&rs](int i, int j) { return pair_constant(rs, i, j); };
    return numeric_with_oracle("star_sum", params,
                               p_k_lhs<NumericScalar>(n, idx, m) - p_k_rhs<NumericScalar>(n, idx, m, c), rs, opts);
}

json PrintedExampleReport::to_json() const
{
    return json{{"identity", "star_sum_k4_printed"},
                {"first_line_equals_lhs", first_line_equals_lhs},
                {"second_line", second_line.to_json()},
                {"final_line_matches", final_line_matches},
                {"identity_check", identity.to_json()},
                {"verdict", pass() ? "member" : "non-member"}};
}

PrintedExampleReport p4_printed_check(const VerifyOptions& opts)
{
    const int n = 5;
    const int m = 5;
    const std::vector<int> idx{1, 2, 3, 4};
    const RelationSet rs = RelationSet::multiparam(n, 1.0, {0.0, 1.0, 3.0, 7.0, 15.0});
    const std::function<ExactScalar(int, int)> c = [](int i, int j) { return ExactScalar::p(i, j); };
    const auto lines = p4_printed_lines<ExactScalar>(n, m, c);
    const ExactElem lhs = p_k_lhs<ExactScalar>(n, idx, m);
    const ExactElem rhs = p_k_rhs<ExactScalar>(n, idx, m, c);
    const json params{{"n", n}, {"indices", index_json(idx)}, {"m", m}};

    PrintedExampleReport r;
    // The printed first line is the cyclic sum without the sign (-1)^{k+1} = -1.
    r.first_line_equals_lhs = (lines[0] == -lhs);
    r.second_line = check_exact("star_sum_k4_second_line", params, lines[0] - lines[1], rs, opts);
    r.final_line_matches = (lines[2] == -rhs);
    r.identity = check_exact("star_sum", params, lhs - rhs, rs, opts);
    return r;
}

bool phi_enters(int k, const std::vector<int>& I)
{
    return k >= 2 && I.size() >= 2;
}

json PieriOutcome::to_json() const
{
    json cs = json::array();
    for (const auto& c : checks)
        cs.push_back(c.to_json());
    return json{{"checks", cs}, {"winners", winners}, {"verdict", pass() ? "member" : "non-member"}};
}

namespace {

PieriOutcome run_conventions(const std::string& identity, const json& params, std::optional<PhiConvention> conv,
                             bool phi_used, const std::function<Check(PhiConvention)>& one)
{
    PieriOutcome out;
    if (!phi_used) {
        Check c = one(PhiConvention::x);
        c.convention = "";
        if (c.pass())
            out.winners.push_back("any");
        out.checks.push_back(std::move(c));
        return out;
    }
    std::vector<PhiConvention> convs;
    if (conv)
        convs.push_back(*conv);
    else
        convs = {PhiConvention::x, PhiConvention::lambda};
    for (PhiConvention cv : convs) {
        Check c = one(cv);
        c.identity = identity;
        c.params = params;
        c.convention = to_string(cv);
        if (c.pass())
            out.winners.push_back(c.convention);
        out.checks.push_back(std::move(c));
    }
    return out;
}

} // namespace

PieriOutcome verify_pieri(int n, int k, const std::vector<int>& I, const RelationSet& rs, const VerifyOptions& opts,
                          std::optional<PhiConvention> conv)
{
    if (n != rs.rank())
        throw ParamError("rank mismatch between the index set and the relation set");
    if (k < 0 || k > static_cast<int>(I.size()))
        throw ParamError("Pieri needs 0 <= k <= |I|");
    const json params{{"n", n}, {"k", k}, {"I", index_json(I)}, {"relations", rs.to_json()}};
    const std::string identity = "pieri";
    if (rs.exact_capable()) {
        const ExactElem lhs = exact_ek(n, I, k, rs);
        return run_conventions(identity, params, conv, phi_enters(k, I), [&](PhiConvention cv) {
            return check_exact(identity, params, lhs - exact_pieri_rhs(n, k, I, rs, cv), rs, opts);
        });
    }
    const NumericElem lhs = ek_theta(n, I, k, rs);
    return run_conventions(identity, params, conv, phi_enters(k, I), [&](PhiConvention cv) {
        return numeric_with_oracle(identity, params, lhs - pieri_rhs(n, k, I, rs, cv), rs, opts);
    });
}

PieriOutcome corollary_check(int n, int k, const RelationSet& rs, const VerifyOptions& opts,
                             std::optional<PhiConvention> conv)
{
    if (k < 0 || k > n)
        throw ParamError("the full-set identity needs 0 <= k <= n");
    std::vector<int> full(n);
    for (int i = 0; i < n; ++i)
        full[i] = i + 1;
    const json params{{"n", n}, {"k", k}, {"relations", rs.to_json()}};
    const std::string identity = "pieri_full_set";
    const bool phi_used = k >= 2 && k % 2 == 0;
    if (rs.exact_capable()) {
        const ExactElem lhs = exact_ek(n, full, k, rs);
        return run_conventions(identity, params, conv, phi_used, [&](PhiConvention cv) {
            ExactElem rhs(n);
            if (k % 2 == 0)
                for (const auto& I0 : subsets_of_size(full, k))
                    rhs += ExactElem::scalar(n, exact_phi(I0, cv, rs));
            return check_exact(identity, params, lhs - rhs, rs, opts);
        });
    }
    const NumericElem lhs = ek_theta(n, full, k, rs);
    return run_conventions(identity, params, conv, phi_used, [&](PhiConvention cv) {
        return numeric_with_oracle(identity, params, lhs - corollary_rhs(n, k, rs, cv), rs, opts);
    });
}

std::vector<Check> e3_example_checks(const RelationSet& rs, const VerifyOptions& opts)
{
    if (rs.rank() != 5 || rs.mode() != RelationMode::family)
        throw ParamError("the E3 example needs a rank 5 family relation set");
    const NumericElem lhs = ek_theta(5, {1, 2, 3}, 3, rs);
    std::vector<Check> out;
    for (const auto& [reading, name] :
         std::vector<std::pair<E3Reading, std::string>>{{E3Reading::printed_psi, "psi"}, {E3Reading::phi_weight, "x"}}) {
        const json params{{"n", 5}, {"k", 3}, {"I", {1, 2, 3}}, {"reading", name}, {"relations", rs.to_json()}};
        Check c = numeric_with_oracle("pieri_e3_example", params, lhs - e3_example_rhs(rs, reading), rs, opts);
        c.convention = name;
        out.push_back(std::move(c));
    }
    return out;
}

Check insertion_order_check(int n, const std::vector<int>& I, int k, const RelationSet& rs, std::uint64_t seed,
                            const VerifyOptions& opts)
{
    std::vector<int> shuffled = I;
    UniformStream rng(seed);
    for (std::size_t t = shuffled.size(); t > 1; --t) {
        const auto u = static_cast<std::size_t>(rng.next_u64() % t);
        std::swap(shuffled[t - 1], shuffled[u]);
    }
    const json params{{"n", n}, {"k", k}, {"order_a", index_json(I)}, {"order_b", index_json(shuffled)}};

    // Scalar recursion with commuting values must agree to rounding.
    std::vector<Complex> X(n + 1);
    for (auto& v : X)
        v = Complex{rng.symmetric(1.0), rng.symmetric(1.0)};
    const auto c = [&rs](int i, int j) {
        return rs.mode() == RelationMode::psi_zero ? Complex{0.0, 0.0} : rs.c(i, j);
    };
    const auto Xf = [&X](int i) { return X[i]; };
    const Complex a = ek_scalar(I, k, c, Xf);
    const Complex b = ek_scalar(shuffled, k, c, Xf);
    const double scalar_gap = std::abs(a - b) / std::max(1.0, std::abs(a));

    Check out;
    if (rs.exact_capable())
        out = check_exact("ek_insertion_order", params, exact_ek(n, I, k, rs) - exact_ek(n, shuffled, k, rs), rs,
                          opts);
    else
        out = check_numeric("ek_insertion_order", params, ek_theta(n, I, k, rs) - ek_theta(n, shuffled, k, rs), rs,
                            opts);
    out.params["scalar_gap"] = scalar_gap;
    if (scalar_gap > 1e-12)
        out.member = false;
    return out;
}

Check equivariant_pieri(int n, int k, const std::vector<int>& I, const VerifyOptions& opts)
{
    if (k < 0 || k > static_cast<int>(I.size()))
        throw ParamError("equivariant Pieri needs 0 <= k <= |I|");
    const RelationSet rs = RelationSet::psi_zero(n);
    const json params{{"n", n}, {"k", k}, {"I", index_json(I)}, {"relations", rs.to_json()}};
    return check_exact("equivariant_pieri", params, equivariant_lhs(n, k, I) - equivariant_rhs(n, k, I), rs, opts);
}

Check equivariant_full(int n, int k, const VerifyOptions& opts)
{
    std::vector<int> full(n);
    for (int i = 0; i < n; ++i)
        full[i] = i + 1;
    const RelationSet rs = RelationSet::psi_zero(n);
    const json params{{"n", n}, {"k", k}, {"relations", rs.to_json()}};
    return check_exact("equivariant_full_set", params, equivariant_lhs(n, k, full) - elementary_x(n, k), rs, opts);
}

Check multiparam_pieri(int n, int k, const std::vector<int>& I, const RelationSet& rs, const VerifyOptions& opts)
{
    if (rs.mode() != RelationMode::multiparam)
        throw ParamError("multiparam Pieri needs a multiparam relation set");
    if (k < 0 || k > static_cast<int>(I.size()))
        throw ParamError("multiparam Pieri needs 0 <= k <= |I|");
    const json params{{"n", n}, {"k", k}, {"I", index_json(I)}, {"relations", rs.to_json()}};
    return check_exact("multiparam_pieri", params, multiparam_lhs(n, k, I) - multiparam_rhs(n, k, I), rs, opts);
}

RelationSet elliptic_at_scale(int n, Complex kappa, const std::vector<Complex>& Lambda, double delta)
{
    if (static_cast<int>(Lambda.size()) != n)
        throw ParamError("Lambda needs one value per index");
    ParamSet p = ParamSet::generic(n);
    p.a = 0.0;
    p.k_const = std::sqrt(kappa) * delta;
    p.lambda.resize(n);
    for (int i = 0; i < n; ++i)
        p.lambda[i] = delta * Lambda[i];
    p.exp_alpha.assign(n, Complex{0.0, 0.0});
    p.Lambda = Lambda;
    p.kappa = kappa;
    p.delta = delta;
    return RelationSet::family(n, PsiKind::elliptic, p);
}

json DegenerationReport::to_json() const
{
    return json{{"identity", "pieri_degeneration"},
                {"params", {{"n", n}, {"k", k}, {"I", I}, {"delta", delta}}},
                {"max_relative_error", max_relative_error},
                {"max_relative_error_raw", max_relative_error_raw},
                {"tol", tol},
                {"elliptic", elliptic.to_json()},
                {"multiparam", multiparam.to_json()},
                {"verdict", pass() ? "member" : "non-member"}};
}

DegenerationReport degeneration_coherence(int n, int k, const std::vector<int>& I, Complex kappa,
                                          const std::vector<Complex>& Lambda, double delta,
                                          const VerifyOptions& opts)
{
    DegenerationReport r;
    r.n = n;
    r.k = k;
    r.I = I;
    r.delta = delta;
    const RelationSet at_delta = elliptic_at_scale(n, kappa, Lambda, delta);
    const RelationSet at_half = elliptic_at_scale(n, kappa, Lambda, delta / 2.0);
    const RelationSet limit = RelationSet::multiparam(n, kappa, Lambda);

    const NumericElem e_delta = ek_theta(n, I, k, at_delta);
    const NumericElem e_half = ek_theta(n, I, k, at_half);
    const NumericElem e_limit = ek_theta(n, I, k, limit);

    const auto coeff = [](const NumericElem& e, const freealg::Word& w) -> Complex {
        const auto it = e.terms().find(w);
        if (it == e.terms().end())
            return {0.0, 0.0};
        const auto c = it->second.constant();
        if (!c)
            throw Error("non-constant coefficient in a deformed elementary polynomial");
        return *c;
    };
    std::vector<freealg::Word> words;
    for (const auto* e : {&e_delta, &e_half, &e_limit})
        for (const auto& [w, c] : e->terms())
            words.push_back(w);
    double largest = 0.0;
    for (const auto& w : words)
        largest = std::max(largest, std::abs(coeff(e_limit, w)));
    for (const auto& w : words) {
        const Complex lim = coeff(e_limit, w);
        const Complex raw = coeff(e_delta, w);
        const Complex extrapolated = (4.0 * coeff(e_half, w) - raw) / 3.0;
        const double scale = std::max(std::abs(lim), 1e-8 * largest);
        r.max_relative_error = std::max(r.max_relative_error, std::abs(extrapolated - lim) / scale);
        r.max_relative_error_raw = std::max(r.max_relative_error_raw, std::abs(raw - lim) / scale);
    }

    const PieriOutcome ell = verify_pieri(n, k, I, at_delta, opts, PhiConvention::x);
    r.elliptic = ell.checks.front();
    r.multiparam = multiparam_pieri(n, k, I, limit, opts);
    return r;
}

} // namespace efk::dunkl
