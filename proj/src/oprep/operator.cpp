#include "efk/oprep/operator.hpp"

#include "efk/errors.hpp"
#include "efk/scalars/params.hpp"

namespace efk::oprep {

GroupAlgebraOperator GroupAlgebraOperator::identity(int dim)
{
    return term(LinearAction::identity(dim), NumericScalar(1.0));
}

GroupAlgebraOperator GroupAlgebraOperator::multiplication(int dim, const NumericScalar& c)
{
    return term(LinearAction::identity(dim), c);
}

GroupAlgebraOperator GroupAlgebraOperator::term(const LinearAction& w, const NumericScalar& c)
{
    GroupAlgebraOperator r(w.dim());
    r.add(w, c);
    return r;
}

GroupAlgebraOperator& GroupAlgebraOperator::add(const LinearAction& w, const NumericScalar& c)
{
    if (w.dim() != dim_)
        throw ParamError("group algebra operator: dimension mismatch");
    if (c.is_zero())
        return *this;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
        return *this;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
    return *this;
}

GroupAlgebraOperator& GroupAlgebraOperator::operator+=(const GroupAlgebraOperator& o)
{
    for (const auto& [w, c] : o.terms_)
        add(w, c);
    return *this;
}

GroupAlgebraOperator& GroupAlgebraOperator::operator-=(const GroupAlgebraOperator& o)
{
    for (const auto& [w, c] : o.terms_)
        add(w, -c);
    return *this;
}

GroupAlgebraOperator operator*(const GroupAlgebraOperator& a, const GroupAlgebraOperator& b)
{
    if (a.dim_ != b.dim_)
        throw ParamError("group algebra operator: dimension mismatch");
    GroupAlgebraOperator r(a.dim_);
    for (const auto& [p, c] : a.terms_)
        for (const auto& [q, d] : b.terms_)
            r.add(q * p, c * (p.is_identity() ? d : d.twisted(p)));
    return r;
}

GroupAlgebraOperator operator*(const NumericScalar& c, const GroupAlgebraOperator& a)
{
    GroupAlgebraOperator r(a.dim_);
    for (const auto& [w, d] : a.terms_)
        r.add(w, c * d);
    return r;
}

std::pair<Complex, double> GroupAlgebraOperator::apply(const std::function<Complex(PointView)>& f, PointView xi) const
{
    Complex total{0.0, 0.0};
    double scale = 0.0;
    Point moved(dim_);
    for (const auto& [w, c] : terms_) {
        w.apply(xi, moved.data());
        const Complex v = c.eval(xi) * f(moved);
        total += v;
        scale += std::abs(v);
    }
    return {total, scale};
}

Polynomial random_polynomial(int dim, int max_degree, UniformStream& rng, int terms)
{
    Polynomial p;
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        const int deg = static_cast<int>(rng.next() * (max_degree + 1));
        for (int e = 0; e < deg; ++e) {
            const int v = x_var(1 + static_cast<int>(rng.next() * dim));
            m = m * Monomial::var(v);
        }
        long c = 0;
        while (c == 0)
            c = static_cast<long>(rng.next() * 7) - 3;
        p += Polynomial::monomial(m, mpq_class(c));
    }
    return p;
}

TestFunctionBank::TestFunctionBank(int dim, std::uint64_t seed, int size) : dim_(dim), seed_(seed)
{
    if (size < 8)
        throw ParamError("test function bank needs at least 8 functions");
    UniformStream rng(seed);
    auto exponential = [&](int k) {
        std::vector<Complex> mu(dim);
        for (auto& m : mu)
            m = {rng.symmetric(0.8), rng.symmetric(0.8)};
        TestFunction f;
        f.label = "exp" + std::to_string(k);
        f.eval = [mu](PointView xi) {
            Complex s{0.0, 0.0};
            for (std::size_t t = 0; t < mu.size(); ++t)
                s += mu[t] * xi[t];
            return std::exp(s);
        };
        return f;
    };
    auto polynomial = [&](int k) {
        const Polynomial p = random_polynomial(dim, 4, rng);
        TestFunction f;
        f.label = "poly" + std::to_string(k);
        f.exact = p;
        f.eval = [p](PointView xi) {
            return p.evaluate([&](int v) { return v < static_cast<int>(xi.size()) ? xi[v] : Complex{}; });
        };
        return f;
    };
    std::vector<TestFunction> exps, polys;
    for (int k = 0; static_cast<int>(functions_.size()) + 2 <= size - 2 || k < 3; ++k) {
        exps.push_back(exponential(k));
        polys.push_back(polynomial(k));
        functions_.push_back(exps.back());
        functions_.push_back(polys.back());
        if (static_cast<int>(functions_.size()) >= size - 2 && k >= 2)
            break;
    }
    for (std::size_t k = 0; static_cast<int>(functions_.size()) < size; ++k) {
        const auto& e = exps[k % exps.size()];
        const auto& p = polys[(k + 1) % polys.size()];
        TestFunction f;
        f.label = e.label + "*" + p.label;
        f.eval = [ef = e.eval, pf = p.eval](PointView xi) { return ef(xi) * pf(xi); };
        functions_.push_back(std::move(f));
    }
}

std::vector<Polynomial> TestFunctionBank::polynomials() const
{
    std::vector<Polynomial> out;
    for (const auto& f : functions_)
        if (f.exact)
            out.push_back(*f.exact);
    return out;
}

nlohmann::json IdentityReport::to_json() const
{
    return {{"identity", identity},
            {"family", family},
            {"sample_plan",
             {{"seed", plan.rng_seed}, {"num_points", plan.num_points}, {"pole_margin", plan.pole_margin},
              {"box", plan.box}}},
            {"tol", tol},
            {"max_residual", max_residual},
            {"evaluations", evaluations},
            {"resamples", resamples},
            {"verdict", pass ? "PASS" : "FAIL"}};
}

namespace {

// Runs eval at each point, redrawing points whose evaluation fails.
template <class Eval>
IdentityReport run_points(const std::string& identity, const std::string& family, int dim, const Eval& eval,
                          const SamplePlan& plan, double tol, const PointValidator& accept, int max_resamples)
{
    plan.validate();
    IdentityReport rep;
    rep.identity = identity;
    rep.family = family;
    rep.plan = plan;
    rep.tol = tol;
    const auto points = plan.generate(dim, accept);
    for (std::size_t k = 0; k < points.size(); ++k) {
        std::optional<std::pair<double, long>> r;
        for (int attempt = 0; !r && attempt <= max_resamples; ++attempt) {
            if (attempt > 0)
                ++rep.resamples;
            const Point xi = attempt == 0 ? points[k] : plan.reseeded(attempt).generate(dim, accept)[k];
            try {
                r = eval(xi);
            } catch (const PoleError&) {
                r.reset();
            }
        }
        if (!r)
            throw PoleProximity(identity + ": sample point stays near a pole after resampling");
        rep.max_residual = std::max(rep.max_residual, r->first);
        rep.evaluations += r->second;
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

} // namespace

IdentityReport verify_pointwise(const std::string& identity, const std::string& family, int dim,
                                const PointwiseCheck& check, const std::vector<TestFunction>& functions,
                                const SamplePlan& plan, double tol, const PointValidator& accept, int max_resamples)
{
    auto eval = [&](const Point& xi) -> std::optional<std::pair<double, long>> {
        double worst = 0.0;
        for (const auto& f : functions) {
            const auto [v, scale] = check(f, xi);
            if (!is_finite(v) || !std::isfinite(scale))
                return std::nullopt;
            worst = std::max(worst, std::abs(v) / std::max(1.0, scale));
        }
        return std::pair{worst, static_cast<long>(functions.size())};
    };
    return run_points(identity, family, dim, eval, plan, tol, accept, max_resamples);
}

IdentityReport verify_scalar(const std::string& identity, const std::string& family, int dim,
                             const std::function<std::pair<Complex, double>(PointView)>& value,
                             const SamplePlan& plan, double tol, const PointValidator& accept, int max_resamples)
{
    auto eval = [&](const Point& xi) -> std::optional<std::pair<double, long>> {
        const auto [v, scale] = value(xi);
        if (!is_finite(v) || !std::isfinite(scale))
            return std::nullopt;
        return std::pair{std::abs(v) / std::max(1.0, scale), 1L};
    };
    return run_points(identity, family, dim, eval, plan, tol, accept, max_resamples);
}

} // namespace efk::oprep
