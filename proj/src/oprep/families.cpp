#include "efk/oprep/families.hpp"

#include "efk/errors.hpp"
#include "efk/scalars/jacobi.hpp"
#include "efk/scalars/params.hpp"

namespace efk::oprep {

namespace {

std::vector<double> to_double(const std::vector<int>& v) { return {v.begin(), v.end()}; }

nlohmann::json complex_list(const std::vector<Complex>& v)
{
    auto j = nlohmann::json::array();
    for (const auto& z : v)
        j.push_back(complex_to_json(z));
    return j;
}

RootOperator make_op(const RootSystemData& rs, int k, std::function<Complex(Complex)> f,
                     std::function<Complex(Complex)> g)
{
    RootOperator op;
    op.root = k;
    op.alpha = to_double(rs.root(k));
    op.reflection = LinearAction::reflection(op.alpha);
    op.f = std::move(f);
    op.g = std::move(g);
    return op;
}

bool is_long(const RootSystemData& rs, int k)
{
    int longest = 0;
    for (int t = 0; t < rs.num_positive(); ++t)
        longest = std::max(longest, rs.inner(t, t));
    return rs.inner(k, k) == longest;
}

} // namespace

std::string to_string(FamilyKind kind)
{
    switch (kind) {
    case FamilyKind::divided_difference: return "divided_difference";
    case FamilyKind::bfv_rational_exp: return "bfv_rational_exp";
    case FamilyKind::cm_elliptic: return "cm_elliptic";
    case FamilyKind::cm_trig: return "cm_trig";
    case FamilyKind::cm_rational: return "cm_rational";
    case FamilyKind::b2_sn: return "b2_sn";
    }
    return "unknown";
}

FamilyKind family_kind_from_string(const std::string& s)
{
    for (auto k : {FamilyKind::divided_difference, FamilyKind::bfv_rational_exp, FamilyKind::cm_elliptic,
                   FamilyKind::cm_trig, FamilyKind::cm_rational, FamilyKind::b2_sn})
        if (to_string(k) == s)
            return k;
    throw ParamError("unknown operator family: " + s);
}

OperatorFamily::OperatorFamily(FamilyKind kind, RootSystemData roots, std::vector<RootOperator> ops,
                               nlohmann::json params)
    : kind_(kind), roots_(std::move(roots)), ops_(std::move(ops)), params_(std::move(params)),
      pole_distance_([](Complex z) { return std::abs(z); })
{
    if (static_cast<int>(ops_.size()) != roots_.num_positive())
        throw ParamError("operator family: one operator per positive root required");
}

Complex OperatorFamily::f(int root, Complex z) const
{
    const auto [k, s] = roots_.to_positive(root);
    return s > 0 ? ops_[k].f(z) : -ops_[k].f(-z);
}

Complex OperatorFamily::g(int root, Complex z) const
{
    const auto [k, s] = roots_.to_positive(root);
    return s > 0 ? ops_[k].g(z) : -ops_[k].g(-z);
}

Complex OperatorFamily::pairing(int root, PointView xi) const
{
    const auto& r = roots_.root(root);
    Complex s{0.0, 0.0};
    for (std::size_t t = 0; t < r.size(); ++t)
        s += static_cast<double>(r[t]) * xi[t];
    return s;
}

GroupAlgebraOperator OperatorFamily::group_operator(int root) const
{
    const auto [k, sign] = roots_.to_positive(root);
    const std::string label = (sign > 0 ? "" : "-") + roots_.label(k);
    const std::vector<double> alpha = ops_[k].alpha;
    auto pair = [alpha](PointView xi) {
        Complex s{0.0, 0.0};
        for (std::size_t t = 0; t < alpha.size(); ++t)
            s += alpha[t] * xi[t];
        return s;
    };
    // D_{-a} = -D_a, so both coefficients flip sign with the root.
    const double s = sign;
    auto fa = NumericScalar::leaf([fk = ops_[k].f, pair, s](PointView xi) { return s * fk(pair(xi)); }, "f" + label);
    auto ga = NumericScalar::leaf([gk = ops_[k].g, pair, s](PointView xi) { return s * gk(pair(xi)); }, "g" + label);
    GroupAlgebraOperator d(dim());
    if (!ops_[k].f_zero)
        d.add(LinearAction::identity(dim()), fa);
    if (!ops_[k].g_zero)
        d.add(ops_[k].reflection, ga);
    return d;
}

int OperatorFamily::pair_root(int i, int j) const
{
    if (roots_.type() != nichols::RootType::A)
        throw ParamError("pair indices need a type A family");
    if (i == j || i < 1 || j < 1 || i > dim() || j > dim())
        throw ParamError("pair index out of range");
    std::vector<int> v(dim(), 0);
    v[i - 1] = 1;
    v[j - 1] = -1;
    return roots_.index_of(v);
}

std::pair<Complex, double> OperatorFamily::apply_word(const std::vector<int>& word,
                                                      const std::function<Complex(PointView)>& fn,
                                                      PointView xi) const
{
    struct Rec {
        const OperatorFamily& fam;
        const std::vector<int>& word;
        const std::function<Complex(PointView)>& fn;
        std::pair<Complex, double> run(std::size_t pos, const Point& x) const
        {
            if (pos == word.size()) {
                const Complex v = fn(x);
                return {v, std::abs(v)};
            }
            const int r = word[pos];
            const Complex z = fam.pairing(r, x);
            const int k = fam.roots_.to_positive(r).first;
            const Complex fz = fam.f(r, z);
            const Complex gz = fam.g(r, z);
            Complex total{0.0, 0.0};
            double scale = 0.0;
            if (fz != Complex{0.0, 0.0}) {
                const auto [v, sc] = run(pos + 1, x);
                total += fz * v;
                scale += std::abs(fz) * sc;
            }
            if (gz != Complex{0.0, 0.0}) {
                const auto [v, sc] = run(pos + 1, fam.ops_[k].reflection.apply(x));
                total += gz * v;
                scale += std::abs(gz) * sc;
            }
            return {total, scale};
        }
    };
    return Rec{*this, word, fn}.run(0, Point(xi.begin(), xi.end()));
}

bool OperatorFamily::accepts(PointView xi, double margin) const
{
    for (int k = 0; k < roots_.num_positive(); ++k)
        if (pole_distance_(pairing(k, xi)) < margin)
            return false;
    return true;
}

OperatorFamily OperatorFamily::reflection_part() const
{
    OperatorFamily r = *this;
    for (auto& op : r.ops_) {
        op.f = [](Complex) { return Complex{0.0, 0.0}; };
        op.f_zero = true;
    }
    r.params_["reflection_part"] = true;
    return r;
}

std::vector<Complex> lambda_weight(const RootSystemData& rs, const std::vector<Complex>& lambda_simple)
{
    std::vector<Complex> mu(rs.dim(), Complex{0.0, 0.0});
    if (lambda_simple.empty())
        return mu;
    if (static_cast<int>(lambda_simple.size()) != rs.rank())
        throw ParamError("lambda needs one value per simple root");
    for (int i = 0; i < rs.rank(); ++i)
        for (int t = 0; t < rs.dim(); ++t)
            mu[t] += lambda_simple[i] * rs.fundamental_weight(i)[t];
    return mu;
}

std::vector<Complex> lambda_on_roots(const RootSystemData& rs, const std::vector<Complex>& lambda_simple)
{
    const auto mu = lambda_weight(rs, lambda_simple);
    std::vector<Complex> out(rs.num_positive(), Complex{0.0, 0.0});
    for (int k = 0; k < rs.num_positive(); ++k)
        for (int t = 0; t < rs.dim(); ++t)
            out[k] += mu[t] * rs.coroot(k)[t];
    return out;
}

OperatorFamily divided_difference_family(const RootSystemData& rs)
{
    std::vector<RootOperator> ops;
    for (int k = 0; k < rs.num_positive(); ++k)
        ops.push_back(make_op(rs, k, [](Complex z) { return 1.0 / z; }, [](Complex z) { return -1.0 / z; }));
    return {FamilyKind::divided_difference, rs, std::move(ops), {{"type", rs.name()}}};
}

OperatorFamily bfv_family(const RootSystemData& rs, const BfvParams& p)
{
    if (p.sign != 1 && p.sign != -1)
        throw ParamError("bfv family: sign must be +1 or -1");
    std::vector<Complex> lam = p.lambda_root.empty() ? lambda_on_roots(rs, p.lambda_simple) : p.lambda_root;
    if (static_cast<int>(lam.size()) != rs.num_positive())
        throw ParamError("bfv family: lambda_root needs one value per positive root");
    std::vector<RootOperator> ops;
    for (int k = 0; k < rs.num_positive(); ++k) {
        const Complex kk = is_long(rs, k) ? p.k_long : p.k_short;
        const Complex l = lam[k];
        const double s = p.sign;
        ops.push_back(make_op(rs, k, [kk](Complex z) { return kk / z; },
                              [kk, l, s](Complex z) { return s * kk * std::exp(l * z) / z; }));
    }
    nlohmann::json params{{"type", rs.name()},
                          {"k_long", complex_to_json(p.k_long)},
                          {"k_short", complex_to_json(p.k_short)},
                          {"lambda_simple", complex_list(p.lambda_simple)},
                          {"lambda_root", complex_list(lam)},
                          {"sign", p.sign}};
    return {FamilyKind::bfv_rational_exp, rs, std::move(ops), std::move(params)};
}

OperatorFamily cm_family(const PsiFamily& psi)
{
    const int n = psi.rank();
    const RootSystemData rs = RootSystemData::A(n);
    auto shared = std::make_shared<const PsiFamily>(psi);
    std::vector<RootOperator> ops(rs.num_positive());
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            std::vector<int> v(n, 0);
            v[i - 1] = 1;
            v[j - 1] = -1;
            const int k = rs.index_of(v);
            ops[k] = make_op(rs, k, [shared](Complex z) { return shared->rational_part(z); },
                             [shared, i, j](Complex z) { return shared->g(i, j, z); });
            ops[k].f_zero = psi.params().a == Complex{0.0, 0.0};
            ops[k].g_zero = psi.params().k_const == Complex{0.0, 0.0};
        }
    FamilyKind kind = FamilyKind::cm_rational;
    if (psi.kind() == PsiKind::elliptic)
        kind = FamilyKind::cm_elliptic;
    else if (psi.kind() == PsiKind::trig)
        kind = FamilyKind::cm_trig;
    nlohmann::json params{{"type", rs.name()}, {"params", to_json(psi.params())}};
    if (psi.kind() == PsiKind::elliptic)
        params["ctx"] = to_json(psi.context());
    OperatorFamily fam(kind, rs, std::move(ops), std::move(params));
    fam.set_pole_distance([shared](Complex z) { return std::min(std::abs(z), shared->pole_distance(z)); });
    fam.set_psi(shared);
    return fam;
}

Complex sn_epsilon(const SnParams& p)
{
    const Complex i{0.0, 1.0};
    const Complex base = p.epsilon == SnEpsilon::half ? (1.0 + p.modulus) / (2.0 * i) : (1.0 + p.modulus) / i;
    return base + p.epsilon_shift;
}

OperatorFamily b2_sn_family(const SnParams& p)
{
    if (p.g_sign != 1 && p.g_sign != -1)
        throw ParamError("b2_sn family: g sign must be +1 or -1");
    if (std::abs(1.0 + p.modulus) < 1e-12)
        throw ParamError("b2_sn family: modulus -1 is degenerate");
    const RootSystemData rs = RootSystemData::B(2);
    const Complex eps = sn_epsilon(p);
    const Complex kt = (1.0 - p.modulus) / (1.0 + p.modulus);
    const auto lam = lambda_on_roots(rs, p.lambda_simple);
    std::vector<RootOperator> ops;
    for (int k = 0; k < rs.num_positive(); ++k) {
        std::function<Complex(Complex)> f;
        if (rs.inner(k, k) == 1) {
            f = [A = p.A, a = p.a, m = p.modulus](Complex z) { return A / jacobi_sn(a * z, m); };
        } else {
            f = [B = p.B, a = p.a, eps, kt](Complex z) { return B / jacobi_sn(eps * a * z, kt); };
        }
        const Complex l = lam[k];
        const double s = p.g_sign;
        auto g = [f, l, s](Complex z) { return s * std::exp(l * z) * f(z); };
        ops.push_back(make_op(rs, k, f, g));
    }
    nlohmann::json params{{"type", "B2"},
                          {"A", complex_to_json(p.A)},
                          {"B", complex_to_json(p.B)},
                          {"a", complex_to_json(p.a)},
                          {"modulus", complex_to_json(p.modulus)},
                          {"epsilon", complex_to_json(eps)},
                          {"g_sign", p.g_sign},
                          {"lambda_simple", complex_list(p.lambda_simple)}};
    return {FamilyKind::b2_sn, rs, std::move(ops), std::move(params)};
}

Polynomial reflect_polynomial(const RootSystemData& rs, int root, const Polynomial& p)
{
    const auto& a = rs.root(root);
    const int n = rs.dim();
    int aa = 0;
    for (int v : a)
        aa += v * v;
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            m[k][l] = mpq_class((k == l ? aa : 0) - 2 * a[k] * a[l], aa);
    return p.linear_substitute_x(m);
}

Polynomial divided_difference(const RootSystemData& rs, int root, const Polynomial& p)
{
    const Polynomial num = p - reflect_polynomial(rs, root, p);
    if (num.is_zero())
        return {};
    Polynomial den;
    const auto& a = rs.root(root);
    for (int t = 0; t < rs.dim(); ++t)
        if (a[t] != 0)
            den += Polynomial(static_cast<long>(a[t])) * Polynomial::x(t + 1);
    const auto q = num.try_divide(den);
    if (!q)
        throw DivisionFailure("divided difference: numerator not divisible by the root");
    return *q;
}

Polynomial divided_difference_word(const RootSystemData& rs, const std::vector<int>& word, const Polynomial& p)
{
    Polynomial r = p;
    for (auto it = word.rbegin(); it != word.rend() && !r.is_zero(); ++it)
        r = divided_difference(rs, *it, r);
    return r;
}

} // namespace efk::oprep
