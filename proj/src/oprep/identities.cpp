#include "efk/oprep/identities.hpp"

#include "efk/errors.hpp"

#include <sstream>

namespace efk::oprep {

RootExpr& RootExpr::add(Complex c, std::vector<int> word)
{
    terms.emplace_back(c, std::move(word));
    return *this;
}

std::string RootExpr::to_string(const RootSystemData& rs) const
{
    std::ostringstream os;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        if (t > 0)
            os << " + ";
        os << "(" << terms[t].first.real();
        if (terms[t].first.imag() != 0.0)
            os << (terms[t].first.imag() > 0 ? "+" : "") << terms[t].first.imag() << "i";
        os << ")";
        for (int r : terms[t].second) {
            const auto [k, s] = rs.to_positive(r);
            os << (s < 0 ? "-" : "") << rs.label(k);
        }
    }
    return os.str();
}

RootExpr root_expr_from_tensor(const nichols::BraidedTensor& t)
{
    RootExpr e;
    for (const auto& [seq, c] : t.terms)
        e.add(Complex{c.get_d(), 0.0}, seq);
    return e;
}

namespace {

PointValidator family_validator(const OperatorFamily& fam, double margin)
{
    return [&fam, margin](PointView xi) { return fam.accepts(xi, margin); };
}

// (i, j) with alpha = e_i - e_j, 1-based, for a type A root.
std::pair<int, int> pair_of_root(const RootSystemData& rs, int root)
{
    const auto& v = rs.root(root);
    int i = 0, j = 0;
    for (std::size_t t = 0; t < v.size(); ++t) {
        if (v[t] == 1)
            i = static_cast<int>(t) + 1;
        if (v[t] == -1)
            j = static_cast<int>(t) + 1;
    }
    if (i == 0 || j == 0)
        throw ParamError("root is not of the form e_i - e_j");
    return {i, j};
}

} // namespace

IdentityReport verify_vanishes(const std::string& name, const GroupAlgebraOperator& op, const OperatorFamily& fam,
                               const TestFunctionBank& bank, const SamplePlan& plan, double tol)
{
    if (op.dim() != fam.dim() || bank.dim() != fam.dim())
        throw ParamError("operator identity: dimension mismatch");
    auto check = [&op](const TestFunction& f, PointView xi) { return op.apply(f.eval, xi); };
    return verify_pointwise(name, fam.name(), fam.dim(), check, bank.functions(), plan, tol,
                            family_validator(fam, plan.pole_margin));
}

IdentityReport verify_operator_identity(const std::string& name, const freealg::NumericElem& expr,
                                        const OperatorFamily& fam, const TestFunctionBank& bank,
                                        const SamplePlan& plan, double tol)
{
    if (expr.rank() > fam.dim())
        throw ParamError("operator identity: expression rank exceeds the family rank");
    const int n = fam.dim();
    std::map<int, GroupAlgebraOperator> letters;
    // One composed operator per word, so that the residual scale is the sum
    // of the magnitudes of the individual word contributions.
    std::vector<GroupAlgebraOperator> words;
    for (const auto& [word, c] : expr.terms()) {
        GroupAlgebraOperator term = GroupAlgebraOperator::multiplication(n, c);
        for (auto letter : word) {
            auto it = letters.find(letter);
            if (it == letters.end()) {
                const auto g = freealg::BracketGen::from_id(letter);
                it = letters.emplace(letter, fam.group_operator(fam.pair_root(g.i, g.j))).first;
            }
            term = term * it->second;
        }
        words.push_back(std::move(term));
    }
    auto check = [&words](const TestFunction& f, PointView xi) {
        Complex total{0.0, 0.0};
        double scale = 0.0;
        for (const auto& op : words) {
            const auto [v, s] = op.apply(f.eval, xi);
            total += v;
            scale += s;
        }
        return std::pair{total, scale};
    };
    return verify_pointwise(name, fam.name(), n, check, bank.functions(), plan, tol,
                            family_validator(fam, plan.pole_margin));
}

IdentityReport verify_root_identity(const std::string& name, const RootExpr& expr, const OperatorFamily& fam,
                                    const TestFunctionBank& bank, const SamplePlan& plan, double tol)
{
    for (const auto& [c, w] : expr.terms)
        for (int r : w)
            if (r < 0 || r >= fam.roots().num_roots())
                throw ParamError("operator identity: root index out of range");
    auto check = [&](const TestFunction& f, PointView xi) {
        Complex total{0.0, 0.0};
        double scale = 0.0;
        for (const auto& [c, w] : expr.terms) {
            const auto [v, s] = fam.apply_word(w, f.eval, xi);
            total += c * v;
            scale += std::abs(c) * s;
        }
        return std::pair{total, scale};
    };
    return verify_pointwise(name, fam.name(), fam.dim(), check, bank.functions(), plan, tol,
                            family_validator(fam, plan.pole_margin));
}

IdentityReport composition_check(const GroupAlgebraOperator& a, const GroupAlgebraOperator& b,
                                 const OperatorFamily& fam, const TestFunctionBank& bank, const SamplePlan& plan,
                                 double tol)
{
    const GroupAlgebraOperator ab = a * b;
    auto check = [&](const TestFunction& f, PointView xi) {
        const auto [composed, s1] = ab.apply(f.eval, xi);
        const auto inner = [&](PointView y) { return b.apply(f.eval, y).first; };
        const auto [nested, s2] = a.apply(inner, xi);
        return std::pair{composed - nested, std::max(s1, s2)};
    };
    return verify_pointwise("compose", fam.name(), fam.dim(), check, bank.functions(), plan, tol,
                            family_validator(fam, plan.pole_margin));
}

IdentityReport square_check(const OperatorFamily& fam, int root, const TestFunctionBank& bank,
                            const SamplePlan& plan, double tol)
{
    const auto psi = fam.psi();
    std::pair<int, int> ij{0, 0};
    if (psi)
        ij = pair_of_root(fam.roots(), root);
    const std::vector<int> word{root, root};
    auto check = [&](const TestFunction& f, PointView xi) {
        auto [v, s] = fam.apply_word(word, f.eval, xi);
        if (psi) {
            const Complex m = psi->psi(ij.first, ij.second, fam.pairing(root, xi)) * f.eval(xi);
            v -= m;
            s += std::abs(m);
        }
        return std::pair{v, s};
    };
    const auto [k, sgn] = fam.roots().to_positive(root);
    (void)sgn;
    return verify_pointwise("square " + fam.roots().label(k), fam.name(), fam.dim(), check, bank.functions(), plan,
                            tol, family_validator(fam, plan.pole_margin));
}

namespace {

struct Sum {
    Complex value{0.0, 0.0};
    double scale = 0.0;
    void operator+=(Complex t)
    {
        value += t;
        scale += std::abs(t);
    }
    std::pair<Complex, double> result() const { return {value, scale}; }
};

bool is_b2(const OperatorFamily& fam) { return fam.roots().type() == nichols::RootType::B && fam.dim() == 2; }

bool is_type_a3(const OperatorFamily& fam) { return fam.roots().type() == nichols::RootType::A && fam.dim() >= 3; }

Complex json_complex(const nlohmann::json& j) { return complex_from_json(j); }

} // namespace

std::vector<int> applicable_equations(const OperatorFamily& fam)
{
    if (is_type_a3(fam))
        return {1, 2};
    if (is_b2(fam)) {
        if (fam.kind() == FamilyKind::bfv_rational_exp)
            return {3, 4, 5, 6, 7};
        return {3, 4};
    }
    return {};
}

IdentityReport functional_equation(int eq, const OperatorFamily& fam, const SamplePlan& plan, double tol,
                                   bool perturbed)
{
    const auto eqs = applicable_equations(fam);
    if (std::find(eqs.begin(), eqs.end(), eq) == eqs.end())
        throw ParamError("functional equation " + std::to_string(eq) + " does not apply to family " + fam.name() +
                         " over " + fam.roots().name());
    const double d = perturbed ? 0.1 : 0.0;
    const std::string name = "funceq" + std::to_string(eq) + (perturbed ? " perturbed" : "");

    if (eq == 1 || eq == 2) {
        const int r12 = fam.pair_root(1, 2), r23 = fam.pair_root(2, 3), r31 = fam.pair_root(3, 1);
        auto accept = [&fam, &plan](PointView p) {
            return fam.pole_distance(p[0] - p[1]) >= plan.pole_margin &&
                   fam.pole_distance(p[1] - p[2]) >= plan.pole_margin &&
                   fam.pole_distance(p[2] - p[0]) >= plan.pole_margin;
        };
        std::function<std::pair<Complex, double>(PointView)> value;
        if (eq == 1) {
            value = [&fam, r12, r23, r31, d](PointView p) {
                const Complex x = p[0], y = p[1], z = p[2];
                auto f12 = [&](Complex t) { return fam.f(r12, t); };
                auto f23 = [&](Complex t) { return fam.f(r23, t); };
                auto f31 = [&](Complex t) { return fam.f(r31, t) + d / t; };
                Sum s;
                s += f12(x - y) * f23(y - z);
                s += f23(y - z) * f31(z - x);
                s += f31(z - x) * f12(x - y);
                return s.result();
            };
        } else {
            value = [&fam, r12, r23, r31, d](PointView p) {
                const Complex x = p[0], y = p[1], z = p[2];
                auto g12 = [&](Complex t) { return fam.g(r12, t) * std::exp(d * t); };
                auto g23 = [&](Complex t) { return fam.g(r23, t); };
                auto g31 = [&](Complex t) { return fam.g(r31, t); };
                Sum s;
                s += g12(x - y) * g23(x - z);
                s += g23(y - z) * g31(y - x);
                s += g31(z - x) * g12(z - y);
                return s.result();
            };
        }
        return verify_scalar(name, fam.name(), 3, value, plan, tol, accept);
    }

    // B2 root indices: [12], [1bar2], [1], [2].
    const int r12 = 0, rb12 = 1, r1 = 2, r2 = 3;
    auto accept = [&fam, &plan](PointView p) {
        for (Complex t : {p[0], p[1], p[0] - p[1], p[0] + p[1]})
            if (fam.pole_distance(t) < plan.pole_margin)
                return false;
        return true;
    };
    std::function<std::pair<Complex, double>(PointView)> value;
    switch (eq) {
    case 3:
        value = [&fam, d](PointView p) {
            const Complex x = p[0], y = p[1];
            auto f1 = [&](Complex t) { return fam.f(r1, t) + d / t; };
            auto f2 = [&](Complex t) { return fam.f(r2, t); };
            auto f12 = [&](Complex t) { return fam.f(r12, t); };
            auto fb12 = [&](Complex t) { return fam.f(rb12, t); };
            Sum s;
            s += f12(x - y) * f1(x);
            s += -f2(y) * f12(x - y);
            s += fb12(x + y) * f2(y);
            s += f1(x) * fb12(x + y);
            return s.result();
        };
        break;
    case 4:
        value = [&fam, d](PointView p) {
            const Complex x = p[0], y = p[1];
            auto g1 = [&](Complex t) { return fam.g(r1, t) * std::exp(d * t); };
            auto g2 = [&](Complex t) { return fam.g(r2, t); };
            auto g12 = [&](Complex t) { return fam.g(r12, t); };
            auto gb12 = [&](Complex t) { return fam.g(rb12, t); };
            Sum s;
            s += g12(x - y) * g1(y);
            s += -g2(y) * g12(x + y);
            s += gb12(x + y) * g2(-x);
            s += g1(x) * gb12(-x + y);
            return s.result();
        };
        break;
    case 5:
        value = [&fam, d](PointView p) {
            const Complex x = p[0], y = p[1];
            auto f1 = [&](Complex t) { return fam.f(r1, t); };
            auto f2 = [&](Complex t) { return fam.f(r2, t) + d / t; };
            Sum s;
            s += (1.0 / (x - y) + 1.0 / (x + y)) * f1(x);
            s += (-1.0 / (x - y) + 1.0 / (x + y)) * f2(y);
            return s.result();
        };
        break;
    case 6:
    case 7: {
        const auto& lam = fam.params().at("lambda_root");
        const Complex l12 = json_complex(lam.at(r12)), lb12 = json_complex(lam.at(rb12));
        if (eq == 6) {
            value = [&fam, d, l12, lb12](PointView p) {
                const Complex x = p[0], y = p[1];
                auto g1 = [&](Complex t) { return fam.g(r1, t) * std::exp(d * t); };
                auto g2 = [&](Complex t) { return fam.g(r2, t); };
                Sum s;
                s += std::exp(l12 * (x - y)) / (x - y) * g1(y);
                s += -std::exp(l12 * (x + y)) / (x + y) * g2(y);
                s += std::exp(lb12 * (x + y)) / (x + y) * g2(-x);
                s += std::exp(lb12 * (-x + y)) / (-x + y) * g1(x);
                return s.result();
            };
        } else {
            value = [&fam, d, l12, lb12](PointView p) {
                const Complex x = p[0], y = p[1];
                auto phi1 = [&](Complex t) { return fam.g(r1, t) / fam.f(r1, t) * std::exp(d * t); };
                auto phi2 = [&](Complex t) { return fam.g(r2, t) / fam.f(r2, t); };
                Sum s;
                s += (x + y) * std::exp(l12 * (x - y)) * phi1(y) / y;
                s += -(x - y) * std::exp(l12 * (x + y)) * phi2(y) / y;
                s += -(x - y) * std::exp(lb12 * (x + y)) * phi2(-x) / x;
                s += -(x + y) * std::exp(lb12 * (-x + y)) * phi1(x) / x;
                return s.result();
            };
        }
        break;
    }
    default:
        throw ParamError("functional equation index must be 1..7");
    }
    return verify_scalar(name, fam.name(), 2, value, plan, tol, accept);
}

std::vector<IdentityReport> functional_equation_suite(const OperatorFamily& fam, const SamplePlan& plan, double tol,
                                                      bool perturbed)
{
    const auto eqs = applicable_equations(fam);
    if (eqs.empty())
        throw ParamError("no functional equation applies to family " + fam.name() + " over " +
                         fam.roots().name());
    std::vector<IdentityReport> out;
    for (int eq : eqs)
        out.push_back(functional_equation(eq, fam, plan, tol, perturbed));
    return out;
}

IdentityReport conjugation_check(const RootSystemData& rs, int sign, const std::vector<Complex>& lambda_simple,
                                 Complex k, const TestFunctionBank& bank, const SamplePlan& plan, double tol)
{
    BfvParams bp;
    bp.k_long = bp.k_short = k;
    bp.lambda_simple = lambda_simple;
    bp.sign = sign;
    const OperatorFamily fam = bfv_family(rs, bp);
    const auto mu = lambda_weight(rs, lambda_simple);
    const int n = rs.dim();
    auto conj = [&rs, mu, sign, n](PointView xi) {
        Complex e{0.0, 0.0};
        for (int t = 0; t < n; ++t)
            e += mu[t] * xi[t];
        Complex c = std::exp(e);
        if (sign > 0)
            for (int b = 0; b < rs.num_positive(); ++b) {
                Complex s{0.0, 0.0};
                for (int t = 0; t < n; ++t)
                    s += static_cast<double>(rs.root(b)[t]) * xi[t];
                c *= s;
            }
        return c;
    };
    auto check = [&](const TestFunction& f, PointView xi) {
        Complex total{0.0, 0.0};
        double scale = 0.0;
        auto h = [&](PointView y) { return f.eval(y) / conj(y); };
        for (int a = 0; a < rs.num_positive(); ++a) {
            const auto [d, s] = fam.apply_word({a}, f.eval, xi);
            const Point reflected = fam.op(a).reflection.apply(xi);
            const Complex z = fam.pairing(a, xi);
            const Complex rhs = k * conj(xi) * (h(xi) - h(reflected)) / z;
            const Complex diff = d - rhs;
            total += std::norm(diff);
            scale += s * s;
        }
        return std::pair{Complex{std::sqrt(total.real()), 0.0}, std::sqrt(scale)};
    };
    return verify_pointwise(sign > 0 ? "conjugation e+" : "conjugation e", fam.name(), n, check, bank.functions(),
                            plan, tol, family_validator(fam, plan.pole_margin));
}

RootExpr g2_quadratic_relation()
{
    // Positive roots: a1, a1+a2, 2a1+3a2, a1+2a2, a1+3a2, a2.
    RootExpr e;
    for (int k = 0; k < 5; ++k)
        e.add(1.0, {k, k + 1});
    e.add(-1.0, {5, 0});
    return e;
}

std::vector<Complex> g2_constrained_lambda(Complex l1, Complex l2)
{
    return {l1, 3.0 * l1 + l2, 2.0 * l1 + l2, 3.0 * l1 + 2.0 * l2, l1 + l2, l2};
}

IdentityReport g2_constraint_check(Complex lambda1, Complex lambda2, const TestFunctionBank& bank,
                                   const SamplePlan& plan, double tol, double violation, int sign)
{
    BfvParams bp;
    bp.sign = sign;
    bp.lambda_root = g2_constrained_lambda(lambda1, lambda2);
    bp.lambda_root[1] += violation;
    const OperatorFamily fam = bfv_family(RootSystemData::G2(), bp);
    return verify_root_identity("g2 quadratic relation", g2_quadratic_relation(), fam, bank, plan, tol);
}

GroupAlgebraOperator truncated_dunkl(const OperatorFamily& fam, int i)
{
    const int n = fam.dim();
    if (i < 1 || i > n)
        throw ParamError("truncated Dunkl operator index out of range");
    GroupAlgebraOperator r(n);
    for (int j = 1; j <= n; ++j)
        if (j != i)
            r += fam.group_operator(fam.pair_root(i, j));
    return r;
}

Polynomial apply_tensor_exact(const RootSystemData& rs, const nichols::BraidedTensor& t, const Polynomial& p)
{
    Polynomial r;
    for (const auto& [seq, c] : t.terms)
        r += Polynomial(c) * divided_difference_word(rs, seq, p);
    return r;
}

} // namespace efk::oprep
