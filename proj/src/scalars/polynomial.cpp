#include "efk/scalars/polynomial.hpp"

#include "efk/errors.hpp"

#include <algorithm>
#include <sstream>

namespace efk {

namespace {

int pair_index(int i, int j)
{
    if (i > j)
        std::swap(i, j);
    // pairs (1,2),(1,3),...,(1,R),(2,3),... in order
    int idx = 0;
    for (int a = 1; a < i; ++a)
        idx += max_rank - a;
    return idx + (j - i - 1);
}

} // namespace

int x_var(int i)
{
    if (i < 1 || i > max_rank)
        throw ParamError("x variable index out of range");
    return i - 1;
}

int p_var(int i, int j)
{
    if (i == j || i < 1 || j < 1 || i > max_rank || j > max_rank)
        throw ParamError("pair parameter index out of range");
    return max_rank + pair_index(i, j);
}

int num_pair_vars() { return max_rank * (max_rank - 1) / 2; }

bool is_x_var(int v) { return v >= 0 && v < max_rank; }

std::pair<int, int> pair_of_var(int v)
{
    int idx = v - max_rank;
    for (int i = 1; i <= max_rank; ++i)
        for (int j = i + 1; j <= max_rank; ++j)
            if (idx-- == 0)
                return {i, j};
    throw ParamError("not a pair parameter slot: " + std::to_string(v));
}

std::string var_name(int v)
{
    if (is_x_var(v))
        return "x" + std::to_string(v + 1);
    int idx = v - max_rank;
    for (int i = 1; i <= max_rank; ++i)
        for (int j = i + 1; j <= max_rank; ++j)
            if (idx-- == 0)
                return "p" + std::to_string(i) + std::to_string(j);
    return "v" + std::to_string(v);
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(int v, int power)
{
    Monomial m;
    if (power == 0)
        return m;
    m.exp_.assign(v + 1, 0);
    m.exp_[v] = static_cast<std::uint16_t>(power);
    m.degree_ = power;
    return m;
}

void Monomial::trim()
{
    while (!exp_.empty() && exp_.back() == 0)
        exp_.pop_back();
}

Monomial Monomial::operator*(const Monomial& o) const
{
    Monomial r;
    r.exp_.assign(std::max(exp_.size(), o.exp_.size()), 0);
    for (size_t v = 0; v < exp_.size(); ++v)
        r.exp_[v] = exp_[v];
    for (size_t v = 0; v < o.exp_.size(); ++v)
        r.exp_[v] = static_cast<std::uint16_t>(r.exp_[v] + o.exp_[v]);
    r.degree_ = degree_ + o.degree_;
    return r;
}

bool Monomial::divides(const Monomial& o) const
{
    if (exp_.size() > o.exp_.size())
        return false;
    for (size_t v = 0; v < exp_.size(); ++v)
        if (exp_[v] > o.exp_[v])
            return false;
    return true;
}

Monomial Monomial::quotient(const Monomial& o) const
{
    Monomial r = *this;
    for (size_t v = 0; v < o.exp_.size(); ++v)
        r.exp_[v] = static_cast<std::uint16_t>(r.exp_[v] - o.exp_[v]);
    r.degree_ -= o.degree_;
    r.trim();
    return r;
}

Monomial Monomial::with_exponent(int v, int e) const
{
    Monomial r = *this;
    if (v >= static_cast<int>(r.exp_.size())) {
        if (e == 0)
            return r;
        r.exp_.resize(v + 1, 0);
    }
    r.degree_ += e - r.exp_[v];
    r.exp_[v] = static_cast<std::uint16_t>(e);
    r.trim();
    return r;
}

bool operator<(const Monomial& a, const Monomial& b)
{
    if (a.degree_ != b.degree_)
        return a.degree_ < b.degree_;
    const size_t n = std::max(a.exp_.size(), b.exp_.size());
    for (size_t v = 0; v < n; ++v) {
        const int ea = v < a.exp_.size() ? a.exp_[v] : 0;
        const int eb = v < b.exp_.size() ? b.exp_[v] : 0;
        if (ea != eb)
            return ea < eb;
    }
    return false;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(long c)
{
    if (c != 0)
        terms_.emplace(Monomial{}, mpq_class(c));
}

Polynomial::Polynomial(const mpq_class& c)
{
    if (c != 0)
        terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::variable(int v)
{
    Polynomial p;
    p.terms_.emplace(Monomial::var(v), mpq_class(1));
    return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const mpq_class& c)
{
    Polynomial p;
    if (c != 0)
        p.terms_.emplace(m, c);
    return p;
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

mpq_class Polynomial::constant_value() const
{
    if (terms_.empty())
        return 0;
    return terms_.begin()->second;
}

int Polynomial::total_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

int Polynomial::degree_in(int v) const
{
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, m.exponent(v));
    return d;
}

int Polynomial::main_variable() const
{
    int best = -1;
    for (const auto& [m, c] : terms_)
        for (int v = 0; v < m.num_slots(); ++v)
            if (m.exponent(v) > 0) {
                if (best < 0 || v < best)
                    best = v;
                break;
            }
    return best;
}

bool Polynomial::has_variable(int v) const
{
    for (const auto& [m, c] : terms_)
        if (m.exponent(v) > 0)
            return true;
    return false;
}

bool Polynomial::has_x() const
{
    for (const auto& [m, c] : terms_)
        for (int v = 0; v < std::min(m.num_slots(), max_rank); ++v)
            if (m.exponent(v) > 0)
                return true;
    return false;
}

void Polynomial::add_term(const Monomial& m, const mpq_class& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_)
        c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const mpq_class& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    Polynomial r;
    if (a.is_zero() || b.is_zero())
        return r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const mpq_class& c) const
{
    Polynomial r;
    if (c == 0)
        return r;
    for (const auto& [mm, cc] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
    return r;
}

Polynomial Polynomial::divide_exact(const Polynomial& b) const
{
    if (b.is_zero())
        throw DivisionByZero("polynomial division by zero");
    auto q = try_divide(b);
    if (!q)
        throw DivisionFailure("polynomial is not divisible: " + to_string() + " / " + b.to_string());
    return std::move(*q);
}

std::optional<Polynomial> Polynomial::try_divide(const Polynomial& b) const
{
    if (b.is_zero())
        throw DivisionByZero("polynomial division by zero");
    if (b.is_constant()) {
        Polynomial r = *this;
        r *= mpq_class(1) / b.constant_value();
        return r;
    }
    if (!is_zero()) {
        int slots = 0;
        for (const auto& [m, c] : b.terms())
            slots = std::max(slots, m.num_slots());
        for (int v = 0; v < slots; ++v)
            if (degree_in(v) < b.degree_in(v))
                return std::nullopt;
    }
    Polynomial q;
    Polynomial r = *this;
    const Monomial& lb = b.leading_monomial();
    const mpq_class& cb = b.leading_coeff();
    while (!r.is_zero()) {
        const Monomial& lr = r.leading_monomial();
        if (!lb.divides(lr))
            return std::nullopt;
        const Monomial m = lr.quotient(lb);
        const mpq_class c = r.leading_coeff() / cb;
        q.add_term(m, c);
        r -= b.mul_term(m, c);
    }
    return q;
}

std::vector<Polynomial> Polynomial::coefficients_in(int v) const
{
    std::vector<Polynomial> out(std::max(0, degree_in(v) + 1));
    for (const auto& [m, c] : terms_)
        out[m.exponent(v)].add_term(m.with_exponent(v, 0), c);
    return out;
}

Polynomial Polynomial::from_coefficients(int v, const std::vector<Polynomial>& coeffs)
{
    Polynomial r;
    for (size_t e = 0; e < coeffs.size(); ++e)
        r += coeffs[e].mul_term(Monomial::var(v, static_cast<int>(e)), 1);
    return r;
}

Polynomial Polynomial::substitute(int v, const Polynomial& value) const
{
    return substitute(std::map<int, Polynomial>{{v, value}});
}

Polynomial Polynomial::substitute(const std::map<int, Polynomial>& values) const
{
    Polynomial r;
    std::map<std::pair<int, int>, Polynomial> powers;
    auto power_of = [&](int v, int e) -> const Polynomial& {
        auto key = std::make_pair(v, e);
        auto it = powers.find(key);
        if (it == powers.end())
            it = powers.emplace(key, pow(values.at(v), e)).first;
        return it->second;
    };
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        Polynomial factor(c);
        for (const auto& [v, val] : values) {
            const int e = m.exponent(v);
            if (e == 0)
                continue;
            rest = rest.with_exponent(v, 0);
            factor = factor * power_of(v, e);
        }
        r += factor.mul_term(rest, 1);
    }
    return r;
}

Polynomial Polynomial::permute_x(const std::vector<int>& perm) const
{
    Polynomial r;
    const int n = static_cast<int>(perm.size());
    for (const auto& [m, c] : terms_) {
        Monomial out = m;
        for (int k = 0; k < n; ++k)
            out = out.with_exponent(k, 0);
        for (int k = 0; k < n; ++k) {
            const int e = m.exponent(k);
            if (e > 0)
                out = out.with_exponent(perm[k] - 1, e);
        }
        r.add_term(out, c);
    }
    return r;
}

Polynomial Polynomial::linear_substitute_x(const std::vector<std::vector<mpq_class>>& m) const
{
    std::map<int, Polynomial> values;
    const int r = static_cast<int>(m.size());
    for (int k = 0; k < r; ++k) {
        Polynomial image;
        for (int l = 0; l < static_cast<int>(m[k].size()); ++l)
            if (m[k][l] != 0)
                image += Polynomial::monomial(Monomial::var(l), m[k][l]);
        values.emplace(k, image);
    }
    return substitute(values);
}

Complex Polynomial::evaluate(const std::function<Complex(int)>& value_of) const
{
    Complex total{0.0, 0.0};
    for (const auto& [m, c] : terms_) {
        Complex t = c.get_d();
        for (int v = 0; v < m.num_slots(); ++v) {
            const int e = m.exponent(v);
            if (e == 0)
                continue;
            const Complex base = value_of(v);
            for (int k = 0; k < e; ++k)
                t *= base;
        }
        total += t;
    }
    return total;
}

Polynomial Polynomial::monic() const
{
    if (is_zero())
        return *this;
    Polynomial r = *this;
    r *= mpq_class(1) / leading_coeff();
    return r;
}

std::string Polynomial::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        mpq_class mag = abs(c);
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        bool wrote = false;
        if (mag != 1 || m.is_one()) {
            os << mag.get_str();
            wrote = true;
        }
        for (int v = 0; v < m.num_slots(); ++v) {
            const int e = m.exponent(v);
            if (e == 0)
                continue;
            if (wrote)
                os << "*";
            os << var_name(v);
            if (e > 1)
                os << "^" << e;
            wrote = true;
        }
    }
    return os.str();
}

Polynomial pow(const Polynomial& p, int e)
{
    Polynomial r(1);
    Polynomial base = p;
    while (e > 0) {
        if (e & 1)
            r = r * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return r;
}

// ------------------------------------------------------------------- gcd

namespace {

Polynomial content_in(const Polynomial& p, int v)
{
    Polynomial g;
    for (const Polynomial& c : p.coefficients_in(v)) {
        if (c.is_zero())
            continue;
        g = gcd(g, c);
        if (g.is_constant())
            return Polynomial(1);
    }
    return g;
}

// Scale to integer coefficients with no common factor.
Polynomial numeric_primitive(const Polynomial& p)
{
    mpz_class den = 1, num = 0;
    for (const auto& [m, c] : p.terms()) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    }
    if (num == 0)
        return p;
    Polynomial r = p;
    r *= mpq_class(den, num);
    return r;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, int v)
{
    const int db = b.degree_in(v);
    const Polynomial lb = b.coefficients_in(v).back();
    Polynomial r = a;
    while (!r.is_zero()) {
        const int dr = r.degree_in(v);
        if (dr < db)
            break;
        const Polynomial lr = r.coefficients_in(v).back();
        r = numeric_primitive(lb * r - (lr * b).mul_term(Monomial::var(v, dr - db), 1));
    }
    return r;
}

Polynomial monomial_gcd(const Monomial& m, const Polynomial& b)
{
    Monomial g = m;
    for (const auto& [mb, c] : b.terms()) {
        for (int v = 0; v < g.num_slots(); ++v)
            if (mb.exponent(v) < g.exponent(v))
                g = g.with_exponent(v, mb.exponent(v));
        if (g.is_one())
            break;
    }
    return Polynomial::monomial(g, 1);
}

mpz_class max_norm(const Polynomial& p)
{
    mpz_class m = 0;
    for (const auto& [mono, c] : p.terms()) {
        const mpz_class a = abs(c.get_num());
        if (a > m)
            m = a;
    }
    return m;
}

Polynomial evaluate_at(const Polynomial& p, int v, const mpz_class& value)
{
    Polynomial r;
    std::vector<mpz_class> powers{1};
    for (const auto& [m, c] : p.terms()) {
        const int e = m.exponent(v);
        while (static_cast<int>(powers.size()) <= e)
            powers.push_back(powers.back() * value);
        r += Polynomial::monomial(m.with_exponent(v, 0), c * mpq_class(powers[e]));
    }
    return r;
}

// Rebuild a polynomial in v from its image at v = xi by balanced base-xi digits.
Polynomial interpolate_at(Polynomial h, int v, const mpz_class& xi)
{
    Polynomial out;
    const mpz_class half = xi / 2;
    for (int e = 0; !h.is_zero(); ++e) {
        Polynomial digit;
        for (const auto& [m, c] : h.terms()) {
            mpz_class d = c.get_num() % xi;
            if (d > half)
                d -= xi;
            else if (d < -half)
                d += xi;
            if (d != 0)
                digit += Polynomial::monomial(m, mpq_class(d));
        }
        h -= digit;
        h *= mpq_class(1, 1) / mpq_class(xi);
        out += digit.mul_term(Monomial::var(v, e), 1);
        if (e > 4096)
            return Polynomial();
    }
    return out;
}

// Heuristic gcd of two nonzero integer polynomials: evaluate the main
// variable at a large integer, recurse, and rebuild. Nullopt when the
// attempts are exhausted.
mpz_class integer_content(const Polynomial& p)
{
    mpz_class r = 0;
    for (const auto& [m, c] : p.terms())
        mpz_gcd(r.get_mpz_t(), r.get_mpz_t(), c.get_num_mpz_t());
    return r;
}

std::optional<Polynomial> heuristic_gcd_primitive(const Polynomial& f, const Polynomial& g);

std::optional<Polynomial> heuristic_gcd(const Polynomial& f, const Polynomial& g)
{
    const mpz_class cf = integer_content(f), cg = integer_content(g);
    mpz_class common;
    mpz_gcd(common.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
    Polynomial pf = f, pg = g;
    pf *= mpq_class(1) / mpq_class(cf);
    pg *= mpq_class(1) / mpq_class(cg);
    if (pf.is_constant() || pg.is_constant())
        return Polynomial(mpq_class(common));
    auto h = heuristic_gcd_primitive(pf, pg);
    if (h)
        *h *= mpq_class(common);
    return h;
}

// Both arguments have integer content 1 and are not constant.
std::optional<Polynomial> heuristic_gcd_primitive(const Polynomial& f, const Polynomial& g)
{
    int v = f.main_variable();
    const int vg = g.main_variable();
    if (v < 0 || (vg >= 0 && vg < v))
        v = vg;
    const mpz_class fn = max_norm(f), gn = max_norm(g);
    const mpz_class bound = 2 * std::min(fn, gn) + 29;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), bound.get_mpz_t());
    mpz_class xi = std::min(bound, mpz_class(99 * root));
    const mpz_class lc_f = abs(f.leading_coeff().get_num()), lc_g = abs(g.leading_coeff().get_num());
    const mpz_class alt = 2 * std::min(mpz_class(fn / lc_f), mpz_class(gn / lc_g)) + 2;
    if (alt > xi)
        xi = alt;
    for (int attempt = 0; attempt < 6; ++attempt) {
        const Polynomial ff = evaluate_at(f, v, xi), gg = evaluate_at(g, v, xi);
        if (!ff.is_zero() && !gg.is_zero()) {
            const auto h = heuristic_gcd(ff, gg);
            if (!h)
                return std::nullopt;
            Polynomial cand = interpolate_at(*h, v, xi);
            if (!cand.is_zero()) {
                cand = numeric_primitive(cand);
                if (f.try_divide(cand) && g.try_divide(cand))
                    return cand;
            }
        }
        mpz_class r4;
        mpz_sqrt(r4.get_mpz_t(), xi.get_mpz_t());
        mpz_sqrt(r4.get_mpz_t(), r4.get_mpz_t());
        xi = 73794 * xi * r4 / 27011;
    }
    return std::nullopt;
}

} // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    if (a.is_constant() || b.is_constant())
        return Polynomial(1);
    if (a.terms().size() == 1)
        return monomial_gcd(a.leading_monomial(), b);
    if (b.terms().size() == 1)
        return monomial_gcd(b.leading_monomial(), a);
    if (a.monic() == b.monic())
        return a.monic();
    if (auto h = heuristic_gcd(numeric_primitive(a), numeric_primitive(b)))
        return h->monic();
    return prs_gcd(a, b);
}

Polynomial prs_gcd(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    if (a.is_constant() || b.is_constant())
        return Polynomial(1);
    if (a.terms().size() == 1)
        return monomial_gcd(a.leading_monomial(), b);
    if (b.terms().size() == 1)
        return monomial_gcd(b.leading_monomial(), a);
    if (a.monic() == b.monic())
        return a.monic();

    const int va = a.main_variable();
    const int vb = b.main_variable();
    const int v = std::min(va, vb);
    const bool in_a = a.has_variable(v);
    const bool in_b = b.has_variable(v);
    if (!in_a)
        return gcd(a, content_in(b, v));
    if (!in_b)
        return gcd(content_in(a, v), b);

    const Polynomial ca = content_in(a, v);
    const Polynomial cb = content_in(b, v);
    Polynomial pa = numeric_primitive(a.divide_exact(ca));
    Polynomial pb = numeric_primitive(b.divide_exact(cb));
    const Polynomial g = gcd(ca, cb);
    if (pa.degree_in(v) < pb.degree_in(v))
        std::swap(pa, pb);
    while (!pb.is_zero()) {
        Polynomial r = pseudo_remainder(pa, pb, v);
        pa = pb;
        if (r.is_zero()) {
            pb = Polynomial();
            break;
        }
        if (r.degree_in(v) == 0) {
            pa = Polynomial(1);
            break;
        }
        pb = numeric_primitive(r.divide_exact(content_in(r, v)));
    }
    if (!pa.is_constant())
        pa = pa.divide_exact(content_in(pa, v));
    return (g * pa).monic();
}

} // namespace efk
