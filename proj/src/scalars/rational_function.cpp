#include "efk/scalars/rational_function.hpp"

#include "efk/errors.hpp"

namespace efk {

ExactScalar::ExactScalar(const Polynomial& num, const Polynomial& den) : num_(num), den_(den)
{
    if (den_.is_zero())
        throw DivisionByZero("rational function with zero denominator");
    normalize();
}

void ExactScalar::normalize()
{
    if (num_.is_zero()) {
        den_ = Polynomial(1);
        return;
    }
    if (!den_.is_constant()) {
        const Polynomial g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = num_.divide_exact(g);
            den_ = den_.divide_exact(g);
        }
    }
    const mpq_class lc = den_.leading_coeff();
    if (lc != 1) {
        const mpq_class inv = mpq_class(1) / lc;
        num_ *= inv;
        den_ *= inv;
    }
}

mpq_class ExactScalar::constant_value() const { return num_.constant_value() / den_.constant_value(); }

ExactScalar ExactScalar::operator-() const
{
    ExactScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o)
{
    if (o.is_zero())
        return *this;
    if (is_zero())
        return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
        if (!den_.is_constant())
            normalize();
        else if (num_.is_zero())
            den_ = Polynomial(1);
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) { return *this += -o; }

ExactScalar& ExactScalar::operator*=(const ExactScalar& o)
{
    if (is_zero() || o.is_zero()) {
        num_ = Polynomial();
        den_ = Polynomial(1);
        return *this;
    }
    if (den_.is_constant() && o.den_.is_constant()) {
        num_ = num_ * o.num_;
        return *this;
    }
    // cross-cancel before multiplying
    const Polynomial g1 = gcd(num_, o.den_);
    const Polynomial g2 = gcd(o.num_, den_);
    Polynomial n = num_.divide_exact(g1) * o.num_.divide_exact(g2);
    Polynomial d = den_.divide_exact(g2) * o.den_.divide_exact(g1);
    num_ = std::move(n);
    den_ = std::move(d);
    const mpq_class lc = den_.leading_coeff();
    if (lc != 1) {
        const mpq_class inv = mpq_class(1) / lc;
        num_ *= inv;
        den_ *= inv;
    }
    return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) { return *this *= o.invert(); }

ExactScalar ExactScalar::invert() const
{
    if (is_zero())
        throw DivisionByZero("inverting the zero rational function");
    ExactScalar r;
    r.num_ = den_;
    r.den_ = num_;
    const mpq_class lc = r.den_.leading_coeff();
    if (lc != 1) {
        const mpq_class inv = mpq_class(1) / lc;
        r.num_ *= inv;
        r.den_ *= inv;
    }
    return r;
}

ExactScalar ExactScalar::swap_action(int i, int j) const
{
    std::vector<int> perm(std::max(i, j));
    for (int k = 0; k < static_cast<int>(perm.size()); ++k)
        perm[k] = k + 1;
    perm[i - 1] = j;
    perm[j - 1] = i;
    return permute_x(perm);
}

ExactScalar ExactScalar::permute_x(const std::vector<int>& perm) const
{
    if (!has_x())
        return *this;
    ExactScalar r;
    r.num_ = num_.permute_x(perm);
    r.den_ = den_.permute_x(perm);
    // A permutation preserves coprimality; only the leading coefficient may move.
    const mpq_class lc = r.den_.leading_coeff();
    if (lc != 1) {
        const mpq_class inv = mpq_class(1) / lc;
        r.num_ *= inv;
        r.den_ *= inv;
    }
    return r;
}

ExactScalar ExactScalar::substitute(const std::map<int, Polynomial>& values) const
{
    return ExactScalar(num_.substitute(values), den_.substitute(values));
}

Complex ExactScalar::evaluate(const std::function<Complex(int)>& value_of) const
{
    const Complex d = den_.evaluate(value_of);
    if (std::abs(d) == 0.0)
        throw PoleError("rational function evaluated at a pole");
    return num_.evaluate(value_of) / d;
}

std::string ExactScalar::to_string() const
{
    if (den_.is_constant() && den_.constant_value() == 1)
        return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

} // namespace efk
