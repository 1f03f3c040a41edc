#pragma once

#include "efk/scalars/polynomial.hpp"

namespace efk {

// Exact multivariate rational function over Q in x_1..x_n and the pair
// parameters p_ij. Canonical form: numerator and denominator coprime,
// denominator with leading coefficient 1, zero stored as 0/1.
class ExactScalar {
public:
    ExactScalar() : den_(1) {}
    ExactScalar(long c) : num_(c), den_(1) {} // NOLINT(google-explicit-constructor)
    ExactScalar(const mpq_class& c) : num_(c), den_(1) {} // NOLINT(google-explicit-constructor)
    ExactScalar(const Polynomial& p) : num_(p), den_(1) {} // NOLINT(google-explicit-constructor)
    ExactScalar(const Polynomial& num, const Polynomial& den);

    static ExactScalar x(int i) { return Polynomial::x(i); }
    static ExactScalar p(int i, int j) { return Polynomial::p(i, j); }

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant_value() == 1; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    mpq_class constant_value() const; // requires is_constant
    bool has_x() const { return num_.has_x() || den_.has_x(); }

    ExactScalar operator-() const;
    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    ExactScalar& operator*=(const ExactScalar& o);
    ExactScalar& operator/=(const ExactScalar& o);
    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
    friend bool operator==(const ExactScalar& a, const ExactScalar& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    // Throws DivisionByZero on the zero function.
    ExactScalar invert() const;
    // Exchange x_i and x_j; p_ij parameters are fixed.
    ExactScalar swap_action(int i, int j) const;
    // x_k -> x_{perm[k-1]}.
    ExactScalar permute_x(const std::vector<int>& perm) const;
    ExactScalar substitute(const std::map<int, Polynomial>& values) const;
    // Numeric value; PoleError if the denominator vanishes.
    Complex evaluate(const std::function<Complex(int)>& value_of) const;

    std::string to_string() const;

private:
    void normalize();
    Polynomial num_;
    Polynomial den_;
};

} // namespace efk
