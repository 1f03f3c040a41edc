#pragma once

#include "efk/scalars/complex.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace efk {

// Variable layout shared by all exact arithmetic: x_1..x_max_rank occupy the
// first slots, followed by the symmetric pair parameters p_ij.
inline constexpr int max_rank = 8;
int x_var(int i);          // 1-based index
int p_var(int i, int j);   // i != j, p_ij = p_ji
int num_pair_vars();
bool is_x_var(int v);
std::string var_name(int v);
// (i, j) with i < j for a pair-parameter slot.
std::pair<int, int> pair_of_var(int v);

// Exponent vector without trailing zeros.
class Monomial {
public:
    Monomial() = default;
    static Monomial var(int v, int power = 1);

    int degree() const { return degree_; }
    int exponent(int v) const { return v < static_cast<int>(exp_.size()) ? exp_[v] : 0; }
    int num_slots() const { return static_cast<int>(exp_.size()); }
    bool is_one() const { return exp_.empty(); }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    Monomial quotient(const Monomial& o) const; // this / o, requires o | this
    Monomial with_exponent(int v, int e) const;

    // Degree-lexicographic, x_1 > x_2 > ... > p-parameters.
    friend bool operator<(const Monomial& a, const Monomial& b);
    friend bool operator>(const Monomial& a, const Monomial& b) { return b < a; }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp_ == b.exp_; }

private:
    void trim();
    std::vector<std::uint16_t> exp_;
    int degree_ = 0;
};

// Sparse multivariate polynomial over the rationals, terms kept in
// decreasing monomial order.
class Polynomial {
public:
    using Terms = std::map<Monomial, mpq_class, std::greater<Monomial>>;

    Polynomial() = default;
    Polynomial(long c); // NOLINT(google-explicit-constructor)
    Polynomial(const mpq_class& c); // NOLINT(google-explicit-constructor)
    static Polynomial variable(int v);
    static Polynomial x(int i) { return variable(x_var(i)); }
    static Polynomial p(int i, int j) { return variable(p_var(i, j)); }
    static Polynomial monomial(const Monomial& m, const mpq_class& c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    mpq_class constant_value() const; // requires is_constant
    const Monomial& leading_monomial() const { return terms_.begin()->first; }
    const mpq_class& leading_coeff() const { return terms_.begin()->second; }
    int total_degree() const;
    int degree_in(int v) const;
    // Smallest variable index present, or -1 for constants.
    int main_variable() const;
    bool has_variable(int v) const;
    bool has_x() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const mpq_class& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
    friend bool operator<(const Polynomial& a, const Polynomial& b) { return a.terms_ < b.terms_; }

    Polynomial mul_term(const Monomial& m, const mpq_class& c) const;

    // Exact quotient; throws DivisionFailure if b does not divide this.
    Polynomial divide_exact(const Polynomial& b) const;
    // Exact quotient, or nullopt if b does not divide this.
    std::optional<Polynomial> try_divide(const Polynomial& b) const;
    // Coefficients with respect to variable v: result[e] multiplies v^e.
    std::vector<Polynomial> coefficients_in(int v) const;
    static Polynomial from_coefficients(int v, const std::vector<Polynomial>& coeffs);

    // Substitutions.
    Polynomial substitute(int v, const Polynomial& value) const;
    Polynomial substitute(const std::map<int, Polynomial>& values) const;
    // x_k -> x_{perm[k-1]} for k = 1..perm.size().
    Polynomial permute_x(const std::vector<int>& perm) const;
    // x_k -> sum_l m[k][l] x_l (simultaneous, 0-based rows over x_1..x_r).
    Polynomial linear_substitute_x(const std::vector<std::vector<mpq_class>>& m) const;

    // Numeric evaluation. Variables beyond the given values evaluate to 0.
    Complex evaluate(const std::function<Complex(int)>& value_of) const;

    // Scale to leading coefficient 1 (zero stays zero).
    Polynomial monic() const;

    std::string to_string() const;

private:
    void add_term(const Monomial& m, const mpq_class& c);
    Terms terms_;
};

Polynomial pow(const Polynomial& p, int e);

// Greatest common divisor over Q, normalized to leading coefficient 1.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
// Same result by primitive remainder sequences only; slower, kept as fallback.
Polynomial prs_gcd(const Polynomial& a, const Polynomial& b);

} // namespace efk
