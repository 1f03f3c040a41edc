#pragma once

#include "efk/errors.hpp"
#include "efk/freealg/word.hpp"
#include "efk/scalars/numeric_scalar.hpp"
#include "efk/scalars/rational_function.hpp"

#include "json.hpp"

#include <map>
#include <string>

namespace efk::freealg {

// Element of the free algebra on the brackets [ij] over coefficient
// functions, kept with every coefficient to the left of its word. Crossing
// a bracket [ij] from the right twists a coefficient by s_ij on x.
template <class S>
class AlgElem {
public:
    using Scalar = S;
    using Terms = std::map<Word, S, WordLess>;

    explicit AlgElem(int n = 2) : n_(n)
    {
        if (n < 1 || n > max_rank)
            throw ParamError("AlgElem: rank must be in 1.." + std::to_string(max_rank));
    }

    static AlgElem scalar(int n, const S& c)
    {
        AlgElem r(n);
        r.add_term(Word{}, c);
        return r;
    }
    static AlgElem one(int n) { return scalar(n, S(1)); }
    // [ab] with [ba] = -[ab] applied.
    static AlgElem bracket(int n, int a, int b)
    {
        if (a > n || b > n)
            throw ParamError("bracket index exceeds the rank");
        const BracketGen g = BracketGen::make(a, b);
        AlgElem r(n);
        r.add_term(Word{static_cast<std::uint8_t>(g.id())}, S(g.sign));
        return r;
    }
    static AlgElem monomial(int n, const Word& w, const S& c)
    {
        AlgElem r(n);
        r.add_term(w, c);
        return r;
    }

    int rank() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const { return terms_.empty() ? 0 : static_cast<int>(terms_.rbegin()->first.size()); }
    std::size_t size() const { return terms_.size(); }

    AlgElem& add_term(const Word& w, const S& c)
    {
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

    AlgElem operator-() const
    {
        AlgElem r(n_);
        for (const auto& [w, c] : terms_)
            r.terms_.emplace(w, -c);
        return r;
    }
    AlgElem& operator+=(const AlgElem& o)
    {
        check_rank(o);
        for (const auto& [w, c] : o.terms_)
            add_term(w, c);
        return *this;
    }
    AlgElem& operator-=(const AlgElem& o) { return *this += -o; }
    friend AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
    friend AlgElem operator-(AlgElem a, const AlgElem& b) { return a -= b; }

    // Product in left-coefficient position: (c u)(d v) = c * twist_u(d) uv.
    friend AlgElem operator*(const AlgElem& a, const AlgElem& b)
    {
        a.check_rank(b);
        AlgElem r(a.n_);
        for (const auto& [u, c] : a.terms_) {
            const Perm q = grade(u, a.n_);
            const bool trivial = q.is_identity();
            const std::vector<int> perm = q.as_vector();
            for (const auto& [v, d] : b.terms_) {
                Word uv = u;
                uv.insert(uv.end(), v.begin(), v.end());
                r.add_term(uv, trivial ? c * d : c * d.permute_x(perm));
            }
        }
        return r;
    }
    AlgElem& operator*=(const AlgElem& o) { return *this = *this * o; }

    // Left scalar multiplication needs no twist.
    friend AlgElem operator*(const S& c, const AlgElem& a)
    {
        AlgElem r(a.n_);
        for (const auto& [w, d] : a.terms_)
            r.add_term(w, c * d);
        return r;
    }

    // Terms whose word has grade g.
    AlgElem grade_part(const Perm& g) const
    {
        AlgElem r(n_);
        for (const auto& [w, c] : terms_)
            if (grade(w, n_) == g)
                r.terms_.emplace(w, c);
        return r;
    }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!s.empty())
                s += " + ";
            s += "(" + it->second.to_string() + ")" + (it->first.empty() ? "" : word_to_string(it->first));
        }
        return s;
    }

    friend bool operator==(const AlgElem& a, const AlgElem& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

private:
    void check_rank(const AlgElem& o) const
    {
        if (o.n_ != n_)
            throw BackendMismatch("AlgElem: rank mismatch");
    }

    int n_;
    Terms terms_;
};

using ExactElem = AlgElem<ExactScalar>;
using NumericElem = AlgElem<NumericScalar>;

// Coefficient substitution from exact to numeric: parameters p_ij are
// replaced through p_value, x_k stays a coordinate function.
NumericElem to_numeric(const ExactElem& e, const std::function<Complex(int, int)>& p_value);

// JSON list of {word: [[i, j, sign], ...], coeff: {...}}.
nlohmann::json to_json(const ExactElem& e);
nlohmann::json to_json(const NumericElem& e);
// Reads elements whose coefficients are rational constants ("3/2") or
// constant complex numbers.
ExactElem exact_elem_from_json(int n, const nlohmann::json& j);
NumericElem numeric_elem_from_json(int n, const nlohmann::json& j);

} // namespace efk::freealg
