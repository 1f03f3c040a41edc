#pragma once

#include "efk/freealg/alg_elem.hpp"
#include "efk/freealg/relations.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace efk::dunkl {

using freealg::AlgElem;
using freealg::ExactElem;
using freealg::NumericElem;

// Source of the pair weights in phi(I): x-differences use the non-constant
// part of the square, -h(x_a - x_b); lambda-differences use the constants
// c_ab.
enum class PhiConvention { x, lambda };

std::string to_string(PhiConvention c);
PhiConvention phi_convention_from_string(const std::string& s);

// Lexicographically ordered subsets of `from` of the given size.
std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& from, int size);
// Nonempty and empty subsets of {1..n} in order of size, then lexicographic.
std::vector<std::vector<int>> all_subsets(int n);
std::vector<int> complement(int n, const std::vector<int>& I);
std::vector<int> set_minus(const std::vector<int>& I, const std::vector<int>& J);

// Perfect matchings of an even set as lists of pairs (a < b), the smallest
// free element paired first.
std::vector<std::vector<std::pair<int, int>>> perfect_matchings(const std::vector<int>& I);

// phi(I) = sum over perfect matchings of prod weight(a, b).
Complex phi_value(const std::vector<int>& I, const std::function<Complex(int, int)>& weight);

// theta_i = sum_{j != i} [ij].
template <class S>
AlgElem<S> theta(int i, int n)
{
    if (i < 1 || i > n)
        throw ParamError("theta: index out of range");
    AlgElem<S> t(n);
    for (int j = 1; j <= n; ++j)
        if (j != i)
            t += AlgElem<S>::bracket(n, i, j);
    return t;
}

// Product [a r_1][a r_2]...[a r_m].
template <class S>
AlgElem<S> fan(int n, int a, const std::vector<int>& rs)
{
    AlgElem<S> w = AlgElem<S>::one(n);
    for (int r : rs)
        w *= AlgElem<S>::bracket(n, a, r);
    return w;
}

// Term a (0-based) of the cyclic sum: [i_a i_{a+1}] ... [i_a i_k] [i_a i_1] ... [i_a i_{a-1}].
template <class S>
AlgElem<S> cyclic_fan(int n, const std::vector<int>& idx, std::size_t a)
{
    std::vector<int> rest;
    for (std::size_t t = a + 1; t < idx.size(); ++t)
        rest.push_back(idx[t]);
    for (std::size_t t = 0; t < a; ++t)
        rest.push_back(idx[t]);
    return fan<S>(n, idx[a], rest);
}

// Cyclic sum of Q_k(i_1..i_k); vanishes modulo the ideal for k >= 3.
template <class S>
AlgElem<S> q_k(int n, const std::vector<int>& idx)
{
    AlgElem<S> q(n);
    for (std::size_t a = 0; a < idx.size(); ++a)
        q += cyclic_fan<S>(n, idx, a);
    return q;
}

// (-1)^{k+1} sum_a [i_a m][i_{a+1} m] ... [i_k m][i_1 m] ... [i_{a-1} m][i_a m].
template <class S>
AlgElem<S> p_k_lhs(int n, const std::vector<int>& idx, int m)
{
    const int k = static_cast<int>(idx.size());
    AlgElem<S> sum(n);
    for (int a = 0; a < k; ++a) {
        AlgElem<S> w = AlgElem<S>::one(n);
        for (int t = a; t < k; ++t)
            w *= AlgElem<S>::bracket(n, idx[t], m);
        for (int t = 0; t <= a; ++t)
            w *= AlgElem<S>::bracket(n, idx[t], m);
        sum += w;
    }
    return (k % 2 == 1) ? sum : -sum;
}

// sum_a c(i_a, m) [i_a i_{a+1}] ... [i_a i_{a-1}].
template <class S>
AlgElem<S> p_k_rhs(int n, const std::vector<int>& idx, int m, const std::function<S(int, int)>& c)
{
    AlgElem<S> sum(n);
    for (std::size_t a = 0; a < idx.size(); ++a)
        sum += c(idx[a], m) * cyclic_fan<S>(n, idx, a);
    return sum;
}

// The printed k = 4 computation with m: the plain cyclic sum, its expansion
// into eight words, and the final line.
template <class S>
std::vector<AlgElem<S>> p4_printed_lines(int n, int m, const std::function<S(int, int)>& c)
{
    auto b = [n](int i, int j) { return AlgElem<S>::bracket(n, i, j); };
    auto bm = [&](int i) { return b(i, m); };
    AlgElem<S> first = bm(1) * bm(2) * bm(3) * bm(4) * bm(1) + bm(2) * bm(3) * bm(4) * bm(1) * bm(2) +
                       bm(3) * bm(4) * bm(1) * bm(2) * bm(3) + bm(4) * bm(1) * bm(2) * bm(3) * bm(4);
    AlgElem<S> second = -(bm(1) * bm(2) * b(3, 4) * bm(3) * bm(1)) + bm(1) * bm(2) * bm(4) * b(3, 4) * bm(1) -
                        bm(2) * b(3, 4) * bm(3) * bm(1) * bm(2) + bm(2) * bm(4) * b(3, 4) * bm(1) * bm(2) -
                        b(3, 4) * bm(3) * bm(1) * bm(2) * bm(3) + bm(4) * b(3, 4) * bm(1) * bm(2) * bm(3) -
                        bm(4) * bm(1) * bm(2) * b(3, 4) * bm(3) + bm(4) * bm(1) * bm(2) * bm(4) * b(3, 4);
    AlgElem<S> last = -(c(1, m) * (b(1, 2) * b(1, 3) * b(1, 4))) - c(2, m) * (b(2, 3) * b(2, 4) * b(2, 1)) -
                      c(3, m) * (b(3, 4) * b(3, 1) * b(3, 2)) - c(4, m) * (b(4, 1) * b(4, 2) * b(4, 3));
    return {first, second, last};
}

// sum of [a_1 b_1] ... [a_r b_r] over distinct a_t in A and weakly
// increasing b_t in B.
template <class S>
AlgElem<S> pieri_words(int n, const std::vector<int>& A, const std::vector<int>& B, int r)
{
    if (r == 0)
        return AlgElem<S>::one(n);
    AlgElem<S> sum(n);
    if (static_cast<int>(A.size()) < r || B.empty())
        return sum;
    std::vector<int> bs;
    std::vector<int> as;
    std::vector<bool> used(A.size(), false);
    std::function<void(std::size_t)> pick_b;
    std::function<void()> pick_a = [&]() {
        if (as.size() == bs.size()) {
            AlgElem<S> w = AlgElem<S>::one(n);
            for (std::size_t t = 0; t < as.size(); ++t)
                w *= AlgElem<S>::bracket(n, as[t], bs[t]);
            sum += w;
            return;
        }
        for (std::size_t t = 0; t < A.size(); ++t) {
            if (used[t])
                continue;
            used[t] = true;
            as.push_back(A[t]);
            pick_a();
            as.pop_back();
            used[t] = false;
        }
    };
    pick_b = [&](std::size_t from) {
        if (static_cast<int>(bs.size()) == r) {
            pick_a();
            return;
        }
        for (std::size_t t = from; t < B.size(); ++t) {
            bs.push_back(B[t]);
            pick_b(t);
            bs.pop_back();
        }
    };
    pick_b(0);
    return sum;
}

// Deformed elementary symmetric polynomial by the recursion
// E_k(I u {j}) = E_k(I) + E_{k-1}(I) X_j + sum_{i in I} c(i, j) E_{k-2}(I \ {i}),
// inserting the elements of `order` from first to last.
template <class S>
class EkTable {
public:
    EkTable(int n, std::function<S(int, int)> c, std::function<AlgElem<S>(int)> X)
        : n_(n), c_(std::move(c)), X_(std::move(X))
    {
    }

    const AlgElem<S>& get(const std::vector<int>& order, int k)
    {
        const auto key = std::pair{order, k};
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        AlgElem<S> r(n_);
        if (k == 0)
            r = AlgElem<S>::one(n_);
        else if (k > 0 && !order.empty()) {
            const int j = order.back();
            const std::vector<int> rest(order.begin(), order.end() - 1);
            r = get(rest, k) + get(rest, k - 1) * X_(j);
            if (k >= 2)
                for (std::size_t t = 0; t < rest.size(); ++t) {
                    std::vector<int> without = rest;
                    without.erase(without.begin() + static_cast<long>(t));
                    r += c_(rest[t], j) * get(without, k - 2);
                }
        }
        return memo_.emplace(key, std::move(r)).first->second;
    }

private:
    int n_;
    std::function<S(int, int)> c_;
    std::function<AlgElem<S>(int)> X_;
    std::map<std::pair<std::vector<int>, int>, AlgElem<S>> memo_;
};

template <class S>
AlgElem<S> ek_deformed(int n, const std::vector<int>& order, int k, const std::function<S(int, int)>& c)
{
    EkTable<S> table(n, c, [n](int i) { return theta<S>(i, n); });
    return table.get(order, k);
}

// Scalar version with commuting X values.
Complex ek_scalar(const std::vector<int>& order, int k, const std::function<Complex(int, int)>& c,
                  const std::function<Complex(int)>& X);

// Plain elementary symmetric polynomial of the given elements, factors in
// the listed order.
template <class S>
AlgElem<S> elementary(int n, const std::vector<AlgElem<S>>& ys, int k)
{
    AlgElem<S> sum(n);
    std::vector<int> idx(ys.size());
    for (std::size_t t = 0; t < idx.size(); ++t)
        idx[t] = static_cast<int>(t);
    for (const auto& s : subsets_of_size(idx, k)) {
        AlgElem<S> w = AlgElem<S>::one(n);
        for (int t : s)
            w *= ys[t];
        sum += w;
    }
    return sum;
}

// Coefficient c_ij of the relation set as a constant scalar.
NumericScalar pair_constant(const freealg::RelationSet& rs, int i, int j);
// phi(I) as a coefficient function under the given convention.
NumericScalar phi_scalar(const std::vector<int>& I, PhiConvention conv, const freealg::RelationSet& rs);

// E_k(theta_i | i in I) with c_ij from the relation set.
NumericElem ek_theta(int n, const std::vector<int>& I, int k, const freealg::RelationSet& rs);
// Right side of the deformed Pieri formula.
NumericElem pieri_rhs(int n, int k, const std::vector<int>& I, const freealg::RelationSet& rs, PhiConvention conv);
// Right side of the full-set corollary: sum_{|I0| = k} phi(I0) for even k, 0 for odd k.
NumericElem corollary_rhs(int n, int k, const freealg::RelationSet& rs, PhiConvention conv);

// The E_3 example in rank 5, I = {1,2,3}. The printed right side carries
// psi_ij(x_ij) on the single brackets; the alternative reading uses the
// phi weight -h(x_ij).
enum class E3Reading { printed_psi, phi_weight };
NumericElem e3_example_rhs(const freealg::RelationSet& rs, E3Reading reading);

// Exact targets. theta'_i = x_i + theta_i in the psi = 0 algebra.
ExactElem theta_prime(int i, int n);
ExactElem equivariant_lhs(int n, int k, const std::vector<int>& I);
ExactElem equivariant_rhs(int n, int k, const std::vector<int>& I);
// e_k(x_1..x_n) as a scalar element.
ExactElem elementary_x(int n, int k);
// E_k(theta; p) with the central parameters p_ij, and its Pieri right side.
ExactElem multiparam_lhs(int n, int k, const std::vector<int>& I);
ExactElem multiparam_rhs(int n, int k, const std::vector<int>& I);

} // namespace efk::dunkl
