#include "efk/dunkl/elements.hpp"

#include "efk/errors.hpp"

#include <algorithm>

namespace efk::dunkl {

std::string to_string(PhiConvention c)
{
    return c == PhiConvention::x ? "x" : "lambda";
}

PhiConvention phi_convention_from_string(const std::string& s)
{
    if (s == "x")
        return PhiConvention::x;
    if (s == "lambda")
        return PhiConvention::lambda;
    throw ParamError("unknown phi convention: " + s);
}

std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& from, int size)
{
    std::vector<std::vector<int>> out;
    if (size < 0 || size > static_cast<int>(from.size()))
        return out;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (std::size_t t = start; t < from.size(); ++t) {
            cur.push_back(from[t]);
            rec(t + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<std::vector<int>> all_subsets(int n)
{
    std::vector<int> full(n);
    for (int i = 0; i < n; ++i)
        full[i] = i + 1;
    std::vector<std::vector<int>> out;
    for (int s = 0; s <= n; ++s)
        for (auto& I : subsets_of_size(full, s))
            out.push_back(std::move(I));
    return out;
}

std::vector<int> complement(int n, const std::vector<int>& I)
{
    std::vector<int> out;
    for (int i = 1; i <= n; ++i)
        if (std::find(I.begin(), I.end(), i) == I.end())
            out.push_back(i);
    return out;
}

std::vector<int> set_minus(const std::vector<int>& I, const std::vector<int>& J)
{
    std::vector<int> out;
    for (int i : I)
        if (std::find(J.begin(), J.end(), i) == J.end())
            out.push_back(i);
    return out;
}

std::vector<std::vector<std::pair<int, int>>> perfect_matchings(const std::vector<int>& I)
{
    std::vector<std::vector<std::pair<int, int>>> out;
    if (I.size() % 2 != 0)
        throw ParamError("perfect matchings need an even set");
    std::vector<int> sorted = I;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<int, int>> cur;
    std::function<void(std::vector<int>)> rec = [&](std::vector<int> rest) {
        if (rest.empty()) {
            out.push_back(cur);
            return;
        }
        const int a = rest.front();
        for (std::size_t t = 1; t < rest.size(); ++t) {
            std::vector<int> next;
            for (std::size_t u = 1; u < rest.size(); ++u)
                if (u != t)
                    next.push_back(rest[u]);
            cur.emplace_back(a, rest[t]);
            rec(next);
            cur.pop_back();
        }
    };
    rec(sorted);
    return out;
}

Complex phi_value(const std::vector<int>& I, const std::function<Complex(int, int)>& weight)
{
    Complex sum{0.0, 0.0};
    for (const auto& m : perfect_matchings(I)) {
        Complex prod{1.0, 0.0};
        for (const auto& [a, b] : m)
            prod *= weight(a, b);
        sum += prod;
    }
    return sum;
}

Complex ek_scalar(const std::vector<int>& order, int k, const std::function<Complex(int, int)>& c,
                  const std::function<Complex(int)>& X)
{
    if (k < 0)
        return {0.0, 0.0};
    if (k == 0)
        return {1.0, 0.0};
    if (order.empty())
        return {0.0, 0.0};
    const int j = order.back();
    const std::vector<int> rest(order.begin(), order.end() - 1);
    Complex r = ek_scalar(rest, k, c, X) + ek_scalar(rest, k - 1, c, X) * X(j);
    for (std::size_t t = 0; t < rest.size(); ++t) {
        std::vector<int> without = rest;
        without.erase(without.begin() + static_cast<long>(t));
        r += c(rest[t], j) * ek_scalar(without, k - 2, c, X);
    }
    return r;
}

NumericScalar pair_constant(const freealg::RelationSet& rs, int i, int j)
{
    if (rs.mode() == freealg::RelationMode::psi_zero)
        return NumericScalar(0);
    return NumericScalar(rs.c(i, j));
}

NumericScalar phi_scalar(const std::vector<int>& I, PhiConvention conv, const freealg::RelationSet& rs)
{
    if (I.empty())
        return NumericScalar(1);
    if (conv == PhiConvention::lambda)
        return NumericScalar(phi_value(I, [&rs](int a, int b) { return rs.c(a, b); }));
    // Each matching contributes a product of pair functions -h(x_a - x_b).
    NumericScalar sum(0);
    for (const auto& m : perfect_matchings(I)) {
        NumericScalar prod(1);
        for (const auto& [a, b] : m)
            prod *= NumericScalar::pair_function(a, b, [&rs](Complex z) { return -rs.h(z); },
                                                 "phi" + std::to_string(a) + std::to_string(b));
        sum += prod;
    }
    return sum;
}

NumericElem ek_theta(int n, const std::vector<int>& I, int k, const freealg::RelationSet& rs)
{
    return ek_deformed<NumericScalar>(n, I, k, [&rs](int i, int j) { return pair_constant(rs, i, j); });
}

NumericElem pieri_rhs(int n, int k, const std::vector<int>& I, const freealg::RelationSet& rs, PhiConvention conv)
{
    NumericElem sum(n);
    const std::vector<int> out = complement(n, I);
    for (int l = 0; 2 * l <= k; ++l)
        for (const auto& I0 : subsets_of_size(I, 2 * l)) {
            const NumericElem words = pieri_words<NumericScalar>(n, set_minus(I, I0), out, k - 2 * l);
            if (words.is_zero())
                continue;
            sum += phi_scalar(I0, conv, rs) * words;
        }
    return sum;
}

NumericElem corollary_rhs(int n, int k, const freealg::RelationSet& rs, PhiConvention conv)
{
    NumericElem sum(n);
    if (k % 2 != 0)
        return sum;
    std::vector<int> full(n);
    for (int i = 0; i < n; ++i)
        full[i] = i + 1;
    for (const auto& I0 : subsets_of_size(full, k))
        sum += NumericElem::scalar(n, phi_scalar(I0, conv, rs));
    return sum;
}

NumericElem e3_example_rhs(const freealg::RelationSet& rs, E3Reading reading)
{
    const int n = 5;
    const std::vector<int> I{1, 2, 3};
    const std::vector<int> out{4, 5};
    NumericElem sum = pieri_words<NumericScalar>(n, I, out, 3);
    const PsiFamily* psi = rs.psi();
    if (reading == E3Reading::printed_psi && psi == nullptr)
        throw ParamError("the printed E3 reading needs a psi family");
    for (const auto& [i, j] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}}) {
        const int r = 6 - i - j; // the remaining index of {1,2,3}
        NumericScalar coeff =
            reading == E3Reading::printed_psi
                ? NumericScalar::pair_function(i, j, [psi, i, j](Complex z) { return psi->psi(i, j, z); },
                                               "psi" + std::to_string(i) + std::to_string(j))
                : phi_scalar({i, j}, PhiConvention::x, rs);
        sum += coeff * (NumericElem::bracket(n, r, 4) + NumericElem::bracket(n, r, 5));
    }
    return sum;
}

ExactElem theta_prime(int i, int n)
{
    return ExactElem::scalar(n, ExactScalar::x(i)) + theta<ExactScalar>(i, n);
}

ExactElem equivariant_lhs(int n, int k, const std::vector<int>& I)
{
    std::vector<ExactElem> ys;
    for (int i : I)
        ys.push_back(theta_prime(i, n));
    return elementary<ExactScalar>(n, ys, k);
}

ExactElem equivariant_rhs(int n, int k, const std::vector<int>& I)
{
    ExactElem sum(n);
    const std::vector<int> out = complement(n, I);
    for (int m = 0; m <= k; ++m)
        for (const auto& I0 : subsets_of_size(I, m)) {
            const ExactElem words = pieri_words<ExactScalar>(n, set_minus(I, I0), out, k - m);
            if (words.is_zero())
                continue;
            ExactScalar prod(1L);
            for (int i : I0)
                prod *= ExactScalar::x(i);
            sum += prod * words;
        }
    return sum;
}

ExactElem elementary_x(int n, int k)
{
    std::vector<ExactElem> xs;
    for (int i = 1; i <= n; ++i)
        xs.push_back(ExactElem::scalar(n, ExactScalar::x(i)));
    return elementary<ExactScalar>(n, xs, k);
}

ExactElem multiparam_lhs(int n, int k, const std::vector<int>& I)
{
    return ek_deformed<ExactScalar>(n, I, k, [](int i, int j) { return ExactScalar::p(i, j); });
}

ExactElem multiparam_rhs(int n, int k, const std::vector<int>& I)
{
    return pieri_words<ExactScalar>(n, I, complement(n, I), k);
}

} // namespace efk::dunkl
