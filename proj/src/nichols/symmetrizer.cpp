#include "efk/nichols/symmetrizer.hpp"

#include "efk/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>

namespace efk::nichols {

namespace {

long checked_power(int m, int d, long cap)
{
    long n = 1;
    for (int k = 0; k < d; ++k) {
        if (n > cap / m + 1)
            return cap + 1;
        n *= m;
    }
    return n;
}

std::vector<int> identity_perm(int d)
{
    std::vector<int> w(d);
    std::iota(w.begin(), w.end(), 0);
    return w;
}

// Apply the braiding at slot k to a sequence in place, returning the sign.
int braid_sequence(const RootSystemData& rs, std::vector<int>& seq, int k)
{
    const BraidEntry e = rs.braiding(seq[k], seq[k + 1]);
    seq[k] = e.image;
    seq[k + 1] = e.moved;
    return e.sign;
}

SymmetrizerMatrix from_columns(std::vector<std::vector<std::pair<long, long>>> raw, int d)
{
    SymmetrizerMatrix s;
    s.size = static_cast<long>(raw.size());
    s.degree = d;
    s.col.resize(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) {
        auto& c = raw[j];
        std::sort(c.begin(), c.end());
        for (const auto& [r, v] : c) {
            if (!s.col[j].empty() && s.col[j].back().first == r)
                s.col[j].back().second += v;
            else
                s.col[j].emplace_back(r, v);
        }
        std::erase_if(s.col[j], [](const auto& e) { return e.second == 0; });
    }
    return s;
}

// Basis indices grouped by W-grade, each group sorted.
std::vector<std::vector<long>> grade_blocks(const RootSystemData& rs, long size, int d)
{
    std::map<std::vector<int>, std::vector<long>> blocks;
    for (long j = 0; j < size; ++j)
        blocks[weyl_grade(rs, basis_sequence(j, rs.num_positive(), d))].push_back(j);
    std::vector<std::vector<long>> out;
    for (auto& [g, idx] : blocks)
        out.push_back(std::move(idx));
    return out;
}

// Dense block of the matrix on the given basis indices. Entries outside the
// block mean the grading is broken.
template <class T>
std::vector<std::vector<T>> dense_block(const SymmetrizerMatrix& s, const std::vector<long>& idx)
{
    std::map<long, int> local;
    for (std::size_t k = 0; k < idx.size(); ++k)
        local[idx[k]] = static_cast<int>(k);
    std::vector<std::vector<T>> a(idx.size(), std::vector<T>(idx.size(), T(0)));
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (const auto& [r, v] : s.col[idx[k]]) {
            const auto it = local.find(r);
            if (it == local.end())
                throw Error("symmetrizer does not preserve the W-grading");
            a[it->second][k] = T(v);
        }
    return a;
}

long bareiss_rank(std::vector<std::vector<mpz_class>> a)
{
    const std::size_t rows = a.size();
    if (rows == 0)
        return 0;
    const std::size_t cols = a[0].size();
    mpz_class prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = a[rank][c] * a[i][j] - a[i][c] * a[rank][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return static_cast<long>(rank);
}

// Lifts along reduced words are only well defined under Yang-Baxter; checked
// once per root system before any lift is summed.
void require_yang_baxter(const RootSystemData& rs)
{
    static std::mutex mutex;
    static std::set<std::string> verified;
    std::lock_guard<std::mutex> lock(mutex);
    if (verified.count(rs.name()))
        return;
    if (!satisfies_yang_baxter(rs))
        throw Error("braiding of " + rs.name() + " violates the Yang-Baxter equation");
    verified.insert(rs.name());
}

} // namespace

BraidedTensor& BraidedTensor::add(const std::vector<int>& seq, const mpq_class& c)
{
    if (static_cast<int>(seq.size()) != degree)
        throw ParamError("braided tensor: sequence length differs from the degree");
    if (c == 0)
        return *this;
    auto& slot = terms[seq];
    slot += c;
    if (slot == 0)
        terms.erase(seq);
    return *this;
}

long basis_index(const std::vector<int>& seq, int m)
{
    long idx = 0;
    for (int a : seq)
        idx = idx * m + a;
    return idx;
}

std::vector<int> basis_sequence(long idx, int m, int d)
{
    std::vector<int> seq(d);
    for (int k = d - 1; k >= 0; --k) {
        seq[k] = static_cast<int>(idx % m);
        idx /= m;
    }
    return seq;
}

SignedPerm SignedPerm::identity(long size)
{
    SignedPerm p;
    p.target.resize(size);
    std::iota(p.target.begin(), p.target.end(), 0L);
    p.sign.assign(size, 1);
    return p;
}

SignedPerm SignedPerm::after(const SignedPerm& other) const
{
    SignedPerm r;
    r.target.resize(other.target.size());
    r.sign.resize(other.target.size());
    for (std::size_t j = 0; j < other.target.size(); ++j) {
        const long mid = other.target[j];
        r.target[j] = target[mid];
        r.sign[j] = static_cast<std::int8_t>(sign[mid] * other.sign[j]);
    }
    return r;
}

SignedPerm braiding_at(const RootSystemData& rs, int d, int k)
{
    if (k < 0 || k + 1 >= d)
        throw ParamError("braiding slot out of range");
    const int m = rs.num_positive();
    const long size = checked_power(m, d, 1L << 24);
    SignedPerm p;
    p.target.resize(size);
    p.sign.resize(size);
    for (long j = 0; j < size; ++j) {
        auto seq = basis_sequence(j, m, d);
        p.sign[j] = static_cast<std::int8_t>(braid_sequence(rs, seq, k));
        p.target[j] = basis_index(seq, m);
    }
    return p;
}

std::vector<int> reduced_word(const std::vector<int>& w)
{
    std::vector<int> cur = w, word;
    for (;;) {
        std::size_t k = 0;
        while (k + 1 < cur.size() && cur[k] < cur[k + 1])
            ++k;
        if (k + 1 >= cur.size())
            break;
        std::swap(cur[k], cur[k + 1]);
        word.push_back(static_cast<int>(k));
    }
    std::reverse(word.begin(), word.end());
    return word;
}

std::vector<std::vector<int>> all_reduced_words(const std::vector<int>& w)
{
    std::vector<std::vector<int>> out;
    bool descent = false;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
        if (w[k] < w[k + 1])
            continue;
        descent = true;
        std::vector<int> shorter = w;
        std::swap(shorter[k], shorter[k + 1]);
        for (auto& word : all_reduced_words(shorter)) {
            word.push_back(static_cast<int>(k));
            out.push_back(std::move(word));
        }
    }
    if (!descent)
        out.emplace_back();
    return out;
}

SignedPerm lift_along(const RootSystemData& rs, int d, const std::vector<int>& word)
{
    const long size = checked_power(rs.num_positive(), d, 1L << 24);
    std::vector<SignedPerm> psi;
    for (int k = 0; k + 1 < d; ++k)
        psi.push_back(braiding_at(rs, d, k));
    SignedPerm r = SignedPerm::identity(size);
    for (int k : word)
        r = r.after(psi.at(k));
    return r;
}

SignedPerm braided_lift(const RootSystemData& rs, const std::vector<int>& w)
{
    return lift_along(rs, static_cast<int>(w.size()), reduced_word(w));
}

bool lift_is_word_independent(const RootSystemData& rs, int d)
{
    const long size = checked_power(rs.num_positive(), d, 1L << 24);
    std::vector<SignedPerm> psi;
    for (int k = 0; k + 1 < d; ++k)
        psi.push_back(braiding_at(rs, d, k));
    std::vector<int> w = identity_perm(d);
    do {
        std::optional<SignedPerm> first;
        for (const auto& word : all_reduced_words(w)) {
            SignedPerm r = SignedPerm::identity(size);
            for (int k : word)
                r = r.after(psi[k]);
            if (!first)
                first = std::move(r);
            else if (!(r == *first))
                return false;
        }
    } while (std::next_permutation(w.begin(), w.end()));
    return true;
}

bool satisfies_yang_baxter(const RootSystemData& rs)
{
    const SignedPerm p1 = braiding_at(rs, 3, 0), p2 = braiding_at(rs, 3, 1);
    return p1.after(p2).after(p1) == p2.after(p1).after(p2);
}

long SymmetrizerMatrix::entry(long row, long column) const
{
    const auto& c = col.at(column);
    const auto it = std::lower_bound(c.begin(), c.end(), std::pair<long, long>{row, std::numeric_limits<long>::min()});
    return it != c.end() && it->first == row ? it->second : 0;
}

long SymmetrizerMatrix::nonzeros() const
{
    long n = 0;
    for (const auto& c : col)
        n += static_cast<long>(c.size());
    return n;
}

SymmetrizerMatrix symmetrizer(const RootSystemData& rs, int d, long max_size)
{
    if (d < 0)
        throw ParamError("symmetrizer degree must be nonnegative");
    const int m = rs.num_positive();
    const long size = checked_power(m, d, max_size);
    if (size > max_size)
        throw BudgetExceeded("symmetrizer of degree " + std::to_string(d) + " exceeds the size budget");
    require_yang_baxter(rs);
    std::vector<std::vector<std::pair<long, long>>> raw(size);
    if (d <= 1) {
        for (long j = 0; j < size; ++j)
            raw[j].emplace_back(j, 1);
        return from_columns(std::move(raw), d);
    }
    std::vector<SignedPerm> psi;
    for (int k = 0; k + 1 < d; ++k)
        psi.push_back(braiding_at(rs, d, k));

    // Breadth-first over S_d by length: lift(w s_k) = lift(w) o psi_k.
    std::map<std::vector<int>, SignedPerm> level{{identity_perm(d), SignedPerm::identity(size)}};
    std::set<std::vector<int>> seen{identity_perm(d)};
    while (!level.empty()) {
        std::map<std::vector<int>, SignedPerm> next;
        for (const auto& [w, lift] : level) {
            for (long j = 0; j < size; ++j)
                raw[j].emplace_back(lift.target[j], lift.sign[j]);
            for (int k = 0; k + 1 < d; ++k) {
                if (w[k] > w[k + 1])
                    continue;
                std::vector<int> longer = w;
                std::swap(longer[k], longer[k + 1]);
                if (seen.insert(longer).second)
                    next.emplace(std::move(longer), lift.after(psi[k]));
            }
        }
        level = std::move(next);
    }
    return from_columns(std::move(raw), d);
}

SymmetrizerMatrix symmetrizer_recursive(const RootSystemData& rs, int d, long max_size)
{
    if (d <= 1)
        return symmetrizer(rs, d, max_size);
    const int m = rs.num_positive();
    const long size = checked_power(m, d, max_size);
    if (size > max_size)
        throw BudgetExceeded("symmetrizer of degree " + std::to_string(d) + " exceeds the size budget");
    const SymmetrizerMatrix lower = symmetrizer_recursive(rs, d - 1, max_size);

    // Terms of 1 + psi_{d-2} + psi_{d-2} psi_{d-3} + ... (0-based slots).
    std::vector<SignedPerm> shuffle{SignedPerm::identity(size)};
    for (int k = d - 2; k >= 0; --k)
        shuffle.push_back(shuffle.back().after(braiding_at(rs, d, k)));

    std::vector<std::vector<std::pair<long, long>>> raw(size);
    for (long j = 0; j < size; ++j)
        for (const SignedPerm& t : shuffle) {
            const long mid = t.target[j];
            const long prefix = mid / m, last = mid % m;
            for (const auto& [r, v] : lower.col[prefix])
                raw[j].emplace_back(r * m + last, v * t.sign[j]);
        }
    return from_columns(std::move(raw), d);
}

std::vector<int> weyl_grade(const RootSystemData& rs, const std::vector<int>& seq)
{
    std::vector<int> g(rs.num_roots());
    std::iota(g.begin(), g.end(), 0);
    for (int a : seq) {
        const auto& s = rs.reflection_table(a);
        std::vector<int> h(g.size());
        for (std::size_t x = 0; x < g.size(); ++x)
            h[x] = g[s[x]];
        g = std::move(h);
    }
    return g;
}

long exact_rank(const RootSystemData& rs, const SymmetrizerMatrix& s)
{
    long rank = 0;
    for (const auto& idx : grade_blocks(rs, s.size, s.degree))
        rank += bareiss_rank(dense_block<mpz_class>(s, idx));
    return rank;
}

long numeric_rank(const RootSystemData& rs, const SymmetrizerMatrix& s)
{
    std::vector<Eigen::VectorXd> sv;
    double largest = 0.0;
    for (const auto& idx : grade_blocks(rs, s.size, s.degree)) {
        const auto a = dense_block<double>(s, idx);
        Eigen::MatrixXd m(a.size(), a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j)
                m(i, j) = a[i][j];
        sv.push_back(Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues());
        if (sv.back().size() > 0)
            largest = std::max(largest, sv.back().maxCoeff());
    }
    long rank = 0;
    for (const auto& v : sv)
        for (Eigen::Index k = 0; k < v.size(); ++k)
            rank += v[k] > 1e-8 * largest;
    return rank;
}

HilbertEntry hilbert_coeff(const RootSystemData& rs, int d, const HilbertOptions& opts)
{
    if (d < 0)
        throw ParamError("Hilbert coefficient degree must be nonnegative");
    if (opts.exact_budget > 4096)
        throw ParamError("exact rank budget is capped at 4096");
    if (d == 0)
        return {0, 1, "exact"};
    const long size = checked_power(rs.num_positive(), d, 1L << 40);
    if (size <= opts.exact_budget)
        return {d, exact_rank(rs, symmetrizer(rs, d, opts.exact_budget)), "exact"};
    // The B2 series is a palindromic polynomial of degree 8.
    if (opts.allow_inferred && rs.name() == "B2") {
        if (d > 8)
            return {d, 0, "inferred"};
        if (8 - d < d)
            return {d, hilbert_coeff(rs, 8 - d, opts).rank, "inferred"};
    }
    if (size <= opts.numeric_budget)
        return {d, numeric_rank(rs, symmetrizer(rs, d, opts.numeric_budget)), "numeric"};
    throw BudgetExceeded("symmetrizer of degree " + std::to_string(d) + " exceeds the rank budget");
}

std::vector<HilbertEntry> hilbert_series(const RootSystemData& rs, int max_degree, const HilbertOptions& opts)
{
    std::vector<HilbertEntry> out;
    for (int d = 0; d <= max_degree; ++d)
        out.push_back(hilbert_coeff(rs, d, opts));
    return out;
}

nlohmann::json hilbert_json(const RootSystemData& rs, const std::vector<HilbertEntry>& entries)
{
    nlohmann::json degrees = nlohmann::json::array();
    for (const auto& e : entries)
        degrees.push_back({{"d", e.degree}, {"rank", e.rank}, {"method", e.method}});
    return {{"type", rs.name()}, {"degrees", degrees}};
}

BraidedTensor apply_symmetrizer(const RootSystemData& rs, const BraidedTensor& t)
{
    if (t.degree > 8)
        throw BudgetExceeded("symmetrizer application is limited to degree 8");
    require_yang_baxter(rs);
    BraidedTensor out;
    out.degree = t.degree;
    std::vector<int> w = identity_perm(t.degree);
    do {
        const auto word = reduced_word(w);
        for (const auto& [seq, c] : t.terms) {
            std::vector<int> cur = seq;
            int sign = 1;
            for (auto it = word.rbegin(); it != word.rend(); ++it)
                sign *= braid_sequence(rs, cur, *it);
            out.add(cur, sign * c);
        }
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

bool kernel_contains(const RootSystemData& rs, const BraidedTensor& t) { return apply_symmetrizer(rs, t).is_zero(); }

std::vector<BraidedTensor> b2_relation_family(int k)
{
    enum { r12 = 0, r12bar = 1, r1 = 2, r2 = 3 };
    auto tensor = [](std::initializer_list<std::pair<std::vector<int>, int>> terms) {
        BraidedTensor t;
        t.degree = static_cast<int>(terms.begin()->first.size());
        for (const auto& [seq, c] : terms)
            t.add(seq, c);
        return t;
    };
    switch (k) {
    case 1:
        return {tensor({{{r12, r12}, 1}}), tensor({{{r12bar, r12bar}, 1}}), tensor({{{r1, r1}, 1}}),
                tensor({{{r2, r2}, 1}})};
    case 2:
        return {tensor({{{r12, r12bar}, 1}, {{r12bar, r12}, -1}}), tensor({{{r1, r2}, 1}, {{r2, r1}, -1}})};
    case 3:
        return {tensor({{{r12, r1}, 1}, {{r2, r12}, -1}, {{r1, r12bar}, 1}, {{r12bar, r2}, 1}}),
                tensor({{{r1, r12}, 1}, {{r12, r2}, -1}, {{r12bar, r1}, 1}, {{r2, r12bar}, 1}})};
    case 4:
        return {tensor({{{r12, r1, r12bar, r1}, 1},
                        {{r12bar, r1, r12, r1}, 1},
                        {{r1, r12, r1, r12bar}, 1},
                        {{r1, r12bar, r1, r12}, 1}})};
    case 5: return {tensor({{{r1, r12, r1, r12}, 1}, {{r12, r1, r12, r1}, -1}})};
    default: throw ParamError("B2 relation families are numbered 1..5");
    }
}

} // namespace efk::nichols
