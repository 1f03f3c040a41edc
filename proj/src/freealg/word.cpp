#include "efk/freealg/word.hpp"

#include "efk/errors.hpp"

#include <utility>

namespace efk::freealg {

namespace {

std::pair<int, int> pair_from_id(int id)
{
    int j = 2;
    while ((j - 1) * j / 2 <= id)
        ++j;
    return {id - (j - 1) * (j - 2) / 2 + 1, j};
}

} // namespace

int pair_id(int i, int j)
{
    if (i > j)
        std::swap(i, j);
    return (j - 1) * (j - 2) / 2 + (i - 1);
}

BracketGen BracketGen::make(int a, int b)
{
    if (a == b || a < 1 || b < 1 || a > max_rank || b > max_rank)
        throw ParamError("bracket [" + std::to_string(a) + std::to_string(b) + "] is not a valid generator");
    if (a < b)
        return {a, b, 1};
    return {b, a, -1};
}

int BracketGen::id() const { return pair_id(i, j); }

BracketGen BracketGen::from_id(int id)
{
    const auto [i, j] = pair_from_id(id);
    return {i, j, 1};
}

Perm Perm::identity(int n)
{
    Perm r;
    r.n = n;
    for (int k = 0; k < n; ++k)
        r.p[k] = static_cast<std::uint8_t>(k);
    return r;
}

Perm Perm::times_transposition(int i, int j) const
{
    Perm r = *this;
    std::swap(r.p[i - 1], r.p[j - 1]);
    return r;
}

Perm Perm::compose(const Perm& right) const
{
    Perm r;
    r.n = n;
    for (int k = 0; k < n; ++k)
        r.p[k] = p[right.p[k]];
    return r;
}

Perm Perm::inverse() const
{
    Perm r;
    r.n = n;
    for (int k = 0; k < n; ++k)
        r.p[p[k]] = static_cast<std::uint8_t>(k);
    return r;
}

std::vector<int> Perm::as_vector() const
{
    std::vector<int> v(n);
    for (int k = 0; k < n; ++k)
        v[k] = p[k] + 1;
    return v;
}

bool Perm::is_identity() const
{
    for (int k = 0; k < n; ++k)
        if (p[k] != k)
            return false;
    return true;
}

std::uint32_t Perm::code() const
{
    std::uint32_t c = 0;
    for (int k = 0; k < n; ++k)
        c = c * 8 + p[k];
    return c;
}

Perm grade(const Word& w, int n)
{
    Perm q = Perm::identity(n);
    for (std::uint8_t letter : w) {
        const BracketGen g = BracketGen::from_id(letter);
        q = q.times_transposition(g.i, g.j);
    }
    return q;
}

std::string word_to_string(const Word& w)
{
    if (w.empty())
        return "1";
    std::string s;
    for (std::uint8_t letter : w) {
        const BracketGen g = BracketGen::from_id(letter);
        s += "[" + std::to_string(g.i) + std::to_string(g.j) + "]";
    }
    return s;
}

std::vector<Word> all_words(int n, int len)
{
    std::vector<Word> out{Word{}};
    const int m = num_pairs(n);
    for (int step = 0; step < len; ++step) {
        std::vector<Word> next;
        next.reserve(out.size() * m);
        for (const Word& w : out)
            for (int a = 0; a < m; ++a) {
                Word x = w;
                x.push_back(static_cast<std::uint8_t>(a));
                next.push_back(std::move(x));
            }
        out = std::move(next);
    }
    return out;
}

} // namespace efk::freealg
