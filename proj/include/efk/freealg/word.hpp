#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace efk::freealg {

inline constexpr int max_rank = 8;

// Bracket generator [ij], stored with i < j and the orientation in sign.
struct BracketGen {
    int i = 1;
    int j = 2;
    int sign = 1;

    // [ab] for a != b; [ba] becomes (b, a) with sign -1.
    static BracketGen make(int a, int b);
    int id() const;
    static BracketGen from_id(int id);
};

// Index of the pair i < j, independent of the rank: (j-1)(j-2)/2 + (i-1).
int pair_id(int i, int j);
// Number of pairs for rank n.
inline int num_pairs(int n) { return n * (n - 1) / 2; }

// A word in the bracket generators, letters are pair ids. Orientation signs
// live in the coefficient, so a word is a plain sequence.
using Word = std::vector<std::uint8_t>;

// Degree-lexicographic order: shorter words first, then letterwise.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

// Permutation of {1..n} stored 0-based: perm[k] = image of k + 1, minus one.
struct Perm {
    std::array<std::uint8_t, max_rank> p{};
    int n = 0;

    static Perm identity(int n);
    // this followed by the transposition (i j) on the right: k -> this(s(k)).
    Perm times_transposition(int i, int j) const;
    Perm compose(const Perm& right) const; // k -> this(right(k))
    Perm inverse() const;
    int operator()(int k) const { return p[k - 1] + 1; } // 1-based
    // 1-based image vector for coordinate twisting, x_k -> x_{q(k)}.
    std::vector<int> as_vector() const;
    bool is_identity() const;
    std::uint32_t code() const;

    friend bool operator==(const Perm& a, const Perm& b) { return a.n == b.n && a.p == b.p; }
    friend bool operator<(const Perm& a, const Perm& b) { return a.code() < b.code(); }
};

// q = s_{a1} s_{a2} ... s_{am}; crossing the word moves a coefficient f(xi)
// to f(Q xi) with (Q xi)_k = xi_{q(k)}.
Perm grade(const Word& w, int n);

std::string word_to_string(const Word& w);

// All words of length len over the pairs of rank n, in deglex order.
std::vector<Word> all_words(int n, int len);

} // namespace efk::freealg
