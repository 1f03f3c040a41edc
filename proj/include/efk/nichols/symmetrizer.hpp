#pragma once

#include "efk/nichols/root_system.hpp"

#include "json.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

namespace efk::nichols {

// Element of M^{(x)d}: index sequences of positive roots to rationals.
struct BraidedTensor {
    int degree = 0;
    std::map<std::vector<int>, mpq_class> terms;

    BraidedTensor& add(const std::vector<int>& seq, const mpq_class& c);
    bool is_zero() const { return terms.empty(); }
};

// Basis tensors are numbered in base m with the first slot most significant.
long basis_index(const std::vector<int>& seq, int m);
std::vector<int> basis_sequence(long idx, int m, int d);

// The braided lift of a permutation acts on basis tensors as a signed
// permutation: basis j -> sign[j] * basis target[j].
struct SignedPerm {
    std::vector<long> target;
    std::vector<std::int8_t> sign;

    static SignedPerm identity(long size);
    // (this o other)(j) = this(other(j))
    SignedPerm after(const SignedPerm& other) const;
    friend bool operator==(const SignedPerm& a, const SignedPerm& b) = default;
};

// The braiding at slots (k, k+1), 0-based, on M^{(x)d}.
SignedPerm braiding_at(const RootSystemData& rs, int d, int k);

// A permutation of {0..d-1} as images: w[i] = w(i). Reduced words are lists
// of simple transpositions s_k = (k k+1) with w = s_{k1} ... s_{kl}.
std::vector<int> reduced_word(const std::vector<int>& w);
std::vector<std::vector<int>> all_reduced_words(const std::vector<int>& w);
// Lift along the given reduced word: psi_{k1} o ... o psi_{kl}.
SignedPerm lift_along(const RootSystemData& rs, int d, const std::vector<int>& word);
SignedPerm braided_lift(const RootSystemData& rs, const std::vector<int>& w);

// True when every reduced word of every permutation of d letters gives the
// same lift.
bool lift_is_word_independent(const RootSystemData& rs, int d);
// psi_1 psi_2 psi_1 = psi_2 psi_1 psi_2 on three slots.
bool satisfies_yang_baxter(const RootSystemData& rs);

// Sparse integer matrix, column major: col[j] = sorted (row, value).
struct SymmetrizerMatrix {
    long size = 0;
    int degree = 0;
    std::vector<std::vector<std::pair<long, long>>> col;

    long entry(long row, long column) const;
    long nonzeros() const;
    friend bool operator==(const SymmetrizerMatrix& a, const SymmetrizerMatrix& b)
    {
        return a.size == b.size && a.col == b.col;
    }
};

// Sum of the lifts of all d! permutations. Throws BudgetExceeded when m^d
// exceeds max_size.
SymmetrizerMatrix symmetrizer(const RootSystemData& rs, int d, long max_size = 4096);
// Same matrix from (S_{d-1} (x) 1) o (1 + psi_{d-1} + psi_{d-1} psi_{d-2} + ...).
SymmetrizerMatrix symmetrizer_recursive(const RootSystemData& rs, int d, long max_size = 4096);

// W-element s_{a1} ... s_{ad} of a basis tensor, as its action on root
// indices. The symmetrizer preserves it, so ranks split into these blocks.
std::vector<int> weyl_grade(const RootSystemData& rs, const std::vector<int>& seq);

struct HilbertOptions {
    long exact_budget = 1024;   // at most 4096
    long numeric_budget = 4096;
    bool allow_inferred = true; // B2 degrees above the exact budget
};

struct HilbertEntry {
    int degree = 0;
    long rank = 0;
    std::string method; // exact | numeric | inferred
};

// Exact rank of a symmetrizer by fraction-free elimination per W-grade block.
long exact_rank(const RootSystemData& rs, const SymmetrizerMatrix& s);
// Singular values per block, threshold 1e-8 times the largest.
long numeric_rank(const RootSystemData& rs, const SymmetrizerMatrix& s);

HilbertEntry hilbert_coeff(const RootSystemData& rs, int d, const HilbertOptions& opts = {});
std::vector<HilbertEntry> hilbert_series(const RootSystemData& rs, int max_degree, const HilbertOptions& opts = {});
nlohmann::json hilbert_json(const RootSystemData& rs, const std::vector<HilbertEntry>& entries);

// Symmetrizer applied to the tensor, without building the matrix.
BraidedTensor apply_symmetrizer(const RootSystemData& rs, const BraidedTensor& t);
// True iff the symmetrizer kills the tensor. Throws BudgetExceeded past
// degree 8.
bool kernel_contains(const RootSystemData& rs, const BraidedTensor& t);

// The five defining relation families of the B2 algebra as tensors over the
// basis [12], [1bar2], [1], [2]; family k in 1..5.
std::vector<BraidedTensor> b2_relation_family(int k);

} // namespace efk::nichols
