#pragma once

#include "efk/scalars/complex.hpp"

#include <string>
#include <vector>

namespace efk {

// A real n x n matrix acting on points, used for Weyl group elements.
// Entries are compared through round(6 * entry), which is exact for the
// reflection groups handled here (entries in (1/6)Z).
class LinearAction {
public:
    LinearAction() = default;
    static LinearAction identity(int n);
    // (P xi)_k = xi_{perm[k] - 1}, 1-based perm.
    static LinearAction permutation(const std::vector<int>& perm);
    static LinearAction transposition(int n, int i, int j);
    // s_alpha xi = xi - 2 (alpha, xi) / (alpha, alpha) alpha
    static LinearAction reflection(const std::vector<double>& alpha);

    int dim() const { return n_; }
    double at(int r, int c) const { return m_[r * n_ + c]; }
    bool is_identity() const;
    void apply(PointView xi, Complex* out) const;
    Point apply(PointView xi) const;

    // Matrix product this * o.
    LinearAction operator*(const LinearAction& o) const;
    friend bool operator==(const LinearAction& a, const LinearAction& b) { return a.key_ == b.key_; }
    friend bool operator<(const LinearAction& a, const LinearAction& b) { return a.key_ < b.key_; }

    std::string to_string() const;

private:
    void rekey();
    int n_ = 0;
    std::vector<double> m_;
    std::vector<long> key_;
};

} // namespace efk
