#pragma once

#include <string>
#include <utility>
#include <vector>

namespace efk::nichols {

enum class RootType { A, B, G2 };

// Braiding of two positive roots: [a] (x) [b] -> sign [image] (x) [a], with
// s_a(b) = sign * (positive root `image`).
struct BraidEntry {
    int image = 0;
    int moved = 0;
    int sign = 1;
};

// Roots in the standard integer realization. Type A_{n-1} lives in Z^n with
// roots e_i - e_j; B_n in Z^n with e_i -+ e_j and e_i; G2 in the plane
// x1 + x2 + x3 = 0 with the short simple root (1,-1,0) and the long simple
// root (-2,1,1).
//
// Positive roots come first (indices 0..m-1) and the negative of positive
// root k is stored at index m + k. All tables are filled at construction.
class RootSystemData {
public:
    static RootSystemData A(int n); // A_{n-1}, n >= 2
    static RootSystemData B(int n); // B_n, n >= 2
    static RootSystemData G2();
    // "A2", "A3", "B2", "B3", "G2"; throws ParamError otherwise.
    static RootSystemData from_name(const std::string& name);

    RootType type() const { return type_; }
    const std::string& name() const { return name_; }
    int rank() const { return static_cast<int>(simple_.size()); }
    int dim() const { return dim_; }
    int num_positive() const { return m_; }
    int num_roots() const { return 2 * m_; }

    const std::vector<int>& root(int idx) const { return roots_[idx]; }
    const std::string& label(int positive) const { return labels_[positive]; }
    // Indices of the simple roots among the positive roots.
    const std::vector<int>& simple() const { return simple_; }
    // Root index of the given vector, or -1.
    int index_of(const std::vector<int>& v) const;
    // Positive index and sign of a root index.
    std::pair<int, int> to_positive(int idx) const { return idx < m_ ? std::pair{idx, 1} : std::pair{idx - m_, -1}; }

    int inner(int a, int b) const;
    // Root index of s_a(b); a is any root index.
    int reflect(int a, int b) const { return reflect_[a][b]; }
    const std::vector<int>& reflection_table(int a) const { return reflect_[a]; }

    // alpha^v = 2 alpha / (alpha, alpha), for positive roots.
    const std::vector<double>& coroot(int positive) const { return coroots_[positive]; }
    // pi_i with (pi_i, alpha_j^v) = delta_ij, i over simple roots, in the span
    // of the roots.
    const std::vector<double>& fundamental_weight(int i) const { return weights_[i]; }

    BraidEntry braiding(int a, int b) const { return braid_[a * m_ + b]; }

private:
    void finish(std::vector<std::vector<int>> positive, std::vector<std::string> labels, std::vector<int> simple);

    RootType type_ = RootType::A;
    std::string name_;
    int dim_ = 0;
    int m_ = 0;
    std::vector<std::vector<int>> roots_;
    std::vector<std::string> labels_;
    std::vector<int> simple_;
    std::vector<std::vector<int>> reflect_;
    std::vector<std::vector<double>> coroots_;
    std::vector<std::vector<double>> weights_;
    std::vector<BraidEntry> braid_;
};

} // namespace efk::nichols
