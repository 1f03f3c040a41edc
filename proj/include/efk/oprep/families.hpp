#pragma once

#include "efk/nichols/root_system.hpp"
#include "efk/oprep/operator.hpp"
#include "efk/scalars/psi.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace efk::oprep {

using nichols::RootSystemData;

enum class FamilyKind { divided_difference, bfv_rational_exp, cm_elliptic, cm_trig, cm_rational, b2_sn };

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& s);

// D_alpha = f((alpha, xi)) + g((alpha, xi)) s_alpha for a positive root.
struct RootOperator {
    int root = 0;
    std::vector<double> alpha;
    LinearAction reflection;
    std::function<Complex(Complex)> f;
    std::function<Complex(Complex)> g;
    // Identically vanishing coefficients, dropped from group operators.
    bool f_zero = false;
    bool g_zero = false;
};

// The operators D_alpha of a family over a root system. Root indices follow
// RootSystemData; for a negative root D_{-alpha} = -D_alpha, realized through
// f_{-a}(z) = -f_a(-z) and g_{-a}(z) = -g_a(-z).
class OperatorFamily {
public:
    OperatorFamily(FamilyKind kind, RootSystemData roots, std::vector<RootOperator> ops, nlohmann::json params);

    FamilyKind kind() const { return kind_; }
    std::string name() const { return to_string(kind_); }
    const RootSystemData& roots() const { return roots_; }
    int dim() const { return roots_.dim(); }
    const nlohmann::json& params() const { return params_; }
    const RootOperator& op(int positive) const { return ops_.at(positive); }

    // Coefficients for any root index.
    Complex f(int root, Complex z) const;
    Complex g(int root, Complex z) const;
    Complex pairing(int root, PointView xi) const;

    // D_root as a group algebra element.
    GroupAlgebraOperator group_operator(int root) const;
    // Type A shorthand: D_ij, 1-based, i != j.
    int pair_root(int i, int j) const;

    // D_{w_1} ... D_{w_l} f at xi by recursion on the leftmost letter; also
    // returns the sum of the absolute values of the 2^l terms.
    std::pair<Complex, double> apply_word(const std::vector<int>& word, const std::function<Complex(PointView)>& f,
                                          PointView xi) const;

    // Keeps sample points away from the poles of every f_alpha, g_alpha.
    bool accepts(PointView xi, double margin) const;
    double pole_distance(Complex z) const { return pole_distance_(z); }
    void set_pole_distance(std::function<double(Complex)> d) { pole_distance_ = std::move(d); }

    // Same family with every f_alpha replaced by 0.
    OperatorFamily reflection_part() const;

    // The psi family behind cm_* operators, else null.
    std::shared_ptr<const PsiFamily> psi() const { return psi_; }
    void set_psi(std::shared_ptr<const PsiFamily> p) { psi_ = std::move(p); }

private:
    FamilyKind kind_;
    RootSystemData roots_;
    std::vector<RootOperator> ops_;
    nlohmann::json params_;
    std::function<double(Complex)> pole_distance_;
    std::shared_ptr<const PsiFamily> psi_;
};

// lambda(alpha^v) for every positive root, from the values on simple coroots.
std::vector<Complex> lambda_on_roots(const RootSystemData& rs, const std::vector<Complex>& lambda_simple);
// mu = sum_i lambda_i pi_i, so that (mu, alpha^v) = lambda(alpha^v).
std::vector<Complex> lambda_weight(const RootSystemData& rs, const std::vector<Complex>& lambda_simple);

// f = 1/z, g = -1/z: the divided differences.
OperatorFamily divided_difference_family(const RootSystemData& rs);

struct BfvParams {
    Complex k_long{1.0, 0.0};
    Complex k_short{1.0, 0.0};
    std::vector<Complex> lambda_simple; // empty means lambda = 0
    int sign = -1;                      // g = sign * k e^{lambda z} / z
    std::vector<Complex> lambda_root;   // optional explicit value per positive root
};
// f = k_alpha / z, g = sign k_alpha e^{lambda_alpha z} / z.
OperatorFamily bfv_family(const RootSystemData& rs, const BfvParams& p);

// Type A_{n-1} operators D_ij = a / x_ij + g_ij(x_ij) s_ij from a psi family.
OperatorFamily cm_family(const PsiFamily& psi);

enum class SnEpsilon { half, displayed };

struct SnParams {
    Complex A{1.0, 0.0};
    Complex B{1.0, 0.0};
    Complex a{0.8, 0.1};
    Complex modulus{0.3, 0.1};
    int g_sign = 1;
    std::vector<Complex> lambda_simple; // empty means lambda = 0
    // half: eps = (1+k)/(2i), which satisfies the functional equations;
    // displayed: eps = (1+k)/i, kept for comparison.
    SnEpsilon epsilon = SnEpsilon::half;
    double epsilon_shift = 0.0; // added to eps, for sensitivity checks
};
Complex sn_epsilon(const SnParams& p);
// B2: f_1 = f_2 = A/sn(ax, k), f_12 = f_1bar2 = B/sn(eps a x, (1-k)/(1+k)),
// g_alpha = sign e^{lambda(alpha^v) x} f_alpha.
OperatorFamily b2_sn_family(const SnParams& p);

// Exact divided difference (p - s_alpha p) / (alpha, x) over the rationals.
Polynomial reflect_polynomial(const RootSystemData& rs, int root, const Polynomial& p);
Polynomial divided_difference(const RootSystemData& rs, int root, const Polynomial& p);
// d_{w_1} ... d_{w_l} p.
Polynomial divided_difference_word(const RootSystemData& rs, const std::vector<int>& word, const Polynomial& p);

} // namespace efk::oprep
