#pragma once

#include "efk/freealg/alg_elem.hpp"
#include "efk/nichols/symmetrizer.hpp"
#include "efk/oprep/families.hpp"

#include <string>
#include <vector>

namespace efk::oprep {

// Formal sum of words in the root symbols [alpha]; letters are root indices.
struct RootExpr {
    std::vector<std::pair<Complex, std::vector<int>>> terms;

    RootExpr& add(Complex c, std::vector<int> word);
    std::string to_string(const RootSystemData& rs) const;
};

RootExpr root_expr_from_tensor(const nichols::BraidedTensor& t);

// expr with [ij] -> D_ij (type A family), each word composed into a group
// algebra operator and applied to every bank function at every sample point;
// the residual is relative to the summed magnitudes of the word terms.
IdentityReport verify_operator_identity(const std::string& name, const freealg::NumericElem& expr,
                                        const OperatorFamily& fam, const TestFunctionBank& bank,
                                        const SamplePlan& plan, double tol);
// Same for a word expression over any root system, evaluated word by word.
IdentityReport verify_root_identity(const std::string& name, const RootExpr& expr, const OperatorFamily& fam,
                                    const TestFunctionBank& bank, const SamplePlan& plan, double tol);
// op applied to the bank vanishes.
IdentityReport verify_vanishes(const std::string& name, const GroupAlgebraOperator& op, const OperatorFamily& fam,
                               const TestFunctionBank& bank, const SamplePlan& plan, double tol);

// compose(a, b) f against a(b(f)).
IdentityReport composition_check(const GroupAlgebraOperator& a, const GroupAlgebraOperator& b,
                                 const OperatorFamily& fam, const TestFunctionBank& bank, const SamplePlan& plan,
                                 double tol);

// D_alpha^2 against multiplication by psi(alpha, xi) for cm families, and
// against 0 otherwise.
IdentityReport square_check(const OperatorFamily& fam, int root, const TestFunctionBank& bank,
                            const SamplePlan& plan, double tol);

// Scalar functional equations 1..7 in the coefficients f, g of a family.
// Equations 1, 2 need a type A family of rank >= 3 (indices 1, 2, 3);
// 3, 4 a B2 family; 5, 6, 7 the B2 bfv family. With perturbed set, a
// structural ingredient is shifted by 0.1 so that the equation must fail.
IdentityReport functional_equation(int eq, const OperatorFamily& fam, const SamplePlan& plan, double tol,
                                   bool perturbed = false);
// Every equation that applies to the family.
std::vector<int> applicable_equations(const OperatorFamily& fam);
std::vector<IdentityReport> functional_equation_suite(const OperatorFamily& fam, const SamplePlan& plan, double tol,
                                                      bool perturbed = false);

// D_alpha = k e o d_alpha o e^{-1} for every positive root, with
// e = exp((mu, xi)) for sign -1 and e_+ = prod_{beta > 0} (beta, xi) e for
// sign +1, where mu = sum lambda_i pi_i.
IdentityReport conjugation_check(const RootSystemData& rs, int sign, const std::vector<Complex>& lambda_simple,
                                 Complex k, const TestFunctionBank& bank, const SamplePlan& plan, double tol);

// G2 six-term quadratic relation for the rational-exponential operators with
// lambda on the non-simple roots taken from the constraint list; violation is
// added to lambda_{a1+a2}.
IdentityReport g2_constraint_check(Complex lambda1, Complex lambda2, const TestFunctionBank& bank,
                                   const SamplePlan& plan, double tol, double violation = 0.0, int sign = -1);
RootExpr g2_quadratic_relation();
// lambda per positive root of G2 from the constraint list.
std::vector<Complex> g2_constrained_lambda(Complex lambda1, Complex lambda2);

// nabla_i = sum_{j != i} D_ij for a type A family.
GroupAlgebraOperator truncated_dunkl(const OperatorFamily& fam, int i);

// Exact action of a tensor of root words by divided differences.
Polynomial apply_tensor_exact(const RootSystemData& rs, const nichols::BraidedTensor& t, const Polynomial& p);

} // namespace efk::oprep
