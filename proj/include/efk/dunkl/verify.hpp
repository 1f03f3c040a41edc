#pragma once

#include "efk/dunkl/elements.hpp"
#include "efk/freealg/membership.hpp"
#include "efk/oprep/operator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace efk::dunkl {

// One certified instance: ideal membership plus, when requested, the
// operator oracle in the truncated Dunkl representation.
struct Check {
    std::string identity;
    nlohmann::json params;
    std::string backend;
    std::string convention; // "x", "lambda" or "" when phi does not enter
    bool member = false;
    double max_residual = 0.0;
    int degree_bound = 0;
    nlohmann::json certificate;
    std::optional<oprep::IdentityReport> oracle;

    bool pass() const { return member && (!oracle || oracle->pass); }
    nlohmann::json to_json() const;
};

struct VerifyOptions {
    freealg::MembershipOptions membership;
    // Operator oracle for numeric family checks; 0 disables it.
    int oracle_bank_size = 0;
    double oracle_tol = 1e-8;
};

// Numeric membership; a failure is retried once on a reseeded plan with a
// doubled pole margin before it is reported.
Check check_numeric(const std::string& identity, nlohmann::json params, const NumericElem& target,
                    const freealg::RelationSet& rs, const VerifyOptions& opts);
Check check_exact(const std::string& identity, nlohmann::json params, const ExactElem& target,
                  const freealg::RelationSet& rs, const VerifyOptions& opts);

// Each builds the target for the relation set: exact when the set allows it,
// numeric otherwise.
Check commutator_check(int i, int j, const freealg::RelationSet& rs, const VerifyOptions& opts);
Check q_k_check(const std::vector<int>& idx, const freealg::RelationSet& rs, const VerifyOptions& opts);
Check p_k_check(const std::vector<int>& idx, int m, const freealg::RelationSet& rs, const VerifyOptions& opts);

// The printed k = 4 computation for m = 5 in rank 5, exact with symbolic
// p_im in place of the constants: the first line equals the left side, the
// second line agrees with it modulo the ideal, and the final line equals
// minus the right side word by word.
struct PrintedExampleReport {
    bool first_line_equals_lhs = false;
    Check second_line;
    bool final_line_matches = false;
    Check identity;
    bool pass() const { return first_line_equals_lhs && second_line.pass() && final_line_matches && identity.pass(); }
    nlohmann::json to_json() const;
};
PrintedExampleReport p4_printed_check(const VerifyOptions& opts);

// E_k(theta_i | i in I) against the Pieri right side. With conv unset both
// readings of phi are tried; `winners` names those that succeed.
struct PieriOutcome {
    std::vector<Check> checks;
    std::vector<std::string> winners; // conventions that passed; {"any"} when phi does not enter
    bool pass() const { return !winners.empty(); }
    nlohmann::json to_json() const;
};
bool phi_enters(int k, const std::vector<int>& I);
PieriOutcome verify_pieri(int n, int k, const std::vector<int>& I, const freealg::RelationSet& rs,
                          const VerifyOptions& opts, std::optional<PhiConvention> conv = std::nullopt);
PieriOutcome corollary_check(int n, int k, const freealg::RelationSet& rs, const VerifyOptions& opts,
                             std::optional<PhiConvention> conv = std::nullopt);

// Both readings of the printed E_3 example in rank 5.
std::vector<Check> e3_example_checks(const freealg::RelationSet& rs, const VerifyOptions& opts);

// E_k(I) along the sorted order and along a shuffled order: the difference
// lies in the ideal, and the scalar recursion with commuting values agrees.
Check insertion_order_check(int n, const std::vector<int>& I, int k, const freealg::RelationSet& rs,
                            std::uint64_t seed, const VerifyOptions& opts);

Check equivariant_pieri(int n, int k, const std::vector<int>& I, const VerifyOptions& opts);
// e_k(theta'_1..theta'_n) = e_k(x_1..x_n).
Check equivariant_full(int n, int k, const VerifyOptions& opts);
Check multiparam_pieri(int n, int k, const std::vector<int>& I, const freealg::RelationSet& rs,
                       const VerifyOptions& opts);

// The elliptic relation set with K = kappa delta^2, lambda_i = delta Lambda_i.
freealg::RelationSet elliptic_at_scale(int n, Complex kappa, const std::vector<Complex>& Lambda, double delta);

// Elliptic Pieri verification specialized toward the multiparameter limit:
// the coefficients of E_k(theta; c(delta)) at delta and delta/2, Richardson
// extrapolated, agree with those of E_k(theta; kappa / Lambda_ij^2) (relative
// per word, with a floor of 1e-8 of the largest coefficient); the
// elliptic instance at delta is a member under the x reading, and the exact
// multiparam instance is a member.
struct DegenerationReport {
    int n = 0, k = 0;
    std::vector<int> I;
    double delta = 0.0;
    double max_relative_error = 0.0;      // extrapolated coefficients against the limit
    double max_relative_error_raw = 0.0;  // coefficients at delta against the limit
    double tol = 1e-4;
    Check elliptic;
    Check multiparam;
    bool pass() const { return max_relative_error < tol && elliptic.pass() && multiparam.pass(); }
    nlohmann::json to_json() const;
};
DegenerationReport degeneration_coherence(int n, int k, const std::vector<int>& I, Complex kappa,
                                          const std::vector<Complex>& Lambda, double delta,
                                          const VerifyOptions& opts);

} // namespace efk::dunkl
