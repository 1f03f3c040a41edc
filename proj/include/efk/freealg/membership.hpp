#pragma once

#include "efk/freealg/alg_elem.hpp"
#include "efk/freealg/relations.hpp"
#include "efk/scalars/sample_plan.hpp"

#include <cstdint>
#include <vector>

namespace efk::freealg {

struct MembershipCertificate {
    bool member = false;
    std::string backend;              // numeric | exact
    int degree_bound = 0;
    double tol = 0.0;
    std::vector<double> residuals;    // per sample point, or per substitution
    double max_residual = 0.0;
    SamplePlan plan;
    int substitutions = 0;
    int blocks = 0;                   // grade blocks examined
    long columns = 0;                 // ideal spanning elements built
    long normal_words = 0;            // quotient coordinates

    nlohmann::json to_json() const;
};

struct MembershipOptions {
    int degree_bound = -1;            // -1: the target degree
    double tol = 1e-8;
    SamplePlan plan;                  // numeric backend
    int max_resamples = 5;
    std::uint64_t seed = 1;           // exact backend parameter substitution
    int substitutions = 3;
    long max_block_words = 400000;    // per-block size budget
};

// Numeric backend: per sample point, the target reduced modulo the
// constant relations must lie in the span of the reduced square relations
// u ([ij]^2 - h - c) v, |u| + 2 + |v| <= degree_bound. Residual
// ||r|| / max(1, ||target||) per point, member iff all < tol.
MembershipCertificate is_zero_mod_ideal(const NumericElem& target, const RelationSet& rs,
                                        const MembershipOptions& opts = {});

// Exact backend (psi_zero or multiparam): every relation has constant
// coefficients, p_ij replaced by random rationals with 16-bit numerators at
// opts.substitutions independent draws; member iff the exact normal form of
// the target vanishes at every draw.
MembershipCertificate is_zero_mod_ideal(const ExactElem& target, const RelationSet& rs,
                                        const MembershipOptions& opts = {});

} // namespace efk::freealg
