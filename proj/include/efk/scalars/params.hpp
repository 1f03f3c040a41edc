#pragma once

#include "efk/scalars/complex.hpp"
#include "efk/scalars/elliptic.hpp"

#include "json.hpp"

namespace efk {

// Parameters shared by the deformation families. The squared constants A and
// K are derived from a and k_const, so A = a^2 and K = k_const^2 always hold.
// Spectral parameters, exponential tilts and degeneration offsets are stored
// per index; pair quantities are differences lambda_i - lambda_j.
struct ParamSet {
    Complex a{0.0, 0.0};
    Complex k_const{1.0, 0.0};
    Complex b{1.0, 0.0};
    std::vector<Complex> lambda;
    std::vector<Complex> exp_alpha;
    std::vector<Complex> Lambda;
    Complex kappa{1.0, 0.0};
    Complex delta{1.0, 0.0};

    Complex A() const { return a * a; }
    Complex K() const { return k_const * k_const; }
    int rank() const { return static_cast<int>(lambda.size()); }

    // 1-based pair differences.
    Complex lambda_diff(int i, int j) const { return lambda.at(i - 1) - lambda.at(j - 1); }
    Complex alpha_diff(int i, int j) const;
    Complex Lambda_diff(int i, int j) const { return Lambda.at(i - 1) - Lambda.at(j - 1); }

    // Throws ParamError on coincident spectral parameters or mismatched lengths.
    void validate() const;

    // Deterministic generic parameters for rank n: spread-out spectral
    // parameters, small tilts, a = 0.3, k_const = 1.
    static ParamSet generic(int n);
};

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ParamSet& p);
ParamSet param_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EllipticContext& ctx);
EllipticContext elliptic_context_from_json(const nlohmann::json& j);

} // namespace efk
