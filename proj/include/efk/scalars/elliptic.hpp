#pragma once

#include "efk/scalars/complex.hpp"

namespace efk {

// Modulus and truncation of the Jacobi theta series used for every elliptic
// quantity in the engine. The lattice is always Z + Z*tau.
struct EllipticContext {
    Complex tau{0.0, 1.0};
    int series_truncation = 30; // theta summation range -N..N
    double tol = 1e-9;
    double pole_threshold = 1e-12; // relative to |theta1'(0)|

    // Throws ParamError unless Im tau >= 0.5 and N >= 1.
    void validate() const;
};

enum class Precision { standard, extended };

// Theta-series backed elliptic functions with theta1'(0) and theta1'''(0)
// precomputed. Immutable after construction.
class EllipticFunctions {
public:
    explicit EllipticFunctions(EllipticContext ctx, Precision precision = Precision::standard);

    const EllipticContext& context() const { return ctx_; }
    Precision precision() const { return precision_; }

    // d^m/dz^m theta1(z), m in 0..3.
    Complex theta1(Complex z, int derivative = 0) const;
    Complex theta1_prime0() const { return theta1p0_; }

    // theta1(z - lambda) theta1'(0) / (theta1(z) theta1(-lambda))
    Complex sigma(Complex z, Complex lambda) const;

    // Weierstrass p for the lattice Z + Z tau, via -(log theta1)'' + theta1'''(0)/(3 theta1'(0)).
    Complex wp(Complex z) const;

    // Distance from z to the nearest lattice point.
    double lattice_distance(Complex z) const;

private:
    EllipticContext ctx_;
    Precision precision_;
    Complex theta1p0_;
    Complex theta1ppp0_;
};

Complex theta1(Complex z, const EllipticContext& ctx);
Complex sigma_lambda(Complex z, Complex lambda, const EllipticContext& ctx);
Complex wp(Complex z, const EllipticContext& ctx);

} // namespace efk
