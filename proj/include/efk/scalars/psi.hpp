#pragma once

#include "efk/scalars/elliptic.hpp"
#include "efk/scalars/params.hpp"

#include <functional>
#include <memory>
#include <string>

namespace efk {

enum class PsiKind { elliptic, trig, rational };

std::string to_string(PsiKind kind);
PsiKind psi_kind_from_string(const std::string& s);

// The three Calogero-Moser deformation families. For a pair (i, j) the
// square of the reflection part of D_ij is split as
//   psi_ij(z) - A/z^2 = h(z) + c_ij
// with h depending only on z and c_ij a constant:
//   elliptic  h = -K wp(b z),        c = K wp(lambda_ij)
//   trig      h = -K csc^2(b z),     c = K csc^2(b lambda_ij)
//   rational  h = -K / z^2,          c = K / lambda_ij^2
// The reflection coefficient g_ij satisfies g_ij(z) g_ij(-z) = h(z) + c_ij.
class PsiFamily {
public:
    PsiFamily(PsiKind kind, ParamSet params, EllipticContext ctx = {},
              Precision precision = Precision::standard);

    PsiKind kind() const { return kind_; }
    const ParamSet& params() const { return params_; }
    const EllipticContext& context() const { return ctx_; }
    int rank() const { return params_.rank(); }

    // Full psi_ij(z). Indices are 1-based.
    Complex psi(int i, int j, Complex z) const;
    // psi_ij(z) - A/z^2, the value of [ij]^2.
    Complex bracket_square(int i, int j, Complex z) const { return h(z) + c(i, j); }
    Complex h(Complex z) const;
    Complex c(int i, int j) const;
    // Reflection coefficient of D_ij at z = x_i - x_j.
    Complex g(int i, int j, Complex z) const;
    // Rational part a/z of D_ij.
    Complex rational_part(Complex z) const;

    // Distance of z from the nearest pole of h (lattice, csc zeros, origin).
    double pole_distance(Complex z) const;

    const EllipticFunctions* elliptic() const { return elliptic_.get(); }

private:
    PsiKind kind_;
    ParamSet params_;
    EllipticContext ctx_;
    std::shared_ptr<const EllipticFunctions> elliptic_;
};

// psi_ij as a callable of z.
std::function<Complex(Complex)> psi_family(PsiKind kind, const ParamSet& params, int i, int j,
                                           const EllipticContext& ctx = {});

} // namespace efk
