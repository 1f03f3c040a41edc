#include "efk/scalars/elliptic.hpp"

#include "efk/errors.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <string>

namespace efk {

namespace {

using ExtComplex = boost::multiprecision::cpp_complex_50;
using ExtReal = boost::multiprecision::cpp_bin_float_50;

template <class C>
C to_c(Complex z)
{
    return C(z.real(), z.imag());
}

template <class C>
Complex from_c(const C& z)
{
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// -sum_n (2 pi i h)^m exp(2 pi i ((z + 1/2) h + tau h^2 / 2)),  h = n + 1/2
template <class C, class R>
C theta_series(const C& z, const C& tau, int truncation, int derivative)
{
    using std::exp;
    const R pi_r = boost::math::constants::pi<R>();
    const C two_pi_i = C(R(0), R(2) * pi_r);
    const R half = R(1) / R(2);
    C sum = C(R(0), R(0));
    for (int n = -truncation; n <= truncation; ++n) {
        const R h = R(n) + half;
        const C phase = two_pi_i * ((z + C(half, R(0))) * h + tau * (h * h * half));
        C term = exp(phase);
        const C factor = two_pi_i * h;
        for (int k = 0; k < derivative; ++k)
            term *= factor;
        sum += term;
    }
    return -sum;
}

template <class C, class R>
C theta(Complex z, const EllipticContext& ctx, int derivative)
{
    return theta_series<C, R>(to_c<C>(z), to_c<C>(ctx.tau), ctx.series_truncation, derivative);
}

template <class C, class R>
Complex wp_impl(Complex z, const EllipticContext& ctx, double pole_threshold)
{
    const C t0 = theta<C, R>(z, ctx, 0);
    const C p0 = theta<C, R>(Complex{0.0, 0.0}, ctx, 1);
    if (std::abs(from_c<C>(t0)) < pole_threshold * std::abs(from_c<C>(p0)))
        throw PoleError("wp: argument on the period lattice");
    const C t1 = theta<C, R>(z, ctx, 1);
    const C t2 = theta<C, R>(z, ctx, 2);
    const C p3 = theta<C, R>(Complex{0.0, 0.0}, ctx, 3);
    const C log_second = (t2 * t0 - t1 * t1) / (t0 * t0);
    return from_c<C>(-log_second + p3 / (C(R(3), R(0)) * p0));
}

template <class C, class R>
Complex sigma_impl(Complex z, Complex lambda, const EllipticContext& ctx, double pole_threshold)
{
    const C tz = theta<C, R>(z, ctx, 0);
    const C tl = theta<C, R>(-lambda, ctx, 0);
    const C p0 = theta<C, R>(Complex{0.0, 0.0}, ctx, 1);
    const double scale = pole_threshold * std::abs(from_c<C>(p0));
    if (std::abs(from_c<C>(tz)) < scale)
        throw PoleError("sigma_lambda: z on the period lattice");
    if (std::abs(from_c<C>(tl)) < scale)
        throw PoleError("sigma_lambda: lambda on the period lattice");
    const C num = theta<C, R>(z - lambda, ctx, 0);
    return from_c<C>(num * p0 / (tz * tl));
}

} // namespace

void EllipticContext::validate() const
{
    if (!(tau.imag() >= 0.5))
        throw ParamError("EllipticContext: Im tau must be >= 0.5, got " + std::to_string(tau.imag()));
    if (series_truncation < 1)
        throw ParamError("EllipticContext: series_truncation must be >= 1");
    if (!(tol > 0.0))
        throw ParamError("EllipticContext: tol must be positive");
}

EllipticFunctions::EllipticFunctions(EllipticContext ctx, Precision precision)
    : ctx_(ctx), precision_(precision)
{
    ctx_.validate();
    theta1p0_ = theta1(Complex{0.0, 0.0}, 1);
    theta1ppp0_ = theta1(Complex{0.0, 0.0}, 3);
}

Complex EllipticFunctions::theta1(Complex z, int derivative) const
{
    if (precision_ == Precision::extended)
        return from_c<ExtComplex>(theta<ExtComplex, ExtReal>(z, ctx_, derivative));
    return theta<Complex, double>(z, ctx_, derivative);
}

Complex EllipticFunctions::sigma(Complex z, Complex lambda) const
{
    if (precision_ == Precision::extended)
        return sigma_impl<ExtComplex, ExtReal>(z, lambda, ctx_, ctx_.pole_threshold);
    const Complex tz = theta1(z);
    const Complex tl = theta1(-lambda);
    const double scale = ctx_.pole_threshold * std::abs(theta1p0_);
    if (std::abs(tz) < scale)
        throw PoleError("sigma_lambda: z on the period lattice");
    if (std::abs(tl) < scale)
        throw PoleError("sigma_lambda: lambda on the period lattice");
    return theta1(z - lambda) * theta1p0_ / (tz * tl);
}

Complex EllipticFunctions::wp(Complex z) const
{
    if (precision_ == Precision::extended)
        return wp_impl<ExtComplex, ExtReal>(z, ctx_, ctx_.pole_threshold);
    const Complex t0 = theta1(z);
    if (std::abs(t0) < ctx_.pole_threshold * std::abs(theta1p0_))
        throw PoleError("wp: argument on the period lattice");
    const Complex t1 = theta1(z, 1);
    const Complex t2 = theta1(z, 2);
    return -(t2 * t0 - t1 * t1) / (t0 * t0) + theta1ppp0_ / (3.0 * theta1p0_);
}

double EllipticFunctions::lattice_distance(Complex z) const
{
    const double m = std::round(z.imag() / ctx_.tau.imag());
    double best = std::abs(z);
    for (double dm = m - 1; dm <= m + 1; dm += 1.0) {
        const Complex shifted = z - dm * ctx_.tau;
        const double k = std::round(shifted.real());
        for (double dk = k - 1; dk <= k + 1; dk += 1.0)
            best = std::min(best, std::abs(shifted - dk));
    }
    return best;
}

Complex theta1(Complex z, const EllipticContext& ctx)
{
    ctx.validate();
    return theta<Complex, double>(z, ctx, 0);
}

Complex sigma_lambda(Complex z, Complex lambda, const EllipticContext& ctx)
{
    return EllipticFunctions(ctx).sigma(z, lambda);
}

Complex wp(Complex z, const EllipticContext& ctx) { return EllipticFunctions(ctx).wp(z); }

} // namespace efk
