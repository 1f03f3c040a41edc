#include "efk/scalars/psi.hpp"

#include "efk/errors.hpp"

namespace efk {

std::string to_string(PsiKind kind)
{
    switch (kind) {
    case PsiKind::elliptic:
        return "elliptic";
    case PsiKind::trig:
        return "trig";
    case PsiKind::rational:
        return "rational";
    }
    return "unknown";
}

PsiKind psi_kind_from_string(const std::string& s)
{
    if (s == "elliptic")
        return PsiKind::elliptic;
    if (s == "trig" || s == "trigonometric")
        return PsiKind::trig;
    if (s == "rational")
        return PsiKind::rational;
    throw ConfigError("unknown psi family: " + s);
}

PsiFamily::PsiFamily(PsiKind kind, ParamSet params, EllipticContext ctx, Precision precision)
    : kind_(kind), params_(std::move(params)), ctx_(ctx)
{
    params_.validate();
    const int n = params_.rank();
    if (kind_ == PsiKind::elliptic) {
        elliptic_ = std::make_shared<const EllipticFunctions>(ctx_, precision);
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (elliptic_->lattice_distance(params_.lambda_diff(i, j)) < 1e-8)
                    throw ParamError("elliptic family: lambda_i - lambda_j lies on the period lattice");
    }
    else if (kind_ == PsiKind::trig) {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (std::abs(std::sin(params_.b * params_.lambda_diff(i, j))) < 1e-12)
                    throw ParamError("trig family: sin(b lambda_ij) vanishes");
    }
}

Complex PsiFamily::h(Complex z) const
{
    const Complex K = params_.K();
    switch (kind_) {
    case PsiKind::elliptic:
        return -K * elliptic_->wp(params_.b * z);
    case PsiKind::trig: {
        const Complex s = std::sin(params_.b * z);
        if (std::abs(s) < ctx_.pole_threshold)
            throw PoleError("trig family: sin(b z) vanishes");
        return -K / (s * s);
    }
    case PsiKind::rational:
        if (std::abs(z) < ctx_.pole_threshold)
            throw PoleError("rational family: pole at z = 0");
        return -K / (z * z);
    }
    return {};
}

Complex PsiFamily::c(int i, int j) const
{
    const Complex K = params_.K();
    const Complex l = params_.lambda_diff(i, j);
    switch (kind_) {
    case PsiKind::elliptic:
        return K * elliptic_->wp(l);
    case PsiKind::trig: {
        const Complex s = std::sin(params_.b * l);
        return K / (s * s);
    }
    case PsiKind::rational:
        return K / (l * l);
    }
    return {};
}

Complex PsiFamily::psi(int i, int j, Complex z) const
{
    if (std::abs(z) < ctx_.pole_threshold)
        throw PoleError("psi: pole at z = 0");
    return params_.A() / (z * z) + bracket_square(i, j, z);
}

Complex PsiFamily::g(int i, int j, Complex z) const
{
    const Complex k = params_.k_const;
    const Complex l = params_.lambda_diff(i, j);
    const Complex tilt = std::exp(params_.alpha_diff(i, j) * z);
    switch (kind_) {
    case PsiKind::elliptic:
        return k * elliptic_->sigma(params_.b * z, l) * tilt;
    case PsiKind::trig: {
        const Complex b = params_.b;
        const Complex s = std::sin(b * z);
        if (std::abs(s) < ctx_.pole_threshold)
            throw PoleError("trig family: sin(b z) vanishes");
        return k * std::sin(b * (z - l)) / (s * std::sin(b * l)) * tilt;
    }
    case PsiKind::rational:
        if (std::abs(z) < ctx_.pole_threshold)
            throw PoleError("rational family: pole at z = 0");
        return k * (1.0 / z - 1.0 / l) * tilt;
    }
    return {};
}

Complex PsiFamily::rational_part(Complex z) const
{
    if (std::abs(z) < ctx_.pole_threshold)
        throw PoleError("rational part: pole at z = 0");
    return params_.a / z;
}

double PsiFamily::pole_distance(Complex z) const
{
    switch (kind_) {
    case PsiKind::elliptic:
        return elliptic_->lattice_distance(params_.b * z);
    case PsiKind::trig: {
        // zeros of sin(b z) are b z in pi Z
        const Complex w = params_.b * z / pi;
        return std::abs(w - std::round(w.real())) * pi;
    }
    case PsiKind::rational:
        return std::abs(z);
    }
    return 0.0;
}

std::function<Complex(Complex)> psi_family(PsiKind kind, const ParamSet& params, int i, int j,
                                           const EllipticContext& ctx)
{
    auto family = std::make_shared<const PsiFamily>(kind, params, ctx);
    return [family, i, j](Complex z) { return family->psi(i, j, z); };
}

} // namespace efk
