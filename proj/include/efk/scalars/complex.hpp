#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace efk {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;
using PointView = std::span<const Complex>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

// Comparison scale: relative when the reference magnitude exceeds one,
// absolute otherwise.
inline double compare_scale(double magnitude) { return std::max(1.0, magnitude); }

inline double scaled_diff(Complex a, Complex b)
{
    return std::abs(a - b) / compare_scale(std::max(std::abs(a), std::abs(b)));
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace efk
