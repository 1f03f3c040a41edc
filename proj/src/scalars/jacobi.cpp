#include "efk/scalars/jacobi.hpp"

#include "efk/errors.hpp"

#include <vector>

namespace efk {

Complex jacobi_sn(Complex u, Complex modulus)
{
    constexpr double floor_modulus = 1e-12;
    constexpr int max_steps = 64;

    if (!is_finite(modulus) || !is_finite(u))
        throw ConvergenceError("jacobi_sn: non-finite argument or modulus");
    if (std::abs(modulus * modulus - 1.0) < 1e-15)
        return std::tanh(u);

    std::vector<Complex> chain;
    Complex k = modulus;
    while (std::abs(k) >= floor_modulus) {
        if (static_cast<int>(chain.size()) >= max_steps)
            throw ConvergenceError("jacobi_sn: Landen descent did not converge");
        const Complex kp = std::sqrt(1.0 - k * k);
        const Complex next = (1.0 - kp) / (1.0 + kp);
        if (!(std::abs(next) < std::abs(k)) || !is_finite(next))
            throw ConvergenceError("jacobi_sn: modulus does not contract under Landen descent");
        chain.push_back(next);
        k = next;
    }

    Complex v = u;
    for (const Complex& k1 : chain)
        v /= 1.0 + k1;
    Complex sn = std::sin(v);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        const Complex k1 = *it;
        sn = (1.0 + k1) * sn / (1.0 + k1 * sn * sn);
    }
    return sn;
}

} // namespace efk
