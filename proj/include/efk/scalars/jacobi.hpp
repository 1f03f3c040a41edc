#pragma once

#include "efk/scalars/complex.hpp"

namespace efk {

// Jacobi elliptic sine sn(u, k) by descending Landen transformation. The
// modulus is iterated down below 1e-12 and finished with sin. k^2 = 1 gives
// tanh. Throws ConvergenceError when the modulus does not contract (for
// example real k > 1).
Complex jacobi_sn(Complex u, Complex modulus);

} // namespace efk
