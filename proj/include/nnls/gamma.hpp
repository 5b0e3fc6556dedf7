#pragma once

#include "nnls/types.hpp"

namespace nnls {

// log Gamma(z) by the Lanczos approximation (g = 7, 9 terms) with the
// reflection identity for Re z < 1/2. Relative accuracy ~1e-13 on the strip
// |Im z| <= 5 used by the asymptotic amplitudes.
cplx log_gamma(cplx z);
cplx gamma_fn(cplx z);

}  // namespace nnls
