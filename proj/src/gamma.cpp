#include "nnls/gamma.hpp"

#include <cmath>

namespace nnls {

namespace {
const double lanczos_g = 7.0;
const double lanczos_c[9] = {0.99999999999980993,
                             676.5203681218851,
                             -1259.1392167224028,
                             771.32342877765313,
                             -176.61502916214059,
                             12.507343278686905,
                             -0.13857109526572012,
                             9.9843695780195716e-6,
                             1.5056327351493116e-7};
}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(PI) - std::log(std::sin(PI * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  cplx a = lanczos_c[0];
  for (int i = 1; i < 9; ++i) a += lanczos_c[i] / (z + static_cast<double>(i));
  const cplx t = z + lanczos_g + 0.5;
  return 0.5 * std::log(2.0 * PI) + (z + 0.5) * std::log(t) - t + std::log(a);
}

cplx gamma_fn(cplx z) { return std::exp(log_gamma(z)); }

}  // namespace nnls
