#pragma once

#include <cmath>

#include "nnls/types.hpp"

namespace nnls {

// Background of the shifted oscillatory step: 0 for x <= R, A e^{2iBx} for
// x > R.
struct StepParams {
  double A = 1.0;  // amplitude, > 0 (0 allowed only for the zero datum)
  double B = 0.0;  // background wavenumber
  double R = 0.0;  // shift, >= 0

  void validate(bool allow_zero_amplitude = false) const {
    if (!(A > 0.0) && !(allow_zero_amplitude && A == 0.0))
      throw ValidationError("StepParams: amplitude A must be positive");
    if (!(R >= 0.0)) throw ValidationError("StepParams: shift R must be >= 0");
    if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(R))
      throw ValidationError("StepParams: non-finite parameter");
  }

  // hypothesis of the winding/classification propositions
  void validate_winding_regime() const {
    validate();
    const double p = 4.0 * std::abs(B) * R;
    if (!(p > 0.0 && p < PI))
      throw ValidationError("StepParams: winding analysis requires 0 < 4|B|R < pi");
  }

  cplx right_tail(double x) const { return A * std::exp(cplx{0.0, 2.0 * B * x}); }
};

}  // namespace nnls
