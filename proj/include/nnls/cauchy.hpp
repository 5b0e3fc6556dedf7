#pragma once

#include <memory>
#include <optional>

#include "nnls/arg_tracker.hpp"
#include "nnls/quadrature.hpp"
#include "nnls/scattering.hpp"

namespace nnls {

// Branch-tracked logarithm of jump data g along a left cut (-inf, cut_end].
// For the pole-corrected variant, g(z) = (z + kt)/(z - P) * w(z) is regular
// and nonzero at P; its log splits as log|(z+kt)/(z-P)| + i arg_pc plus the
// tracked log of w, whose -pi zero-crossing convention at P cancels the +pi
// jump of arg_pc, keeping the sum continuous.
class CutLog {
 public:
  // plain data: g = w = 1/(a1 a2)
  CutLog(const ScatteringData& sd, double cut_end);
  // pole-corrected data: g = (z + kt)/(z - P) w(z)
  CutLog(const ScatteringData& sd, double cut_end, double pole, cplx kt);

  cplx g(double z) const;
  cplx L(double z) const;       // branch-tracked log g(z)
  cplx Lprime(double z) const;  // g'/g via central differences of g
  double cut_end() const { return cut_end_; }
  cplx L_end() const { return L(cut_end_); }

 private:
  std::shared_ptr<const ScatteringData> sd_;
  double cut_end_;
  bool has_pole_ = false;
  double pole_ = 0.0;
  cplx kt_{};
  std::shared_ptr<ArgTracker> w_tracker_;
  cplx log_pc(double z) const;  // continued log of (z+kt)/(z-P)
  cplx w_part(double z) const;
};

struct NuValue {
  double re = 0.0;
  double im = 0.0;
  int m = 0;  // nearest integer to im (shifted-winding sector index)
  cplx as_complex() const { return {re, im}; }
};

// nu(-xi) from the cut data on (-inf, -xi): the direct modulus logarithm
// and the cumulative argument (with the zero-crossing convention at -|B|
// inside the middle sectors). Refuses transition rays.
NuValue compute_nu(const ScatteringData& sd, double xi,
                   const QuadOptions& qopt = {});

// exp of the Cauchy integral of log(1 + r1 r2) over (-inf, -xi):
//   delta(k, xi), analytic off the cut, -> 1 at infinity,
//   delta_+/delta_- = 1 + r1 r2 on the cut.
// Boundary values go through the integration-by-parts (log-kernel) form.
class CauchyDelta {
 public:
  CauchyDelta(const ScatteringData& sd, double xi, QuadOptions qopt = {});

  double xi() const { return xi_; }
  const NuValue& nu() const { return nu_; }

  cplx log_value(cplx k) const;  // k off (-inf, -xi]
  cplx value(cplx k) const { return std::exp(log_value(k)); }
  // boundary values on the cut (s < -xi), sign = +1 (from C+) or -1
  cplx boundary(double s, int sign) const;
  // regular part chi with the principal branches (the C+ convention);
  // delta = (k + xi)^{i nu} e^{chi} for k in C+
  cplx chi(cplx k) const;
  // chi at the stationary point k = -xi (real log kernel on the cut)
  cplx chi_at_endpoint() const;

 private:
  double xi_;
  NuValue nu_;
  QuadOptions qopt_;
  std::shared_ptr<const CutLog> cut_;
  cplx log_kernel_T(double s, bool include_right) const;
};

// Pole-corrected hat-delta built from delta1 (jump (z+kt)/(z-P)(1+r1 r2) on
// (-inf,-xi)) and delta2 (jump (z+kt)/(z-P) on (-xi, inf)):
//   hat(k) = (k-P)/(k+kt) d1 d2 in C+,  d1 d2 in C-.
// The value does not depend on kt; jump = 1 + r1 r2 on (-inf,-xi) \ {P};
// simple zero at k = P from above.
class CauchyHatDelta {
 public:
  CauchyHatDelta(const ScatteringData& sd, double xi, double pole,
                 std::optional<cplx> ktilde0 = std::nullopt,
                 QuadOptions qopt = {});

  double xi() const { return xi_; }
  double pole() const { return pole_; }
  cplx ktilde0() const { return kt_; }
  const NuValue& nu() const { return nu_; }

  // off the jump contour; real k > -xi evaluates the continuous extension
  cplx value(cplx k) const;
  // boundary values on the jump contour (s < -xi, s != P)
  cplx boundary(double s, int sign) const;
  // chi1 + chi2 at the stationary point k = -xi (C+ branch), entering the
  // Zakharov-Manakov amplitude of the middle sector
  cplx chi12_at_endpoint() const;

  cplx log_d1(cplx k) const;  // Cauchy integral over (-inf, -xi)
  cplx log_d2(cplx k) const;  // Cauchy integral over (-xi, +inf)

 private:
  double xi_;
  double pole_;
  cplx kt_;
  NuValue nu_;
  QuadOptions qopt_;
  std::shared_ptr<const ScatteringData> sd_;
  std::shared_ptr<const CutLog> L1_;
  cplx L2(double z) const;        // log((z+kt)/(z-P)) on (-xi, inf)
  cplx L2prime(double z) const;   // 1/(z+kt) - 1/(z-P)
  cplx d2_lower_boundary(double s) const;  // log-kernel route
  cplx log_kernel_T1(double s, bool include_right) const;
  cplx log_kernel_T2(double s) const;
};

// The identity a2(B) = hat-delta_-(B, xi) conj(hat-delta)(-B, -xi) for
// B < 0, 0 <= |xi| < -B, evaluated by the principal-value route (the
// independent check against the log-kernel boundary machinery).
// Returns |a2(B) - product|.
double verify_a2_identity(const ScatteringData& sd, double xi, double B,
                          std::optional<cplx> ktilde0 = std::nullopt,
                          const QuadOptions& qopt = {});

// free-function forms of the module operations
cplx compute_delta(const ScatteringData& sd, double xi, cplx k);
cplx compute_hat_delta(const ScatteringData& sd, double xi, double pole,
                       cplx ktilde0, cplx k);

}  // namespace nnls
