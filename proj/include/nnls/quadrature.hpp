#pragma once

#include <functional>
#include <limits>

#include "nnls/types.hpp"

namespace nnls {

using RealFn = std::function<cplx(double)>;

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 48;
};

// Adaptive Gauss7-Kronrod15 on [a, b].
cplx integrate(const RealFn& f, double a, double b, const QuadOptions& opt = {});

// \int_{-inf}^{b} f(z) dz via z = b - tan(u). f must decay faster than 1/z^2.
cplx integrate_left_tail(const RealFn& f, double b, const QuadOptions& opt = {});

// \int_{a}^{+inf} f(z) dz via z = a + tan(u).
cplx integrate_right_tail(const RealFn& f, double a, const QuadOptions& opt = {});

// Convenience: a may be -inf and/or b may be +inf.
cplx integrate_any(const RealFn& f, double a, double b, const QuadOptions& opt = {});

// PV \int_a^b g(z)/(z-s) dz with s strictly inside (a,b); g smooth at s.
// Symmetric excision around s plus the subtracted regular integrand
// (g(z)-g(s))/(z-s) on the excised window. a = -inf / b = +inf allowed.
cplx pv_cauchy(const RealFn& g, double a, double b, double s,
               const QuadOptions& opt = {});

}  // namespace nnls
