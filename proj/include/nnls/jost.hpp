#pragma once

#include "nnls/initial_datum.hpp"
#include "nnls/types.hpp"

namespace nnls {

enum class Side {
  left,   // Psi1: normalized at x -> -inf
  right   // Psi2: normalized at x -> +inf
};

struct JostMatrix {
  Mat2 m;
  Side side;  // identifies the columns: left => (Psi1^(1), Psi1^(2))
  cplx k;
  double x = 0.0;
};

struct JostOptions {
  double step_cap = 0.05;  // step <= step_cap / (1 + |k|)
  int refine = 4;          // extra subdivision below the cap
};

// Exact tail solutions: Psi1 = e^{-iBx sigma3} N_-(k) left of the support,
// Psi2 = e^{+iBx sigma3} N_+(k) right of it.
Mat2 psi1_tail(const StepParams& bg, cplx k, double x);
Mat2 psi2_tail(const StepParams& bg, cplx k, double x);

// x-coordinates where the tails are exact (integration start points)
double jost_start_left(const InitialDatum& d);
double jost_start_right(const InitialDatum& d);

// Integrates the x-equation of the Lax pair at t = 0 as a linear ODE
// initial-value problem, RK4 with a fixed |k|-dependent step, starting from
// the exact tail. Rejects k exactly at the pole of the corresponding
// normalization matrix (B for side=left, -B for side=right).
JostMatrix integrate_jost(const InitialDatum& d, Side side, cplx k,
                          double x_eval, const JostOptions& opt = {});

// Single column (0 or 1). The columns evolve independently, and only
// column 0 of Psi1 (pole at k=B) and column 1 of Psi2 (pole at k=-B) are
// singular, so e.g. a2 and b(-B) stay evaluable at the poles of a1.
struct JostColumn {
  cplx top, bot;
};
JostColumn integrate_jost_column(const InitialDatum& d, Side side, int col,
                                 cplx k, double x_eval,
                                 const JostOptions& opt = {});

}  // namespace nnls
