#include "nnls/jost.hpp"

#include <algorithm>
#include <cmath>

namespace nnls {

Mat2 psi1_tail(const StepParams& bg, cplx k, double x) {
  // e^{-iBx sigma3} N_-(k)
  const cplx em = std::exp(cplx{0.0, -bg.B * x});
  const cplx ep = std::exp(cplx{0.0, bg.B * x});
  cplx n21 = 0.0;
  if (bg.A != 0.0) n21 = -IU * bg.A / (2.0 * (k - bg.B));
  return {em, 0.0, ep * n21, ep};
}

Mat2 psi2_tail(const StepParams& bg, cplx k, double x) {
  // e^{+iBx sigma3} N_+(k)
  const cplx ep = std::exp(cplx{0.0, bg.B * x});
  const cplx em = std::exp(cplx{0.0, -bg.B * x});
  cplx n12 = 0.0;
  if (bg.A != 0.0) n12 = -IU * bg.A / (2.0 * (k + bg.B));
  return {ep, ep * n12, 0.0, em};
}

double jost_start_left(const InitialDatum& d) {
  return std::min(d.left_tail_bound, -d.right_tail_bound);
}

double jost_start_right(const InitialDatum& d) {
  return std::max(d.right_tail_bound, -d.left_tail_bound);
}

namespace {

// dPsi/dx = -ik sigma3 Psi + U(x) Psi + i c Psi sigma3,
// c = k - B (side=left) or k + B (side=right)
inline Mat2 rhs(const InitialDatum& d, cplx k, cplx c, double x,
                const Mat2& p) {
  const cplx q = d.eval(x);
  const cplx qr = std::conj(d.eval(-x));  // enters with a minus sign
  const cplx ik = IU * k, ic = IU * c;
  return {(ic - ik) * p.a11 + q * p.a21, -(ik + ic) * p.a12 + q * p.a22,
          (ik + ic) * p.a21 - qr * p.a11, (ik - ic) * p.a22 - qr * p.a12};
}

}  // namespace

JostMatrix integrate_jost(const InitialDatum& d, Side side, cplx k,
                          double x_eval, const JostOptions& opt) {
  const StepParams& bg = d.background;
  if (bg.A != 0.0) {
    const cplx pole = (side == Side::left) ? cplx{bg.B} : cplx{-bg.B};
    if (std::abs(k - pole) == 0.0)
      throw NumericError("integrate_jost: k at the singular point of the tail");
  }

  const double x0 =
      (side == Side::left) ? jost_start_left(d) : jost_start_right(d);
  Mat2 psi = (side == Side::left) ? psi1_tail(bg, k, x0) : psi2_tail(bg, k, x0);

  const bool up = (side == Side::left);
  const double span = up ? (x_eval - x0) : (x0 - x_eval);
  if (span <= 0.0) {
    Mat2 tail = (side == Side::left) ? psi1_tail(bg, k, x_eval)
                                     : psi2_tail(bg, k, x_eval);
    return {tail, side, k, x_eval};
  }

  const cplx c = (side == Side::left) ? (k - bg.B) : (k + bg.B);
  double h_target =
      std::min(d.dx, opt.step_cap / (1.0 + std::abs(k))) / opt.refine;
  const auto n = static_cast<std::size_t>(std::ceil(span / h_target));
  const double h = (up ? span : -span) / static_cast<double>(n);

  double x = x0;
  for (std::size_t i = 0; i < n; ++i) {
    const Mat2 k1 = rhs(d, k, c, x, psi);
    const Mat2 k2 = rhs(d, k, c, x + 0.5 * h, psi + k1 * cplx{0.5 * h});
    const Mat2 k3 = rhs(d, k, c, x + 0.5 * h, psi + k2 * cplx{0.5 * h});
    const Mat2 k4 = rhs(d, k, c, x + h, psi + k3 * cplx{h});
    psi = psi + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * cplx{h / 6.0};
    x = x0 + h * static_cast<double>(i + 1);
    if (!std::isfinite(psi.max_abs()))
      throw NumericError("integrate_jost: integration diverged");
  }
  return {psi, side, k, x_eval};
}

JostColumn integrate_jost_column(const InitialDatum& d, Side side, int col,
                                 cplx k, double x_eval,
                                 const JostOptions& opt) {
  const StepParams& bg = d.background;
  const bool singular_col = (side == Side::left) ? (col == 0) : (col == 1);
  if (bg.A != 0.0 && singular_col) {
    const cplx pole = (side == Side::left) ? cplx{bg.B} : cplx{-bg.B};
    if (std::abs(k - pole) == 0.0)
      throw NumericError("integrate_jost: k at the pole of the requested column");
  }

  const double x0 =
      (side == Side::left) ? jost_start_left(d) : jost_start_right(d);
  const Mat2 tail0 =
      (side == Side::left) ? psi1_tail(bg, k, x0) : psi2_tail(bg, k, x0);
  cplx top = tail0.top(col), bot = tail0.bot(col);

  const bool up = (side == Side::left);
  const double span = up ? (x_eval - x0) : (x0 - x_eval);
  if (span <= 0.0) {
    const Mat2 tail = (side == Side::left) ? psi1_tail(bg, k, x_eval)
                                           : psi2_tail(bg, k, x_eval);
    return {tail.top(col), tail.bot(col)};
  }

  const cplx c = (side == Side::left) ? (k - bg.B) : (k + bg.B);
  // column scaling from Psi sigma3: +ic on column 0, -ic on column 1
  const cplx ic = (col == 0) ? IU * c : -IU * c;
  const cplx ik = IU * k;
  auto col_rhs = [&](double x, cplx t, cplx b2) -> std::pair<cplx, cplx> {
    const cplx q = d.eval(x);
    const cplx qr = std::conj(d.eval(-x));
    return {(ic - ik) * t + q * b2, (ik + ic) * b2 - qr * t};
  };

  double h_target =
      std::min(d.dx, opt.step_cap / (1.0 + std::abs(k))) / opt.refine;
  const auto n = static_cast<std::size_t>(std::ceil(span / h_target));
  const double h = (up ? span : -span) / static_cast<double>(n);

  double x = x0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [t1, b1] = col_rhs(x, top, bot);
    const auto [t2, b2] = col_rhs(x + 0.5 * h, top + 0.5 * h * t1, bot + 0.5 * h * b1);
    const auto [t3, b3] = col_rhs(x + 0.5 * h, top + 0.5 * h * t2, bot + 0.5 * h * b2);
    const auto [t4, b4] = col_rhs(x + h, top + h * t3, bot + h * b3);
    top += (h / 6.0) * (t1 + 2.0 * t2 + 2.0 * t3 + t4);
    bot += (h / 6.0) * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
    x = x0 + h * static_cast<double>(i + 1);
    if (!std::isfinite(std::abs(top)) || !std::isfinite(std::abs(bot)))
      throw NumericError("integrate_jost: integration diverged");
  }
  return {top, bot};
}

}  // namespace nnls
