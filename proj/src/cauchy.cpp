#include "nnls/cauchy.hpp"

#include <cmath>

namespace nnls {

namespace {

double principal(double a) {
  while (a > PI) a -= 2.0 * PI;
  while (a < -PI) a += 2.0 * PI;
  return a;
}

double far_left_start(const ScatteringData& sd, double cut_end) {
  const double A = sd.background.A, B = sd.background.B;
  return -std::max({20.0, 4.0 * (A + std::abs(B) + 1.0),
                    std::abs(cut_end) + 5.0});
}

std::vector<ArgTracker::SpecialPoint> w_zero_points(const ScatteringData& sd,
                                                    double x_start,
                                                    double cut_end) {
  std::vector<ArgTracker::SpecialPoint> sp;
  const double B = sd.background.B;
  if (sd.background.A == 0.0 || B == 0.0) return sp;
  for (double z : {B, -B}) {
    if (z > x_start && z < cut_end - sd.puncture)
      sp.push_back({z, -PI, sd.puncture});  // simple zero of w, continued via C+
  }
  return sp;
}

ArgTrackerOptions tracker_options(const ScatteringData& sd, double cut_end) {
  ArgTrackerOptions opt;
  const double A = sd.background.A, B = sd.background.B;
  opt.active_lo = std::min(-(0.5 * A + std::abs(B) + 2.0), cut_end - 2.0) - 1.0;
  opt.active_dx = PI / (8.0 * std::max(sd.phase_scale, 0.2));
  return opt;
}

}  // namespace

CutLog::CutLog(const ScatteringData& sd, double cut_end)
    : sd_(std::make_shared<const ScatteringData>(sd)), cut_end_(cut_end) {
  const double x0 = far_left_start(sd, cut_end);
  auto sp = std::const_pointer_cast<const ScatteringData>(sd_);
  w_tracker_ = std::make_shared<ArgTracker>(
      [sp](double z) { return sp->w(z); }, x0, cut_end,
      w_zero_points(sd, x0, cut_end), tracker_options(sd, cut_end));
}

CutLog::CutLog(const ScatteringData& sd, double cut_end, double pole, cplx kt)
    : sd_(std::make_shared<const ScatteringData>(sd)),
      cut_end_(cut_end),
      has_pole_(true),
      pole_(pole),
      kt_(kt) {
  if (!(kt.imag() > 0.0))
    throw ValidationError("CutLog: k-tilde must lie in the open upper half-plane");
  if (!(pole < cut_end))
    throw ValidationError("CutLog: pole is not interior to the cut");
  const double x0 = far_left_start(sd, cut_end);
  auto sp = std::const_pointer_cast<const ScatteringData>(sd_);
  w_tracker_ = std::make_shared<ArgTracker>(
      [sp](double z) { return sp->w(z); }, x0, cut_end,
      w_zero_points(sd, x0, cut_end), tracker_options(sd, cut_end));
}

cplx CutLog::g(double z) const {
  if (!has_pole_) return sd_->w(z);
  return (z + kt_) * sd_->w_over_pole(z, pole_);
}

cplx CutLog::log_pc(double z) const {
  // continued log of (z + kt)/(z - P):  -> 0 at -inf, +pi jump at P
  const cplx num = z + kt_;
  const double mag = std::log(std::abs(num)) - std::log(std::abs(z - pole_));
  double a = std::arg(num);
  if (z < pole_) a -= PI;
  return {mag, a};
}

cplx CutLog::w_part(double z) const { return w_tracker_->log(z); }

cplx CutLog::L(double z) const {
  if (!has_pole_) return w_tracker_->log(z);
  const double eps = 4.0 * sd_->puncture;
  if (std::abs(z - pole_) < eps) {
    // log_pc and log w are separately singular at the pole; continue the
    // (regular) combined log from an anchor at the puncture edge instead
    const double edge = pole_ - 1.0001 * eps;
    const cplx Lref = log_pc(edge) + w_part(edge);
    const cplx gz = g(z), ge = g(edge);
    return {std::log(std::abs(gz)),
            Lref.imag() + principal(std::arg(gz) - std::arg(ge))};
  }
  return log_pc(z) + w_part(z);
}

cplx CutLog::Lprime(double z) const {
  const double h = 1e-6 * std::max(1.0, std::abs(z));
  return (g(z + h) - g(z - h)) / (2.0 * h * g(z));
}

// ---------------------------------------------------------------------------

NuValue compute_nu(const ScatteringData& sd, double xi,
                   const QuadOptions& qopt) {
  (void)qopt;
  const double cut_end = -xi;
  const double B = sd.background.B;
  for (double z : {B, -B}) {
    if (sd.background.A != 0.0 && B != 0.0 &&
        std::abs(cut_end - z) < 10.0 * sd.puncture)
      throw NumericError(
          "compute_nu: -xi at a zero of 1 + r1 r2 (transition ray)");
  }
  const cplx w_end = sd.w(cut_end);
  if (std::abs(w_end) < 1e-10)
    throw NumericError("compute_nu: 1 + r1 r2 vanishes at -xi");

  const CutLog cut(sd, cut_end);
  const cplx L = cut.L_end();
  // cumulative-argument form vs the direct principal logarithm
  const double frac = principal(L.imag() - std::arg(w_end));
  if (std::abs(frac) > 1e-8)
    throw NumericError("compute_nu: branch-tracked and direct logarithms disagree");

  NuValue nu;
  nu.re = -L.real() / (2.0 * PI);
  nu.im = -L.imag() / (2.0 * PI);
  nu.m = static_cast<int>(std::lround(nu.im));
  if (std::abs(nu.im - nu.m) > 0.5 - 1e-9)
    throw NumericError("compute_nu: Im nu at a half-integer (transition ray)");
  return nu;
}

// ---------------------------------------------------------------------------

CauchyDelta::CauchyDelta(const ScatteringData& sd, double xi, QuadOptions qopt)
    : xi_(xi), qopt_(qopt) {
  const double cut_end = -xi;
  const double B = sd.background.B;
  if (sd.background.A != 0.0 && B != 0.0) {
    for (double z : {B, -B})
      if (z < cut_end - sd.puncture &&
          z > far_left_start(sd, cut_end))
        throw ValidationError(
            "CauchyDelta: 1 + r1 r2 vanishes on the cut at +-B; "
            "use the pole-corrected variant");
  }
  nu_ = compute_nu(sd, xi, qopt);
  cut_ = std::make_shared<const CutLog>(sd, cut_end);
}

cplx CauchyDelta::log_value(cplx k) const {
  const double cut_end = cut_->cut_end();
  if (k.imag() == 0.0 && k.real() <= cut_end)
    throw ValidationError("CauchyDelta: k on the cut; use boundary()");
  auto f = [&](double z) { return cut_->L(z) / (z - k); };
  const cplx integral = integrate_left_tail(f, cut_end, qopt_);
  return integral / (2.0 * PI * IU);
}

cplx CauchyDelta::log_kernel_T(double s, bool include_right) const {
  const double cut_end = cut_->cut_end();
  double d = 1.0;
  if (include_right) d = std::min(1.0, 0.5 * (cut_end - s));
  cplx total = 0.0;
  // (-inf, s - d], integrated by parts so the tail has Cauchy-kernel decay:
  // int log(s-z) dL = L(s-d) log d + int L(z)/(s-z) dz
  total += cut_->L(s - d) * std::log(d);
  total += integrate_left_tail(
      [&](double z) { return cut_->L(z) / (s - z); }, s - d, qopt_);
  // [s - d, s): z = s - e^{-v}
  const double v0 = -std::log(d);
  total += integrate(
      [&](double v) {
        const double e = std::exp(-v);
        return -v * e * cut_->Lprime(s - e);
      },
      v0, 45.0, qopt_);
  if (include_right) {
    // (s, s + d]: z = s + e^{-v}
    total += integrate(
        [&](double v) {
          const double e = std::exp(-v);
          return -v * e * cut_->Lprime(s + e);
        },
        v0, 45.0, qopt_);
    // [s + d, cut_end], integrated by parts:
    // int log(z-s) dL = L(end) log(end-s) - L(s+d) log d - int L(z)/(z-s) dz
    total += cut_->L_end() * std::log(cut_end - s) -
             cut_->L(s + d) * std::log(d);
    total -= integrate(
        [&](double z) { return cut_->L(z) / (z - s); }, s + d, cut_end,
        qopt_);
  }
  return total;
}

cplx CauchyDelta::boundary(double s, int sign) const {
  const double cut_end = cut_->cut_end();
  if (!(s < cut_end))
    throw ValidationError("CauchyDelta::boundary: s not on the cut");
  const cplx sg{0.0, sign >= 0 ? PI : -PI};
  const cplx log_pow = std::log(-(s + xi_)) + sg;
  const cplx chi_pm =
      -(log_kernel_T(s, true) +
        sg * (cut_->L_end() - cut_->L(s))) /
      (2.0 * PI * IU);
  return std::exp(IU * nu_.as_complex() * log_pow + chi_pm);
}

cplx CauchyDelta::chi(cplx k) const {
  // int log(k - z) dL over the cut; the far tail integrated by parts
  const double cut_end = cut_->cut_end();
  const double c = cut_end - 4.0;
  cplx total = cut_->L(c) * std::log(k - c);
  total += integrate_left_tail(
      [&](double z) { return cut_->L(z) / (k - z); }, c, qopt_);
  total += integrate(
      [&](double z) { return std::log(k - z) * cut_->Lprime(z); }, c, cut_end,
      qopt_);
  return -total / (2.0 * PI * IU);
}

cplx CauchyDelta::chi_at_endpoint() const {
  return -log_kernel_T(cut_->cut_end(), false) / (2.0 * PI * IU);
}

// ---------------------------------------------------------------------------

CauchyHatDelta::CauchyHatDelta(const ScatteringData& sd, double xi,
                               double pole, std::optional<cplx> ktilde0,
                               QuadOptions qopt)
    : xi_(xi), pole_(pole), qopt_(qopt),
      sd_(std::make_shared<const ScatteringData>(sd)) {
  kt_ = ktilde0.value_or(cplx{0.0, 1.0 + std::abs(sd.background.B)});
  if (!(kt_.imag() > 0.0))
    throw ValidationError("CauchyHatDelta: k-tilde must lie in C+");
  const double cut_end = -xi;
  if (!(pole < cut_end - sd.puncture))
    throw ValidationError("CauchyHatDelta: pole is not interior to the cut");
  L1_ = std::make_shared<const CutLog>(sd, cut_end, pole, kt_);
  const cplx logw = L1_->L_end() - L2(cut_end);
  nu_.re = -logw.real() / (2.0 * PI);
  nu_.im = -logw.imag() / (2.0 * PI);
  nu_.m = static_cast<int>(std::lround(nu_.im));
}

cplx CauchyHatDelta::L2(double z) const {
  const cplx num = z + kt_;
  return {std::log(std::abs(num)) - std::log(std::abs(z - pole_)),
          std::arg(num)};
}

cplx CauchyHatDelta::L2prime(double z) const {
  return 1.0 / (z + kt_) - 1.0 / (z - pole_);
}

cplx CauchyHatDelta::log_d1(cplx k) const {
  const double cut_end = -xi_;
  auto f = [&](double z) { return L1_->L(z) / (z - k); };
  return integrate_left_tail(f, cut_end, qopt_) / (2.0 * PI * IU);
}

cplx CauchyHatDelta::log_d2(cplx k) const {
  const double cut_end = -xi_;
  auto f = [&](double z) { return L2(z) / (z - k); };
  return integrate_right_tail(f, cut_end, qopt_) / (2.0 * PI * IU);
}

cplx CauchyHatDelta::log_kernel_T1(double s, bool include_right) const {
  const double cut_end = -xi_;
  double d = 1.0;
  if (include_right) d = std::min(1.0, 0.5 * (cut_end - s));
  cplx total = 0.0;
  // far-left by parts (restores Cauchy-kernel decay)
  total += L1_->L(s - d) * std::log(d);
  total += integrate_left_tail(
      [&](double z) { return L1_->L(z) / (s - z); }, s - d, qopt_);
  const double v0 = -std::log(d);
  total += integrate(
      [&](double v) {
        const double e = std::exp(-v);
        return -v * e * L1_->Lprime(s - e);
      },
      v0, 45.0, qopt_);
  if (include_right) {
    total += integrate(
        [&](double v) {
          const double e = std::exp(-v);
          return -v * e * L1_->Lprime(s + e);
        },
        v0, 45.0, qopt_);
    total += L1_->L_end() * std::log(cut_end - s) -
             L1_->L(s + d) * std::log(d);
    total -= integrate(
        [&](double z) { return L1_->L(z) / (z - s); }, s + d, cut_end, qopt_);
  }
  return total;
}

cplx CauchyHatDelta::log_kernel_T2(double s) const {
  // int_{-xi}^{inf} log|s - z| L2'(z) dz; s >= -xi
  const double cut_end = -xi_;
  cplx total = 0.0;
  if (s > cut_end + 1e-14) {
    const double d = std::min(1.0, 0.5 * (s - cut_end));
    total += integrate(
        [&](double z) { return std::log(s - z) * L2prime(z); }, cut_end,
        s - d, qopt_);
    const double v0 = -std::log(d);
    total += integrate(
        [&](double v) {
          const double e = std::exp(-v);
          return -v * e * L2prime(s - e);
        },
        v0, 45.0, qopt_);
    // right side: (s, s+1] via the substitution, then the tail from s+1
    total += integrate(
        [&](double v) {
          const double e = std::exp(-v);
          return -v * e * L2prime(s + e);
        },
        0.0, 45.0, qopt_);
    // far-right by parts: log(1) boundary term vanishes, leaving a pure
    // Cauchy kernel
    total -= integrate_right_tail(
        [&](double z) { return L2(z) / (z - s); }, s + 1.0, qopt_);
  } else {
    // s at the endpoint -xi: right pieces only
    total += integrate(
        [&](double v) {
          const double e = std::exp(-v);
          return -v * e * L2prime(s + e);
        },
        0.0, 45.0, qopt_);
    total -= integrate_right_tail(
        [&](double z) { return L2(z) / (z - s); }, s + 1.0, qopt_);
  }
  return total;
}

cplx CauchyHatDelta::d2_lower_boundary(double s) const {
  const double cut_end = -xi_;
  if (!(s > cut_end))
    throw ValidationError("CauchyHatDelta: d2 boundary point left of -xi");
  const cplx inu2 = IU * L2(cut_end) / (2.0 * PI);
  const cplx chi2_minus =
      -(log_kernel_T2(s) + IU * PI * L2(s)) / (2.0 * PI * IU);
  return inu2 * std::log(s + xi_) + chi2_minus;
}

cplx CauchyHatDelta::value(cplx k) const {
  const double cut_end = -xi_;
  if (k.imag() > 0.0)
    return (k - pole_) / (k + kt_) * std::exp(log_d1(k) + log_d2(k));
  if (k.imag() < 0.0) return std::exp(log_d1(k) + log_d2(k));
  // real axis: continuous across (-xi, inf)
  if (k.real() > cut_end + 10.0 * sd_->puncture)
    return std::exp(log_d1(k) + d2_lower_boundary(k.real()));
  throw ValidationError(
      "CauchyHatDelta::value: real k on the jump contour; use boundary()");
}

cplx CauchyHatDelta::boundary(double s, int sign) const {
  const double cut_end = -xi_;
  if (!(s < cut_end))
    throw ValidationError("CauchyHatDelta::boundary: s not on the cut");
  const cplx sg{0.0, sign >= 0 ? PI : -PI};
  const cplx inu1 = -IU * L1_->L_end() / (2.0 * PI);
  const cplx log_pow = std::log(-(s + xi_)) + sg;
  const cplx chi1_pm =
      -(log_kernel_T1(s, true) + sg * (L1_->L_end() - L1_->L(s))) /
      (2.0 * PI * IU);
  const cplx d1 = std::exp(inu1 * log_pow + chi1_pm);
  const cplx d2 = std::exp(log_d2(cplx{s}));
  cplx v = d1 * d2;
  if (sign >= 0) v *= (s - pole_) / (s + kt_);
  return v;
}

cplx CauchyHatDelta::chi12_at_endpoint() const {
  const double cut_end = -xi_;
  const cplx chi1 = -log_kernel_T1(cut_end, false) / (2.0 * PI * IU);
  const cplx chi2 =
      -(log_kernel_T2(cut_end) - IU * PI * L2(cut_end)) / (2.0 * PI * IU);
  return chi1 + chi2;
}

// ---------------------------------------------------------------------------

double verify_a2_identity(const ScatteringData& sd, double xi, double B,
                          std::optional<cplx> ktilde0,
                          const QuadOptions& qopt) {
  if (!(B < 0.0))
    throw ValidationError("verify_a2_identity: requires B < 0");
  if (!(std::abs(xi) < -B))
    throw ValidationError("verify_a2_identity: requires |xi| < -B");
  const cplx kt = ktilde0.value_or(cplx{0.0, 1.0 + std::abs(B)});
  const double P = B;

  // hat-delta_-(B, xi) by the principal-value route
  const CutLog L1p(sd, -xi, P, kt);
  auto L2p = [&](double z) -> cplx {
    const cplx num = z + kt;
    return {std::log(std::abs(num)) - std::log(z - P), std::arg(num)};
  };
  const cplx pv1 =
      pv_cauchy([&](double z) { return L1p.L(z); }, -kInf, -xi, B, qopt);
  const cplx reg1 =
      integrate_right_tail([&](double z) { return L2p(z) / (z - B); }, -xi,
                           qopt);
  const cplx term1 =
      std::exp(-0.5 * L1p.L(B) + (pv1 + reg1) / (2.0 * PI * IU));

  // conj(hat-delta)(-B, -xi) by the conjugated principal-value route
  const CutLog L1m(sd, xi, P, kt);
  const cplx reg2 = integrate_left_tail(
      [&](double z) { return std::conj(L1m.L(z)) / (z + B); }, xi, qopt);
  const cplx pv2 = pv_cauchy(
      [&](double z) { return std::conj(L2p(z)); }, xi, kInf, -B, qopt);
  const cplx term2 = std::exp(-reg2 / (2.0 * PI * IU) -
                              0.5 * std::conj(L2p(-B)) -
                              pv2 / (2.0 * PI * IU));

  return std::abs(sd.a2(cplx{B}) - term1 * term2);
}

cplx compute_delta(const ScatteringData& sd, double xi, cplx k) {
  return CauchyDelta(sd, xi).value(k);
}

cplx compute_hat_delta(const ScatteringData& sd, double xi, double pole,
                       cplx ktilde0, cplx k) {
  return CauchyHatDelta(sd, xi, pole, ktilde0).value(k);
}

}  // namespace nnls
