#include "nnls/scattering.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <memory>
#include <ostream>

namespace nnls {

RingFit laurent_ring_fit(const CplxFn& f, cplx center, double radius,
                         int npts) {
  auto ring_coeffs = [&](double rho, cplx out[4]) {
    // c_m ~ (1/N) sum f(center + rho e^{i th_j}) e^{-im th_j} rho^{-m},
    // exact up to the c_{m+N} rho^N tail
    for (int m = -1; m <= 2; ++m) out[m + 1] = 0.0;
    for (int j = 0; j < npts; ++j) {
      const double th = 2.0 * PI * j / npts;
      const cplx e{std::cos(th), std::sin(th)};
      const cplx fv = f(center + rho * e);
      for (int m = -1; m <= 2; ++m)
        out[m + 1] += fv * std::exp(cplx{0.0, -m * th});
    }
    for (int m = -1; m <= 2; ++m)
      out[m + 1] *= std::pow(rho, -static_cast<double>(m)) /
                    static_cast<double>(npts);
  };
  cplx full[4], half[4];
  ring_coeffs(radius, full);
  ring_coeffs(0.5 * radius, half);
  const double two_n = std::pow(2.0, npts);
  RingFit fit;
  cplx rich[4];
  for (int i = 0; i < 4; ++i)
    rich[i] = (two_n * half[i] - full[i]) / (two_n - 1.0);
  fit.c_m1 = rich[0];
  fit.c0 = rich[1];
  fit.c1 = rich[2];
  fit.c2 = rich[3];
  // consistency of the simple-pole model on an intermediate circle
  double resid = 0.0, scale = 0.0;
  for (int j = 0; j < 2 * npts; ++j) {
    const double th = PI * j / npts + 0.37;
    const cplx z = 0.75 * radius * cplx{std::cos(th), std::sin(th)};
    const cplx fv = f(center + z);
    const cplx model = fit.c_m1 / z + fit.c0 + fit.c1 * z + fit.c2 * z * z;
    resid = std::max(resid, std::abs(fv - model));
    scale = std::max(scale, std::abs(fv));
  }
  fit.residual = scale > 0.0 ? resid / scale : resid;
  return fit;
}

cplx ScatteringData::r1(double k) const {
  const cplx a = a1(cplx{k});
  if (std::abs(a) < zero_floor)
    throw NumericError("reflection r1: a1 vanishes on the real line (Assumption A.2)");
  return b(cplx{k}) / a;
}

cplx ScatteringData::r2(double k) const {
  const cplx a = a2(cplx{k});
  if (std::abs(a) < zero_floor)
    throw NumericError("reflection r2: a2 vanishes on the real line (Assumption A.2)");
  return std::conj(b(cplx{-k})) / a;
}

cplx ScatteringData::w_over_pole(double k, double P) const {
  cplx at;  // a1(k) * (k - P)
  if (a1_times) {
    at = a1_times(cplx{k}, P);
  } else if (std::abs(k - P) > 8.0 * puncture || !residues_set) {
    at = a1(cplx{k}) * (k - P);
  } else {
    const bool at_plus = std::abs(P - background.B) <= std::abs(P + background.B);
    const cplx cm1 = at_plus ? a1_plusB : a1_minusB;
    const cplx c0 = at_plus ? a1_reg_plusB : a1_reg_minusB;
    at = cm1 + c0 * (k - P);
  }
  return 1.0 / (at * a2(cplx{k}));
}

ResidueCoefficients residue_coefficients(const CplxFn& a1, const CplxFn& b,
                                         double B, double radius, double tol) {
  ResidueCoefficients rc;
  const RingFit fp = laurent_ring_fit(a1, cplx{B}, radius);
  const RingFit fm = laurent_ring_fit(a1, cplx{-B}, radius);
  const RingFit fb = laurent_ring_fit(b, cplx{B}, radius);
  const double worst =
      std::max(fp.residual, std::max(fm.residual, fb.residual));
  if (worst > tol)
    throw NumericError(
        "residue_coefficients: Laurent fit residual above tolerance; "
        "a1 is not simple-pole at +-B");
  rc.a1_plusB = fp.c_m1;
  rc.a1_minusB = fm.c_m1;
  rc.bB = fb.c_m1;
  rc.a1_reg_plusB = fp.c0;
  rc.a1_reg_minusB = fm.c0;
  rc.taylor_plus[0] = fp.c_m1;
  rc.taylor_plus[1] = fp.c0;
  rc.taylor_plus[2] = fp.c1;
  rc.taylor_plus[3] = fp.c2;
  rc.taylor_minus[0] = fm.c_m1;
  rc.taylor_minus[1] = fm.c0;
  rc.taylor_minus[2] = fm.c1;
  rc.taylor_minus[3] = fm.c2;
  rc.fit_residual = worst;
  return rc;
}

ScatteringData compute_scattering(const InitialDatum& datum,
                                  const ScatteringOptions& opt) {
  datum.validate();
  auto dp = std::make_shared<const InitialDatum>(datum);
  const JostOptions jopt = opt.jost;

  ScatteringData sd;
  sd.background = datum.background;
  sd.puncture = opt.puncture_scale * std::max(1.0, std::abs(datum.background.B));
  sd.phase_scale =
      2.0 * (jost_start_right(datum) - jost_start_left(datum)) + 0.1;

  // det(u, v) = u_top v_bot - v_top u_bot of the analytic column pairs
  sd.a1 = [dp, jopt](cplx k) {
    const JostColumn u = integrate_jost_column(*dp, Side::left, 0, k, 0.0, jopt);
    const JostColumn v = integrate_jost_column(*dp, Side::right, 1, k, 0.0, jopt);
    return u.top * v.bot - v.top * u.bot;
  };
  sd.a2 = [dp, jopt](cplx k) {
    const JostColumn u = integrate_jost_column(*dp, Side::right, 0, k, 0.0, jopt);
    const JostColumn v = integrate_jost_column(*dp, Side::left, 1, k, 0.0, jopt);
    return u.top * v.bot - v.top * u.bot;
  };
  sd.b = [dp, jopt](cplx k) {
    const JostColumn u = integrate_jost_column(*dp, Side::right, 0, k, 0.0, jopt);
    const JostColumn v = integrate_jost_column(*dp, Side::left, 0, k, 0.0, jopt);
    return u.top * v.bot - v.top * u.bot;
  };

  if (datum.background.A != 0.0 && datum.background.B != 0.0) {
    const ResidueCoefficients rc =
        residue_coefficients(sd.a1, sd.b, datum.background.B, opt.ring_radius);
    sd.a1_plusB = rc.a1_plusB;
    sd.a1_minusB = rc.a1_minusB;
    sd.bB = rc.bB;
    sd.a1_reg_plusB = rc.a1_reg_plusB;
    sd.a1_reg_minusB = rc.a1_reg_minusB;
    sd.residues_set = true;
    const double B = datum.background.B;
    const double guard = 5.0 * sd.puncture;
    const CplxFn a1_fn = sd.a1;
    std::array<cplx, 4> tp, tm;
    std::copy(rc.taylor_plus, rc.taylor_plus + 4, tp.begin());
    std::copy(rc.taylor_minus, rc.taylor_minus + 4, tm.begin());
    sd.a1_times = [a1_fn, B, guard, tp, tm](cplx k, double P) -> cplx {
      const cplx d = k - P;
      if (std::abs(d) > guard) return a1_fn(k) * d;
      const auto& t = (std::abs(P - B) <= std::abs(P + B)) ? tp : tm;
      return t[0] + d * (t[1] + d * (t[2] + d * t[3]));
    };
  }
  return sd;
}

NormingConstants norming_constants(const InitialDatum& datum,
                                   const std::optional<cplx>& ik0,
                                   const std::vector<cplx>& pair_roots,
                                   double tol, const JostOptions& jopt) {
  NormingConstants nc;
  auto ratio = [&](cplx k) {
    const Mat2 p1 = integrate_jost(datum, Side::left, k, 0.0, jopt).m;
    const Mat2 p2 = integrate_jost(datum, Side::right, k, 0.0, jopt).m;
    const cplx u1 = p1.a11, u2 = p1.a21;  // Psi1^(1)
    const cplx v1 = p2.a12, v2 = p2.a22;  // Psi2^(2)
    const double vv = std::norm(v1) + std::norm(v2);
    const cplx c = (u1 * std::conj(v1) + u2 * std::conj(v2)) / vv;
    const double resid =
        std::sqrt(std::norm(u1 - c * v1) + std::norm(u2 - c * v2)) /
        std::sqrt(std::norm(u1) + std::norm(u2));
    if (resid > tol)
      throw NumericError(
          "norming_constants: columns not proportional; not a zero of a1");
    nc.max_residual = std::max(nc.max_residual, resid);
    return c;
  };
  if (ik0) {
    if (!(ik0->imag() > 0.0) || std::abs(ik0->real()) > 1e-14)
      throw ValidationError("norming_constants: ik0 must be purely imaginary, Im > 0");
    const cplx g0 = ratio(*ik0);
    if (std::abs(std::abs(g0) - 1.0) > std::max(tol, 1e-6))
      throw NumericError("norming_constants: |gamma0| deviates from 1");
    nc.gamma0 = g0;
  }
  nc.etas.reserve(pair_roots.size());
  for (const cplx& p : pair_roots) {
    if (!(p.imag() > 0.0))
      throw ValidationError("norming_constants: p_j must lie in the open upper half-plane");
    nc.etas.push_back(ratio(p));
  }
  return nc;
}

ReflectionCoefficients reflection_coefficients(const ScatteringData& sd) {
  ReflectionCoefficients rc;
  auto sp = std::make_shared<const ScatteringData>(sd);
  rc.r1 = [sp](double k) { return sp->r1(k); };
  rc.r2 = [sp](double k) { return sp->r2(k); };
  return rc;
}

std::vector<double> real_k_grid(double k_min, double k_max, std::size_t n,
                                double B, double puncture) {
  std::vector<double> ks;
  ks.reserve(n);
  const double step = (k_max - k_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    double k = k_min + step * static_cast<double>(i);
    for (double pole : {B, -B}) {
      if (std::abs(k - pole) < puncture)
        k = pole + (k >= pole ? puncture : -puncture);
    }
    ks.push_back(k);
  }
  return ks;
}

void write_scattering_csv(const ScatteringData& sd,
                          const std::vector<double>& k_grid,
                          std::ostream& os) {
  os << std::setprecision(17);
  os << "k,re_a1,im_a1,re_a2,im_a2,re_b,im_b\n";
  for (double k : k_grid) {
    const cplx a1 = sd.a1(cplx{k});
    const cplx a2 = sd.a2(cplx{k});
    const cplx b = sd.b(cplx{k});
    os << k << ',' << a1.real() << ',' << a1.imag() << ',' << a2.real() << ','
       << a2.imag() << ',' << b.real() << ',' << b.imag() << '\n';
  }
}

}  // namespace nnls
