#include "nnls/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "nnls/gamma.hpp"

namespace nnls {

const char* sector_name(SectorKind k) {
  switch (k) {
    case SectorKind::zm_decay_left: return "ZM_decay_left";
    case SectorKind::plane_wave_right: return "plane_wave_right";
    case SectorKind::zm_decay_mid: return "ZM_decay_mid";
    case SectorKind::periodic_mid: return "periodic_mid";
    case SectorKind::pr1_plane_wave: return "pr1_plane_wave";
    case SectorKind::pr1_decay_left: return "pr1_decay_left";
    case SectorKind::pr1_decay_right: return "pr1_decay_right";
    case SectorKind::pr1_reflected_wave: return "pr1_reflected_wave";
  }
  return "?";
}

namespace {

struct Boundary {
  double x;
  std::string label;
};

}  // namespace

RaySector classify_ray(double xi, const SpectrumReport& rep) {
  const double absB = std::abs(rep.params.B);
  const int n = rep.n;
  // negative-side landmarks: Re p_n < omega_n < ... < Re p_1 < omega_1 < -|B|
  // (paper indexing; rep.omegas is omega_1..omega_n descending)
  std::vector<double> re_p(n), om(n);
  for (int j = 0; j < n; ++j) {
    re_p[j] = rep.pairs[j].p.real();  // pairs are ordered p_1, ..., p_n
    om[j] = rep.omegas[j];
  }

  std::vector<Boundary> bds;
  bds.push_back({-absB, "-|B|"});
  bds.push_back({absB, "+|B|"});
  for (int j = 0; j < n; ++j) {
    bds.push_back({re_p[j], "Re p"});
    bds.push_back({-re_p[j], "-Re p"});
    bds.push_back({om[j], "omega"});
    bds.push_back({-om[j], "-omega"});
  }
  if (rep.case_tag == SpectralCase::I) bds.push_back({0.0, "0 (Case I)"});
  for (const auto& b : bds) {
    if (std::abs(xi - b.x) <= 1e-9 * std::max(1.0, std::abs(b.x))) {
      throw TransitionRegionError(xi, "sector below " + b.label,
                                  "sector above " + b.label);
    }
  }

  RaySector s;
  s.xi = xi;
  auto re_p_of = [&](int idx) {  // Re p_idx with the convention Re p_0 = -|B|
    return idx == 0 ? -absB : re_p[idx - 1];
  };
  auto om_of = [&](int idx) {  // omega_idx, omega_{n+1} = -inf, omega_0 = -|B|
    if (idx == n + 1) return -kInf;
    if (idx == 0) return -absB;
    return om[idx - 1];
  };

  if (xi > absB) {
    // alternating item-1 / item-3 sectors
    for (int m = 0; m <= n; ++m) {
      const double lo = -re_p_of(n - m), hi = -om_of(n - m + 1);
      if (xi > lo && xi < hi) {
        s.kind = (m == 0) ? SectorKind::plane_wave_right
                          : SectorKind::pr1_plane_wave;
        s.m = m;
        s.lo = lo;
        s.hi = hi;
        return s;
      }
    }
    for (int m = 0; m <= n - 1; ++m) {
      const double lo = -om_of(n - m), hi = -re_p_of(n - m);
      if (xi > lo && xi < hi) {
        s.kind = SectorKind::pr1_decay_right;
        s.m = m;
        s.lo = lo;
        s.hi = hi;
        return s;
      }
    }
  } else if (xi < -absB) {
    for (int m = 0; m <= n; ++m) {
      const double lo = om_of(n - m + 1), hi = re_p_of(n - m);
      if (xi > lo && xi < hi) {
        s.kind = (m == 0 && n == 0) ? SectorKind::zm_decay_left
                                    : (m == 0 ? SectorKind::zm_decay_left
                                              : SectorKind::pr1_decay_left);
        s.m = m;
        s.lo = lo;
        s.hi = hi;
        return s;
      }
    }
    for (int m = 0; m <= n - 1; ++m) {
      const double lo = re_p_of(n - m), hi = om_of(n - m);
      if (xi > lo && xi < hi) {
        s.kind = SectorKind::pr1_reflected_wave;
        s.m = m;
        s.lo = lo;
        s.hi = hi;
        return s;
      }
    }
  } else {
    s.kind = rep.params.B > 0.0 ? SectorKind::zm_decay_mid
                                : SectorKind::periodic_mid;
    s.m = n;
    s.lo = -absB;
    s.hi = absB;
    return s;
  }
  throw NumericError("classify_ray: ray not covered by any sector");
}

AsymptoticEvaluator::AsymptoticEvaluator(ScatteringData sd, SpectrumReport rep)
    : sd_(std::move(sd)), rep_(std::move(rep)) {}

cplx AsymptoticEvaluator::cached(const std::string& key,
                                 const std::function<cplx()>& make) const {
  {
    std::lock_guard<std::mutex> lock(mtx_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const cplx v = make();
  std::lock_guard<std::mutex> lock(mtx_);
  cache_.emplace(key, v);
  return v;
}

namespace {
std::string key_of(const char* tag, double a, double b) {
  std::ostringstream os;
  os << tag << ':' << std::setprecision(17) << a << ':' << b;
  return os.str();
}
}  // namespace

cplx AsymptoticEvaluator::delta_at(double k_eval, double xi) const {
  return cached(key_of("delta", k_eval, xi), [&] {
    return CauchyDelta(sd_, xi).value(cplx{k_eval});
  });
}

cplx AsymptoticEvaluator::hat_delta_at(double k_eval, double xi) const {
  const double pole = rep_.params.B;  // B < 0 middle sector
  return cached(key_of("hat", k_eval, xi), [&] {
    return CauchyHatDelta(sd_, xi, pole).value(cplx{k_eval});
  });
}

NuValue AsymptoticEvaluator::nu_at_point(double point) const {
  const cplx packed = cached(key_of("nu", point, 0.0), [&] {
    const NuValue nu = compute_nu(sd_, -point);
    return cplx{nu.re, nu.im};
  });
  NuValue nu;
  nu.re = packed.real();
  nu.im = packed.imag();
  nu.m = static_cast<int>(std::lround(nu.im));
  return nu;
}

cplx AsymptoticEvaluator::zm_amplitude(double xi, int which) const {
  const double A = rep_.params.A;
  if (A == 0.0)
    throw NumericError("zm_amplitude: vanishing reflection coefficient");
  if (which == 1) {
    // alpha1(xi): stationary point at xi, cut (-inf, xi)
    const NuValue nuv = nu_at_point(xi);
    const cplx nu = std::conj(nuv.as_complex());
    if (std::abs(nu) < 1e-12)
      throw NumericError("zm_amplitude: nu = 0 not covered (Gamma pole)");
    const cplx r2 = sd_.r2(xi);
    if (std::abs(r2) < sd_.zero_floor)
      throw NumericError("zm_amplitude: vanishing reflection coefficient");
    const cplx chi = cached(key_of("chiend", -xi, 0.0), [&] {
      return CauchyDelta(sd_, -xi).chi_at_endpoint();
    });
    const cplx expo = -0.5 * PI * nu + 0.25 * PI * IU - 2.0 * std::conj(chi) -
                      3.0 * IU * nu * std::log(2.0);
    return std::sqrt(PI) * std::exp(expo) /
           (std::conj(r2) * gamma_fn(-IU * nu));
  }
  // alpha2(xi): middle sector (B > 0), pole at -B, stationary point -xi
  const NuValue nuv = nu_at_point(-xi);
  const cplx nu = nuv.as_complex();
  if (std::abs(nu) < 1e-12)
    throw NumericError("zm_amplitude: nu = 0 not covered (Gamma pole)");
  const cplx r1 = sd_.r1(-xi);
  if (std::abs(r1) < sd_.zero_floor)
    throw NumericError("zm_amplitude: vanishing reflection coefficient");
  const cplx chi12 = cached(key_of("chi12end", xi, 0.0), [&] {
    return CauchyHatDelta(sd_, xi, -rep_.params.B).chi12_at_endpoint();
  });
  const cplx expo = -0.5 * PI * nu + 0.25 * PI * IU + 2.0 * chi12 -
                    3.0 * IU * nu * std::log(2.0);
  return std::sqrt(PI) * std::exp(expo) / (r1 * gamma_fn(-IU * nu));
}

cplx AsymptoticEvaluator::plane_wave_formula(double x, double t, double xi,
                                             int m) const {
  const double A = rep_.params.A, B = rep_.params.B;
  const int n = rep_.n;
  const cplx d = delta_at(-B, xi);
  cplx prod = 1.0;
  for (int s = 0; s <= m - 1; ++s) {
    const cplx p = rep_.pairs[n - 1 - s].p;  // p_{n-s}
    prod /= p * p;
  }
  return A * std::pow(xi, 2 * m) * d * d * prod *
         std::exp(IU * (2.0 * B * x - 4.0 * B * B * t));
}

cplx AsymptoticEvaluator::reflected_wave_formula(double x, double t, double xi,
                                                 int m) const {
  const double A = rep_.params.A, B = rep_.params.B;
  const int n = rep_.n;
  const cplx d = delta_at(-B, -xi);
  cplx prod = 1.0;
  for (int s = 0; s <= m; ++s) {
    const cplx p = rep_.pairs[n - 1 - s].p;
    prod *= p * p;
  }
  return -4.0 * prod * std::exp(IU * (-2.0 * B * x - 4.0 * B * B * t)) /
         (A * std::pow(xi, 2 * m) * std::conj(d) * std::conj(d));
}

cplx AsymptoticEvaluator::periodic_formula(double x, double t,
                                           double xi_sector) const {
  const double A = rep_.params.A, B = rep_.params.B;
  const int n = rep_.n;
  const cplx hd = hat_delta_at(-B, xi_sector);
  const cplx hd_m = hat_delta_at(-B, -xi_sector);
  cplx num_extra = std::pow(cplx{B - xi_sector}, 2 * n);
  cplx den_extra = std::pow((B - xi_sector) / (B + xi_sector), 2 * n);
  for (int s = 0; s <= n - 1; ++s) {
    const cplx p = rep_.pairs[n - 1 - s].p;
    num_extra /= (B + p) * (B + p);
    const cplx r = (B - p) / (B + p);
    den_extra *= r * r;
  }
  const cplx osc = std::exp(IU * (2.0 * B * x - 4.0 * B * B * t));
  const cplx num = 16.0 * A * B * B * num_extra * hd * hd * osc;
  const cplx den = 16.0 * B * B -
                   A * A * den_extra * std::conj(hd_m) * std::conj(hd_m) * hd *
                       hd * std::exp(IU * 4.0 * B * x);
  if (std::abs(den) < 0.05 * std::abs(16.0 * B * B))
    throw BlowUpRegionError(
        "periodic formula: denominator inside the blow-up margin");
  return num / den;
}

AsymptoticTerm AsymptoticEvaluator::leading_term(double x, double t,
                                                 const RaySector& s) const {
  if (!(t > 0.0)) throw ValidationError("leading_term: t must be positive");
  if (std::abs(x - 4.0 * s.xi * t) > 1e-9 * std::max(1.0, std::abs(x)))
    throw ValidationError("leading_term: (x, t) not on the sector ray");
  AsymptoticTerm out;
  const double xi = s.xi;
  const int n = rep_.n;

  switch (s.kind) {
    case SectorKind::plane_wave_right:
    case SectorKind::pr1_plane_wave: {
      out.value = plane_wave_formula(x, t, xi, s.m);
      const double im = nu_at_point(-xi).im;
      out.error_exponent = -0.5 + std::abs(im - s.m);
      out.formula_id = s.m == 0 ? "plane_wave[item2]" : "pr1_item1";
      return out;
    }
    case SectorKind::pr1_reflected_wave: {
      out.value = reflected_wave_formula(x, t, xi, s.m);
      const double im = nu_at_point(-xi).im;
      out.error_exponent = -0.5 + std::abs(im - s.m);
      out.formula_id = "pr1_item4";
      return out;
    }
    case SectorKind::zm_decay_left:
    case SectorKind::pr1_decay_left: {
      const NuValue nu = nu_at_point(xi);
      if (n == 0 && s.m == 0) {
        const cplx a1 = zm_amplitude(xi, 1);
        out.value = std::pow(t, -0.5 - nu.im) * a1 *
                    std::exp(IU * (4.0 * t * xi * xi - nu.re * std::log(t)));
        if (nu.im > 1e-12) {
          out.error_exponent = -1.0;
        } else if (nu.im < -1e-12) {
          out.error_exponent = -1.0 + 2.0 * std::abs(nu.im);
        } else {
          out.error_exponent = -1.0;
          out.log_factor = true;
        }
        out.formula_id = "zm_left[item1]";
      } else {
        out.bound_only = true;
        out.value = 0.0;
        out.error_exponent = -0.5 - nu.im + s.m;
        out.formula_id = "pr1_item2_bound";
      }
      return out;
    }
    case SectorKind::pr1_decay_right: {
      const NuValue nu = nu_at_point(-xi);
      out.bound_only = true;
      out.value = 0.0;
      out.error_exponent = -0.5 + nu.im - s.m;
      out.formula_id = "pr1_item3_bound";
      return out;
    }
    case SectorKind::zm_decay_mid: {
      const NuValue nu = nu_at_point(-xi);
      if (n == 0) {
        const cplx a2 = zm_amplitude(xi, 2);
        out.value = std::pow(t, -0.5 + nu.im) * a2 *
                    std::exp(IU * (4.0 * t * xi * xi - nu.re * std::log(t)));
        if (nu.im > 1e-12) {
          out.error_exponent = -1.0 + 2.0 * std::abs(nu.im);
        } else if (nu.im < -1e-12) {
          out.error_exponent = -1.0;
        } else {
          out.error_exponent = -1.0;
          out.log_factor = true;
        }
        out.formula_id = "zm_mid[item3.1]";
      } else {
        out.bound_only = true;
        out.value = 0.0;
        out.error_exponent = -0.5 + std::abs(nu.im - n);
        out.formula_id = "pr1_item5.1_bound";
      }
      return out;
    }
    case SectorKind::periodic_mid: {
      out.value = periodic_formula(x, t, xi);
      const double im = nu_at_point(-xi).im;
      out.error_exponent = -0.5 + std::abs(im - n);
      out.formula_id = n == 0 ? "periodic[item3.2]" : "pr1_item5.2";
      return out;
    }
  }
  throw NumericError("leading_term: unhandled sector");
}

ModelRhSolution model_rh_solution(double B, cplx c1, cplx c2) {
  if (B == 0.0) throw ValidationError("model_rh_solution: B must be nonzero");
  const cplx cc = c1 * c2;
  const cplx den = 4.0 * B * B + cc;
  if (std::abs(den) < 1e-12 * std::abs(4.0 * B * B))
    throw BlowUpRegionError("model_rh_solution: 4B^2 + c1 c2 vanishes");
  ModelRhSolution m;
  m.B = B;
  m.c1 = c1;
  m.c2 = c2;
  m.A1 = (B * cc - 4.0 * B * B * B) / den;
  m.A2 = 4.0 * B * B * c1 / den;
  m.A3 = 4.0 * B * B * c2 / den;
  m.A4 = (4.0 * B * B * B - B * cc) / den;
  return m;
}

Mat2 ModelRhSolution::eval(cplx k) const {
  return {(k + A1) / (k - B), A3 / (k + B), A2 / (k - B), (k + A4) / (k + B)};
}

void write_asymptotics_csv(const std::vector<AsymptoticsRow>& rows,
                           std::ostream& os) {
  os << std::setprecision(17);
  os << "x,t,xi,sector,re_q_as,im_q_as,abs_q_as,error_exponent\n";
  for (const auto& r : rows) {
    os << r.x << ',' << r.t << ',' << r.xi << ',' << r.sector << ','
       << r.q.real() << ',' << r.q.imag() << ',' << std::abs(r.q) << ','
       << r.error_exponent << '\n';
  }
}

}  // namespace nnls
