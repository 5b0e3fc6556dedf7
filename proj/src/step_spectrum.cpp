#include "nnls/step_spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace nnls {

ScatteringData step_spectral_functions(const StepParams& p) {
  p.validate(/*allow_zero_amplitude=*/true);
  const double A = p.A, B = p.B, R = p.R;
  ScatteringData sd;
  sd.background = p;
  sd.puncture = 1e-3 * std::max(1.0, std::abs(B));
  sd.phase_scale = 4.0 * R + 0.1;
  sd.a1 = [A, B, R](cplx k) {
    return 1.0 + A * A * std::exp(4.0 * IU * k * R) / (4.0 * (k * k - B * B));
  };
  sd.a2 = [](cplx) { return cplx{1.0}; };
  sd.b = [A, B, R](cplx k) {
    return -IU * A * std::exp(2.0 * IU * R * (k - B)) / (2.0 * (k - B));
  };
  sd.da1 = [A, B, R](cplx k) {
    const cplx d = k * k - B * B;
    return A * A * std::exp(4.0 * IU * k * R) * (4.0 * IU * R * d - 2.0 * k) /
           (4.0 * d * d);
  };
  sd.da2 = [](cplx) { return cplx{0.0}; };
  if (A != 0.0 && B != 0.0) {
    // exact regular product across either pole ((k-B)(k+B) = (k-P)(k+P))
    sd.a1_times = [A, R](cplx k, double P) {
      return (k - P) + A * A * std::exp(4.0 * IU * k * R) / (4.0 * (k + P));
    };
    // Laurent data at +-B
    sd.a1_plusB = A * A * std::exp(4.0 * IU * B * R) / (8.0 * B);
    sd.a1_minusB = -std::conj(sd.a1_plusB);
    sd.bB = -IU * A / 2.0;
    sd.a1_reg_plusB = 1.0 + sd.a1_plusB * (4.0 * IU * R - 1.0 / (2.0 * B));
    sd.a1_reg_minusB = 1.0 + sd.a1_minusB * (4.0 * IU * R + 1.0 / (2.0 * B));
    sd.residues_set = true;
  }
  return sd;
}

std::optional<double> find_imaginary_zero(const StepParams& p) {
  p.validate();
  const double A = p.A, B = p.B, R = p.R;
  if (4.0 * B * B - A * A >= 0.0) return std::nullopt;
  auto f = [&](double k) {
    return A * A * std::exp(-4.0 * k * R) - 4.0 * (B * B + k * k);
  };
  double lo = 0.0, hi = 0.5 * A;
  // f(lo) > 0, f(hi) <= 0: LHS decreasing, RHS increasing
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * std::max(1.0, hi); ++it) {
    const double m = 0.5 * (lo + hi);
    (f(m) > 0.0 ? lo : hi) = m;
  }
  double k0 = 0.5 * (lo + hi);
  for (int it = 0; it < 2; ++it) {  // Newton polish
    const double fp = -4.0 * R * A * A * std::exp(-4.0 * k0 * R) - 8.0 * k0;
    k0 -= f(k0) / fp;
  }
  return k0;
}

std::vector<std::pair<double, int>> find_real_zeros(const StepParams& p) {
  p.validate();
  const double A = p.A, B = p.B, R = p.R;
  const double tol = 1e-9;
  std::vector<std::pair<double, int>> zs;
  const double d = 4.0 * B * B - A * A;
  if (std::abs(d) <= tol * (4.0 * B * B + A * A)) {
    zs.emplace_back(0.0, 2);
    return zs;
  }
  if (d > 0.0 && R > 0.0) {
    const double s = R * std::sqrt(d) / PI;  // integer iff item 1.1
    if (s >= 0.5 && std::abs(s - std::round(s)) <= tol * std::max(1.0, s)) {
      const double k = 0.5 * std::sqrt(d);
      zs.emplace_back(k, 1);
      zs.emplace_back(-k, 1);
      return zs;
    }
  }
  if (R > 0.0) {
    const double s = R * std::sqrt(4.0 * B * B + A * A) / PI;  // half-integer iff 1.2
    if (std::abs(s - 0.5 - std::round(s - 0.5)) <= tol * std::max(1.0, s)) {
      const double k = 0.5 * std::sqrt(4.0 * B * B + A * A);
      zs.emplace_back(k, 1);
      zs.emplace_back(-k, 1);
    }
  }
  return zs;
}

double pair_y_of_tau(double tau, double b216) {
  const double ct = std::cos(tau) / std::sin(tau);
  const double tct = tau * ct;
  const double disc = std::sqrt(tct * tct + tau * tau - b216);
  if (tct > 0.0) return (tau * tau - b216) / (tct + disc);
  return -tct + disc;
}

double pair_slope_limit(int n, double B, double R) {
  const double q = PI * (2.0 * n - 1.0);
  return (q * q - 16.0 * B * B * R * R) / (2.0 * q);
}

std::vector<ComplexPair> find_complex_zeros(const StepParams& p) {
  p.validate();
  const double A = p.A, B = p.B, R = p.R;
  if (4.0 * std::abs(B) * R > PI + 1e-14)
    throw ValidationError("find_complex_zeros: hypothesis 4|B|R <= pi violated");
  std::vector<ComplexPair> pairs;
  if (R == 0.0 || A == 0.0) return pairs;

  const double b216 = 16.0 * B * B * R * R;
  const double a2r2 = 2.0 * A * A * R * R;
  auto a1 = [&](cplx k) {
    return 1.0 + A * A * std::exp(4.0 * IU * k * R) / (4.0 * (k * k - B * B));
  };
  auto da1 = [&](cplx k) {
    const cplx dd = k * k - B * B;
    return A * A * std::exp(4.0 * IU * k * R) * (4.0 * IU * R * dd - 2.0 * k) /
           (4.0 * dd * dd);
  };

  for (int n = 1;; ++n) {
    const double q = PI * (2.0 * n - 1.0);
    if (!(2.0 * a2r2 > q * q - b216)) break;  // 4 A^2 R^2 > pi^2(2n-1)^2 - 16 B^2 R^2
    const double t_lo = 2.0 * PI * n - PI, t_hi = 2.0 * PI * n;
    auto F = [&](double tau) {
      const double y = pair_y_of_tau(tau, b216);
      return y * std::exp(y) + a2r2 * std::sin(tau) / tau;
    };
    // bracket: F < 0 near the left endpoint (slope comparison), F -> +inf
    // at the right endpoint
    double a = 0.0, b = 0.0;
    for (double s = 0.25; s > 1e-12; s *= 0.5) {
      const double t = t_lo + s * PI;
      if (F(t) < 0.0) { a = t; break; }
    }
    for (double s = 0.25; s > 1e-12; s *= 0.5) {
      const double t = t_hi - s * PI;
      if (F(t) > 0.0) { b = t; break; }
    }
    if (a == 0.0 || b == 0.0 || !(a < b))
      throw NumericError("find_complex_zeros: bracketing failed");
    double fa = F(a);
    for (int it = 0; it < 200 && (b - a) > 1e-14 * b; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = F(m);
      if (fa * fm <= 0.0) b = m; else { a = m; fa = fm; }
    }
    double tau = 0.5 * (a + b);
    cplx root{-tau / (4.0 * R), pair_y_of_tau(tau, b216) / (4.0 * R)};
    for (int it = 0; it < 3; ++it) root -= a1(root) / da1(root);  // polish
    if (std::abs(a1(root)) > 1e-10)
      throw NumericError("find_complex_zeros: polished root does not satisfy a1 = 0");
    ComplexPair cp;
    cp.p = root;
    cp.tau = -4.0 * R * root.real();
    cp.y = 4.0 * R * root.imag();
    pairs.push_back(cp);
  }
  return pairs;
}

Rect zero_census_rect(const StepParams& p, double im_floor) {
  const double K = 0.5 * p.A + std::abs(p.B) + 1.0;
  return {-K, K, im_floor, K};
}

WindingProfile winding_profile(const ScatteringData& sd, const StepParams& p) {
  const double A = p.A, B = p.B;
  const double absB = std::abs(B);
  if (absB == 0.0)
    throw ValidationError("winding_profile: B must be nonzero");
  const double eps_B = sd.puncture;
  const double eps_0 = 1e-6 * std::max(1.0, absB);
  const double k_far = -std::max(20.0, 4.0 * (A + absB + 1.0));

  auto g = [&](double k) { return sd.a1(cplx{k}) * sd.a2(cplx{k}); };
  ArgTrackerOptions topt;
  topt.active_lo = -(0.5 * A + absB + 2.0);
  const double phase_scale = std::max(4.0 * p.R, 0.2);
  topt.active_dx = PI / (8.0 * phase_scale);
  ArgTracker tracker(g, k_far, -eps_0,
                     {{-absB, PI, eps_B}},  // pole continued through C+
                     topt);

  WindingProfile wp;
  // odd-pi crossings left of -|B| give the omegas (level pi at omega_n)
  std::vector<double> crossings;
  for (int j = 1;; ++j) {
    double x = 0.0;
    if (!tracker.find_level_crossing((2.0 * j - 1.0) * PI, k_far,
                                     -absB - eps_B, &x))
      break;
    crossings.push_back(x);
  }
  wp.n = static_cast<int>(crossings.size());
  wp.omegas.assign(crossings.rbegin(), crossings.rend());

  // theta at -|B| from the left limit  arg -> 2 pi n - theta
  const double a_eps = tracker.arg(-absB - eps_B);
  const double a_eps2 = tracker.arg(-absB - 2.0 * eps_B);
  const double a_lim = 2.0 * a_eps - a_eps2;  // linear extrapolation to the pole
  wp.theta_minusB = 2.0 * PI * wp.n - a_lim;
  if (!(wp.theta_minusB > 0.0 && wp.theta_minusB < PI))
    throw NumericError("winding_profile: theta at -|B| outside (0, pi); "
                       "Assumptions A violated");

  // band checks: the argument stays within (2 pi j - pi, 2 pi j + pi)
  // between consecutive crossings, and in (2 pi n, 2 pi n + pi) after the pole
  const double slack = 1e-6;
  for (const auto& an : tracker.anchors()) {
    if (an.x < -absB - eps_B) {
      int j = 0;
      for (double c : crossings)
        if (an.x > c) ++j;
      bool at_crossing = false;
      for (double c : crossings)
        if (std::abs(an.x - c) < 1e-9 * std::max(1.0, std::abs(c)))
          at_crossing = true;
      if (!at_crossing &&
          (an.argcum < 2.0 * PI * j - PI - slack ||
           an.argcum > 2.0 * PI * j + PI + slack))
        throw NumericError(
            "winding_profile: argument leaves the admissible band; "
            "Assumptions A violated");
    } else if (an.x > -absB + eps_B) {
      if (an.argcum < 2.0 * PI * wp.n - slack ||
          an.argcum > 2.0 * PI * wp.n + PI + slack)
        throw NumericError(
            "winding_profile: post-singularity argument leaves (2 pi n, 2 pi n + pi); "
            "Assumptions A violated");
    }
  }

  wp.winding_at_zero = tracker.arg_end();
  return wp;
}

namespace {
void reject_non_generic(const StepParams& p,
                        const std::vector<std::pair<double, int>>& real_zeros) {
  if (!real_zeros.empty())
    throw NumericError(
        "non-generic parameters: a1 has real zeros (Assumption A.2 fails)");
  // R exactly at a sector threshold (2n+-1) pi / (2 sqrt(4B^2+A^2))
  const double s = p.R * std::sqrt(4.0 * p.B * p.B + p.A * p.A) / PI;
  const double frac = std::abs(s - 0.5 - std::round(s - 0.5));
  if (frac <= 1e-9 * std::max(1.0, s))
    throw NumericError("non-generic parameters: R at a sector threshold");
}
}  // namespace

CaseTag classify_case(const SpectrumReport& rep) {
  reject_non_generic(rep.params, rep.real_zeros);
  const double w0 = rep.winding_at_zero_over_pi * PI;
  const auto half = static_cast<int>(std::lround(w0 / PI));
  if (std::abs(w0 - half * PI) > 1e-3 * PI)
    throw NumericError("classify_case: winding at k=0 is not a multiple of pi");
  CaseTag tag;
  const auto n_pairs = static_cast<int>(rep.pairs.size());
  if (half % 2 != 0) {
    tag.c = SpectralCase::I;
    tag.n = (half - 1) / 2;
    if (!rep.k0)
      throw NumericError("classify_case: odd winding but no imaginary zero");
  } else {
    tag.c = SpectralCase::II;
    tag.n = half / 2;
    if (rep.k0)
      throw NumericError("classify_case: even winding but an imaginary zero exists");
  }
  if (tag.n != n_pairs)
    throw NumericError("classify_case: pair count inconsistent with winding");
  return tag;
}

SpectrumReport analyze_step(const StepParams& p) {
  p.validate_winding_regime();
  SpectrumReport rep;
  rep.params = p;
  rep.real_zeros = find_real_zeros(p);
  if (auto k0 = find_imaginary_zero(p)) rep.k0 = *k0;
  rep.pairs = find_complex_zeros(p);
  const ScatteringData sd = step_spectral_functions(p);
  const WindingProfile wp = winding_profile(sd, p);
  rep.omegas = wp.omegas;
  rep.theta_minusB = wp.theta_minusB;
  rep.winding_at_zero_over_pi = wp.winding_at_zero / PI;
  const CaseTag tag = classify_case(rep);
  rep.case_tag = tag.c;
  rep.n = tag.n;
  if (rep.n != wp.n)
    throw NumericError("analyze_step: winding crossings inconsistent with pairs");
  return rep;
}

std::string report_to_json(const SpectrumReport& rep) {
  nlohmann::json j;
  j["params"] = {{"A", rep.params.A}, {"B", rep.params.B}, {"R", rep.params.R}};
  j["real_zeros"] = nlohmann::json::array();
  for (const auto& [k, m] : rep.real_zeros)
    j["real_zeros"].push_back({{"k", k}, {"multiplicity", m}});
  if (rep.k0)
    j["k0"] = *rep.k0;
  else
    j["k0"] = nullptr;
  j["pairs"] = nlohmann::json::array();
  for (const auto& cp : rep.pairs)
    j["pairs"].push_back({{"re", cp.p.real()},
                          {"im", cp.p.imag()},
                          {"tau", cp.tau},
                          {"y", cp.y}});
  j["omegas"] = rep.omegas;
  j["theta_minusB"] = rep.theta_minusB;
  j["winding_at_zero_over_pi"] = rep.winding_at_zero_over_pi;
  j["case"] = rep.case_tag == SpectralCase::I ? "I" : "II";
  j["n"] = rep.n;
  return j.dump(2);
}

SpectrumReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SpectrumReport rep;
  rep.params = {j["params"]["A"].get<double>(), j["params"]["B"].get<double>(),
                j["params"]["R"].get<double>()};
  for (const auto& rz : j["real_zeros"])
    rep.real_zeros.emplace_back(rz["k"].get<double>(),
                                rz["multiplicity"].get<int>());
  if (!j["k0"].is_null()) rep.k0 = j["k0"].get<double>();
  for (const auto& pj : j["pairs"]) {
    ComplexPair cp;
    cp.p = cplx{pj["re"].get<double>(), pj["im"].get<double>()};
    cp.tau = pj["tau"].get<double>();
    cp.y = pj["y"].get<double>();
    rep.pairs.push_back(cp);
  }
  rep.omegas = j["omegas"].get<std::vector<double>>();
  rep.theta_minusB = j["theta_minusB"].get<double>();
  rep.winding_at_zero_over_pi = j["winding_at_zero_over_pi"].get<double>();
  rep.case_tag =
      j["case"].get<std::string>() == "I" ? SpectralCase::I : SpectralCase::II;
  rep.n = j["n"].get<int>();
  return rep;
}

}  // namespace nnls
