#include <cmath>

#include "doctest.h"
#include "nnls/cauchy.hpp"
#include "nnls/step_spectrum.hpp"

using namespace nnls;

namespace {
const ScatteringData& sd_112() {
  static ScatteringData sd = step_spectral_functions({1.0, 1.0, 0.2});
  return sd;
}
const ScatteringData& sd_mid() {  // B < 0 middle-sector fixture
  static ScatteringData sd = step_spectral_functions({2.0, -0.5, 0.2});
  return sd;
}
}  // namespace

TEST_CASE("nu: zero amplitude gives nu = 0 and delta = 1") {
  const ScatteringData z = step_spectral_functions({0.0, 0.0, 0.0});
  const NuValue nu = compute_nu(z, 1.3);
  CHECK(nu.re == 0.0);
  CHECK(nu.im == 0.0);
  const CauchyDelta d(z, 1.3);
  CHECK(std::abs(d.value(cplx{0.4, 0.7}) - 1.0) < 1e-12);
}

TEST_CASE("nu at xi = 2 for (1, 1, 0.2): frozen value and dual quadrature") {
  const NuValue nu = compute_nu(sd_112(), 2.0);
  CHECK(std::abs(nu.re - 0.00016517908773970933) < 1e-10);
  CHECK(std::abs(nu.im - (-0.013258835864683469)) < 1e-10);
  CHECK(nu.m == 0);

  // independent dense-trapezoid tracking of the cumulative argument
  double arg_cum = 0.0;
  double prev = std::arg(sd_112().w(-60.0));
  const int N = 120000;
  for (int i = 1; i <= N; ++i) {
    const double z = -60.0 + 58.0 * static_cast<double>(i) / N;
    const double a = std::arg(sd_112().w(z));
    double d = a - prev;
    while (d > PI) d -= 2.0 * PI;
    while (d < -PI) d += 2.0 * PI;
    arg_cum += d;
    prev = a;
  }
  arg_cum += std::arg(sd_112().w(-60.0));  // anchor at the far-left principal arg
  CHECK(std::abs(-arg_cum / (2.0 * PI) - nu.im) < 1e-6);
}

TEST_CASE("nu in the middle sector uses the zero-crossing convention") {
  const NuValue nu = compute_nu(sd_mid(), 0.2);
  CHECK(nu.im > 0.0);
  CHECK(nu.im < 0.5);
  CHECK(nu.m == 0);
  // transition rays are refused
  CHECK_THROWS_AS(compute_nu(sd_mid(), 0.5), NumericError);
}

TEST_CASE("delta: normalization at large |k|") {
  const CauchyDelta d(sd_112(), 2.0);
  CHECK(std::abs(d.value(cplx{0.0, 1e6}) - 1.0) <= 1e-5);
  CHECK(std::abs(d.value(cplx{1e6, 0.0}) - 1.0) <= 1e-5);
}

TEST_CASE("delta: jump condition on the cut") {
  const CauchyDelta d(sd_112(), 2.0);
  for (int i = 0; i < 20; ++i) {
    const double s = -2.05 - 20.0 * i / 19.0;
    const cplx ratio = d.boundary(s, +1) / d.boundary(s, -1);
    const cplx w = sd_112().w(s);
    CHECK(rel_diff(ratio, w) <= 1e-6);
  }
}

TEST_CASE("delta: singular-factor splitting and Plemelj dual route") {
  const CauchyDelta d(sd_112(), 2.0);
  const cplx nu = d.nu().as_complex();
  // (dsing): delta = (k + xi)^{i nu} e^{chi} in C+
  for (cplx k : {cplx{-1.0, 0.5}, cplx{1.3, 2.0}, cplx{-2.5, 0.1}}) {
    const cplx lhs = d.value(k);
    const cplx rhs = std::exp(IU * nu * std::log(k + 2.0) + d.chi(k));
    CHECK(rel_diff(lhs, rhs) < 1e-8);
  }
  // boundary values against the Plemelj principal-value route
  for (double s : {-2.7, -4.4, -9.1}) {
    const CutLog cut(sd_112(), -2.0);
    const cplx pv =
        pv_cauchy([&](double z) { return cut.L(z); }, -kInf, -2.0, s);
    for (int sign : {+1, -1}) {
      const cplx lhs = std::log(d.boundary(s, sign));
      const cplx rhs =
          0.5 * static_cast<double>(sign) * cut.L(s) + pv / (2.0 * PI * IU);
      CHECK(std::abs(std::exp(lhs) - std::exp(rhs)) /
                std::abs(std::exp(rhs)) <
            1e-6);
    }
  }
}

TEST_CASE("delta: local exponent along a ray into the stationary point") {
  const CauchyDelta d(sd_112(), 2.0);
  const double im_nu = d.nu().im;
  const cplx dir = std::exp(cplx{0.0, 3.0 * PI / 4.0});
  // |delta| ~ s^{-Im nu} along k = -xi + s dir
  const double s1 = 1e-3, s2 = 1e-5;
  const double v1 = std::log(std::abs(d.value(-2.0 + s1 * dir)));
  const double v2 = std::log(std::abs(d.value(-2.0 + s2 * dir)));
  const double slope = (v1 - v2) / (std::log(s1) - std::log(s2));
  CHECK(std::abs(slope - (-im_nu)) < 5e-3);
}

TEST_CASE("delta: chi is continuous at the stationary point") {
  const CauchyDelta d(sd_112(), 2.0);
  const cplx nu = d.nu().as_complex();
  const cplx chi_end = d.chi_at_endpoint();
  const cplx k1 = cplx{-2.0} + cplx{0.0, 1e-3};
  const cplx k2 = cplx{-2.0} + cplx{0.0, 1e-5};
  const cplx r1 = d.value(k1) * std::exp(-IU * nu * std::log(k1 + 2.0));
  const cplx r2 = d.value(k2) * std::exp(-IU * nu * std::log(k2 + 2.0));
  const double e1 = std::abs(r1 - std::exp(chi_end));
  const double e2 = std::abs(r2 - std::exp(chi_end));
  CHECK(e2 < e1);
  CHECK(e2 / std::abs(std::exp(chi_end)) < 1e-3);
}

TEST_CASE("delta refuses a cut through the zeros of 1 + r1 r2") {
  CHECK_THROWS_AS(CauchyDelta(sd_mid(), 0.2), ValidationError);
}

TEST_CASE("hat-delta: independence of k-tilde") {
  const cplx kt1{0.0, 1.5}, kt2{1.0, 2.0};
  const CauchyHatDelta h1(sd_mid(), 0.2, -0.5, kt1);
  const CauchyHatDelta h2(sd_mid(), 0.2, -0.5, kt2);
  for (cplx k : {cplx{0.5}, cplx{1.0, 0.8}, cplx{-0.1, -1.2}, cplx{2.0}}) {
    CHECK(std::abs(h1.value(k) - h2.value(k)) <= 1e-8);
  }
}

TEST_CASE("hat-delta: jump, normalization, zero at the pole") {
  const CauchyHatDelta h(sd_mid(), 0.2, -0.5);
  // jump on (-inf, -xi) away from the pole
  for (double s : {-3.0, -1.2, -0.75, -0.31}) {
    const cplx ratio = h.boundary(s, +1) / h.boundary(s, -1);
    CHECK(rel_diff(ratio, sd_mid().w(s)) <= 1e-6);
  }
  // normalization
  CHECK(std::abs(h.value(cplx{0.0, 1e6}) - 1.0) <= 1e-5);
  CHECK(std::abs(h.value(cplx{3e5, -3e5}) - 1.0) <= 1e-5);
  // simple zero at k = P from above: hat/(k - P) bounded and nonzero
  const cplx r1 = h.value(cplx{-0.5, 1e-3}) / cplx{0.0, 1e-3};
  const cplx r2 = h.value(cplx{-0.5, 1e-4}) / cplx{0.0, 1e-4};
  CHECK(std::abs(r1) > 1e-3);
  CHECK(rel_diff(r1, r2) < 0.05);
}

TEST_CASE("hat-delta: nu matches compute_nu and the extension is continuous") {
  const CauchyHatDelta h(sd_mid(), 0.2, -0.5);
  const NuValue nu = compute_nu(sd_mid(), 0.2);
  CHECK(std::abs(h.nu().re - nu.re) < 1e-9);
  CHECK(std::abs(h.nu().im - nu.im) < 1e-9);
  // continuity across (-xi, inf): C+ and C- formulas meet the real-axis value
  const cplx above = h.value(cplx{1.3, 1e-5});
  const cplx at = h.value(cplx{1.3});
  const cplx below = h.value(cplx{1.3, -1e-5});
  CHECK(rel_diff(above, at) < 1e-3);
  CHECK(rel_diff(below, at) < 1e-3);
}

TEST_CASE("a2 identity by the principal-value route (no imaginary zero)") {
  // the identity is a fact about index-zero spectral data: it requires a1
  // to be zero-free in C+ (4B^2 > A^2), which is where its derivation via
  // the Plemelj representation of a2 lives
  const ScatteringData s2 = step_spectral_functions({1.0, -1.0, 0.2});
  for (double xi : {0.0, 0.2, 0.45}) {
    const double res = verify_a2_identity(s2, xi, -1.0);
    CHECK(res <= 1e-6);
    const double res2 = verify_a2_identity(s2, xi, -1.0, cplx{1.0, 2.0});
    CHECK(res2 <= 1e-6);
    CHECK(std::abs(res - res2) <= 1e-6);
  }
  const ScatteringData s3 = step_spectral_functions({1.2, -0.8, 0.3});
  CHECK(verify_a2_identity(s3, 0.3, -0.8) <= 1e-6);
}

TEST_CASE("a2 identity acquires a Blaschke defect with an imaginary zero") {
  // when a1 has the zero i k0 the index of the log data along the line is
  // -2 pi and the plain product fails by an O(1) factor; kept as a pinned
  // regression of the known limitation (see the acceptance notes)
  const double res = verify_a2_identity(sd_mid(), 0.2, -0.5);
  CHECK(res > 1.0);
  const double res2 = verify_a2_identity(sd_mid(), 0.2, -0.5, cplx{1.0, 2.0});
  CHECK(std::abs(res - res2) < 1e-6);  // still k-tilde independent
}

TEST_CASE("delta on numerically computed scattering data") {
  // the full pipeline: datum -> Jost ODE -> w -> tracked log -> delta
  GridSpec g{-6.0, 6.0, 2401};
  const InitialDatum datum =
      build_initial_datum({2.0, 0.5, 0.2}, std::nullopt, 0.0, g);
  ScatteringOptions sopt;
  const ScatteringData num = compute_scattering(datum, sopt);
  const ScatteringData ref = step_spectral_functions({2.0, 0.5, 0.2});
  QuadOptions q;
  q.abs_tol = 1e-8;
  q.rel_tol = 1e-8;
  const CauchyDelta dn(num, 2.0, q);
  const CauchyDelta dr(ref, 2.0, q);
  const cplx k{-0.5, 0.0};  // the plane-wave evaluation point -B
  CHECK(rel_diff(dn.value(k), dr.value(k)) < 1e-5);
}
