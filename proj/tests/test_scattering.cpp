#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nnls/initial_datum.hpp"
#include "nnls/jost.hpp"
#include "nnls/scattering.hpp"
#include "nnls/step_spectrum.hpp"

using namespace nnls;

namespace {

InitialDatum pure_step(double A, double B, double R) {
  GridSpec g{-6.0, 6.0, 4801};
  return build_initial_datum({A, B, R}, std::nullopt, 0.0, g);
}

const InitialDatum& fixture_datum() {
  static InitialDatum d = pure_step(2.0, 0.5, 0.2);
  return d;
}

}  // namespace

TEST_CASE("datum construction: sharp step tails") {
  const InitialDatum d = pure_step(2.0, 0.5, 0.2);
  CHECK(d.eval(0.2) == cplx{0.0});
  CHECK(d.eval(-3.1) == cplx{0.0});
  const double x = 1.37;
  CHECK(std::abs(d.eval(x) - 2.0 * std::exp(cplx{0.0, x})) < 1e-15);
  // heaviside case
  const InitialDatum h = pure_step(1.0, 0.0, 0.0);
  CHECK(h.eval(-0.01) == cplx{0.0});
  CHECK(std::abs(h.eval(0.01) - 1.0) < 1e-15);
}

TEST_CASE("datum construction: perturbation keeps tails, params recorded") {
  Perturbation bump;
  bump.lo = -1.0;
  bump.hi = 1.0;
  bump.f = [](double x) {
    const double u = 1.0 - x * x;
    return cplx{0.0, 0.3 * std::exp(-1.0 / u)};
  };
  GridSpec g{-6.0, 6.0, 4801};
  const InitialDatum d = build_initial_datum({2.0, 0.5, 0.2}, bump, 0.0, g);
  CHECK(d.background.A == 2.0);
  CHECK(d.left_tail_bound == -1.0);
  CHECK(d.right_tail_bound == 1.0);
  CHECK(d.eval(-1.5) == cplx{0.0});
  CHECK(std::abs(d.eval(2.5) - 2.0 * std::exp(cplx{0.0, 2.5})) < 1e-15);
  // interior differs from the plain step
  CHECK(std::abs(d.eval(0.0)) > 0.0);
}

TEST_CASE("datum construction: error paths") {
  GridSpec coarse{-6.0, 6.0, 5};  // dx = 3 > pi/(2|B|) for B = 2
  CHECK_THROWS_AS(build_initial_datum({1.0, 2.0, 0.1}, std::nullopt, 0.0, coarse),
                  ValidationError);
  Perturbation outside;
  outside.lo = -20.0;
  outside.hi = -10.0;
  outside.f = [](double) { return cplx{0.1}; };
  GridSpec g{-6.0, 6.0, 1001};
  CHECK_THROWS_AS(build_initial_datum({1.0, 0.5, 0.1}, outside, 0.0, g),
                  ValidationError);
}

TEST_CASE("datum CSV round trip") {
  const InitialDatum d = pure_step(2.0, 0.5, 0.2);
  std::stringstream ss;
  write_datum_csv(d, ss);
  const InitialDatum r = read_datum_csv(ss);
  CHECK(r.background.A == d.background.A);
  CHECK(r.background.B == d.background.B);
  CHECK(std::abs(r.dx - d.dx) <= 1e-15 * d.dx);
  REQUIRE(r.samples.size() == d.samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < r.samples.size(); ++i)
    worst = std::max(worst, std::abs(r.samples[i] - d.samples[i]));
  CHECK(worst <= 1e-15 * 2.0);
}

TEST_CASE("jost: pure step Psi2 matches the explicit matrix on [-R, R]") {
  const InitialDatum& d = fixture_datum();
  const double A = 2.0, B = 0.5, R = 0.2;
  for (cplx k : {cplx{0.9, 0.0}, cplx{-1.3, 0.0}, cplx{0.4, 0.7}}) {
    for (double x : {-0.2, -0.07, 0.0, 0.13, 0.2}) {
      const Mat2 got = integrate_jost(d, Side::right, k, x).m;
      const cplx e_p = std::exp(cplx{0.0, B * x});
      const cplx expect12 = -IU * A * e_p *
                            std::exp(2.0 * IU * (k + B) * (R - x)) /
                            (2.0 * (k + B));
      CHECK(std::abs(got.a11 - e_p) < 1e-8);
      CHECK(std::abs(got.a12 - expect12) < 1e-8);
      CHECK(std::abs(got.a21) < 1e-8);
      CHECK(std::abs(got.a22 - 1.0 / e_p) < 1e-8);
    }
  }
}

TEST_CASE("jost: zero datum gives the identity") {
  GridSpec g{-2.0, 2.0, 401};
  const InitialDatum z = build_initial_datum({0.0, 0.0, 0.0}, std::nullopt, 0.0, g);
  for (cplx k : {cplx{0.3}, cplx{-2.0, 0.5}, cplx{0.0, 1.0}}) {
    const Mat2 p = integrate_jost(z, Side::left, k, 1.2).m;
    CHECK(std::abs(p.a11 - 1.0) < 1e-12);
    CHECK(std::abs(p.a12) < 1e-12);
    CHECK(std::abs(p.a21) < 1e-12);
    CHECK(std::abs(p.a22 - 1.0) < 1e-12);
  }
}

TEST_CASE("jost: det = 1 and the Psi symmetry on real k") {
  const InitialDatum& d = fixture_datum();
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> uk(-4.0, 4.0), ux(-1.5, 1.5);
  for (int trial = 0; trial < 12; ++trial) {
    double k = uk(rng);
    if (std::abs(k - 0.5) < 0.05 || std::abs(k + 0.5) < 0.05) k += 0.11;
    const double x = ux(rng);
    const Mat2 p1 = integrate_jost(d, Side::left, k, x).m;
    const Mat2 p2 = integrate_jost(d, Side::right, k, x).m;
    CHECK(std::abs(p1.det() - 1.0) <= 1e-8);
    CHECK(std::abs(p2.det() - 1.0) <= 1e-8);
    // sigma1 conj(Psi1)(-x, -k) sigma1 = Psi2(x, k)
    const Mat2 q = integrate_jost(d, Side::left, -k, -x).m;
    const Mat2 lhs{std::conj(q.a22), std::conj(q.a21), std::conj(q.a12),
                   std::conj(q.a11)};
    CHECK(std::abs(lhs.a11 - p2.a11) <= 1e-8);
    CHECK(std::abs(lhs.a12 - p2.a12) <= 1e-8);
    CHECK(std::abs(lhs.a21 - p2.a21) <= 1e-8);
    CHECK(std::abs(lhs.a22 - p2.a22) <= 1e-8);
  }
}

TEST_CASE("jost: k exactly at the tail pole is rejected") {
  const InitialDatum& d = fixture_datum();
  CHECK_THROWS_AS(integrate_jost(d, Side::left, cplx{0.5}, 0.0), NumericError);
  CHECK_THROWS_AS(integrate_jost(d, Side::right, cplx{-0.5}, 0.0), NumericError);
}

TEST_CASE("scattering: pure step matches the closed forms") {
  const ScatteringData num = compute_scattering(fixture_datum());
  const ScatteringData ref = step_spectral_functions({2.0, 0.5, 0.2});

  CHECK(std::abs(num.a1(cplx{0.0}) - (-3.0)) < 1e-6);
  CHECK(std::abs(num.a2(cplx{0.0}) - 1.0) < 1e-8);

  for (cplx k : {cplx{1.7}, cplx{-0.9}, cplx{0.2}, cplx{3.3}, cplx{0.7, 0.3},
                 cplx{-1.1, 1.4}, cplx{0.0, 2.2}}) {
    CHECK(rel_diff(num.a1(k), ref.a1(k)) < 1e-6);
    if (k.imag() == 0.0) {
      CHECK(rel_diff(num.b(k), ref.b(k)) < 1e-6);
      CHECK(std::abs(num.a2(k) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("scattering: zero datum is the identity scattering") {
  GridSpec g{-2.0, 2.0, 401};
  const InitialDatum z = build_initial_datum({0.0, 0.0, 0.0}, std::nullopt, 0.0, g);
  const ScatteringData sd = compute_scattering(z);
  CHECK(std::abs(sd.a1(cplx{0.4}) - 1.0) < 1e-12);
  CHECK(std::abs(sd.a2(cplx{-1.3}) - 1.0) < 1e-12);
  CHECK(std::abs(sd.b(cplx{0.9})) < 1e-12);
  CHECK_FALSE(sd.residues_set);
}

TEST_CASE("scattering: symmetry conj(a1(-conj k)) = a1(k)") {
  const ScatteringData num = compute_scattering(fixture_datum());
  const cplx k{0.7, 0.3};
  const cplx lhs = std::conj(num.a1(-std::conj(k)));
  CHECK(rel_diff(lhs, num.a1(k)) < 1e-8);
}

TEST_CASE("scattering: determinant relation on a real grid") {
  const ScatteringData num = compute_scattering(fixture_datum());
  for (double k : real_k_grid(-3.0, 3.0, 21, 0.5, 2e-2)) {
    const cplx lhs = num.a1(cplx{k}) * num.a2(cplx{k}) +
                     num.b(cplx{k}) * std::conj(num.b(cplx{-k}));
    CHECK(std::abs(lhs - 1.0) < 1e-7);
  }
}

TEST_CASE("residues: ring fit against the analytic value and (scoeff)") {
  const ScatteringData num = compute_scattering(fixture_datum());
  REQUIRE(num.residues_set);
  // a1^B = A^2 e^{4iBR} / (8B) = e^{0.4 i}
  const cplx expect{0.92106099400288508, 0.38941834230865049};
  CHECK(std::abs(num.a1_plusB - expect) < 1e-8);
  CHECK(std::abs(num.a1_minusB + std::conj(num.a1_plusB)) < 1e-8);
  // a1^B = -(A/2i) conj(b(-B))
  const cplx chain = -(2.0 / (2.0 * IU)) * std::conj(num.b(cplx{-0.5}));
  CHECK(std::abs(num.a1_plusB - chain) < 1e-8);
  // third relation: a2(B) = (2i/A) b^B when a1^B != 0
  CHECK(std::abs(num.a2(cplx{0.5}) - (2.0 * IU / 2.0) * num.bB) < 1e-7);

  // independent trapezoid ring oracle for the Laurent coefficient
  const int N = 2048;
  cplx acc = 0.0;
  const double rho = 1e-2;
  for (int j = 0; j < N; ++j) {
    const double th = 2.0 * PI * j / N;
    const cplx z{rho * std::cos(th), rho * std::sin(th)};
    acc += num.a1(cplx{0.5} + z) * z;
  }
  acc /= static_cast<double>(N);
  CHECK(std::abs(acc - num.a1_plusB) < 1e-8);
}

TEST_CASE("residues: double pole at B = 0 is rejected") {
  const ScatteringData sd = step_spectral_functions({1.0, 0.0, 0.3});
  CHECK_THROWS_AS(residue_coefficients(sd.a1, sd.b, 0.0), NumericError);
}

TEST_CASE("norming constants: pure step gamma0") {
  const InitialDatum& d = fixture_datum();
  // k0 frozen from the transcendental equation for (2, 0.5, 0.2)
  const double k0 = 0.60516921337065315;
  const NormingConstants nc =
      norming_constants(d, cplx{0.0, k0}, {}, 1e-6);
  REQUIRE(nc.gamma0.has_value());
  CHECK(std::abs(std::abs(*nc.gamma0) - 1.0) <= 1e-6);
  // frozen from the closed-form column ratio -iA e^{-2k0 R - 2iBR}/(2(ik0-B))
  const cplx expect{-0.62900578443874351, 0.77740061946373631};
  CHECK(std::abs(*nc.gamma0 - expect) < 1e-6);
}

TEST_CASE("norming constants: zero datum and bogus zero") {
  GridSpec g{-2.0, 2.0, 401};
  const InitialDatum z = build_initial_datum({0.0, 0.0, 0.0}, std::nullopt, 0.0, g);
  const NormingConstants nc = norming_constants(z, std::nullopt, {});
  CHECK_FALSE(nc.gamma0.has_value());
  CHECK(nc.etas.empty());
  // a point that is not a zero of a1 must be refused
  CHECK_THROWS_AS(norming_constants(fixture_datum(), cplx{0.0, 0.3}, {}),
                  NumericError);
}

TEST_CASE("reflection coefficients: endpoint and identities") {
  const ScatteringData num = compute_scattering(fixture_datum());
  const ReflectionCoefficients rc = reflection_coefficients(num);
  // frozen: r1(0) = 2i e^{-0.2i} / (-3)
  const cplx expect{-0.13244622053004081, -0.65337771856082775};
  CHECK(std::abs(rc.r1(0.0) - expect) < 1e-7);

  for (double k : real_k_grid(-2.5, 2.5, 17, 0.5, 2e-2)) {
    const cplx lhs = 1.0 + rc.r1(k) * rc.r2(k);
    const cplx rhs = 1.0 / (num.a1(cplx{k}) * num.a2(cplx{k}));
    CHECK(rel_diff(lhs, rhs) < 1e-8);
    // r-sym
    const cplx sym_l = rc.r1(-k) * rc.r2(-k);
    const cplx sym_r = std::conj(rc.r1(k)) * std::conj(rc.r2(k));
    CHECK(std::abs(sym_l - sym_r) < 1e-7);
  }

  // r1 has a simple zero at -B: r1(-B+eps) ~ c * eps
  const double e1 = std::abs(rc.r1(-0.5 + 1e-3));
  const double e2 = std::abs(rc.r1(-0.5 + 2e-3));
  CHECK(e1 < 2e-3);
  CHECK(std::abs(e2 / e1 - 2.0) < 0.05);
}

TEST_CASE("scattering CSV format") {
  const ScatteringData sd = step_spectral_functions({2.0, 0.5, 0.2});
  std::stringstream ss;
  write_scattering_csv(sd, real_k_grid(-1.0, 1.0, 5, 0.5, 1e-3), ss);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "k,re_a1,im_a1,re_a2,im_a2,re_b,im_b");
  int rows = 0;
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 5);
}
