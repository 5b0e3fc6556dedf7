#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "nnls/initial_datum.hpp"
#include "nnls/jost.hpp"
#include "nnls/types.hpp"

namespace nnls {

// Laurent coefficients of f around `center` from ring sums at two radii
// (one Richardson halving). residual reports how well a simple-pole model
// reproduces f on an intermediate circle.
struct RingFit {
  cplx c_m1{}, c0{}, c1{}, c2{};
  double residual = 0.0;
};
RingFit laurent_ring_fit(const CplxFn& f, cplx center, double radius,
                         int npts = 8);

// Spectral data evaluators. a1 on the closed upper half-plane minus {±B},
// a2 on the closed lower half-plane, b on R \ {B} (all three extend off the
// axis for exact-tail data, which is what the ring fits rely on).
// Shareable across threads read-only.
struct ScatteringData {
  StepParams background;
  CplxFn a1, a2, b;
  CplxFn da1, da2;  // analytic derivatives when available (closed form)
  // a1(k) * (k - P) for P in {B, -B}, regular across the pole; exact for
  // closed forms, Laurent-based for numerical data
  std::function<cplx(cplx, double)> a1_times;
  cplx a1_plusB{}, a1_minusB{}, bB{};
  cplx a1_reg_plusB{}, a1_reg_minusB{};  // regular parts of a1 at ±B
  bool residues_set = false;
  double puncture = 1e-3;
  double zero_floor = 1e-12;   // Assumption A.2 guard for r1, r2
  double phase_scale = 1.0;    // fastest oscillation rate of a1 in k

  cplx r1(double k) const;
  cplx r2(double k) const;
  // w = 1/(a1 a2) = 1 + r1 r2 on the real line
  cplx w(double k) const { return 1.0 / (a1(cplx{k}) * a2(cplx{k})); }
  // w(k)/(k - P) for P in {B, -B}; stable across the puncture at P
  cplx w_over_pole(double k, double P) const;
};

struct ScatteringOptions {
  JostOptions jost;
  double puncture_scale = 1e-3;  // puncture = scale * max(1, |B|)
  double ring_radius = 1e-2;
};

ScatteringData compute_scattering(const InitialDatum& datum,
                                  const ScatteringOptions& opt = {});

struct ResidueCoefficients {
  cplx a1_plusB{}, a1_minusB{}, bB{};
  cplx a1_reg_plusB{}, a1_reg_minusB{};
  cplx taylor_plus[4]{}, taylor_minus[4]{};  // (k -+ B) a1(k) expansions
  double fit_residual = 0.0;
};
// Laurent-fit residues of a1 at ±B and of b at B. Throws NumericError when
// the fit residual signals a non-simple pole (e.g. B = 0).
ResidueCoefficients residue_coefficients(const CplxFn& a1, const CplxFn& b,
                                         double B, double radius = 1e-2,
                                         double tol = 1e-6);

struct NormingConstants {
  std::optional<cplx> gamma0;
  std::vector<cplx> etas;      // at p_j; implied hat-eta_j = 1/conj(eta_j)
  double max_residual = 0.0;   // worst column-proportionality residual
};
// Constants of proportionality Psi1^(1)(0,0,k*) = c Psi2^(2)(0,0,k*) at the
// given simple zeros of a1 in the open upper half-plane.
NormingConstants norming_constants(const InitialDatum& datum,
                                   const std::optional<cplx>& ik0,
                                   const std::vector<cplx>& pair_roots,
                                   double tol = 1e-6,
                                   const JostOptions& jopt = {});

struct ReflectionCoefficients {
  std::function<cplx(double)> r1, r2;
};
ReflectionCoefficients reflection_coefficients(const ScatteringData& sd);

// Real k grid [k_min, k_max] with n points, skipping the punctures at ±B.
std::vector<double> real_k_grid(double k_min, double k_max, std::size_t n,
                                double B, double puncture);

// CSV columns: k, re(a1), im(a1), re(a2), im(a2), re(b), im(b)
void write_scattering_csv(const ScatteringData& sd,
                          const std::vector<double>& k_grid, std::ostream& os);

}  // namespace nnls
