#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nnls/arg_tracker.hpp"
#include "nnls/scattering.hpp"
#include "nnls/step_params.hpp"

namespace nnls {

// Closed-form spectral functions of the shifted oscillatory step:
//   a1(k) = 1 + A^2 e^{4ikR} / (4(k^2 - B^2)),  a2 = 1,
//   b(k)  = -iA e^{2iR(k-B)} / (2(k-B)),
// with residues populated analytically.
ScatteringData step_spectral_functions(const StepParams& p);

// Unique k0 > 0 with A^2 e^{-4 k0 R} = 4(B^2 + k0^2), when 4B^2 - A^2 < 0.
std::optional<double> find_imaginary_zero(const StepParams& p);

// Real zeros (k, multiplicity); nonempty only on the measure-zero parameter
// sets of the classification (membership tested with relative tol 1e-9).
std::vector<std::pair<double, int>> find_real_zeros(const StepParams& p);

// One non-real zero pair {p, -conj p} per admissible branch index n:
// p = (-tau + i y)/(4R) with (tau, y) the unique solution of the
// transcendental system on tau in (2 pi n - pi, 2 pi n).
struct ComplexPair {
  double tau = 0.0, y = 0.0;
  cplx p;
};
std::vector<ComplexPair> find_complex_zeros(const StepParams& p);

// y(tau) branch entering the transcendental system, b216 = 16 B^2 R^2;
// evaluated in a cancellation-free form.
double pair_y_of_tau(double tau, double b216);
// slope of y e^y at the left endpoint tau = 2 pi n - pi
double pair_slope_limit(int n, double B, double R);

// A-priori rectangle containing all upper half-plane zeros of the step a1.
Rect zero_census_rect(const StepParams& p, double im_floor = 1e-3);

// Winding of the argument of a1 a2 along (-inf, 0) \ {-|B|}, continued
// through the upper half-plane at the pole.
struct WindingProfile {
  std::vector<double> omegas;     // omega_1 > omega_2 > ... > omega_n
  double theta_minusB = 0.0;      // in (0, pi)
  double winding_at_zero = 0.0;   // continued arg at k -> 0-, multiple of pi
  int n = 0;                      // number of odd-pi crossings
};
WindingProfile winding_profile(const ScatteringData& sd, const StepParams& p);

enum class SpectralCase { I, II };

struct CaseTag {
  SpectralCase c = SpectralCase::II;
  int n = 0;
};

struct SpectrumReport {
  StepParams params;
  std::vector<std::pair<double, int>> real_zeros;
  std::optional<double> k0;
  std::vector<ComplexPair> pairs;
  std::vector<double> omegas;
  double theta_minusB = 0.0;
  double winding_at_zero_over_pi = 0.0;
  SpectralCase case_tag = SpectralCase::II;
  int n = 0;
};

// Case tag from the zero census and winding profile; rejects non-generic
// parameters (real zeros, sector-threshold R) and inconsistent censuses.
CaseTag classify_case(const SpectrumReport& partial_report);

// Full pure-step spectral analysis: zeros, winding, classification.
SpectrumReport analyze_step(const StepParams& p);

std::string report_to_json(const SpectrumReport& rep);
SpectrumReport report_from_json(const std::string& text);

}  // namespace nnls
