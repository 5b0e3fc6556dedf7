#pragma once

#include <map>
#include <mutex>
#include <string>

#include "nnls/cauchy.hpp"
#include "nnls/step_spectrum.hpp"

namespace nnls {

// theta(k, xi) = 4 k xi + 2 k^2; stationary point at k = -xi
inline cplx phase_theta(cplx k, double xi) {
  return 4.0 * k * xi + 2.0 * k * k;
}

// Ray falls inside a blow-up neighbourhood of the periodic denominator.
struct BlowUpRegionError : NumericError {
  using NumericError::NumericError;
};

enum class SectorKind {
  zm_decay_left,       // xi < Re p_n side, m = 0 (precise for n = 0)
  plane_wave_right,    // rightmost plane-wave sector, m = 0
  zm_decay_mid,        // middle sector, B > 0
  periodic_mid,        // middle sector, B < 0
  pr1_plane_wave,      // item 1 with m >= 1
  pr1_decay_left,      // item 2 with m >= 1
  pr1_decay_right,     // item 3
  pr1_reflected_wave,  // item 4
};

const char* sector_name(SectorKind k);

struct RaySector {
  SectorKind kind;
  int m = 0;
  double lo = -kInf, hi = kInf;  // bounding rays
  double xi = 0.0;
};

// Sector of the ray xi = x/(4t). Throws TransitionRegionError on the
// boundary rays {+-|B|, +-omega_j, +-Re p_j} and xi = 0 in Case I.
RaySector classify_ray(double xi, const SpectrumReport& rep);

struct AsymptoticTerm {
  cplx value{0.0};
  bool bound_only = false;   // only a magnitude order is known
  double error_exponent = 0.0;
  bool log_factor = false;   // remainder carries a log t
  std::string formula_id;
};

// Evaluates the leading-order formulas of the long-time theorems; caches
// the Cauchy-integral constants per sector ray.
class AsymptoticEvaluator {
 public:
  AsymptoticEvaluator(ScatteringData sd, SpectrumReport rep);

  const SpectrumReport& report() const { return rep_; }
  RaySector classify(double xi) const { return classify_ray(xi, rep_); }

  // leading term at (x, t) on the sector's ray
  AsymptoticTerm leading_term(double x, double t, const RaySector& s) const;

  // Zakharov-Manakov amplitudes (which = 1 or 2)
  cplx zm_amplitude(double xi, int which) const;

  // the periodic middle-sector ratio as a function of (x, t) with the
  // sector constants frozen at xi_sector; lets the matching test evaluate
  // both one-sided formulas at a common point
  cplx periodic_formula(double x, double t, double xi_sector) const;

  // modulated plane-wave values (items 1 and 4 of the general proposition)
  cplx plane_wave_formula(double x, double t, double xi, int m) const;
  cplx reflected_wave_formula(double x, double t, double xi, int m) const;

 private:
  ScatteringData sd_;
  SpectrumReport rep_;
  mutable std::mutex mtx_;
  mutable std::map<std::string, cplx> cache_;
  cplx cached(const std::string& key, const std::function<cplx()>& make) const;
  cplx delta_at(double k_eval, double xi) const;      // plain delta
  cplx hat_delta_at(double k_eval, double xi) const;  // pole-corrected
  NuValue nu_at_point(double point) const;            // nu evaluated at `point`
};

// Explicit meromorphic solution of the stationary model problem: residue
// c1 couples column 1 at k = B, residue c2 couples column 2 at k = -B.
struct ModelRhSolution {
  double B = 0.0;
  cplx c1, c2;
  cplx A1, A2, A3, A4;
  Mat2 eval(cplx k) const;
  cplx q_leading() const { return 2.0 * IU * A3; }
};
ModelRhSolution model_rh_solution(double B, cplx c1, cplx c2);

// CSV: x, t, xi, sector, re(q_as), im(q_as), abs(q_as), error_exponent
struct AsymptoticsRow {
  double x, t, xi;
  std::string sector;
  cplx q;
  double error_exponent;
};
void write_asymptotics_csv(const std::vector<AsymptoticsRow>& rows,
                           std::ostream& os);

}  // namespace nnls
