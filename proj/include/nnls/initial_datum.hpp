#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nnls/step_params.hpp"
#include "nnls/types.hpp"

namespace nnls {

struct GridSpec {
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t n = 4001;  // number of samples, uniform inclusive grid
};

// Compactly supported perturbation added on top of the step background.
struct Perturbation {
  std::function<cplx(double)> f;
  double lo = 0.0, hi = 0.0;  // support [lo, hi]
};

// Grid-sampled profile with declared analytic tails: exactly 0 left of
// left_tail_bound, exactly A e^{2iBx} right of right_tail_bound.
struct InitialDatum {
  StepParams background;
  double left_tail_bound = 0.0;
  double right_tail_bound = 0.0;
  double x_min = 0.0, dx = 0.0;
  std::vector<cplx> samples;
  // exact interior profile when known analytically; otherwise the interior
  // is cubic-interpolated from samples
  std::function<cplx(double)> interior;

  cplx eval(double x) const;
  double x_max() const { return x_min + dx * (samples.size() - 1); }
  void validate() const;
};

InitialDatum build_initial_datum(const StepParams& params,
                                 const std::optional<Perturbation>& pert,
                                 double mollify_width, const GridSpec& grid);

// CSV with a '# key = value' header block (A, B, R, tail bounds) and columns
// x, re(q), im(q).
void write_datum_csv(const InitialDatum& d, std::ostream& os);
InitialDatum read_datum_csv(std::istream& is);
void write_datum_csv_file(const InitialDatum& d, const std::string& path);
InitialDatum read_datum_csv_file(const std::string& path);

}  // namespace nnls
