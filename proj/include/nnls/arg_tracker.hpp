#pragma once

#include <functional>
#include <vector>

#include "nnls/types.hpp"

namespace nnls {

// Continuous branch of log g(x) along [x_start, x_end] on the real line.
//
// The branch is anchored by principal arg at x_start (caller must pick
// x_start far enough left that no winding has accumulated) and continued by
// nearest-branch steps on an adaptively refined grid: adjacent anchors keep
// |delta arg| <= pi/8, so the principal correction between anchors is exact.
//
// A special point is a simple zero or pole of g on the interval; the
// argument is continued through the upper half-plane there, which adds
// `jump` (-pi for a zero, +pi for a pole) to the cumulative argument.
struct ArgTrackerOptions {
  double active_lo = -kInf;  // uniform pre-seeding zone [active_lo, x_end]
  double active_dx = kInf;   // pre-seed spacing in the active zone
  int max_depth = 40;
};

class ArgTracker {
 public:
  struct SpecialPoint {
    double x;
    double jump;  // added to the cumulative argument when crossing x
    double eps;   // puncture half-width around x
  };

  ArgTracker(std::function<cplx(double)> g, double x_start, double x_end,
             std::vector<SpecialPoint> specials = {},
             ArgTrackerOptions opt = {});

  // Continuous argument at x (x <= x_end). Left of x_start falls back to
  // the principal argument (the no-winding zone).
  double arg(double x) const;
  // log|g(x)| + i * arg(x)
  cplx log(double x) const;

  double x_start() const { return anchors_.front().x; }
  double x_end() const { return anchors_.back().x; }
  double arg_end() const { return anchors_.back().argcum; }

  struct Anchor {
    double x;
    cplx gval;
    double argcum;
  };
  const std::vector<Anchor>& anchors() const { return anchors_; }

  // Location where the continuous argument crosses `level`, restricted to
  // [lo, hi]. Returns false if no crossing there.
  bool find_level_crossing(double level, double lo, double hi,
                           double* x_out) const;

 private:
  std::function<cplx(double)> g_;
  std::vector<Anchor> anchors_;
  int max_depth_ = 40;
  void refine(const Anchor& a, const Anchor& b, int depth,
              std::vector<Anchor>& out) const;
  void continue_to(double x);
};

// Zero count (with multiplicity) of f inside a rectangle in the upper
// half-plane, by continuous argument tracking along the boundary.
// Throws NumericError if |f| drops below `abs_floor` on the boundary.
struct Rect {
  double re_lo, re_hi, im_lo, im_hi;
};
int winding_number_rect(const CplxFn& f, const Rect& r, int samples_per_side,
                        double abs_floor = 1e-6);

}  // namespace nnls
