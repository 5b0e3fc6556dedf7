#include "nnls/arg_tracker.hpp"

#include <algorithm>
#include <cmath>

namespace nnls {

namespace {
double principal(double a) {
  while (a > PI) a -= 2.0 * PI;
  while (a < -PI) a += 2.0 * PI;
  return a;
}
bool finite(cplx v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}
}  // namespace

ArgTracker::ArgTracker(std::function<cplx(double)> g, double x_start,
                       double x_end, std::vector<SpecialPoint> specials,
                       ArgTrackerOptions opt)
    : g_(std::move(g)), max_depth_(opt.max_depth) {
  if (!(x_start < x_end)) throw ValidationError("ArgTracker: empty interval");
  std::sort(specials.begin(), specials.end(),
            [](const SpecialPoint& a, const SpecialPoint& b) {
              return a.x < b.x;
            });

  // Seed nodes: geometric spacing from the far left, uniform spacing in the
  // active zone, puncture edges around special points.
  std::vector<double> seeds;
  seeds.push_back(x_start);
  const double lo = std::min(std::max(x_start, opt.active_lo), x_end);
  if (lo > x_start) {
    double d = std::max(1.0, (lo - x_start) * 0.001);
    for (double x = lo - d; x > x_start; d *= 2.0, x = lo - d)
      seeds.push_back(x);
  }
  double dx = opt.active_dx;
  if (!(std::isfinite(dx) && dx > 0.0)) dx = (x_end - lo) / 32.0;
  if (dx > 0.0)
    for (double x = lo; x < x_end; x += dx) seeds.push_back(x);
  for (const auto& sp : specials) {
    if (sp.x - sp.eps > x_start && sp.x + sp.eps < x_end) {
      seeds.push_back(sp.x - sp.eps);
      seeds.push_back(sp.x + sp.eps);
    }
  }
  seeds.push_back(x_end);
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  // drop seeds inside punctures
  auto in_puncture = [&](double x) {
    for (const auto& sp : specials)
      if (x > sp.x - sp.eps && x < sp.x + sp.eps) return true;
    return false;
  };
  if (seeds.size() > 2)
    seeds.erase(std::remove_if(seeds.begin() + 1, seeds.end() - 1, in_puncture),
                seeds.end() - 1);

  cplx g0 = g_(seeds.front());
  if (!finite(g0) || g0 == cplx{0.0})
    throw NumericError("ArgTracker: function not evaluable at the left anchor");
  anchors_.push_back({seeds.front(), g0, std::arg(g0)});

  for (std::size_t i = 1; i < seeds.size(); ++i) {
    const double x1 = seeds[i];
    const double x0 = anchors_.back().x;
    // special point strictly between x0 and x1 => puncture crossing
    const SpecialPoint* crossing = nullptr;
    for (const auto& sp : specials)
      if (sp.x > x0 && sp.x < x1) crossing = &sp;
    if (crossing) {
      const Anchor prev = anchors_.back();
      cplx gv = g_(x1);
      double a = prev.argcum + crossing->jump +
                 principal(std::arg(gv) - std::arg(prev.gval) - crossing->jump);
      anchors_.push_back({x1, gv, a});
    } else {
      continue_to(x1);
    }
  }
}

void ArgTracker::refine(const Anchor& a, const Anchor& b, int depth,
                        std::vector<Anchor>& out) const {
  double d = principal(std::arg(b.gval) - std::arg(a.gval));
  if (std::abs(d) <= PI / 8.0 || depth >= max_depth_ ||
      (b.x - a.x) < 1e-13 * std::max(1.0, std::abs(a.x))) {
    out.push_back({b.x, b.gval, a.argcum + d});
    return;
  }
  const double xm = 0.5 * (a.x + b.x);
  refine(a, {xm, g_(xm), 0.0}, depth + 1, out);
  refine(out.back(), b, depth + 1, out);
}

void ArgTracker::continue_to(double x) {
  const Anchor prev = anchors_.back();
  if (!(x > prev.x)) return;
  std::vector<Anchor> out;
  refine(prev, {x, g_(x), 0.0}, 0, out);
  anchors_.insert(anchors_.end(), out.begin(), out.end());
}

double ArgTracker::arg(double x) const {
  if (x <= anchors_.front().x) return std::arg(g_(x));
  if (x >= anchors_.back().x) return anchors_.back().argcum;
  auto it = std::lower_bound(
      anchors_.begin(), anchors_.end(), x,
      [](const Anchor& a, double v) { return a.x < v; });
  const Anchor& hi = *it;
  const Anchor& lo = *(it - 1);
  const Anchor& ref = (x - lo.x < hi.x - x) ? lo : hi;
  cplx gv = g_(x);
  return ref.argcum + principal(std::arg(gv) - std::arg(ref.gval));
}

cplx ArgTracker::log(double x) const {
  cplx gv = g_(x);
  return {std::log(std::abs(gv)), arg(x)};
}

bool ArgTracker::find_level_crossing(double level, double lo, double hi,
                                     double* x_out) const {
  for (std::size_t i = 1; i < anchors_.size(); ++i) {
    if (anchors_[i].x < lo || anchors_[i - 1].x > hi) continue;
    double f0 = anchors_[i - 1].argcum - level;
    double f1 = anchors_[i].argcum - level;
    if (f0 == 0.0) {
      *x_out = anchors_[i - 1].x;
      return true;
    }
    if (f0 * f1 < 0.0) {
      double a = anchors_[i - 1].x, b = anchors_[i].x;
      for (int it = 0;
           it < 80 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
        double m = 0.5 * (a + b);
        double fm = arg(m) - level;
        if (f0 * fm <= 0.0) {
          b = m;
        } else {
          a = m;
          f0 = fm;
        }
      }
      *x_out = 0.5 * (a + b);
      return true;
    }
  }
  return false;
}

namespace {
double edge_arg_increment(const CplxFn& f, cplx za, cplx zb, cplx fa, cplx fb,
                          double abs_floor, int depth) {
  if (std::abs(fa) < abs_floor || std::abs(fb) < abs_floor)
    throw NumericError(
        "argument-principle contour passes too close to a zero; "
        "perturb the rectangle");
  double d = principal(std::arg(fb) - std::arg(fa));
  if (std::abs(d) <= PI / 2.0 || depth > 48) return d;
  cplx zm = 0.5 * (za + zb);
  cplx fm = f(zm);
  return edge_arg_increment(f, za, zm, fa, fm, abs_floor, depth + 1) +
         edge_arg_increment(f, zm, zb, fm, fb, abs_floor, depth + 1);
}
}  // namespace

int winding_number_rect(const CplxFn& f, const Rect& r, int samples_per_side,
                        double abs_floor) {
  const cplx corners[5] = {{r.re_lo, r.im_lo},
                           {r.re_hi, r.im_lo},
                           {r.re_hi, r.im_hi},
                           {r.re_lo, r.im_hi},
                           {r.re_lo, r.im_lo}};
  const int n = std::max(2, samples_per_side);
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx za = corners[e];
    const cplx zb = corners[e + 1];
    cplx prev_z = za;
    cplx prev_f = f(za);
    for (int i = 1; i <= n; ++i) {
      cplx z = za + (zb - za) * (static_cast<double>(i) / n);
      cplx fz = f(z);
      total += edge_arg_increment(f, prev_z, z, prev_f, fz, abs_floor, 0);
      prev_z = z;
      prev_f = fz;
    }
  }
  const double w = total / (2.0 * PI);
  const int count = static_cast<int>(std::lround(w));
  if (std::abs(w - count) > 0.1)
    throw NumericError("argument-principle winding did not close to an integer");
  return count;
}

}  // namespace nnls
