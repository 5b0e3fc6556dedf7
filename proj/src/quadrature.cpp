#include "nnls/quadrature.hpp"

#include <cmath>
#include <queue>

namespace nnls {

namespace {

// 15-point Kronrod abscissae (positive half) and weights; embedded 7-point
// Gauss weights. Standard QUADPACK values.
const double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
const double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
const double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
  cplx value{0.0};
  double err = 0.0;
  bool finite = true;
};

PanelResult gk15(const RealFn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  PanelResult r;
  cplx fc = f(c);
  if (!std::isfinite(fc.real()) || !std::isfinite(fc.imag())) {
    r.finite = false;
    return r;
  }
  cplx resk = wgk[7] * fc;
  cplx resg = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * xgk[j];
    cplx f1 = f(c - dx), f2 = f(c + dx);
    if (!std::isfinite(f1.real()) || !std::isfinite(f1.imag()) ||
        !std::isfinite(f2.real()) || !std::isfinite(f2.imag())) {
      r.finite = false;
      return r;
    }
    resk += wgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
  }
  r.value = resk * h;
  r.err = std::abs(resk - resg) * std::abs(h);
  // QUADPACK-style sharpening of the error estimate
  if (r.err > 0.0) {
    double scale = std::abs(resk) * std::abs(h);
    if (scale > 0.0) {
      double q = std::pow(200.0 * r.err / scale, 1.5) * scale;
      r.err = std::min(r.err, q);
    }
  }
  return r;
}

struct Panel {
  double a, b;
  cplx value;
  double err;  // large finite sentinel when the panel holds a singularity
  int depth;
  bool operator<(const Panel& o) const { return err < o.err; }
};

const double kSingularErr = 1e30;

Panel make_panel(const RealFn& f, double a, double b, int depth) {
  PanelResult r = gk15(f, a, b);
  if (!r.finite) return {a, b, 0.0, kSingularErr, depth};
  return {a, b, r.value, r.err, depth};
}

}  // namespace

// Globally adaptive: a max-heap of panels ordered by error estimate; bisect
// the worst panel until the error sum meets the tolerance or the panel
// budget runs out. Panels at max depth are retired as-is; vanishing slivers
// around integrable singularities are dropped.
cplx integrate(const RealFn& f, double a, double b, const QuadOptions& opt) {
  if (a == b) return 0.0;
  std::priority_queue<Panel> heap;
  Panel first = make_panel(f, a, b, 0);
  heap.push(first);
  cplx total = first.value;
  double err_active = first.err;
  double err_retired = 0.0;
  int budget = 4000;
  while (!heap.empty() && budget-- > 0) {
    const double bound = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (err_active + err_retired <= bound) break;
    Panel w = heap.top();
    heap.pop();
    err_active -= w.err;
    const bool refinable =
        w.depth < opt.max_depth &&
        (w.b - w.a) > 1e-15 * std::max(1.0, std::abs(w.a));
    if (!refinable) {
      // retire: keep the value; a still-singular sliver is dropped
      err_retired += (w.err >= kSingularErr) ? 0.0 : w.err;
      continue;
    }
    const double c = 0.5 * (w.a + w.b);
    Panel l = make_panel(f, w.a, c, w.depth + 1);
    Panel r = make_panel(f, c, w.b, w.depth + 1);
    total += l.value + r.value - w.value;
    err_active += l.err + r.err;
    heap.push(l);
    heap.push(r);
  }
  const double bound = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  if (!(err_active + err_retired <= 1e4 * bound) && budget <= 0)
    throw NumericError("adaptive quadrature failed to converge");
  return total;
}

cplx integrate_left_tail(const RealFn& f, double b, const QuadOptions& opt) {
  auto g = [&](double u) {
    const double t = std::tan(u);
    const double sec2 = 1.0 + t * t;
    return f(b - t) * sec2;
  };
  return integrate(g, 0.0, 0.5 * PI - 1e-12, opt);
}

cplx integrate_right_tail(const RealFn& f, double a, const QuadOptions& opt) {
  auto g = [&](double u) {
    const double t = std::tan(u);
    const double sec2 = 1.0 + t * t;
    return f(a + t) * sec2;
  };
  return integrate(g, 0.0, 0.5 * PI - 1e-12, opt);
}

cplx integrate_any(const RealFn& f, double a, double b, const QuadOptions& opt) {
  const bool la = std::isinf(a), lb = std::isinf(b);
  if (la && lb) {
    return integrate_left_tail(f, 0.0, opt) + integrate_right_tail(f, 0.0, opt);
  }
  if (la) return integrate_left_tail(f, b, opt);
  if (lb) return integrate_right_tail(f, a, opt);
  return integrate(f, a, b, opt);
}

cplx pv_cauchy(const RealFn& g, double a, double b, double s,
               const QuadOptions& opt) {
  double d = 1.0;
  if (!std::isinf(a)) d = std::min(d, 0.5 * (s - a));
  if (!std::isinf(b)) d = std::min(d, 0.5 * (b - s));
  if (!(d > 0.0)) throw NumericError("pv_cauchy: singularity at interval edge");

  const cplx gs = g(s);
  const double h_fd = 1e-5 * std::max(1.0, std::abs(s));
  const cplx gp = (g(s + h_fd) - g(s - h_fd)) / (2.0 * h_fd);
  const double snap = 64.0 * std::numeric_limits<double>::epsilon() *
                      std::max(1.0, std::abs(s));
  auto reg = [&](double z) {
    const double dz = z - s;
    if (std::abs(dz) < snap) return gp;
    return (g(z) - gs) / dz;
  };
  cplx near = integrate(reg, s - d, s + d, opt);

  auto kern = [&](double z) { return g(z) / (z - s); };
  cplx far = integrate_any(kern, a, s - d, opt) +
             integrate_any(kern, s + d, b, opt);
  return near + far;
}

}  // namespace nnls
