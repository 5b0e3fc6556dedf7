#include "nnls/initial_datum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace nnls {

namespace {

// C-infinity smoothstep: 0 for u <= 0, 1 for u >= 1
double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double fa = std::exp(-1.0 / u);
  const double fb = std::exp(-1.0 / (1.0 - u));
  return fa / (fa + fb);
}

cplx interp_cubic(const std::vector<cplx>& s, double x_min, double dx,
                  double x) {
  const double u = (x - x_min) / dx;
  const auto n = static_cast<long>(s.size());
  long i = static_cast<long>(std::floor(u));
  i = std::clamp<long>(i, 0, n - 2);
  const double t = u - i;
  const cplx p0 = s[std::max<long>(i - 1, 0)];
  const cplx p1 = s[i];
  const cplx p2 = s[i + 1];
  const cplx p3 = s[std::min<long>(i + 2, n - 1)];
  // Catmull-Rom
  return 0.5 * ((2.0 * p1) + (-p0 + p2) * t +
                (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * (t * t) +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * (t * t * t));
}

}  // namespace

cplx InitialDatum::eval(double x) const {
  if (x <= left_tail_bound) return 0.0;
  if (x >= right_tail_bound) return background.right_tail(x);
  if (interior) return interior(x);
  return interp_cubic(samples, x_min, dx, x);
}

void InitialDatum::validate() const {
  background.validate(/*allow_zero_amplitude=*/true);
  if (samples.size() < 2 || !(dx > 0.0))
    throw ValidationError("InitialDatum: need a uniform grid with >= 2 points");
  if (left_tail_bound > right_tail_bound)
    throw ValidationError("InitialDatum: tail bounds out of order");
  if (left_tail_bound < x_min || right_tail_bound > x_max())
    throw ValidationError("InitialDatum: tail bounds outside the grid");
  if (background.B != 0.0 && dx > PI / (2.0 * std::abs(background.B)))
    throw ValidationError("InitialDatum: grid too coarse for B-oscillations");
  const double tol = 1e-12 * std::max(1.0, background.A);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = x_min + dx * static_cast<double>(i);
    if (x <= left_tail_bound && std::abs(samples[i]) > tol)
      throw ValidationError("InitialDatum: nonzero sample left of the tail bound");
    if (x >= right_tail_bound && x > left_tail_bound &&
        std::abs(samples[i] - background.right_tail(x)) > tol)
      throw ValidationError("InitialDatum: sample deviates from the right tail");
  }
}

InitialDatum build_initial_datum(const StepParams& params,
                                 const std::optional<Perturbation>& pert,
                                 double mollify_width, const GridSpec& grid) {
  params.validate(/*allow_zero_amplitude=*/true);
  if (mollify_width < 0.0)
    throw ValidationError("build_initial_datum: mollify_width must be >= 0");
  if (grid.n < 2 || !(grid.x_max > grid.x_min))
    throw ValidationError("build_initial_datum: bad grid");

  InitialDatum d;
  d.background = params;
  d.x_min = grid.x_min;
  d.dx = (grid.x_max - grid.x_min) / static_cast<double>(grid.n - 1);

  const double trans = 4.0 * mollify_width;
  double lt = params.R;
  double rt = params.R + trans;
  if (params.A == 0.0) { lt = 0.0; rt = 0.0; }
  if (pert) {
    if (!(pert->lo <= pert->hi))
      throw ValidationError("build_initial_datum: empty perturbation support");
    if (pert->lo < grid.x_min || pert->hi > grid.x_max)
      throw ValidationError("build_initial_datum: perturbation support outside grid");
    lt = std::min(lt, pert->lo);
    rt = std::max(rt, pert->hi);
  }
  d.left_tail_bound = lt;
  d.right_tail_bound = rt;
  if (lt < grid.x_min || rt > grid.x_max)
    throw ValidationError("build_initial_datum: grid does not cover the tail bounds");

  const StepParams bg = params;
  const double R = params.R;
  auto step_profile = [bg, R, trans](double x) -> cplx {
    if (bg.A == 0.0) return 0.0;
    if (x <= R) return 0.0;
    if (trans == 0.0) return bg.right_tail(x);
    return bg.right_tail(x) * smoothstep((x - R) / trans);
  };
  std::optional<Perturbation> p = pert;
  d.interior = [step_profile, p](double x) -> cplx {
    cplx v = step_profile(x);
    if (p && x >= p->lo && x <= p->hi) v += p->f(x);
    return v;
  };

  d.samples.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = d.x_min + d.dx * static_cast<double>(i);
    d.samples[i] = d.eval(x);
  }
  d.validate();
  return d;
}

void write_datum_csv(const InitialDatum& d, std::ostream& os) {
  os << std::setprecision(17);
  os << "# nnls initial datum\n";
  os << "# A = " << d.background.A << "\n";
  os << "# B = " << d.background.B << "\n";
  os << "# R = " << d.background.R << "\n";
  os << "# left_tail = " << d.left_tail_bound << "\n";
  os << "# right_tail = " << d.right_tail_bound << "\n";
  os << "x,re_q,im_q\n";
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    const double x = d.x_min + d.dx * static_cast<double>(i);
    os << x << ',' << d.samples[i].real() << ',' << d.samples[i].imag()
       << '\n';
  }
}

InitialDatum read_datum_csv(std::istream& is) {
  InitialDatum d;
  std::map<std::string, double> meta;
  std::string line;
  std::vector<double> xs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
      meta[key] = std::stod(line.substr(eq + 1));
      continue;
    }
    if (line.rfind("x,", 0) == 0) continue;  // column header
    std::istringstream row(line);
    std::string cell;
    double vals[3];
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(row, cell, ','))
        throw ValidationError("datum CSV: malformed row");
      vals[c] = std::stod(cell);
    }
    xs.push_back(vals[0]);
    d.samples.emplace_back(vals[1], vals[2]);
  }
  for (const char* key : {"A", "B", "R", "left_tail", "right_tail"})
    if (!meta.count(key))
      throw ValidationError(std::string("datum CSV: missing header key ") + key);
  d.background = {meta["A"], meta["B"], meta["R"]};
  d.left_tail_bound = meta["left_tail"];
  d.right_tail_bound = meta["right_tail"];
  if (xs.size() < 2) throw ValidationError("datum CSV: too few rows");
  d.x_min = xs.front();
  d.dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double expect = d.x_min + d.dx * static_cast<double>(i);
    if (std::abs(xs[i] - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
      throw ValidationError("datum CSV: grid is not uniform");
  }
  d.validate();
  return d;
}

void write_datum_csv_file(const InitialDatum& d, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open for writing: " + path);
  write_datum_csv(d, os);
}

InitialDatum read_datum_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open for reading: " + path);
  return read_datum_csv(is);
}

}  // namespace nnls
