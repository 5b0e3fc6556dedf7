#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace nnls {

using cplx = std::complex<double>;
using CplxFn = std::function<cplx(cplx)>;

inline constexpr double PI = 3.14159265358979323846;
inline constexpr cplx IU{0.0, 1.0};
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Bad parameters or malformed input files. CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numeric failure: non-generic parameters, blow-up, non-convergence.
// CLI maps this to exit code 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested ray lies on a sector boundary. Carries the adjacent sectors so
// the CLI can report "transition region" with context.
struct TransitionRegionError : NumericError {
  double xi;
  std::string below, above;
  TransitionRegionError(double xi_, std::string below_, std::string above_)
      : NumericError("transition region at xi=" + std::to_string(xi_) +
                     " (between " + below_ + " and " + above_ + ")"),
        xi(xi_), below(std::move(below_)), above(std::move(above_)) {}
};

// 2x2 complex matrix, value semantics.
struct Mat2 {
  cplx a11{1.0}, a12{0.0}, a21{0.0}, a22{1.0};

  cplx det() const { return a11 * a22 - a12 * a21; }

  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  Mat2 operator+(const Mat2& o) const {
    return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
  }
  Mat2 operator*(cplx s) const { return {s * a11, s * a12, s * a21, s * a22}; }

  // column access: j = 0 or 1
  cplx top(int j) const { return j == 0 ? a11 : a12; }
  cplx bot(int j) const { return j == 0 ? a21 : a22; }

  double max_abs() const;

  static Mat2 identity() { return {}; }
  // diag(e^{s}, e^{-s})
  static Mat2 exp_sigma3(cplx s);
};

inline Mat2 operator*(cplx s, const Mat2& m) { return m * s; }

inline Mat2 Mat2::exp_sigma3(cplx s) {
  return {std::exp(s), 0.0, 0.0, std::exp(-s)};
}

inline double Mat2::max_abs() const {
  double m = std::abs(a11);
  m = std::max(m, std::abs(a12));
  m = std::max(m, std::abs(a21));
  return std::max(m, std::abs(a22));
}

inline double rel_diff(cplx a, cplx b) {
  double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace nnls
