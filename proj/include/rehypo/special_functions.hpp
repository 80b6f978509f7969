#pragma once

// Gauss error function and its inverse, self-contained so results do not
// depend on the host libm. erf uses the positive-term power series for small
// arguments and a continued fraction for the complementary function in the
// tail; argerf starts from the Winitzki closed-form estimate and polishes
// with Newton steps against our own erf, which ties the pair together: the
// round trip erf(argerf(y)) reproduces y to near machine precision.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rehypo {

namespace detail {

inline constexpr double kSqrtPi = 1.7724538509055160273;
inline constexpr double kTwoOverSqrtPi = 1.1283791670955125739;

// erf(x) = (2/sqrt(pi)) x e^{-x^2} sum_k (2x^2)^k / (1*3*...*(2k+1)).
// All terms positive, so no cancellation; used for |x| <= 2.5.
inline double erf_series(double x) {
  const double x2 = x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= 2.0 * x2 / (2.0 * k + 1.0);
    sum += term;
    if (term <= sum * 1e-17) break;
  }
  return kTwoOverSqrtPi * x * std::exp(-x2) * sum;
}

// Modified Lentz evaluation of the Laplace continued fraction
//   sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// accurate in the tail; the scaled value is returned so callers can stay in
// log space without overflow.
inline double erfc_scaled_cf(double x) {
  const double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int m = 1; m < 300; ++m) {
    const double a = m == 1 ? 1.0 : 0.5 * (m - 1);
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return f;  // equals sqrt(pi) e^{x^2} erfc(x)
}

inline double erfc_cf(double x) {
  return std::exp(-x * x) / kSqrtPi * erfc_scaled_cf(x);
}

}  // namespace detail

inline double erf(double x) {
  if (std::isnan(x)) return x;
  const double a = std::abs(x);
  double r;
  if (a <= 2.5)
    r = detail::erf_series(a);
  else if (a < 27.0)
    r = 1.0 - detail::erfc_cf(a);
  else
    r = 1.0;  // erfc underflows double range
  return x < 0.0 ? -r : r;
}

// Inverse of erf on (-1, 1). The Winitzki approximation lands within ~0.2%
// everywhere; a handful of Newton corrections finishes the job. For moderate
// y the corrections run against erf directly. Near |y| = 1 that direction is
// ill conditioned (one ulp of y spans a visible range of x), so the tail
// branch iterates on log erfc instead, where 1 - |y| is exact and the
// derivative d/dz log erfc(z) = -2 / (sqrt(pi) e^{z^2} erfc(z)) comes
// straight from the scaled continued fraction.
inline double argerf(double y) {
  if (!(std::abs(y) < 1.0))
    throw std::invalid_argument("argerf: argument must lie in the open interval (-1, 1)");
  if (y == 0.0) return 0.0;

  const double l = std::log((1.0 - y) * (1.0 + y));
  constexpr double a = 0.147;
  const double u = 2.0 / (3.14159265358979323846 * a) + 0.5 * l;
  double x = std::sqrt(std::sqrt(u * u - l / a) - u);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double ay = std::abs(y);
  if (ay >= 0.9995) {
    const double log_q = std::log1p(-ay);  // 1 - ay is exact here, but log1p costs nothing
    for (int it = 0; it < 12; ++it) {
      const double f = detail::erfc_scaled_cf(x);
      const double log_erfc = -x * x + std::log(f / detail::kSqrtPi);
      const double dz = (log_erfc - log_q) * (0.5 * f);
      x += dz;
      if (std::abs(dz) <= 4.0 * eps * x) break;
    }
  } else {
    const double target = ay;
    for (int it = 0; it < 12; ++it) {
      const double fdiff = erf(x) - target;
      if (std::abs(fdiff) <= 4.0 * eps) break;
      const double dx = fdiff * (0.5 * detail::kSqrtPi) * std::exp(x * x);
      x -= dx;
      if (std::abs(dx) <= 4.0 * eps * (1.0 + x)) break;
    }
  }
  return y < 0.0 ? -x : x;
}

}  // namespace rehypo
