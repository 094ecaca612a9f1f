#include "optionwave/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace optionwave {

namespace {

constexpr double kInvSqrtPi = 0.564189583547756286948;  // 1/sqrt(pi)

// sum_n (2x^2)^n / (2n+1)!!; every term is positive, so no cancellation.
double erf_series(double x) {
  const double t = 2.0 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= t / double(2 * n + 1);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return 2.0 * x * kInvSqrtPi * std::exp(-x * x) * sum;
}

// erfc(x) = e^{-x^2}/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// partial numerators a_n = n/2, evaluated with the modified Lentz scheme.
double erfc_continued_fraction(double x) {
  const double tiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 300; ++n) {
    const double a = 0.5 * double(n);
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return std::exp(-x * x) * kInvSqrtPi / f;
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) throw std::invalid_argument("erf: argument must be finite");
  const double ax = std::abs(x);
  double value;
  if (ax <= 3.0) {
    value = erf_series(ax);
  } else if (ax < 27.0) {
    value = 1.0 - erfc_continued_fraction(ax);
  } else {
    value = 1.0;  // erfc underflows past the double range
  }
  return x < 0.0 ? -value : value;
}

double erfc(double x) {
  if (std::isnan(x)) throw std::invalid_argument("erfc: argument must be finite");
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x <= 3.0) return 1.0 - erf_series(x);
  if (x < 27.0) return erfc_continued_fraction(x);
  return 0.0;
}

double std_normal_cdf(double x) {
  if (x < 0.0) return 0.5 * erfc(-x / std::numbers::sqrt2);
  return 0.5 * (1.0 + erf(x / std::numbers::sqrt2));
}

namespace {

constexpr double kAgmTol = 1e-15;  // truncation threshold on |c_n / a_n|
constexpr int kAgmMaxIter = 32;

void check_parameter(double m) {
  if (!(m >= 0.0 && m <= 1.0))
    throw std::invalid_argument("jacobi_elliptic: parameter m must lie in [0, 1]");
}

}  // namespace

JacobiValues jacobi_elliptic(double u, double m) {
  check_parameter(m);
  if (!std::isfinite(u))
    throw std::invalid_argument("jacobi_elliptic: argument must be finite");

  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }

  // Descending Landen / AGM scale.
  double a[kAgmMaxIter + 1];
  double c[kAgmMaxIter + 1];
  a[0] = 1.0;
  c[0] = std::sqrt(m);
  double b = std::sqrt(1.0 - m);
  int n = 0;
  while (std::abs(c[n] / a[n]) > kAgmTol) {
    if (n >= kAgmMaxIter - 1)
      throw std::runtime_error("jacobi_elliptic: AGM failed to converge");
    c[n + 1] = 0.5 * (a[n] - b);
    const double root = std::sqrt(a[n] * b);
    a[n + 1] = 0.5 * (a[n] + b);
    b = root;
    ++n;
  }

  // Backward recurrence on the amplitude.
  double phi = std::ldexp(a[n] * u, n);  // 2^n a_n u
  for (int i = n; i > 0; --i) {
    const double t = std::clamp(c[i] * std::sin(phi) / a[i], -1.0, 1.0);
    phi = 0.5 * (std::asin(t) + phi);
  }

  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  const double dn = std::sqrt(1.0 - m * sn * sn);  // positive on the real axis
  return {sn, cn, dn};
}

double jacobi_sn(double u, double m) { return jacobi_elliptic(u, m).sn; }

double jacobi_cn(double u, double m) { return jacobi_elliptic(u, m).cn; }

double elliptic_k(double m) {
  check_parameter(m);
  if (m == 1.0)
    throw std::domain_error("elliptic_k: quarter period diverges at m = 1");
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  for (int i = 0; i < kAgmMaxIter && std::abs(a - b) > kAgmTol * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

}  // namespace optionwave
