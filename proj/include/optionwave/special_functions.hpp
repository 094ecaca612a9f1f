#pragma once

namespace optionwave {

/// Error function, accurate to well below 1e-12 absolutely on all finite
/// arguments. Evaluated from the all-positive power series
///   erf(x) = 2x e^{-x^2}/sqrt(pi) * sum_n (2x^2)^n / (2n+1)!!
/// for |x| <= 3, and from the Legendre continued fraction for erfc
/// (modified Lentz scheme) for |x| > 3.
double erf(double x);

/// Complementary error function, relatively accurate in the far tail.
double erfc(double x);

/// Standard normal CDF, N(x) = (1 + erf(x/sqrt(2)))/2, evaluated through
/// erfc for x < 0 so that deep-tail probabilities keep relative accuracy.
/// Satisfies N(x) + N(-x) = 1 up to rounding.
double std_normal_cdf(double x);

/// Jacobi elliptic sn, cn, dn at one argument.
struct JacobiValues {
  double sn;
  double cn;
  double dn;
};

/// Jacobi elliptic functions of real argument u and parameter m in [0, 1]
/// (the convention where sn(u, m) = sin(am(u, m)) with quarter period
/// K(m) = F(pi/2 | m); NOT the convention taking the modulus k = sqrt(m)).
/// Computed by the descending-Landen AGM scale with backward recurrence,
/// truncated at |c_n / a_n| < 1e-15; m = 1 falls back to the hyperbolic
/// limit forms sn = tanh, cn = dn = sech.
JacobiValues jacobi_elliptic(double u, double m);

double jacobi_sn(double u, double m);
double jacobi_cn(double u, double m);

/// Quarter period K(m) = pi / (2 agm(1, sqrt(1-m))) for m in [0, 1).
double elliptic_k(double m);

}  // namespace optionwave
