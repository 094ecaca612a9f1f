#pragma once

#include "optionwave/types.hpp"

#include <optional>
#include <vector>

namespace optionwave {

/// One adaptive weight triple of the market-heat coefficient.
struct WeightRow {
  double w1;  // amplitude weight, dimensionless
  double w2;  // price scale, 1/price
  double w3;  // normalizer, dimensionless, nonzero
};

struct WeightSet {
  std::vector<WeightRow> rows;
  void validate() const;
};

/// Adaptive market-heat coefficient
///   beta(r, w; s) = r * sum_i w1_i erf(w2_i s / w3_i).
/// Odd in s, zero at s = 0, bounded by |r| sum_i |w1_i|.
double beta(double rate, const WeightSet& weights, double s);

/// Mixing coefficients of the kink-smoothing profile
/// d1 tanh(xi) + d2 sech(xi).
struct BlendCoefficients {
  double d1 = 1.0;
  double d2 = 0.0;
  void validate() const;
};

/// Parameters of the cubic Schrodinger wave family
///   i d_t psi = -(sigma/2) d_ss psi - beta |psi|^2 psi.
///
/// The closed forms assume a constant beta; when beta_const is unset the
/// s-dependent beta(rate, weights, s) is frozen pointwise at each
/// evaluation position (the coefficient-freezing used by the fit harness).
struct NlsParams {
  double sigma = 0.2;          // dispersion coefficient
  double rate = 0.05;          // interest rate entering beta(r, w)
  double wave_number = 1.0;    // carrier wave number (distinct from a strike)
  double modulus = 1.0;        // elliptic modulus m in [0, 1]
  WeightSet weights;
  std::optional<double> beta_const;
  int sign = +1;               // solution branch
  bool magnitude_mode = false; // sqrt(|.|) instead of rejecting a negative radicand

  double beta_at(double s) const;
  void validate() const;
};

/// Periodic envelope solution for m in [0, 1):
///   psi_1 = +/- m sqrt(-sigma/beta) sn(xi) e^{i[ks - sigma t (1 + m^2 + k^2)/2]},
/// xi = s - sigma k t. The sn argument carries the same elliptic modulus m
/// as the prefactor, i.e. Jacobi parameter m^2.
Complex psi_sn(double s, double t, const NlsParams& p);

/// Envelope shock wave (m = 1):
///   psi_2 = +/- sqrt(-sigma/beta) tanh(xi) e^{i[ks - sigma t (2 + k^2)/2]}.
Complex psi_shock(double s, double t, const NlsParams& p);

/// Periodic cn-envelope solution for m in [0, 1):
///   psi_3 = +/- m sqrt(sigma/beta) cn(xi) e^{i[ks - sigma t (1 - 2m^2 + k^2)/2]}.
Complex psi_cn(double s, double t, const NlsParams& p);

/// Envelope solitary wave (m = 1):
///   psi_4 = +/- sqrt(sigma/beta) sech(xi) e^{i[ks - sigma t (k^2 - 1)/2]}.
Complex psi_soliton(double s, double t, const NlsParams& p);

/// Discrete L-inf residual of the traveling-wave oscillator ODE
///   (sigma/2) phi'' + [omega - sigma k^2/2] phi + beta phi^3 = 0
/// over uniformly spaced samples phi(xi_i) with spacing dxi, using
/// second-order central differences on interior nodes. Requires a constant
/// beta (p.beta_const).
double oscillator_residual(const ArrayXd& phi, double dxi, double omega,
                           const NlsParams& p);

/// Spatial PDF of the shock-wave solution,
///   |sqrt(sigma/beta) tanh(s - k t sigma)|^2 = |sigma/beta(s)| tanh^2(xi).
/// Evaluated in magnitude form regardless of the sign of beta; a vanishing
/// beta at the evaluation point is singular and rejected.
double spatial_pdf_shock(double s, const NlsParams& p, double t);

/// Blended spatial PDF |sigma/beta| (d1 tanh(xi) + d2 sech(xi))^2; reduces
/// to spatial_pdf_shock at d = (1, 0).
double spatial_pdf_blend(double s, const NlsParams& p, double t,
                         const BlendCoefficients& d);

}  // namespace optionwave
