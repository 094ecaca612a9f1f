#include "optionwave/nls_waves.hpp"

#include "optionwave/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace optionwave {

void WeightSet::validate() const {
  if (rows.empty()) throw std::invalid_argument("WeightSet: need at least one row");
  for (const auto& r : rows) {
    if (r.w3 == 0.0)
      throw std::invalid_argument("WeightSet: w3 must be nonzero");
    if (!(std::isfinite(r.w1) && std::isfinite(r.w2) && std::isfinite(r.w3)))
      throw std::invalid_argument("WeightSet: weights must be finite");
  }
}

double beta(double rate, const WeightSet& weights, double s) {
  weights.validate();
  double sum = 0.0;
  for (const auto& r : weights.rows) sum += r.w1 * erf(r.w2 * s / r.w3);
  return rate * sum;
}

void BlendCoefficients::validate() const {
  if (!(std::isfinite(d1) && std::isfinite(d2)))
    throw std::invalid_argument("BlendCoefficients: must be finite");
  if (d1 == 0.0 && d2 == 0.0)
    throw std::invalid_argument("BlendCoefficients: d1 and d2 must not both vanish");
}

double NlsParams::beta_at(double s) const {
  if (beta_const) return *beta_const;
  return beta(rate, weights, s);
}

void NlsParams::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("NlsParams: sigma must be positive");
  if (!(modulus >= 0.0 && modulus <= 1.0))
    throw std::invalid_argument("NlsParams: modulus must lie in [0, 1]");
  if (sign != +1 && sign != -1)
    throw std::invalid_argument("NlsParams: sign must be +1 or -1");
  if (!beta_const) weights.validate();
}

namespace {

// sqrt of the radicand sigma/beta or -sigma/beta; magnitude mode takes |.|.
double radical(double radicand, const NlsParams& p) {
  if (p.magnitude_mode) return std::sqrt(std::abs(radicand));
  if (radicand < 0.0)
    throw std::domain_error(
        "nls wave: negative radicand; beta has the wrong sign for this branch "
        "(enable magnitude_mode to evaluate the absolute value)");
  return std::sqrt(radicand);
}

double beta_nonzero(const NlsParams& p, double s) {
  const double b = p.beta_at(s);
  if (b == 0.0)
    throw std::domain_error("nls wave: beta vanishes at the evaluation point");
  return b;
}

Complex phase_factor(double arg) { return {std::cos(arg), std::sin(arg)}; }

}  // namespace

Complex psi_sn(double s, double t, const NlsParams& p) {
  p.validate();
  if (p.modulus >= 1.0)
    throw std::invalid_argument("psi_sn: requires modulus m < 1");
  const double m = p.modulus;
  const double k = p.wave_number;
  const double b = beta_nonzero(p, s);
  const double amp = double(p.sign) * m * radical(-p.sigma / b, p);
  const double xi = s - p.sigma * k * t;
  const double phase = k * s - 0.5 * p.sigma * t * (1.0 + m * m + k * k);
  return amp * jacobi_sn(xi, m * m) * phase_factor(phase);
}

Complex psi_shock(double s, double t, const NlsParams& p) {
  p.validate();
  const double k = p.wave_number;
  const double b = beta_nonzero(p, s);
  const double amp = double(p.sign) * radical(-p.sigma / b, p);
  const double xi = s - p.sigma * k * t;
  const double phase = k * s - 0.5 * p.sigma * t * (2.0 + k * k);
  return amp * std::tanh(xi) * phase_factor(phase);
}

Complex psi_cn(double s, double t, const NlsParams& p) {
  p.validate();
  if (p.modulus >= 1.0)
    throw std::invalid_argument("psi_cn: requires modulus m < 1");
  const double m = p.modulus;
  const double k = p.wave_number;
  const double b = beta_nonzero(p, s);
  const double amp = double(p.sign) * m * radical(p.sigma / b, p);
  const double xi = s - p.sigma * k * t;
  const double phase = k * s - 0.5 * p.sigma * t * (1.0 - 2.0 * m * m + k * k);
  return amp * jacobi_cn(xi, m * m) * phase_factor(phase);
}

Complex psi_soliton(double s, double t, const NlsParams& p) {
  p.validate();
  const double k = p.wave_number;
  const double b = beta_nonzero(p, s);
  const double amp = double(p.sign) * radical(p.sigma / b, p);
  const double xi = s - p.sigma * k * t;
  const double phase = k * s - 0.5 * p.sigma * t * (k * k - 1.0);
  return amp / std::cosh(xi) * phase_factor(phase);
}

double oscillator_residual(const ArrayXd& phi, double dxi, double omega,
                           const NlsParams& p) {
  if (phi.size() < 3)
    throw std::invalid_argument("oscillator_residual: need at least 3 samples");
  if (!(dxi > 0.0))
    throw std::invalid_argument("oscillator_residual: need dxi > 0");
  if (!p.beta_const)
    throw std::invalid_argument("oscillator_residual: requires a constant beta");
  const double b = *p.beta_const;
  const double k = p.wave_number;
  const double linear = omega - 0.5 * p.sigma * k * k;

  double linf = 0.0;
  for (Index i = 1; i + 1 < phi.size(); ++i) {
    const double second = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (dxi * dxi);
    const double r =
        0.5 * p.sigma * second + linear * phi[i] + b * phi[i] * phi[i] * phi[i];
    linf = std::max(linf, std::abs(r));
  }
  return linf;
}

double spatial_pdf_shock(double s, const NlsParams& p, double t) {
  p.validate();
  const double b = beta_nonzero(p, s);
  const double xi = s - p.wave_number * t * p.sigma;
  const double th = std::tanh(xi);
  return std::abs(p.sigma / b) * th * th;
}

double spatial_pdf_blend(double s, const NlsParams& p, double t,
                         const BlendCoefficients& d) {
  p.validate();
  d.validate();
  const double b = beta_nonzero(p, s);
  const double xi = s - p.wave_number * t * p.sigma;
  const double profile = d.d1 * std::tanh(xi) + d.d2 / std::cosh(xi);
  return std::abs(p.sigma / b) * profile * profile;
}

}  // namespace optionwave
