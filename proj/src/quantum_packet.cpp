#include "optionwave/quantum_packet.hpp"

#include "optionwave/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace optionwave {

void PlaneWaveBasis::validate() const {
  if (!(sigma > 0.0))
    throw std::invalid_argument("PlaneWaveBasis: sigma must be positive");
  if (waves.empty())
    throw std::invalid_argument("PlaneWaveBasis: need at least one wave");
  for (const auto& w : waves)
    if (!(std::isfinite(w.k) && std::isfinite(w.c)))
      throw std::invalid_argument("PlaneWaveBasis: waves must be finite");
}

void GaussianPacketSpec::validate() const {
  if (!(width > 0.0))
    throw std::invalid_argument("GaussianPacketSpec: width must be positive");
  if (!(std::isfinite(s0) && std::isfinite(p0)))
    throw std::invalid_argument("GaussianPacketSpec: center and momentum must be finite");
}

Complex plane_wave(double s, double t, double amplitude, double k, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("plane_wave: sigma must be positive");
  const double phase = k * s - 0.5 * sigma * k * k * t;
  return amplitude * Complex{std::cos(phase), std::sin(phase)};
}

Complex packet_sum(double s, double t, double sigma, std::span<const double> ks,
                   std::span<const double> cs) {
  if (ks.size() != cs.size())
    throw std::invalid_argument("packet_sum: k and c counts differ");
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double phase = ks[i] * s - 0.5 * sigma * ks[i] * ks[i] * t;
    sum += cs[i] * Complex{std::cos(phase), std::sin(phase)};
  }
  return sum;
}

Complex wave_packet(double s, double t, const PlaneWaveBasis& basis) {
  basis.validate();
  Complex sum{0.0, 0.0};
  for (const auto& w : basis.waves) sum += plane_wave(s, t, w.c, w.k, basis.sigma);
  return sum;
}

DispersionReport dispersion(double k, double sigma, double t) {
  if (!(sigma > 0.0)) throw std::invalid_argument("dispersion: sigma must be positive");
  DispersionReport r{};
  r.omega_k = 0.5 * sigma * k * k;
  r.energy_k = 0.5 * sigma * sigma * k * k;
  r.v_group = sigma * k;
  r.packet_center = t * sigma * k;
  r.ratios_defined = (k != 0.0);
  if (r.ratios_defined) {
    r.lambda_k = 2.0 * std::numbers::pi / k;
    r.period_k = 2.0 * std::numbers::pi / r.omega_k;
    r.v_phase = 0.5 * sigma * k;
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.lambda_k = nan;
    r.period_k = nan;
    r.v_phase = nan;
  }
  return r;
}

double boltzmann_mean_energy(double energy_k, double kinetic_const,
                             double market_temperature) {
  const double bt = kinetic_const * market_temperature;
  if (!(bt > 0.0))
    throw std::invalid_argument(
        "boltzmann_mean_energy: kinetic constant times temperature must be positive");
  if (!(energy_k > 0.0))
    throw std::invalid_argument("boltzmann_mean_energy: need E_k > 0");
  // expm1 keeps the equipartition limit <E> -> bT accurate for E_k << bT.
  return energy_k / std::expm1(energy_k / bt);
}

Complex gaussian_packet(double s, double t, const GaussianPacketSpec& spec,
                        double sigma) {
  spec.validate();
  if (!(sigma > 0.0))
    throw std::invalid_argument("gaussian_packet: sigma must be positive");
  const double a = spec.width;
  const double u = s - spec.s0;
  const double tau = sigma * t;
  const Complex denom{1.0, a * tau};
  const Complex exponent =
      (Complex{-0.5 * a * u * u, spec.p0 * u - 0.5 * spec.p0 * spec.p0 * tau}) /
      denom;
  const double norm = std::pow(a / std::numbers::pi, 0.25);
  return norm / std::sqrt(denom) * std::exp(exponent);
}

WaveField fourier_propagate(const WaveField& initial, double t, double sigma) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("fourier_propagate: sigma must be positive");
  require_spectral_grid(initial);
  const ArrayXd k = wavenumbers(initial.grid);
  ArrayXcd hat = fft(initial.values);
  for (Index j = 0; j < k.size(); ++j) {
    const double phase = -0.5 * sigma * k[j] * k[j] * t;
    hat[j] *= Complex{std::cos(phase), std::sin(phase)};
  }
  return WaveField{initial.grid, initial.time + t, ifft(hat)};
}

MomentReport expectations(const WaveField& field) {
  validate(field);
  const Index n = field.grid.n_points;
  const double ds = field.grid.ds();

  const ArrayXd density = field.values.abs2();
  const double norm = density.sum() * ds;
  if (norm <= 0.0) throw std::invalid_argument("expectations: zero-norm field");

  double mean_s = 0.0, mean_ss = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double s = field.grid.node(i);
    mean_s += s * density[i];
    mean_ss += s * s * density[i];
  }
  mean_s *= ds / norm;
  mean_ss *= ds / norm;

  const ArrayXd k = wavenumbers(field.grid);
  const ArrayXd spectral_density = fft(field.values).abs2();
  const double spectral_norm = spectral_density.sum();
  double mean_k = (k * spectral_density).sum() / spectral_norm;
  double mean_kk = (k * k * spectral_density).sum() / spectral_norm;

  MomentReport r{};
  r.mean_s = mean_s;
  r.mean_k = mean_k;
  r.delta_s = std::sqrt(std::max(0.0, mean_ss - mean_s * mean_s));
  r.delta_k = std::sqrt(std::max(0.0, mean_kk - mean_k * mean_k));
  return r;
}

Complex energy_eigenstate(double s, double energy_k, Complex c1, Complex c2,
                          double sigma) {
  if (energy_k < 0.0)
    throw std::invalid_argument("energy_eigenstate: need E_k >= 0");
  if (!(sigma > 0.0))
    throw std::invalid_argument("energy_eigenstate: sigma must be positive");
  const double k = std::sqrt(2.0 * energy_k) / sigma;
  const Complex right{std::cos(k * s), std::sin(k * s)};
  return c1 * right + c2 * std::conj(right);
}

QuantumGreeks quantum_greeks(const PlaneWaveBasis& basis, double s, double t) {
  basis.validate();
  const double sigma = basis.sigma;

  Complex psi{0.0, 0.0};      // sum c_j e^{i theta_j}
  Complex psi_s{0.0, 0.0};    // sum i k_j c_j e^{i theta_j}
  Complex psi_ss{0.0, 0.0};   // sum -k_j^2 c_j e^{i theta_j}
  Complex weighted{0.0, 0.0}; // sum k_j^2 c_j e^{i theta_j}
  for (const auto& w : basis.waves) {
    const double phase = w.k * s - 0.5 * sigma * w.k * w.k * t;
    const Complex term = w.c * Complex{std::cos(phase), std::sin(phase)};
    psi += term;
    psi_s += Complex{0.0, w.k} * term;
    psi_ss += -w.k * w.k * term;
    weighted += w.k * w.k * term;
  }

  // d_sigma psi = -(i t / 2) weighted, d_t psi = -(i sigma / 2) weighted.
  const double cross = std::imag(std::conj(psi) * weighted);

  QuantumGreeks g{};
  g.delta = 2.0 * std::real(std::conj(psi) * psi_s);
  g.vega = t * cross;
  g.theta = sigma * cross;
  g.gamma = 2.0 * (std::norm(psi_s) + std::real(std::conj(psi) * psi_ss));
  return g;
}

}  // namespace optionwave
