#pragma once

#include "optionwave/types.hpp"

#include <span>
#include <vector>

namespace optionwave {

struct PlaneWave {
  double k;  // wave number
  double c;  // real amplitude
};

/// Finite superposition of free plane waves; sigma plays the role of the
/// Planck constant in the dispersion omega_k = sigma k^2 / 2.
struct PlaneWaveBasis {
  double sigma = 0.2;
  std::vector<PlaneWave> waves;
  void validate() const;  // sigma > 0, at least one finite wave
};

/// Kinematics of a single mode k under the quadratic dispersion.
/// For k = 0 the ratio quantities (wavelength, phase velocity, period) are
/// undefined and flagged.
struct DispersionReport {
  double omega_k;        // sigma k^2 / 2
  double lambda_k;       // 2 pi / k
  double period_k;       // 2 pi / omega_k
  double v_phase;        // omega_k / k = sigma k / 2
  double v_group;        // d omega / d k = sigma k
  double energy_k;       // (sigma k)^2 / 2
  double packet_center;  // t * d omega / d k
  bool ratios_defined;
};

/// Initial Gaussian profile (a/pi)^{1/4} e^{-a(s-s0)^2/2 + i p0 (s-s0)}:
/// width parameter a, center s0, mean wave number p0.
struct GaussianPacketSpec {
  double width = 1.0;
  double s0 = 0.0;
  double p0 = 0.0;
  void validate() const;
};

/// A e^{i(k s - sigma k^2 t / 2)}.
Complex plane_wave(double s, double t, double amplitude, double k, double sigma);

/// Raw superposition sum_i c_i e^{i(k_i s - sigma k_i^2 t / 2)} without any
/// sign constraint on sigma (the fit harness explores sigma < 0).
Complex packet_sum(double s, double t, double sigma, std::span<const double> ks,
                   std::span<const double> cs);

/// sum_i c_i psi_{k_i}(s, t) for a validated basis.
Complex wave_packet(double s, double t, const PlaneWaveBasis& basis);

DispersionReport dispersion(double k, double sigma, double t);

/// Mean energy under the geometric occupation distribution,
///   <E> = E_k / (e^{E_k / (b T)} - 1);
/// tends to b T as E_k -> 0.
double boltzmann_mean_energy(double energy_k, double kinetic_const,
                             double market_temperature);

/// Exact free evolution of the Gaussian profile:
///   psi(s,t) = (a/pi)^{1/4} / sqrt(1 + i a sigma t)
///              * exp([-a(s-s0)^2/2 + i p0 (s-s0) - i p0^2 sigma t / 2]
///                    / (1 + i a sigma t)).
/// Unit L2 norm for all t.
Complex gaussian_packet(double s, double t, const GaussianPacketSpec& spec,
                        double sigma);

/// Spectral free propagator: psi(t) = F^{-1}[e^{-i sigma k^2 t / 2} F(psi0)].
/// Norm-preserving to rounding; requires a power-of-two grid with the field
/// decayed below 1e-10 at the boundaries.
WaveField fourier_propagate(const WaveField& initial, double t, double sigma);

/// First and second moments of the normalized position density |psi(s)|^2
/// and of the normalized spectral density |psi_hat(k)|^2.
struct MomentReport {
  double mean_s;
  double mean_k;
  double delta_s;
  double delta_k;
};
MomentReport expectations(const WaveField& field);

/// phi_E(s) = c1 e^{i sqrt(2 E) s / sigma} + c2 e^{-i sqrt(2 E) s / sigma};
/// eigenfunction of -(sigma^2/2) d_ss with eigenvalue E >= 0.
Complex energy_eigenstate(double s, double energy_k, Complex c1, Complex c2,
                          double sigma);

/// Exact partial derivatives of the packet PDF |psi(s,t)|^2 = psi psibar,
/// obtained by the product rule (e.g. delta = 2 Re(psibar d_s psi)).
struct QuantumGreeks {
  double delta;  // d_s |psi|^2
  double vega;   // d_sigma |psi|^2
  double theta;  // d_t |psi|^2
  double gamma;  // d_ss |psi|^2
};
QuantumGreeks quantum_greeks(const PlaneWaveBasis& basis, double s, double t);

}  // namespace optionwave
