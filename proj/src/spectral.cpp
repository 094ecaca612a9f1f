#include "optionwave/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <numbers>
#include <stdexcept>

namespace optionwave {

ArrayXcd fft(const ArrayXcd& x) {
  Eigen::FFT<double> plan;
  Eigen::VectorXcd out;
  plan.fwd(out, x.matrix().eval());
  return out.array();
}

ArrayXcd ifft(const ArrayXcd& x) {
  Eigen::FFT<double> plan;
  Eigen::VectorXcd out;
  plan.inv(out, x.matrix().eval());
  return out.array();
}

ArrayXd wavenumbers(const SpatialGrid& grid) {
  const Index n = grid.n_points;
  const double dk = 2.0 * std::numbers::pi / (double(n) * grid.ds());
  ArrayXd k(n);
  for (Index j = 0; j < n; ++j)
    k[j] = dk * double(j < n / 2 ? j : j - n);
  return k;
}

ArrayXcd spectral_derivative(const ArrayXcd& values, const SpatialGrid& grid) {
  const ArrayXd k = wavenumbers(grid);
  ArrayXcd hat = fft(values);
  hat *= Complex(0.0, 1.0) * k.cast<Complex>();
  return ifft(hat);
}

void require_spectral_grid(const WaveField& field) {
  validate(field);
  if (!field.grid.is_power_of_two())
    throw std::invalid_argument("spectral grid: n_points must be a power of two");
  const double peak = field.values.abs().maxCoeff();
  if (peak == 0.0) return;
  const double edge = std::max(std::abs(field.values[0]),
                               std::abs(field.values[field.grid.n_points - 1]));
  if (edge <= 1e-10 * peak) return;

  // An exactly periodic field (a discrete plane-wave mode, say) never decays
  // yet poses no wrap-around problem; admit it when the highest-frequency
  // eighth of its spectrum is empty.
  const ArrayXd magnitudes = fft(field.values).abs();
  const Index n = field.grid.n_points;
  double tail = 0.0;
  for (Index j = 7 * n / 16; j < 9 * n / 16; ++j) tail = std::max(tail, magnitudes[j]);
  if (tail > 1e-10 * magnitudes.maxCoeff())
    throw std::domain_error(
        "spectral grid: field neither decays below 1e-10 at the boundary nor is "
        "spectrally clean; widen the domain");
}

}  // namespace optionwave
