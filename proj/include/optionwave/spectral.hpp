#pragma once

#include "optionwave/types.hpp"

namespace optionwave {

// Discrete Fourier helpers shared by the free propagator and the split-step
// integrator. Forward transform is unscaled; the inverse carries the 1/N.

ArrayXcd fft(const ArrayXcd& x);
ArrayXcd ifft(const ArrayXcd& x);

/// Angular wavenumbers in FFT ordering:
/// 2*pi/(N ds) * {0, 1, ..., N/2 - 1, -N/2, ..., -1}.
ArrayXd wavenumbers(const SpatialGrid& grid);

/// Spectral derivative d psi / d s on a periodic grid.
ArrayXcd spectral_derivative(const ArrayXcd& values, const SpatialGrid& grid);

/// Throws unless the grid has power-of-two size and |psi| at both boundary
/// nodes is below 1e-10 of the field maximum (periodic-method premise).
void require_spectral_grid(const WaveField& field);

}  // namespace optionwave
