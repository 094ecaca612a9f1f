#pragma once

#include "optionwave/types.hpp"

#include <utility>
#include <vector>

namespace optionwave {

/// One vector bright soliton of the coupled volatility/price system
///   i d_t q = -(1/2) d_ss q - (|q_1|^2 + |q_2|^2) q   (unit coupling).
struct SolitonSpec {
  double a = 0.0;               // velocity/phase parameter; envelope speed -2a
  double b = 0.5;               // amplitude/width parameter, nonzero
  Complex c1{1.0, 0.0};         // polarization: |c1|^2 + |c2|^2 = 1
  Complex c2{0.0, 0.0};

  void validate() const;
};

/// Coupled volatility + option-price waves sharing one grid and time.
struct ManakovState {
  SpatialGrid grid;
  double time = 0.0;
  ArrayXcd vol;    // volatility wave sigma(s, t)
  ArrayXcd price;  // option-price wave psi(s, t)
};

void validate(const ManakovState& state);

/// Closed-form bright 2-soliton evaluated at (s, t):
///   (sigma, psi) = 2b c sech(2b(s + 2at)) e^{-2i(as + a^2 t - b^2 t)}.
/// Total power |sigma|^2 + |psi|^2 = 4b^2 sech^2(2b(s + 2at)); for a = 0 the
/// envelope is stationary. At t = 0 this coincides with the textbook
/// parameterization sech(2bs) e^{-2ias}.
std::pair<Complex, Complex> manakov_soliton(double s, double t,
                                            const SolitonSpec& spec);

/// Superposes offset single solitons at t = 0. Valid as an approximate
/// multi-soliton start only when the constituents are well separated: the
/// normalized envelope cross-overlap of every pair must be below 1e-8.
ManakovState collision_initial_condition(const SpatialGrid& grid,
                                         const std::vector<SolitonSpec>& specs,
                                         const std::vector<double>& offsets);

}  // namespace optionwave
