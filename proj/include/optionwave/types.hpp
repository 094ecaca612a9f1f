#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace optionwave {

using Complex = std::complex<double>;
using Eigen::ArrayXcd;
using Eigen::ArrayXd;
using Eigen::Index;

/// Uniform grid on the stock-price axis [s_min, s_max].
struct SpatialGrid {
  double s_min = 0.0;
  double s_max = 0.0;
  Index n_points = 0;

  double ds() const { return (s_max - s_min) / double(n_points - 1); }

  // Endpoints are hit exactly: node(0) == s_min, node(n-1) == s_max.
  double node(Index i) const {
    return s_min + (s_max - s_min) * (double(i) / double(n_points - 1));
  }
  ArrayXd nodes() const { return ArrayXd::LinSpaced(n_points, s_min, s_max); }

  bool is_power_of_two() const {
    return n_points > 0 && (n_points & (n_points - 1)) == 0;
  }
  bool operator==(const SpatialGrid&) const = default;
};

/// Builds a uniform grid; rejects n_points < 8 and s_min >= s_max.
SpatialGrid make_grid(double s_min, double s_max, Index n_points);

/// European option contract for the reference pricing engine.
struct OptionParams {
  double strike = 100.0;
  double rate = 0.05;
  double volatility = 0.2;
  double maturity = 1.0;
  double dividend_yield = 0.0;

  void validate() const;
};

/// One sampled geometric-Brownian-motion path.
struct GbmPath {
  ArrayXd times;
  ArrayXd prices;
  double drift = 0.0;
  double volatility = 0.0;
  std::uint64_t seed = 0;
};

/// Samples GBM through the closed-form log-space solution
///   s(t) = s(0) exp((mu - sigma^2/2) t + sigma W(t)),
/// so there is no time-discretization bias. Deterministic for a fixed seed.
GbmPath simulate_gbm(double s0, double drift, double volatility, double horizon,
                     Index n_steps, std::uint64_t seed);

/// Complex wave samples psi(s_i, t) on a uniform grid at one instant.
struct WaveField {
  SpatialGrid grid;
  double time = 0.0;
  ArrayXcd values;
};

/// Checks the length and finiteness invariants of a field.
void validate(const WaveField& field);

}  // namespace optionwave
