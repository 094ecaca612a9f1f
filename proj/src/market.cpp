#include "optionwave/types.hpp"

#include "optionwave/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace optionwave {

SpatialGrid make_grid(double s_min, double s_max, Index n_points) {
  if (!(std::isfinite(s_min) && std::isfinite(s_max)))
    throw std::invalid_argument("make_grid: bounds must be finite");
  if (s_min >= s_max)
    throw std::invalid_argument("make_grid: need s_min < s_max");
  if (n_points < 8)
    throw std::invalid_argument("make_grid: need at least 8 nodes, got " +
                                std::to_string(n_points));
  return SpatialGrid{s_min, s_max, n_points};
}

void OptionParams::validate() const {
  if (!(volatility > 0.0))
    throw std::invalid_argument("OptionParams: volatility must be positive");
  if (!(maturity > 0.0))
    throw std::invalid_argument("OptionParams: maturity must be positive");
  if (!(strike > 0.0))
    throw std::invalid_argument("OptionParams: strike must be positive");
  if (!(std::isfinite(rate) && std::isfinite(dividend_yield)))
    throw std::invalid_argument("OptionParams: rate and dividend yield must be finite");
}

GbmPath simulate_gbm(double s0, double drift, double volatility, double horizon,
                     Index n_steps, std::uint64_t seed) {
  if (!(s0 > 0.0)) throw std::invalid_argument("simulate_gbm: need s0 > 0");
  if (volatility < 0.0)
    throw std::invalid_argument("simulate_gbm: need volatility >= 0");
  if (n_steps < 1) throw std::invalid_argument("simulate_gbm: need n_steps >= 1");
  if (!(horizon > 0.0)) throw std::invalid_argument("simulate_gbm: need horizon > 0");

  const double dt = horizon / double(n_steps);
  const double step_drift = (drift - 0.5 * volatility * volatility) * dt;
  const double step_scale = volatility * std::sqrt(dt);

  GbmPath path;
  path.drift = drift;
  path.volatility = volatility;
  path.seed = seed;
  path.times.resize(n_steps + 1);
  path.prices.resize(n_steps + 1);

  GaussianRng rng(seed);
  double log_s = std::log(s0);
  path.times[0] = 0.0;
  path.prices[0] = s0;
  for (Index i = 1; i <= n_steps; ++i) {
    log_s += step_drift + step_scale * rng.next();
    path.times[i] = horizon * (double(i) / double(n_steps));
    path.prices[i] = std::exp(log_s);
  }
  return path;
}

void validate(const WaveField& field) {
  if (field.values.size() != field.grid.n_points)
    throw std::invalid_argument("WaveField: value count does not match grid");
  if (!field.values.isFinite().all())
    throw std::invalid_argument("WaveField: non-finite samples");
}

}  // namespace optionwave
