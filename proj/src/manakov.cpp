#include "optionwave/manakov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace optionwave {

void SolitonSpec::validate() const {
  if (b == 0.0) throw std::invalid_argument("SolitonSpec: b must be nonzero");
  const double norm = std::norm(c1) + std::norm(c2);
  if (std::abs(norm - 1.0) > 1e-12)
    throw std::invalid_argument(
        "SolitonSpec: polarization must be a unit vector, |c|^2 = " +
        std::to_string(norm));
}

void validate(const ManakovState& state) {
  if (state.vol.size() != state.grid.n_points ||
      state.price.size() != state.grid.n_points)
    throw std::invalid_argument("ManakovState: component size does not match grid");
  if (!state.vol.isFinite().all() || !state.price.isFinite().all())
    throw std::invalid_argument("ManakovState: non-finite samples");
}

std::pair<Complex, Complex> manakov_soliton(double s, double t,
                                            const SolitonSpec& spec) {
  spec.validate();
  const double a = spec.a;
  const double b = spec.b;
  const double envelope = 2.0 * b / std::cosh(2.0 * b * (s + 2.0 * a * t));
  const double phase = -2.0 * (a * s + a * a * t - b * b * t);
  const Complex carrier{std::cos(phase), std::sin(phase)};
  return {spec.c1 * envelope * carrier, spec.c2 * envelope * carrier};
}

namespace {

// Normalized envelope cross power int |E_i||E_j| ds / sqrt(int E_i^2 int E_j^2),
// evaluated on the grid.
double envelope_overlap(const SpatialGrid& grid, const SolitonSpec& si, double oi,
                        const SolitonSpec& sj, double oj) {
  double cross = 0.0, power_i = 0.0, power_j = 0.0;
  for (Index n = 0; n < grid.n_points; ++n) {
    const double s = grid.node(n);
    const double ei = std::abs(2.0 * si.b / std::cosh(2.0 * si.b * (s - oi)));
    const double ej = std::abs(2.0 * sj.b / std::cosh(2.0 * sj.b * (s - oj)));
    cross += ei * ej;
    power_i += ei * ei;
    power_j += ej * ej;
  }
  return cross / std::sqrt(power_i * power_j);
}

}  // namespace

ManakovState collision_initial_condition(const SpatialGrid& grid,
                                         const std::vector<SolitonSpec>& specs,
                                         const std::vector<double>& offsets) {
  if (specs.empty())
    throw std::invalid_argument("collision_initial_condition: no solitons given");
  if (specs.size() != offsets.size())
    throw std::invalid_argument(
        "collision_initial_condition: one offset per soliton required");
  for (const auto& spec : specs) spec.validate();

  for (std::size_t i = 0; i < specs.size(); ++i)
    for (std::size_t j = i + 1; j < specs.size(); ++j) {
      const double overlap =
          envelope_overlap(grid, specs[i], offsets[i], specs[j], offsets[j]);
      if (overlap >= 1e-8)
        throw std::invalid_argument(
            "collision_initial_condition: solitons " + std::to_string(i) + " and " +
            std::to_string(j) + " overlap too strongly (" + std::to_string(overlap) +
            "); increase the separation");
    }

  ManakovState state;
  state.grid = grid;
  state.time = 0.0;
  state.vol = ArrayXcd::Zero(grid.n_points);
  state.price = ArrayXcd::Zero(grid.n_points);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (Index n = 0; n < grid.n_points; ++n) {
      const auto [v, p] = manakov_soliton(grid.node(n) - offsets[i], 0.0, specs[i]);
      state.vol[n] += v;
      state.price[n] += p;
    }
  }
  return state;
}

}  // namespace optionwave
