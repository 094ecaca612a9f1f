#include "optionwave/propagator.hpp"

#include "optionwave/errors.hpp"
#include "optionwave/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace optionwave {

ArrayXd BetaSource::resolve(Index n_points) const {
  if (constant_) return ArrayXd::Constant(n_points, *constant_);
  if (profile_.size() != n_points)
    throw std::invalid_argument("BetaSource: profile length " +
                                std::to_string(profile_.size()) +
                                " does not match grid size " +
                                std::to_string(n_points));
  return profile_;
}

void EvolutionSpec::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("EvolutionSpec: need dt > 0");
  if (t_final < 0.0) throw std::invalid_argument("EvolutionSpec: need t_final >= 0");
  if (record_every < 0)
    throw std::invalid_argument("EvolutionSpec: record_every must be nonnegative");
  if (equation != EquationKind::Manakov && !(sigma > 0.0))
    throw std::invalid_argument("EvolutionSpec: sigma must be positive");
}

namespace {

Index step_count(const EvolutionSpec& spec) {
  const auto steps = Index(std::llround(spec.t_final / spec.dt));
  if (std::abs(double(steps) * spec.dt - spec.t_final) >
      1e-9 * std::max(1.0, spec.t_final))
    throw std::invalid_argument(
        "EvolutionSpec: t_final must be an integer multiple of dt");
  return steps;
}

void check_phase_resolution(const SpatialGrid& grid, double dispersion,
                            double dt) {
  const double k_max = std::numbers::pi / grid.ds();
  const double fastest_phase = 0.5 * dispersion * k_max * k_max * dt;
  if (fastest_phase >= 0.5)
    throw NumericalError(
        "split_step_evolve: dt does not resolve the fastest linear phase "
        "(dt * sigma * k_max^2 / 2 = " +
        std::to_string(fastest_phase) + " >= 0.5)");
}

ArrayXcd linear_step_multipliers(const SpatialGrid& grid, double dispersion,
                                 double dt) {
  const ArrayXd k = wavenumbers(grid);
  ArrayXcd mult(k.size());
  for (Index j = 0; j < k.size(); ++j) {
    const double phase = -0.5 * dispersion * k[j] * k[j] * dt;
    mult[j] = Complex{std::cos(phase), std::sin(phase)};
  }
  return mult;
}

// exp(i phase) applied elementwise.
void rotate(ArrayXcd& values, const ArrayXd& phase) {
  for (Index j = 0; j < values.size(); ++j)
    values[j] *= Complex{std::cos(phase[j]), std::sin(phase[j])};
}

void check_finite(const ArrayXcd& values, Index step) {
  if (!values.isFinite().all())
    throw NumericalError("split_step_evolve: non-finite field after step " +
                         std::to_string(step));
}

bool should_record(Index step, Index total, Index record_every) {
  if (step == total) return true;
  return record_every > 0 && step % record_every == 0;
}

}  // namespace

std::vector<WaveField> split_step_evolve(const WaveField& initial,
                                         const EvolutionSpec& spec) {
  spec.validate();
  if (spec.equation == EquationKind::Manakov)
    throw std::invalid_argument(
        "split_step_evolve: the coupled system needs a ManakovState initial value");
  require_spectral_grid(initial);
  check_phase_resolution(initial.grid, spec.sigma, spec.dt);

  const Index steps = step_count(spec);
  const ArrayXd beta = spec.beta.resolve(initial.grid.n_points);
  const ArrayXcd linear = linear_step_multipliers(initial.grid, spec.sigma, spec.dt);
  const double half_dt = 0.5 * spec.dt;

  std::vector<WaveField> frames;
  frames.push_back(initial);
  ArrayXcd psi = initial.values;
  for (Index step = 1; step <= steps; ++step) {
    if (spec.equation == EquationKind::Nls)
      rotate(psi, (beta * psi.abs2() * half_dt).eval());
    psi = ifft((fft(psi) * linear).eval());
    if (spec.equation == EquationKind::Nls)
      rotate(psi, (beta * psi.abs2() * half_dt).eval());
    check_finite(psi, step);
    if (should_record(step, steps, spec.record_every))
      frames.push_back(WaveField{initial.grid,
                                 initial.time + double(step) * spec.dt, psi});
  }
  return frames;
}

std::vector<ManakovState> split_step_evolve(const ManakovState& initial,
                                            const EvolutionSpec& spec) {
  spec.validate();
  if (spec.equation != EquationKind::Manakov)
    throw std::invalid_argument(
        "split_step_evolve: a ManakovState initial value needs the coupled system");
  validate(initial);
  require_spectral_grid(WaveField{initial.grid, initial.time, initial.vol});
  require_spectral_grid(WaveField{initial.grid, initial.time, initial.price});
  check_phase_resolution(initial.grid, 1.0, spec.dt);

  const Index steps = step_count(spec);
  const ArrayXd beta = spec.beta.resolve(initial.grid.n_points);
  const ArrayXcd linear = linear_step_multipliers(initial.grid, 1.0, spec.dt);
  const double half_dt = 0.5 * spec.dt;

  std::vector<ManakovState> frames;
  frames.push_back(initial);
  ArrayXcd vol = initial.vol;
  ArrayXcd price = initial.price;
  auto nonlinear_half = [&] {
    const ArrayXd phase = beta * (vol.abs2() + price.abs2()) * half_dt;
    rotate(vol, phase);
    rotate(price, phase);
  };
  for (Index step = 1; step <= steps; ++step) {
    nonlinear_half();
    vol = ifft((fft(vol) * linear).eval());
    price = ifft((fft(price) * linear).eval());
    nonlinear_half();
    check_finite(vol, step);
    check_finite(price, step);
    if (should_record(step, steps, spec.record_every))
      frames.push_back(ManakovState{initial.grid,
                                    initial.time + double(step) * spec.dt, vol,
                                    price});
  }
  return frames;
}

namespace {

void check_lattice(Index n_time, Index n_space) {
  if (n_time < 3 || n_space < 3)
    throw std::invalid_argument("pde_residual: need at least 3 nodes per direction");
}

struct ResidualAccumulator {
  double linf = 0.0;
  double sum_sq = 0.0;
  Index count = 0;
  void add(double magnitude) {
    linf = std::max(linf, magnitude);
    sum_sq += magnitude * magnitude;
    ++count;
  }
  ResidualNorms norms(double cell) const {
    return {linf, std::sqrt(sum_sq * cell)};
  }
};

}  // namespace

ResidualNorms pde_residual_black_scholes(const Eigen::MatrixXd& u, const ArrayXd& s,
                                         double dt, double sigma, double rate) {
  check_lattice(u.rows(), u.cols());
  if (s.size() != u.cols())
    throw std::invalid_argument("pde_residual: node coordinates do not match lattice");
  const double ds = s[1] - s[0];
  ResidualAccumulator acc;
  for (Index i = 1; i + 1 < u.rows(); ++i)
    for (Index j = 1; j + 1 < u.cols(); ++j) {
      const double u_t = (u(i + 1, j) - u(i - 1, j)) / (2.0 * dt);
      const double u_s = (u(i, j + 1) - u(i, j - 1)) / (2.0 * ds);
      const double u_ss = (u(i, j + 1) - 2.0 * u(i, j) + u(i, j - 1)) / (ds * ds);
      const double diffusion = 0.5 * sigma * sigma * s[j] * s[j] * u_ss;
      acc.add(std::abs(u_t + diffusion + rate * s[j] * u_s - rate * u(i, j)));
    }
  return acc.norms(dt * ds);
}

ResidualNorms pde_residual_nls(const Eigen::MatrixXcd& psi, const ArrayXd& s,
                               double dt, double sigma, const BetaSource& beta) {
  check_lattice(psi.rows(), psi.cols());
  if (s.size() != psi.cols())
    throw std::invalid_argument("pde_residual: node coordinates do not match lattice");
  const double ds = s[1] - s[0];
  const ArrayXd b = beta.resolve(psi.cols());
  const Complex i_unit{0.0, 1.0};
  ResidualAccumulator acc;
  for (Index i = 1; i + 1 < psi.rows(); ++i)
    for (Index j = 1; j + 1 < psi.cols(); ++j) {
      const Complex p_t = (psi(i + 1, j) - psi(i - 1, j)) / (2.0 * dt);
      const Complex p_ss =
          (psi(i, j + 1) - 2.0 * psi(i, j) + psi(i, j - 1)) / (ds * ds);
      const Complex r = i_unit * p_t + 0.5 * sigma * p_ss +
                        b[j] * std::norm(psi(i, j)) * psi(i, j);
      acc.add(std::abs(r));
    }
  return acc.norms(dt * ds);
}

ResidualNorms pde_residual_free_schrodinger(const Eigen::MatrixXcd& psi, double dt,
                                            double ds, double sigma) {
  check_lattice(psi.rows(), psi.cols());
  const Complex i_unit{0.0, 1.0};
  ResidualAccumulator acc;
  for (Index i = 1; i + 1 < psi.rows(); ++i)
    for (Index j = 1; j + 1 < psi.cols(); ++j) {
      const Complex p_t = (psi(i + 1, j) - psi(i - 1, j)) / (2.0 * dt);
      const Complex p_ss =
          (psi(i, j + 1) - 2.0 * psi(i, j) + psi(i, j - 1)) / (ds * ds);
      acc.add(std::abs(i_unit * sigma * p_t + 0.5 * sigma * sigma * p_ss));
    }
  return acc.norms(dt * ds);
}

ResidualNorms pde_residual_manakov(const Eigen::MatrixXcd& vol,
                                   const Eigen::MatrixXcd& price, const ArrayXd& s,
                                   double dt, const BetaSource& beta) {
  check_lattice(vol.rows(), vol.cols());
  if (vol.rows() != price.rows() || vol.cols() != price.cols())
    throw std::invalid_argument("pde_residual: component lattices differ");
  if (s.size() != vol.cols())
    throw std::invalid_argument("pde_residual: node coordinates do not match lattice");
  const double ds = s[1] - s[0];
  const ArrayXd b = beta.resolve(vol.cols());
  const Complex i_unit{0.0, 1.0};
  ResidualAccumulator acc;
  for (Index i = 1; i + 1 < vol.rows(); ++i)
    for (Index j = 1; j + 1 < vol.cols(); ++j) {
      const double power = std::norm(vol(i, j)) + std::norm(price(i, j));
      for (const auto* q : {&vol, &price}) {
        const Complex q_t = ((*q)(i + 1, j) - (*q)(i - 1, j)) / (2.0 * dt);
        const Complex q_ss =
            ((*q)(i, j + 1) - 2.0 * (*q)(i, j) + (*q)(i, j - 1)) / (ds * ds);
        acc.add(std::abs(i_unit * q_t + 0.5 * q_ss + b[j] * power * (*q)(i, j)));
      }
    }
  return acc.norms(dt * ds);
}

namespace {

double relative_drift(double value, double reference) {
  return (value - reference) / std::max(std::abs(reference), 1e-12);
}

struct FrameInvariants {
  double norm;
  double momentum;
  double kinetic;   // int |psi_s|^2 ds (unweighted)
  double quartic;   // int beta |psi|^4 ds  (or coupled power squared)
};

FrameInvariants scalar_invariants(const WaveField& f, const ArrayXd& beta) {
  const double ds = f.grid.ds();
  const ArrayXcd deriv = spectral_derivative(f.values, f.grid);
  FrameInvariants inv{};
  inv.norm = f.values.abs2().sum() * ds;
  inv.momentum = (f.values.conjugate() * deriv).imag().sum() * ds;
  inv.kinetic = deriv.abs2().sum() * ds;
  inv.quartic = (beta * f.values.abs2().square()).sum() * ds;
  return inv;
}

std::vector<ConservedQuantities> finalize(
    std::vector<ConservedQuantities> report) {
  if (report.empty())
    throw std::invalid_argument("conserved_quantities: need at least one frame");
  const auto first = report.front();
  for (auto& row : report) {
    row.norm_drift = relative_drift(row.norm, first.norm);
    row.momentum_drift = relative_drift(row.momentum, first.momentum);
    row.energy_drift = relative_drift(row.energy, first.energy);
  }
  return report;
}

}  // namespace

std::vector<ConservedQuantities> conserved_quantities(
    const std::vector<WaveField>& frames, const EvolutionSpec& spec) {
  std::vector<ConservedQuantities> report;
  for (const auto& frame : frames) {
    const ArrayXd beta = spec.equation == EquationKind::Nls
                             ? spec.beta.resolve(frame.grid.n_points)
                             : ArrayXd::Zero(frame.grid.n_points);
    const FrameInvariants inv = scalar_invariants(frame, beta);
    ConservedQuantities row;
    row.time = frame.time;
    row.norm = inv.norm;
    row.momentum = inv.momentum;
    // H = int [ sigma/2 |psi_s|^2 - beta/2 |psi|^4 ] ds
    row.energy = 0.5 * spec.sigma * inv.kinetic - 0.5 * inv.quartic;
    report.push_back(row);
  }
  return finalize(std::move(report));
}

std::vector<ConservedQuantities> conserved_quantities(
    const std::vector<ManakovState>& frames, const EvolutionSpec& spec) {
  std::vector<ConservedQuantities> report;
  for (const auto& frame : frames) {
    const double ds = frame.grid.ds();
    const ArrayXd beta = spec.beta.resolve(frame.grid.n_points);
    const ArrayXcd vol_s = spectral_derivative(frame.vol, frame.grid);
    const ArrayXcd price_s = spectral_derivative(frame.price, frame.grid);
    const ArrayXd power = frame.vol.abs2() + frame.price.abs2();

    ConservedQuantities row;
    row.time = frame.time;
    row.norm = power.sum() * ds;
    row.momentum = ((frame.vol.conjugate() * vol_s).imag().sum() +
                    (frame.price.conjugate() * price_s).imag().sum()) *
                   ds;
    // H = int [ (|v_s|^2 + |p_s|^2)/2 - beta/2 (|v|^2 + |p|^2)^2 ] ds
    row.energy = 0.5 * (vol_s.abs2().sum() + price_s.abs2().sum()) * ds -
                 0.5 * (beta * power.square()).sum() * ds;
    report.push_back(row);
  }
  return finalize(std::move(report));
}

}  // namespace optionwave
