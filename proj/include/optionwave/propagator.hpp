#pragma once

#include "optionwave/manakov.hpp"
#include "optionwave/types.hpp"

#include <optional>
#include <vector>

namespace optionwave {

enum class EquationKind { FreeSchrodinger, Nls, Manakov };

/// Nonlinearity coefficient: either one constant or a per-node profile
/// beta(s_i) sampled on the evolution grid.
class BetaSource {
 public:
  static BetaSource constant(double value) {
    BetaSource b;
    b.constant_ = value;
    return b;
  }
  static BetaSource profile(ArrayXd values) {
    BetaSource b;
    b.profile_ = std::move(values);
    return b;
  }

  bool is_constant() const { return constant_.has_value(); }
  double constant_value() const { return *constant_; }

  /// Per-node coefficients; a profile must match the grid size.
  ArrayXd resolve(Index n_points) const;

 private:
  std::optional<double> constant_;
  ArrayXd profile_;
};

struct EvolutionSpec {
  EquationKind equation = EquationKind::FreeSchrodinger;
  double sigma = 1.0;  // dispersion coefficient; the coupled system fixes 1
  BetaSource beta = BetaSource::constant(0.0);
  double dt = 1e-3;
  double t_final = 1.0;
  Index record_every = 0;  // 0: record only the first and last frame

  void validate() const;
};

/// Strang-split spectral integrator: half nonlinear phase step, full linear
/// spectral step, half nonlinear phase step; second-order in dt and exactly
/// norm-preserving. Preconditions: power-of-two grid, boundary decay below
/// 1e-10, and dt within the linear-phase bound dt * sigma * k_max^2 / 2 < 0.5.
/// Frames are recorded at t = 0, every record_every steps, and at t_final.
std::vector<WaveField> split_step_evolve(const WaveField& initial,
                                         const EvolutionSpec& spec);
std::vector<ManakovState> split_step_evolve(const ManakovState& initial,
                                            const EvolutionSpec& spec);

struct ResidualNorms {
  double linf = 0.0;
  double l2 = 0.0;
};

// Residual operators: second-order central differences in both directions on
// the interior of a uniform (t, s) lattice (rows = times, cols = nodes).

/// d_t u + (sigma s)^2/2 d_ss u + r s d_s u - r u.
ResidualNorms pde_residual_black_scholes(const Eigen::MatrixXd& u, const ArrayXd& s,
                                         double dt, double sigma, double rate);

/// i d_t psi + (sigma/2) d_ss psi + beta(s) |psi|^2 psi.
ResidualNorms pde_residual_nls(const Eigen::MatrixXcd& psi, const ArrayXd& s,
                               double dt, double sigma, const BetaSource& beta);

/// i sigma d_t psi + (sigma^2/2) d_ss psi.
ResidualNorms pde_residual_free_schrodinger(const Eigen::MatrixXcd& psi, double dt,
                                            double ds, double sigma);

/// Componentwise residual of the coupled system
/// i d_t q_c + (1/2) d_ss q_c + beta(s) (|q_1|^2 + |q_2|^2) q_c.
ResidualNorms pde_residual_manakov(const Eigen::MatrixXcd& vol,
                                   const Eigen::MatrixXcd& price, const ArrayXd& s,
                                   double dt, const BetaSource& beta);

/// Norm, momentum and Hamiltonian energy of one recorded frame, with drifts
/// relative to the first frame.
struct ConservedQuantities {
  double time = 0.0;
  double norm = 0.0;      // int |psi|^2 ds
  double momentum = 0.0;  // Im int conj(psi) d_s psi ds
  double energy = 0.0;    // equation-specific Hamiltonian functional
  double norm_drift = 0.0;
  double momentum_drift = 0.0;
  double energy_drift = 0.0;
};

std::vector<ConservedQuantities> conserved_quantities(
    const std::vector<WaveField>& frames, const EvolutionSpec& spec);
std::vector<ConservedQuantities> conserved_quantities(
    const std::vector<ManakovState>& frames, const EvolutionSpec& spec);

}  // namespace optionwave
