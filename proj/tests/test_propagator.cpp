#include "optionwave/propagator.hpp"

#include "optionwave/errors.hpp"
#include "optionwave/quantum_packet.hpp"
#include "surfaces.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace optionwave;

namespace {

NlsParams soliton_params() {
  NlsParams p;
  p.sigma = 0.2;
  p.wave_number = 1.0;
  p.beta_const = 0.2;  // amplitude sqrt(sigma/beta) = 1
  return p;
}

WaveField sampled_soliton(const SpatialGrid& grid, double t) {
  const NlsParams p = soliton_params();
  WaveField field{grid, t, ArrayXcd(grid.n_points)};
  for (Index i = 0; i < grid.n_points; ++i)
    field.values[i] = psi_soliton(grid.node(i), t, p);
  return field;
}

WaveField sampled_gaussian(const SpatialGrid& grid, double sigma, double t) {
  GaussianPacketSpec unit;
  WaveField field{grid, t, ArrayXcd(grid.n_points)};
  for (Index i = 0; i < grid.n_points; ++i)
    field.values[i] = gaussian_packet(grid.node(i), t, unit, sigma);
  return field;
}

EvolutionSpec nls_spec(double dt, double t_final) {
  EvolutionSpec spec;
  spec.equation = EquationKind::Nls;
  spec.sigma = 0.2;
  spec.beta = BetaSource::constant(0.2);
  spec.dt = dt;
  spec.t_final = t_final;
  return spec;
}

}  // namespace

TEST_CASE("linear flow is exact on a discrete plane-wave mode") {
  const SpatialGrid grid = make_grid(-25.0, 25.0, 512);
  const double k =
      2.0 * std::numbers::pi * 12.0 / (grid.ds() * double(grid.n_points));
  WaveField mode{grid, 0.0, ArrayXcd(grid.n_points)};
  for (Index i = 0; i < grid.n_points; ++i) {
    const double phase = k * grid.node(i);
    mode.values[i] = Complex{std::cos(phase), std::sin(phase)};
  }

  EvolutionSpec spec = nls_spec(1e-3, 0.25);
  spec.beta = BetaSource::constant(0.0);
  const auto frames = split_step_evolve(mode, spec);
  const double omega = 0.5 * spec.sigma * k * k;
  double worst = 0.0;
  for (Index i = 0; i < grid.n_points; ++i) {
    const double phase = k * grid.node(i) - omega * 0.25;
    worst = std::max(worst,
                     std::abs(frames.back().values[i] -
                              Complex{std::cos(phase), std::sin(phase)}));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("bright soliton propagation matches the closed form" * doctest::timeout(120)) {
  const SpatialGrid grid = make_grid(-25.0, 25.0, 1024);
  const auto frames = split_step_evolve(sampled_soliton(grid, 0.0), nls_spec(1e-3, 1.0));
  const WaveField expected = sampled_soliton(grid, 1.0);
  CHECK(frames.back().time == doctest::Approx(1.0));
  CHECK((frames.back().values - expected.values).abs().maxCoeff() <= 1e-6);

  const auto conserved = conserved_quantities(frames, nls_spec(1e-3, 1.0));
  CHECK(std::abs(conserved.back().norm_drift) <= 1e-8);
}

TEST_CASE("splitting is second order in dt" * doctest::timeout(120)) {
  const SpatialGrid grid = make_grid(-25.0, 25.0, 512);
  const WaveField start = sampled_soliton(grid, 0.0);
  const WaveField expected = sampled_soliton(grid, 0.5);
  auto terminal_error = [&](double dt) {
    const auto frames = split_step_evolve(start, nls_spec(dt, 0.5));
    return (frames.back().values - expected.values).abs().maxCoeff();
  };
  const double coarse = terminal_error(2e-3);
  const double medium = terminal_error(1e-3);
  const double fine = terminal_error(5e-4);
  CHECK(coarse / medium == doctest::Approx(4.0).epsilon(0.2));
  CHECK(medium / fine == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("time reversibility through conjugation") {
  const SpatialGrid grid = make_grid(-25.0, 25.0, 512);
  const WaveField start = sampled_soliton(grid, 0.0);
  const EvolutionSpec spec = nls_spec(1e-3, 0.5);
  const auto forward = split_step_evolve(start, spec);
  WaveField reversed{grid, 0.0, forward.back().values.conjugate()};
  const auto back = split_step_evolve(reversed, spec);
  CHECK((back.back().values.conjugate() - start.values).abs().maxCoeff() <= 1e-9);
}

TEST_CASE("linear limit equals the free propagator") {
  const SpatialGrid grid = make_grid(-20.0, 20.0, 512);
  const WaveField start = sampled_gaussian(grid, 0.2, 0.0);
  EvolutionSpec spec;
  spec.equation = EquationKind::Nls;
  spec.sigma = 0.2;
  spec.beta = BetaSource::constant(0.0);
  spec.dt = 1e-3;
  spec.t_final = 0.2;
  const auto frames = split_step_evolve(start, spec);
  const WaveField direct = fourier_propagate(start, 0.2, 0.2);
  CHECK((frames.back().values - direct.values).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("manakov soliton propagation" * doctest::timeout(120)) {
  const SpatialGrid grid = make_grid(-56.0, 56.0, 1024);
  SolitonSpec soliton;
  soliton.a = 0.25;
  soliton.b = 0.5;
  soliton.c1 = Complex{1.0 / std::numbers::sqrt2, 0.0};
  soliton.c2 = Complex{1.0 / std::numbers::sqrt2, 0.0};

  ManakovState initial{grid, 0.0, ArrayXcd(grid.n_points), ArrayXcd(grid.n_points)};
  for (Index i = 0; i < grid.n_points; ++i) {
    const auto [vol, price] = manakov_soliton(grid.node(i), 0.0, soliton);
    initial.vol[i] = vol;
    initial.price[i] = price;
  }

  EvolutionSpec spec;
  spec.equation = EquationKind::Manakov;
  spec.beta = BetaSource::constant(1.0);
  spec.dt = 1e-3;
  spec.t_final = 1.0;
  const auto frames = split_step_evolve(initial, spec);

  double worst = 0.0;
  for (Index i = 0; i < grid.n_points; ++i) {
    const auto [vol, price] = manakov_soliton(grid.node(i), 1.0, soliton);
    worst = std::max(worst, std::abs(frames.back().vol[i] - vol));
    worst = std::max(worst, std::abs(frames.back().price[i] - price));
  }
  CHECK(worst <= 1e-5);

  const auto conserved = conserved_quantities(frames, spec);
  CHECK(std::abs(conserved.back().norm_drift) <= 1e-8);
  CHECK(std::abs(conserved.back().energy_drift) <= 1e-6);
}

TEST_CASE("zero-duration run returns the input frame") {
  const SpatialGrid grid = make_grid(-25.0, 25.0, 512);
  const WaveField start = sampled_soliton(grid, 0.0);
  EvolutionSpec spec = nls_spec(1e-3, 0.0);
  const auto frames = split_step_evolve(start, spec);
  REQUIRE(frames.size() == 1);
  CHECK((frames[0].values - start.values).abs().maxCoeff() == 0.0);
}

TEST_CASE("integrator error paths") {
  const SpatialGrid grid = make_grid(-25.0, 25.0, 512);
  const WaveField start = sampled_soliton(grid, 0.0);

  SUBCASE("dt too large for the fastest phase") {
    CHECK_THROWS_AS(split_step_evolve(start, nls_spec(0.2, 1.0)), NumericalError);
  }
  SUBCASE("frame recording cadence") {
    EvolutionSpec spec = nls_spec(1e-3, 0.1);
    spec.record_every = 25;
    const auto frames = split_step_evolve(start, spec);
    CHECK(frames.size() == 5);  // 0, 25, 50, 75, 100
    CHECK(frames[1].time == doctest::Approx(0.025));
  }
  SUBCASE("non-finite nonlinear coefficient is caught") {
    EvolutionSpec spec = nls_spec(1e-3, 0.01);
    ArrayXd profile = ArrayXd::Zero(grid.n_points);
    profile[100] = std::numeric_limits<double>::infinity();
    spec.beta = BetaSource::profile(profile);
    CHECK_THROWS_AS(split_step_evolve(start, spec), NumericalError);
  }
  SUBCASE("beta profile must match the grid") {
    EvolutionSpec spec = nls_spec(1e-3, 0.01);
    spec.beta = BetaSource::profile(ArrayXd::Zero(100));
    CHECK_THROWS_AS(split_step_evolve(start, spec), std::invalid_argument);
  }
}

TEST_CASE("pde residual basics") {
  SUBCASE("zero surface has zero residual") {
    const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(8, 8);
    const ResidualNorms norms = pde_residual_free_schrodinger(zero, 0.1, 0.1, 0.2);
    CHECK(norms.linf == 0.0);
    CHECK(norms.l2 == 0.0);
  }
  SUBCASE("lattice too small") {
    const Eigen::MatrixXcd tiny = Eigen::MatrixXcd::Zero(2, 8);
    CHECK_THROWS_AS(pde_residual_free_schrodinger(tiny, 0.1, 0.1, 0.2),
                    std::invalid_argument);
  }
}

TEST_CASE("residual refinement: price surface" * doctest::timeout(120)) {
  const OptionParams params{100.0, 0.05, 0.2, 1.0, 0.0};
  const auto study = surfaces::refine([&](Index level) {
    const Index n_s = 65 * (Index(1) << level) + 1;
    const Index n_t = 33 * (Index(1) << level) + 1;
    const auto lattice = surfaces::make_lattice(60.0, 160.0, n_s, 0.0, 0.5, n_t);
    // calendar-time surface u(t, s) with remaining maturity T - t
    const Eigen::MatrixXd u =
        surfaces::sample_real(lattice, 0.0, [&](double s, double t) {
          OptionParams p = params;
          p.maturity = params.maturity - t;
          return bs_price(s, p, OptionKind::Call);
        });
    return pde_residual_black_scholes(u, lattice.s, lattice.dt, params.volatility,
                                      params.rate)
        .linf;
  });
  CHECK(study.order_01 > 1.8);
  CHECK(study.order_01 < 2.2);
  CHECK(study.order_12 > 1.8);
  CHECK(study.order_12 < 2.2);
}

TEST_CASE("residual refinement: shock and soliton waves" * doctest::timeout(120)) {
  NlsParams shock;
  shock.sigma = 0.2;
  shock.wave_number = 1.0;
  shock.beta_const = -0.05;

  const auto shock_study = surfaces::refine([&](Index level) {
    const Index n = 65 * (Index(1) << level) + 1;
    const auto lattice = surfaces::make_lattice(-10.0, 10.0, n, 0.0, 0.5, n);
    const auto psi = surfaces::sample_complex(
        lattice, 0.0, [&](double s, double t) { return psi_shock(s, t, shock); });
    return pde_residual_nls(psi, lattice.s, lattice.dt, shock.sigma,
                            BetaSource::constant(*shock.beta_const))
        .linf;
  });
  CHECK(shock_study.order_01 > 1.8);
  CHECK(shock_study.order_01 < 2.2);
  CHECK(shock_study.order_12 > 1.8);
  CHECK(shock_study.order_12 < 2.2);

  const NlsParams bright = soliton_params();
  const auto bright_study = surfaces::refine([&](Index level) {
    const Index n = 65 * (Index(1) << level) + 1;
    const auto lattice = surfaces::make_lattice(-10.0, 10.0, n, 0.0, 0.5, n);
    const auto psi = surfaces::sample_complex(
        lattice, 0.0, [&](double s, double t) { return psi_soliton(s, t, bright); });
    return pde_residual_nls(psi, lattice.s, lattice.dt, bright.sigma,
                            BetaSource::constant(*bright.beta_const))
        .linf;
  });
  CHECK(bright_study.order_01 > 1.8);
  CHECK(bright_study.order_01 < 2.2);
}

TEST_CASE("residual refinement: sn and cn families") {
  NlsParams periodic;
  periodic.sigma = 0.2;
  periodic.wave_number = 1.0;
  periodic.modulus = 0.7;
  periodic.beta_const = -0.05;

  const auto sn_study = surfaces::refine([&](Index level) {
    const Index n = 65 * (Index(1) << level) + 1;
    const auto lattice = surfaces::make_lattice(-8.0, 8.0, n, 0.0, 0.4, n);
    const auto psi = surfaces::sample_complex(
        lattice, 0.0, [&](double s, double t) { return psi_sn(s, t, periodic); });
    return pde_residual_nls(psi, lattice.s, lattice.dt, periodic.sigma,
                            BetaSource::constant(*periodic.beta_const))
        .linf;
  });
  CHECK(sn_study.order_01 > 1.8);
  CHECK(sn_study.order_01 < 2.2);

  NlsParams cn_params = periodic;
  cn_params.beta_const = 0.05;
  const auto cn_study = surfaces::refine([&](Index level) {
    const Index n = 65 * (Index(1) << level) + 1;
    const auto lattice = surfaces::make_lattice(-8.0, 8.0, n, 0.0, 0.4, n);
    const auto psi = surfaces::sample_complex(
        lattice, 0.0, [&](double s, double t) { return psi_cn(s, t, cn_params); });
    return pde_residual_nls(psi, lattice.s, lattice.dt, cn_params.sigma,
                            BetaSource::constant(*cn_params.beta_const))
        .linf;
  });
  CHECK(cn_study.order_01 > 1.8);
  CHECK(cn_study.order_01 < 2.2);
}

TEST_CASE("residual refinement: free packet and coupled soliton") {
  const auto free_study = surfaces::refine([&](Index level) {
    const Index n = 65 * (Index(1) << level) + 1;
    const auto lattice = surfaces::make_lattice(-8.0, 8.0, n, 0.0, 0.5, n);
    GaussianPacketSpec unit;
    const auto psi = surfaces::sample_complex(lattice, 0.0, [&](double s, double t) {
      return gaussian_packet(s, t, unit, 0.2);
    });
    return pde_residual_free_schrodinger(psi, lattice.dt, lattice.s[1] - lattice.s[0],
                                         0.2)
        .linf;
  });
  CHECK(free_study.order_01 > 1.8);
  CHECK(free_study.order_01 < 2.2);

  SolitonSpec soliton;
  soliton.a = 0.25;
  soliton.b = 0.5;
  const auto coupled_study = surfaces::refine([&](Index level) {
    const Index n = 65 * (Index(1) << level) + 1;
    const auto lattice = surfaces::make_lattice(-10.0, 10.0, n, 0.0, 0.5, n);
    const auto vol = surfaces::sample_complex(lattice, 0.0, [&](double s, double t) {
      return manakov_soliton(s, t, soliton).first;
    });
    const auto price = surfaces::sample_complex(lattice, 0.0, [&](double s, double t) {
      return manakov_soliton(s, t, soliton).second;
    });
    return pde_residual_manakov(vol, price, lattice.s, lattice.dt,
                                BetaSource::constant(1.0))
        .linf;
  });
  CHECK(coupled_study.order_01 > 1.8);
  CHECK(coupled_study.order_01 < 2.2);
}

TEST_CASE("conserved quantities") {
  const SpatialGrid grid = make_grid(-20.0, 20.0, 1024);

  SUBCASE("single frame has zero drift by definition") {
    const std::vector<WaveField> frames{sampled_gaussian(grid, 1.0, 0.0)};
    EvolutionSpec spec;
    spec.sigma = 1.0;
    const auto report = conserved_quantities(frames, spec);
    REQUIRE(report.size() == 1);
    CHECK(report[0].norm_drift == 0.0);
    CHECK(report[0].energy_drift == 0.0);
  }

  SUBCASE("free evolution conserves norm and energy") {
    const SpatialGrid coarse = make_grid(-20.0, 20.0, 512);
    EvolutionSpec spec;
    spec.equation = EquationKind::FreeSchrodinger;
    spec.sigma = 1.0;
    spec.dt = 2.5e-4;
    spec.t_final = 0.5;
    spec.record_every = 500;
    const auto frames = split_step_evolve(sampled_gaussian(coarse, 1.0, 0.0), spec);
    const auto report = conserved_quantities(frames, spec);
    for (const auto& row : report) {
      CHECK(std::abs(row.norm_drift) <= 1e-12);
      CHECK(std::abs(row.energy_drift) <= 1e-10);
    }
  }

  CHECK_THROWS_AS(conserved_quantities(std::vector<WaveField>{}, EvolutionSpec{}),
                  std::invalid_argument);
}
