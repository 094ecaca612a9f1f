#include "optionwave/nls_waves.hpp"

#include "optionwave/special_functions.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace optionwave;

namespace {

NlsParams constant_beta_params(double beta_value, double modulus = 1.0) {
  NlsParams p;
  p.sigma = 0.2;
  p.wave_number = 1.0;
  p.modulus = modulus;
  p.beta_const = beta_value;
  return p;
}

}  // namespace

TEST_CASE("beta of the weight set") {
  WeightSet w{{{2.0, 1.0, 1.0}}};
  CHECK(beta(0.05, w, 0.0) == 0.0);
  CHECK(beta(0.05, w, 1.0) ==
        doctest::Approx(0.05 * 2.0 * oracles::erf_quadrature(1.0)).epsilon(1e-13));

  // saturation bound and oddness
  WeightSet single{{{1.0, 1.0, 1.0}}};
  CHECK(beta(0.05, single, 1e6) == doctest::Approx(0.05).epsilon(1e-14));
  for (double s : {0.3, 2.0, 17.0}) {
    CHECK(beta(0.05, single, -s) == doctest::Approx(-beta(0.05, single, s)));
    WeightSet multi{{{1.0, 0.5, 2.0}, {-0.7, 3.0, 1.0}}};
    CHECK(std::abs(beta(0.05, multi, s)) <= 0.05 * (1.0 + 0.7) + 1e-15);
  }

  WeightSet bad{{{1.0, 1.0, 0.0}}};
  CHECK_THROWS_AS(beta(0.05, bad, 1.0), std::invalid_argument);
}

TEST_CASE("psi_sn") {
  NlsParams p = constant_beta_params(-0.05, 0.9);

  // zero of the envelope at xi = 0
  const double s_on_crest = p.sigma * p.wave_number * 2.0;
  CHECK(std::abs(psi_sn(s_on_crest, 2.0, p)) < 1e-14);

  // vanishing prefactor at m = 0
  NlsParams zero_m = constant_beta_params(-0.05, 0.0);
  CHECK(std::abs(psi_sn(1.3, 0.7, zero_m)) == 0.0);

  // amplitude: m sqrt(-sigma/beta) |sn(xi, m^2)| at (s, t) = (1, 0)
  const double expected = 0.9 * std::sqrt(4.0) * std::abs(jacobi_sn(1.0, 0.81));
  CHECK(std::abs(psi_sn(1.0, 0.0, p)) == doctest::Approx(expected).epsilon(1e-13));

  // wrong-sign beta rejected unless magnitude mode
  NlsParams wrong = constant_beta_params(0.05, 0.9);
  CHECK_THROWS_AS(psi_sn(1.0, 0.0, wrong), std::domain_error);
  wrong.magnitude_mode = true;
  CHECK(std::abs(psi_sn(1.0, 0.0, wrong)) == doctest::Approx(expected).epsilon(1e-13));

  NlsParams singular = constant_beta_params(0.0, 0.9);
  CHECK_THROWS_AS(psi_sn(1.0, 0.0, singular), std::domain_error);
}

TEST_CASE("psi_shock") {
  NlsParams p = constant_beta_params(-0.05);
  CHECK(std::abs(psi_shock(p.sigma * p.wave_number * 3.0, 3.0, p)) < 1e-14);
  // saturation of the envelope
  CHECK(std::abs(psi_shock(40.0, 0.0, p)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(psi_shock(-40.0, 0.0, p)) == doctest::Approx(2.0).epsilon(1e-12));
  // branch flag
  NlsParams minus = p;
  minus.sign = -1;
  CHECK(psi_shock(3.0, 0.5, minus) == -psi_shock(3.0, 0.5, p));
}

TEST_CASE("psi_soliton peak") {
  NlsParams p = constant_beta_params(0.05);
  CHECK(std::abs(psi_soliton(0.0, 0.0, p)) == doctest::Approx(2.0).epsilon(1e-13));
  // beta < 0 invalid for the bright branch
  NlsParams wrong = constant_beta_params(-0.05);
  CHECK_THROWS_AS(psi_soliton(0.0, 0.0, wrong), std::domain_error);
}

TEST_CASE("psi_cn reduces to zero amplitude at m = 0") {
  NlsParams p = constant_beta_params(0.05, 0.0);
  CHECK(std::abs(psi_cn(0.4, 0.2, p)) == 0.0);
}

TEST_CASE("traveling-wave envelope") {
  NlsParams p = constant_beta_params(0.05);
  const double dt = 0.7;
  const double shift = p.sigma * p.wave_number * dt;
  for (double s : {-2.0, 0.1, 1.4}) {
    CHECK(std::abs(psi_soliton(s, 0.0, p)) ==
          doctest::Approx(std::abs(psi_soliton(s + shift, dt, p))).epsilon(1e-12));
    NlsParams shock = constant_beta_params(-0.05);
    CHECK(std::abs(psi_shock(s, 0.0, shock)) ==
          doctest::Approx(std::abs(psi_shock(s + shift, dt, shock))).epsilon(1e-12));
  }
}

TEST_CASE("m-continuity of psi_sn toward psi_shock") {
  NlsParams near = constant_beta_params(-0.05, 1.0 - 1e-6);
  NlsParams limit = constant_beta_params(-0.05, 1.0);
  double worst = 0.0;
  for (int i = 0; i <= 50; ++i) {
    const double s = -5.0 + 10.0 * i / 50.0;
    worst = std::max(worst, std::abs(std::abs(psi_sn(s, 0.3, near)) -
                                     std::abs(psi_shock(s, 0.3, limit))));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("oscillator residual") {
  NlsParams p = constant_beta_params(-0.05);

  SUBCASE("zero profile") {
    CHECK(oscillator_residual(ArrayXd::Zero(32), 0.1, 0.3, p) == 0.0);
  }

  SUBCASE("shock profile at second order") {
    const double omega = 0.5 * p.sigma * (2.0 + p.wave_number * p.wave_number);
    const double amplitude = std::sqrt(-p.sigma / *p.beta_const);
    auto sample = [&](Index n) {
      ArrayXd phi(n);
      for (Index i = 0; i < n; ++i) {
        const double xi = -3.0 + 6.0 * double(i) / double(n - 1);
        phi[i] = amplitude * std::tanh(xi);
      }
      return phi;
    };
    const double coarse =
        oscillator_residual(sample(201), 6.0 / 200.0, omega, p);
    const double fine = oscillator_residual(sample(401), 6.0 / 400.0, omega, p);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
  }

  SUBCASE("anharmonic cn profile at second order") {
    // phi'' + phi + phi^3 = 0 with
    // phi = sqrt(2m/(1-2m)) cn(sqrt(1 + 2m/(1-2m)) xi, m), here m = 0.3
    const double m = 0.3;
    const double amplitude = std::sqrt(2.0 * m / (1.0 - 2.0 * m));
    const double stretch = std::sqrt(1.0 + 2.0 * m / (1.0 - 2.0 * m));
    NlsParams anharmonic;
    anharmonic.sigma = 2.0;
    anharmonic.wave_number = 0.0;
    anharmonic.beta_const = 1.0;
    auto sample = [&](Index n) {
      ArrayXd phi(n);
      for (Index i = 0; i < n; ++i) {
        const double xi = -3.0 + 6.0 * double(i) / double(n - 1);
        phi[i] = amplitude * jacobi_cn(stretch * xi, m);
      }
      return phi;
    };
    const double coarse =
        oscillator_residual(sample(201), 6.0 / 200.0, 1.0, anharmonic);
    const double fine =
        oscillator_residual(sample(401), 6.0 / 400.0, 1.0, anharmonic);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
  }

  CHECK_THROWS_AS(oscillator_residual(ArrayXd::Zero(2), 0.1, 0.3, p),
                  std::invalid_argument);
  NlsParams no_const = p;
  no_const.beta_const.reset();
  no_const.weights.rows = {{1.0, 1.0, 1.0}};
  CHECK_THROWS_AS(oscillator_residual(ArrayXd::Zero(16), 0.1, 0.3, no_const),
                  std::invalid_argument);
}

TEST_CASE("spatial pdfs") {
  NlsParams p = constant_beta_params(0.05);
  const double crest = p.wave_number * 2.0 * p.sigma;
  CHECK(spatial_pdf_shock(crest, p, 2.0) == 0.0);
  // saturation value sigma/beta far from the crest
  CHECK(spatial_pdf_shock(crest + 50.0, p, 2.0) == doctest::Approx(4.0).epsilon(1e-12));

  // blend degenerations
  const BlendCoefficients pure_shock{1.0, 0.0};
  for (double s : {-1.0, 0.5, 3.0})
    CHECK(spatial_pdf_blend(s, p, 2.0, pure_shock) ==
          doctest::Approx(spatial_pdf_shock(s, p, 2.0)).epsilon(1e-15));

  const BlendCoefficients pure_soliton{0.0, 1.0};
  CHECK(spatial_pdf_blend(crest, p, 2.0, pure_soliton) ==
        doctest::Approx(4.0).epsilon(1e-13));

  CHECK_THROWS_AS(spatial_pdf_blend(1.0, p, 0.0, BlendCoefficients{0.0, 0.0}),
                  std::invalid_argument);

  // beta zero crossing flagged
  NlsParams adaptive;
  adaptive.sigma = 0.2;
  adaptive.rate = 0.05;
  adaptive.weights.rows = {{1.0, 1.0, 1.0}};
  CHECK_THROWS_AS(spatial_pdf_shock(0.0, adaptive, 0.0), std::domain_error);
  CHECK(spatial_pdf_shock(5.0, adaptive, 0.0) > 0.0);
}
