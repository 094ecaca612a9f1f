#include "optionwave/black_scholes.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace optionwave;

namespace {
const OptionParams kDefault{100.0, 0.05, 0.2, 1.0, 0.0};
}

TEST_CASE("d1 and d2") {
  SUBCASE("at the money with r = delta the log term vanishes") {
    OptionParams p = kDefault;
    p.rate = 0.03;
    p.dividend_yield = 0.03;
    const auto [d1, d2] = d1_d2(100.0, p);
    CHECK(d1 == doctest::Approx(0.5 * 0.2).epsilon(1e-14));
    CHECK(d2 == doctest::Approx(-0.5 * 0.2).epsilon(1e-14));
  }
  SUBCASE("difference identity and frozen values") {
    const auto [d1, d2] = d1_d2(100.0, kDefault);
    CHECK(d1 - d2 == doctest::Approx(0.2).epsilon(1e-14));
    // (ln 1 + 0.05 + 0.02) / 0.2 and the same minus sigma sqrt(T)
    CHECK(d1 == doctest::Approx(0.35).epsilon(1e-14));
    CHECK(d2 == doctest::Approx(0.15).epsilon(1e-14));
  }
  CHECK_THROWS_AS(d1_d2(0.0, kDefault), std::invalid_argument);
  CHECK_THROWS_AS(d1_d2(-5.0, kDefault), std::invalid_argument);
}

TEST_CASE("bs_price limits") {
  SUBCASE("deep in the money call") {
    const double call = bs_price(1e6, kDefault, OptionKind::Call);
    const double forward = 1e6 - 100.0 * std::exp(-0.05);
    CHECK(call == doctest::Approx(forward).epsilon(1e-12));
  }
  SUBCASE("vanishing maturity gives the intrinsic value") {
    OptionParams p = kDefault;
    p.maturity = 1e-12;
    CHECK(bs_price(120.0, p, OptionKind::Call) == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(bs_price(80.0, p, OptionKind::Put) == doctest::Approx(20.0).epsilon(1e-9));
  }
  SUBCASE("prices are nonnegative") {
    for (double s : {20.0, 80.0, 100.0, 180.0}) {
      CHECK(bs_price(s, kDefault, OptionKind::Call) >= 0.0);
      CHECK(bs_price(s, kDefault, OptionKind::Put) >= 0.0);
    }
  }
}

TEST_CASE("put-call parity across a parameter lattice") {
  double worst = 0.0;
  for (double s : {60.0, 90.0, 100.0, 130.0, 170.0})
    for (double sigma : {0.1, 0.2, 0.4})
      for (double r : {0.0, 0.03, 0.08})
        for (double t : {0.25, 1.0, 2.5}) {
          OptionParams p{100.0, r, sigma, t, 0.01};
          const double call = bs_price(s, p, OptionKind::Call);
          const double put = bs_price(s, p, OptionKind::Put);
          const double parity =
              s * std::exp(-p.dividend_yield * t) - p.strike * std::exp(-r * t);
          worst = std::max(worst, std::abs(call - put - parity));
        }
  CHECK(worst <= 1e-10);
}

TEST_CASE("bs_price against a small Monte Carlo run" * doctest::timeout(120)) {
  // acceptance runs the full 1e6-path oracle; keep the unit check lighter
  const auto mc =
      oracles::mc_option_price(100.0, kDefault, OptionKind::Call, 200000, 99);
  const double closed = bs_price(100.0, kDefault, OptionKind::Call);
  CHECK(std::abs(closed - mc.mean) < 3.0 * mc.std_error);
}

TEST_CASE("greeks against finite differences of the price") {
  for (OptionKind kind : {OptionKind::Call, OptionKind::Put}) {
    const double s = 100.0;
    const GreeksReport g = bs_greeks(s, kDefault, kind);

    const auto by_spot = [&](double x) { return bs_price(x, kDefault, kind); };
    CHECK(g.delta == doctest::Approx(oracles::central_diff(by_spot, s, 1e-3)).epsilon(1e-5));
    CHECK(g.gamma == doctest::Approx(oracles::central_diff2(by_spot, s, 1e-2)).epsilon(1e-5));

    const auto by_rate = [&](double r) {
      OptionParams p = kDefault;
      p.rate = r;
      return bs_price(s, p, kind);
    };
    CHECK(g.rho ==
          doctest::Approx(oracles::central_diff(by_rate, kDefault.rate, 1e-6)).epsilon(1e-5));

    const auto by_vol = [&](double v) {
      OptionParams p = kDefault;
      p.volatility = v;
      return bs_price(s, p, kind);
    };
    CHECK(g.vega ==
          doctest::Approx(oracles::central_diff(by_vol, kDefault.volatility, 2e-6)).epsilon(1e-5));

    // theta: elapsed-time convention, negative of the maturity derivative
    const auto by_maturity = [&](double t) {
      OptionParams p = kDefault;
      p.maturity = t;
      return bs_price(s, p, kind);
    };
    CHECK(g.theta ==
          doctest::Approx(-oracles::central_diff(by_maturity, kDefault.maturity, 1e-5))
              .epsilon(1e-5));
    CHECK(g.gamma >= 0.0);
  }
}

TEST_CASE("greeks identities") {
  // call delta saturates to e^{-delta T}
  OptionParams p = kDefault;
  p.dividend_yield = 0.02;
  CHECK(bs_greeks(1e5, p, OptionKind::Call).delta ==
        doctest::Approx(std::exp(-0.02)).epsilon(1e-12));
  // parity differentiation: call delta - put delta = e^{-delta T}
  for (double s : {70.0, 100.0, 150.0}) {
    const double gap = bs_greeks(s, p, OptionKind::Call).delta -
                       bs_greeks(s, p, OptionKind::Put).delta;
    CHECK(gap == doctest::Approx(std::exp(-0.02)).epsilon(1e-12));
  }
}

TEST_CASE("bs_curve") {
  const SpatialGrid grid = make_grid(0.0, 200.0, 64);
  const ArrayXd call = bs_curve(grid, kDefault, OptionKind::Call);
  const ArrayXd put = bs_curve(grid, kDefault, OptionKind::Put);

  // boundary limits at s = 0
  CHECK(call[0] == 0.0);
  CHECK(put[0] == doctest::Approx(100.0 * std::exp(-0.05)).epsilon(1e-14));

  // monotone call curve, pointwise agreement with bs_price
  for (Index i = 1; i < grid.n_points; ++i) {
    CHECK(call[i] >= call[i - 1]);
    CHECK(call[i] == bs_price(grid.node(i), kDefault, OptionKind::Call));
  }
  CHECK_THROWS_AS(bs_curve(make_grid(-10.0, 10.0, 16), kDefault, OptionKind::Call),
                  std::invalid_argument);
}
