#include "optionwave/black_scholes.hpp"

#include "optionwave/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace optionwave {

namespace {

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

std::pair<double, double> d1_d2(double s, const OptionParams& p) {
  p.validate();
  if (!(s > 0.0)) throw std::invalid_argument("d1_d2: need s > 0");
  const double vol_sqrt_t = p.volatility * std::sqrt(p.maturity);
  const double d1 =
      (std::log(s / p.strike) +
       p.maturity * (p.rate - p.dividend_yield + 0.5 * p.volatility * p.volatility)) /
      vol_sqrt_t;
  return {d1, d1 - vol_sqrt_t};
}

double bs_price(double s, const OptionParams& p, OptionKind kind) {
  const auto [d1, d2] = d1_d2(s, p);
  const double carry = s * std::exp(-p.dividend_yield * p.maturity);
  const double cash = p.strike * std::exp(-p.rate * p.maturity);
  if (kind == OptionKind::Call)
    return carry * std_normal_cdf(d1) - cash * std_normal_cdf(d2);
  return cash * std_normal_cdf(-d2) - carry * std_normal_cdf(-d1);
}

GreeksReport bs_greeks(double s, const OptionParams& p, OptionKind kind) {
  const auto [d1, d2] = d1_d2(s, p);
  const double t = p.maturity;
  const double sqrt_t = std::sqrt(t);
  const double carry_discount = std::exp(-p.dividend_yield * t);
  const double cash_discount = std::exp(-p.rate * t);
  const double pdf_d1 = std_normal_pdf(d1);

  GreeksReport g{};
  g.gamma = carry_discount * pdf_d1 / (s * p.volatility * sqrt_t);
  g.vega = s * carry_discount * pdf_d1 * sqrt_t;

  // Maturity derivative; theta is its negative (elapsed-time convention).
  double dprice_dT;
  if (kind == OptionKind::Call) {
    g.delta = carry_discount * std_normal_cdf(d1);
    g.rho = p.strike * t * cash_discount * std_normal_cdf(d2);
    dprice_dT = s * carry_discount * pdf_d1 * p.volatility / (2.0 * sqrt_t) +
                p.rate * p.strike * cash_discount * std_normal_cdf(d2) -
                p.dividend_yield * s * carry_discount * std_normal_cdf(d1);
  } else {
    g.delta = carry_discount * (std_normal_cdf(d1) - 1.0);
    g.rho = -p.strike * t * cash_discount * std_normal_cdf(-d2);
    dprice_dT = s * carry_discount * pdf_d1 * p.volatility / (2.0 * sqrt_t) -
                p.rate * p.strike * cash_discount * std_normal_cdf(-d2) +
                p.dividend_yield * s * carry_discount * std_normal_cdf(-d1);
  }
  g.theta = -dprice_dT;
  return g;
}

ArrayXd bs_curve(const SpatialGrid& grid, const OptionParams& p, OptionKind kind) {
  p.validate();
  if (grid.s_min < 0.0)
    throw std::invalid_argument("bs_curve: grid must not contain negative prices");
  ArrayXd curve(grid.n_points);
  for (Index i = 0; i < grid.n_points; ++i) {
    const double s = grid.node(i);
    if (s == 0.0) {
      curve[i] = (kind == OptionKind::Call)
                     ? 0.0
                     : p.strike * std::exp(-p.rate * p.maturity);
    } else {
      curve[i] = bs_price(s, p, kind);
    }
  }
  return curve;
}

}  // namespace optionwave
