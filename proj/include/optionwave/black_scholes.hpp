#pragma once

#include "optionwave/types.hpp"

#include <utility>

namespace optionwave {

enum class OptionKind { Call, Put };

/// The five sensitivities of the closed-form European price.
///
/// theta follows the elapsed-time convention: it is the derivative with
/// respect to time already spent in the option, i.e. the negative of the
/// derivative with respect to remaining maturity.
struct GreeksReport {
  double delta;  // d price / d s
  double rho;    // d price / d rate
  double vega;   // d price / d volatility
  double theta;  // d price / d elapsed time
  double gamma;  // d^2 price / d s^2, nonnegative for European options
};

/// d1 = [ln(s/k) + T (r - delta + sigma^2/2)] / (sigma sqrt(T)), and
/// d2 = d1 - sigma sqrt(T).
std::pair<double, double> d1_d2(double s, const OptionParams& p);

/// Closed-form European price. Satisfies put-call parity
/// call - put = s e^{-delta T} - k e^{-r T}.
double bs_price(double s, const OptionParams& p, OptionKind kind);

GreeksReport bs_greeks(double s, const OptionParams& p, OptionKind kind);

/// Prices per grid node. An s = 0 node takes the analytic limit
/// (0 for a call, k e^{-rT} for a put); negative nodes are rejected.
ArrayXd bs_curve(const SpatialGrid& grid, const OptionParams& p, OptionKind kind);

}  // namespace optionwave
