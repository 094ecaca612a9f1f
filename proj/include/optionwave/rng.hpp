#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace optionwave {

/// Seedable Gaussian stream: std::mt19937_64 mapped through the basic
/// Box-Muller transform. Both pieces have pinned algorithm identities, so a
/// given seed produces the same variates on every conforming platform.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite; u2 in [0, 1).
    const double u1 =
        (double(engine_()) + 1.0) * 0x1.0p-64;  // (x + 1) / 2^64
    const double u2 = double(engine_()) * 0x1.0p-64;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  std::uint64_t next_uint() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace optionwave
