#ifndef ZONAL_TESTS_SUPPORT_HPP
#define ZONAL_TESTS_SUPPORT_HPP

#include <cmath>
#include <numbers>

#include <doctest.h>

namespace zonal::testing {

inline constexpr double kPi = std::numbers::pi;

// Absolute comparison with the operands shown on failure.
#define CHECK_NEAR(a, b, tol)                                     \
  do {                                                            \
    const double zonal_a_ = (a);                                  \
    const double zonal_b_ = (b);                                  \
    INFO(#a " = " << zonal_a_ << ", " #b " = " << zonal_b_);      \
    CHECK(std::abs(zonal_a_ - zonal_b_) <= (tol));                \
  } while (false)

inline double grid_x(int i, int points) { return -1.0 + 2.0 * i / (points - 1); }

}  // namespace zonal::testing

#endif  // ZONAL_TESTS_SUPPORT_HPP
