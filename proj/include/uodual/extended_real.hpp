#pragma once

#include <cmath>
#include <limits>

#include "uodual/error.hpp"

// Extended reals are plain doubles with +inf/-inf as the infinite points.
// The helpers below enforce convex-analysis conventions and refuse the
// undefined forms instead of producing NaN.
namespace uodual::ext {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_pos_inf(double x) { return x == kInf; }

/// a - b with inf - finite = inf. inf - inf is undefined.
inline double sub(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) == (b > 0))
    throw Error(Errc::ExtendedArithmetic, "inf - inf is undefined");
  return a - b;
}

inline double add(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) != (b > 0))
    throw Error(Errc::ExtendedArithmetic, "inf + (-inf) is undefined");
  return a + b;
}

/// 0 * inf is forbidden rather than silently set to 0 or NaN.
inline double mul(double a, double b) {
  if ((a == 0.0 && std::isinf(b)) || (b == 0.0 && std::isinf(a)))
    throw Error(Errc::ExtendedArithmetic, "0 * inf is undefined");
  return a * b;
}

}  // namespace uodual::ext
