#pragma once

// Min-plus carrier: finite doubles extended by +infinity.
//
// Addition is min (with +inf as the neutral element), multiplication is
// ordinary + (with +inf absorbing), and the Frobenius action is scalar
// multiplication.  NaN and -inf are outside the carrier and rejected at
// every entry point; overflow of a product of finite values is an error
// rather than a silent saturation to +inf.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace thermoring {

using TropicalValue = double;

inline constexpr double kTropicalInf = std::numeric_limits<double>::infinity();

// Additive identity (min) and multiplicative identity (+).
inline constexpr TropicalValue tropical_zero() { return kTropicalInf; }
inline constexpr TropicalValue tropical_one() { return 0.0; }

inline bool tropical_valid(double x) {
  return !std::isnan(x) && x != -kTropicalInf;
}

inline TropicalValue require_tropical(double x, const char* where) {
  if (!tropical_valid(x)) {
    throw std::domain_error(std::string(where) +
                            ": value must be finite or +inf (got " +
                            (std::isnan(x) ? "nan" : "-inf") + ")");
  }
  return x;
}

// min(x, y); idempotent, +inf neutral.
inline TropicalValue tropical_add(TropicalValue x, TropicalValue y) {
  require_tropical(x, "tropical_add");
  require_tropical(y, "tropical_add");
  return x < y ? x : y;
}

// x + y; +inf absorbing.  Overflow of two finite operands leaves the
// carrier and throws.
inline TropicalValue tropical_mul(TropicalValue x, TropicalValue y) {
  require_tropical(x, "tropical_mul");
  require_tropical(y, "tropical_mul");
  if (x == kTropicalInf || y == kTropicalInf) return kTropicalInf;
  double r = x + y;
  if (std::isinf(r)) {
    throw std::overflow_error("tropical_mul: finite operands overflowed");
  }
  return r;
}

// r-th power in min-plus, i.e. r*x.  Conventions: inf^r = inf for r > 0,
// and x^0 = 1, i.e. frobenius(x, 0) = 0 even for x = inf.
inline TropicalValue frobenius(TropicalValue x, double r) {
  require_tropical(x, "frobenius");
  if (std::isnan(r) || r < 0.0) {
    throw std::domain_error("frobenius: exponent must be >= 0");
  }
  if (r == 0.0) return 0.0;
  if (x == kTropicalInf) return kTropicalInf;
  double v = r * x;
  if (std::isinf(v)) {
    throw std::overflow_error("frobenius: finite operand overflowed");
  }
  return v;
}

// Semiring order: x <= y iff x + y = y, i.e. iff min(x,y) = y, i.e. iff
// y <= x as reals.  +inf is the bottom element.
inline bool semiring_leq(TropicalValue x, TropicalValue y) {
  require_tropical(x, "semiring_leq");
  require_tropical(y, "semiring_leq");
  return y <= x;
}

// The -log isomorphism onto the max-times semifield [0, inf): x -> e^{-x},
// inf -> 0.  from_max_times is its inverse.
inline double to_max_times(TropicalValue x) {
  require_tropical(x, "to_max_times");
  return std::exp(-x);
}

inline TropicalValue from_max_times(double y) {
  if (std::isnan(y) || y < 0.0) {
    throw std::domain_error("from_max_times: argument must be >= 0");
  }
  if (y == 0.0) return kTropicalInf;
  if (std::isinf(y)) {
    throw std::domain_error("from_max_times: +inf maps outside the carrier");
  }
  return -std::log(y);
}

}  // namespace thermoring
