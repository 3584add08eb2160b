#pragma once

// Fixed-point reals and circle points with a tracked error radius.
//
// A PreciseReal stores value = mantissa / 2^B where B is the process-wide
// precision (default 192 bits).  The err field is an upper bound, in ulps of
// 2^-B, on the distance between the stored mantissa and the exact quantity it
// stands for.  Every operation propagates err by interval rules, so floors and
// fractional parts can be certified or rejected as ambiguous.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nilosc {

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A floor or fractional part is requested for a value whose error interval
/// contains an integer.
class AmbiguousBoundary : public NumericError {
 public:
  using NumericError::NumericError;
};

/// An integer multiplier exceeds the guard-bit budget 2^(B-G).
class PrecisionExhausted : public NumericError {
 public:
  using NumericError::NumericError;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Process-wide precision.  Configure once at startup, before any value is
// constructed; values built under one precision are meaningless under another.
constexpr unsigned kDefaultPrecisionBits = 192;
constexpr unsigned kDefaultGuardBits = 64;
constexpr unsigned kMinPrecisionBits = 128;

void configure_precision(unsigned bits, unsigned guard_bits = kDefaultGuardBits);
unsigned precision_bits();
unsigned guard_bits();

/// 2^(B-G): the largest integer multiplier accepted in mod-1 contexts.
const mpz_class& max_multiplier();
/// Throws PrecisionExhausted if |k| > max_multiplier().
void check_multiplier(const mpz_class& k);

enum class BoundaryMode { strict, snap };

class PreciseReal {
 public:
  PreciseReal() = default;
  PreciseReal(mpz_class mantissa, mpz_class err);

  static PreciseReal from_int(const mpz_class& k);
  static PreciseReal from_int(long k) { return from_int(mpz_class(k)); }
  /// Exact when the double is representable at B bits, else 1 ulp.
  static PreciseReal from_double(double x);
  /// floor(sqrt(k) * 2^B); err 0 for perfect squares, 1 otherwise.
  static PreciseReal sqrt_of(unsigned long k);
  /// p/q rounded to nearest; err 0 when exact.
  static PreciseReal rational(const mpz_class& p, const mpz_class& q);
  /// Accepts integers, decimals with optional exponent ("-2.7", "1e-3"),
  /// fractions "p/q", and "sqrt(k)" optionally negated or scaled by an
  /// integer or decimal factor ("3*sqrt(2)").
  static PreciseReal parse(std::string_view text);

  const mpz_class& mantissa() const { return mantissa_; }
  const mpz_class& err() const { return err_; }

  bool is_exact() const { return err_ == 0; }
  double to_double() const;
  /// Round-to-nearest decimal with `digits` fractional digits.  The default
  /// (0) picks enough digits for parse() to recover the mantissa.
  std::string to_decimal(int digits = 0) const;

  PreciseReal operator-() const;
  PreciseReal& operator+=(const PreciseReal& o);
  PreciseReal& operator-=(const PreciseReal& o);

  friend PreciseReal operator+(PreciseReal a, const PreciseReal& b) { return a += b; }
  friend PreciseReal operator-(PreciseReal a, const PreciseReal& b) { return a -= b; }
  friend PreciseReal operator*(const PreciseReal& a, const PreciseReal& b);
  /// Exact integer scaling; err scales by |k|.
  friend PreciseReal operator*(const mpz_class& k, const PreciseReal& a);
  friend PreciseReal operator*(const PreciseReal& a, const mpz_class& k) { return k * a; }

  /// True when the two error intervals overlap.
  bool consistent_with(const PreciseReal& o) const;

 private:
  mpz_class mantissa_{0};
  mpz_class err_{0};
};

/// floor(x), exact given err.  Throws AmbiguousBoundary when the error
/// interval straddles an integer, unless mode is snap (then the midpoint
/// decides).
mpz_class floor_certified(const PreciseReal& x, BoundaryMode mode = BoundaryMode::strict);

/// A point of R/Z: mantissa in [0, 2^B).
class CirclePoint {
 public:
  CirclePoint() = default;

  /// Reduce mod 1 unconditionally.  On the circle this is continuous, so no
  /// boundary check is needed; use frac() when the real representative in
  /// [0,1) itself matters.
  static CirclePoint wrap(const PreciseReal& x);
  static CirclePoint parse(std::string_view text) { return wrap(PreciseReal::parse(text)); }

  const PreciseReal& value() const { return value_; }
  const mpz_class& mantissa() const { return value_.mantissa(); }
  const mpz_class& err() const { return value_.err(); }
  double to_double() const { return value_.to_double(); }

  CirclePoint operator-() const;
  CirclePoint& operator+=(const CirclePoint& o);
  CirclePoint& operator-=(const CirclePoint& o);
  friend CirclePoint operator+(CirclePoint a, const CirclePoint& b) { return a += b; }
  friend CirclePoint operator-(CirclePoint a, const CirclePoint& b) { return a -= b; }

  /// Bit equality of the representative (err ignored).
  friend bool operator==(const CirclePoint& a, const CirclePoint& b) {
    return a.mantissa() == b.mantissa();
  }

 private:
  explicit CirclePoint(PreciseReal v) : value_(std::move(v)) {}
  PreciseReal value_;
};

/// x - floor(x) in [0,1), err preserved.
CirclePoint frac(const PreciseReal& x, BoundaryMode mode = BoundaryMode::strict);

/// {n x} by one big-integer multiply and a mask; err grows to |n| err.
CirclePoint scale_mod1(const mpz_class& n, const CirclePoint& x);
inline CirclePoint scale_mod1(long n, const CirclePoint& x) { return scale_mod1(mpz_class(n), x); }

/// Shortest signed distance on the circle, |a - b| mod 1 in [0, 1/2], as a
/// PreciseReal carrying the combined err.
PreciseReal circle_distance(const CirclePoint& a, const CirclePoint& b);

using UnitComplex = std::complex<double>;

/// e^{2 pi i x} in double precision.  The quadrant is taken from the exact
/// fixed-point bits, so quarter turns are exact; the residual angle is below
/// pi/2 and its cos/sin carry the usual libm error (about 1 ulp) plus
/// 2 pi * (err + 2^(B-53)) * 2^-B from truncating the phase to a double.
UnitComplex unit_exp(const CirclePoint& x);

struct PreciseComplex {
  PreciseReal re;
  PreciseReal im;
};

/// e^{2 pi i x} at full precision.  Each component has err <= x.err * 7 + 2
/// ulps (|d/dx cos 2 pi x| <= 2 pi < 7, plus rounding of the evaluation).
PreciseComplex unit_exp_precise(const CirclePoint& x);

/// Binomial coefficient C(n, k) as an exact integer; 0 when k > n.
mpz_class binomial(const mpz_class& n, unsigned long k);

}  // namespace nilosc
