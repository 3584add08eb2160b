#include "nilosc/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include <mpfr.h>

namespace nilosc {

namespace {

struct PrecisionState {
  unsigned bits = kDefaultPrecisionBits;
  unsigned guard = kDefaultGuardBits;
  mpz_class max_mult = mpz_class(1) << (kDefaultPrecisionBits - kDefaultGuardBits);
};

PrecisionState& state() {
  static PrecisionState s;
  return s;
}

mpz_class abs_z(const mpz_class& x) { return x < 0 ? mpz_class(-x) : x; }

mpz_class shift_floor(const mpz_class& x, unsigned bits) {
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), x.get_mpz_t(), bits);
  return r;
}

mpz_class shift_ceil(const mpz_class& x, unsigned bits) {
  mpz_class r;
  mpz_cdiv_q_2exp(r.get_mpz_t(), x.get_mpz_t(), bits);
  return r;
}

mpz_class mod_pow2(const mpz_class& x, unsigned bits) {
  mpz_class r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), x.get_mpz_t(), bits);
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("not an integer in '" + std::string(whole) + "'");
  mpz_class v(std::string(s), 10);
  return neg ? mpz_class(-v) : v;
}

PreciseReal parse_decimal(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exponent = parse_integer(s.substr(e + 1), whole).get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  auto dot = s.find('.');
  std::string_view int_part = s.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) throw ParseError("empty number in '" + std::string(whole) + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    throw ParseError("malformed number '" + std::string(whole) + "'");
  digits.append(int_part).append(frac_part);
  mpz_class num(digits.empty() ? std::string("0") : digits, 10);
  long scale = static_cast<long>(frac_part.size()) - exponent;
  mpz_class den = 1;
  if (scale >= 0) {
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
  } else {
    mpz_class f;
    mpz_ui_pow_ui(f.get_mpz_t(), 10, static_cast<unsigned long>(-scale));
    num *= f;
  }
  if (neg) num = -num;
  return PreciseReal::rational(num, den);
}

PreciseReal parse_atom(std::string_view atom, std::string_view whole) {
  atom = trim(atom);
  if (atom.empty()) throw ParseError("empty constant");
  bool neg = false;
  if (atom.front() == '-' || atom.front() == '+') {
    neg = atom.front() == '-';
    atom = trim(atom.substr(1));
  }
  PreciseReal v;
  if (atom.starts_with("sqrt(") && atom.ends_with(")")) {
    auto inner = trim(atom.substr(5, atom.size() - 6));
    if (!all_digits(inner)) throw ParseError("sqrt() expects a non-negative integer in '" + std::string(whole) + "'");
    mpz_class k(std::string(inner), 10);
    if (!k.fits_ulong_p()) throw ParseError("sqrt() argument too large in '" + std::string(whole) + "'");
    v = PreciseReal::sqrt_of(k.get_ui());
  } else if (auto slash = atom.find('/'); slash != std::string_view::npos) {
    mpz_class p = parse_integer(trim(atom.substr(0, slash)), whole);
    mpz_class q = parse_integer(trim(atom.substr(slash + 1)), whole);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
    v = PreciseReal::rational(p, q);
  } else {
    v = parse_decimal(atom, whole);
  }
  return neg ? -v : v;
}

}  // namespace

void configure_precision(unsigned bits, unsigned guard) {
  if (bits < kMinPrecisionBits) throw std::invalid_argument("precision must be at least 128 bits");
  if (guard >= bits) throw std::invalid_argument("guard bits must be smaller than precision");
  auto& s = state();
  s.bits = bits;
  s.guard = guard;
  s.max_mult = mpz_class(1) << (bits - guard);
}

unsigned precision_bits() { return state().bits; }
unsigned guard_bits() { return state().guard; }
const mpz_class& max_multiplier() { return state().max_mult; }

void check_multiplier(const mpz_class& k) {
  if (abs_z(k) > state().max_mult)
    throw PrecisionExhausted("integer multiplier " + k.get_str() + " exceeds the guard-bit budget 2^" +
                             std::to_string(state().bits - state().guard));
}

PreciseReal::PreciseReal(mpz_class mantissa, mpz_class err) : mantissa_(std::move(mantissa)), err_(std::move(err)) {
  if (err_ < 0) throw std::invalid_argument("negative error radius");
}

PreciseReal PreciseReal::from_int(const mpz_class& k) { return {mpz_class(k << precision_bits()), 0}; }

PreciseReal PreciseReal::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  int e = 0;
  double m = std::frexp(x, &e);  // x = m * 2^e, 0.5 <= |m| < 1
  mpz_class v(std::ldexp(m, 53));  // exact 53-bit integer
  long shift = static_cast<long>(precision_bits()) + e - 53;
  if (shift >= 0) return {mpz_class(v << shift), 0};
  mpz_class q = shift_floor(v, static_cast<unsigned>(-shift));
  bool exact = (q << static_cast<unsigned>(-shift)) == v;
  return {q, exact ? 0 : 1};
}

PreciseReal PreciseReal::sqrt_of(unsigned long k) {
  mpz_class scaled = mpz_class(k) << (2 * precision_bits());
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
  return {r, r * r == scaled ? 0 : 1};
}

PreciseReal PreciseReal::rational(const mpz_class& p, const mpz_class& q) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  mpz_class num = p << precision_bits();
  mpz_class den = q;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  mpz_class twice = 2 * num + den;
  mpz_class nearest;
  mpz_fdiv_q(nearest.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
  return {nearest, r == 0 ? 0 : 1};
}

PreciseReal PreciseReal::parse(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw ParseError("empty constant");
  auto star = s.find('*');
  if (star == std::string_view::npos) return parse_atom(s, text);
  if (s.find('*', star + 1) != std::string_view::npos) throw ParseError("at most one '*' allowed in '" + std::string(text) + "'");
  return parse_atom(s.substr(0, star), text) * parse_atom(s.substr(star + 1), text);
}

double PreciseReal::to_double() const {
  // Keep 64 significant bits before converting so huge mantissas do not overflow.
  long bits = static_cast<long>(mpz_sizeinbase(mantissa_.get_mpz_t(), 2));
  long drop = std::max(0L, bits - 64);
  mpz_class top = shift_floor(abs_z(mantissa_), static_cast<unsigned>(drop));
  double d = std::ldexp(top.get_d(), static_cast<int>(drop - static_cast<long>(precision_bits())));
  return mantissa_ < 0 ? -d : d;
}

std::string PreciseReal::to_decimal(int digits) const {
  const unsigned B = precision_bits();
  if (digits <= 0) digits = static_cast<int>(std::ceil(B * std::log10(2.0))) + 2;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class scaled = abs_z(mantissa_) * pow10;
  // round half up
  mpz_class rounded = shift_floor(scaled + (mpz_class(1) << (B - 1)), B);
  std::string s = rounded.get_str();
  if (s.size() <= static_cast<size_t>(digits)) s.insert(0, static_cast<size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<size_t>(digits), ".");
  auto last = s.find_last_not_of('0');
  if (last != std::string::npos && s[last] == '.') last += 1;  // keep one zero after the point
  s.erase(last + 1);
  bool zero = rounded == 0;
  return (mantissa_ < 0 && !zero ? "-" : "") + s;
}

PreciseReal PreciseReal::operator-() const { return {mpz_class(-mantissa_), err_}; }

PreciseReal& PreciseReal::operator+=(const PreciseReal& o) {
  mantissa_ += o.mantissa_;
  err_ += o.err_;
  return *this;
}

PreciseReal& PreciseReal::operator-=(const PreciseReal& o) {
  mantissa_ -= o.mantissa_;
  err_ += o.err_;
  return *this;
}

PreciseReal operator*(const PreciseReal& a, const PreciseReal& b) {
  const unsigned B = precision_bits();
  mpz_class prod = a.mantissa_ * b.mantissa_;
  mpz_class q = shift_floor(prod, B);
  bool inexact = (q << B) != prod;
  mpz_class spread = abs_z(a.mantissa_) * b.err_ + abs_z(b.mantissa_) * a.err_ + a.err_ * b.err_;
  mpz_class err = shift_ceil(spread, B) + (inexact ? 1 : 0);
  return {q, err};
}

PreciseReal operator*(const mpz_class& k, const PreciseReal& a) {
  return {mpz_class(a.mantissa_ * k), mpz_class(a.err_ * abs_z(k))};
}

bool PreciseReal::consistent_with(const PreciseReal& o) const {
  return abs_z(mantissa_ - o.mantissa_) <= err_ + o.err_;
}

mpz_class floor_certified(const PreciseReal& x, BoundaryMode mode) {
  const unsigned B = precision_bits();
  mpz_class lo = shift_floor(x.mantissa() - x.err(), B);
  mpz_class hi = shift_floor(x.mantissa() + x.err(), B);
  if (lo == hi) return lo;
  if (mode == BoundaryMode::snap) return shift_floor(x.mantissa(), B);
  throw AmbiguousBoundary("floor of " + x.to_decimal(24) + " is ambiguous: error radius of " + x.err().get_str() +
                          " ulps straddles an integer");
}

CirclePoint CirclePoint::wrap(const PreciseReal& x) {
  return CirclePoint(PreciseReal(mod_pow2(x.mantissa(), precision_bits()), x.err()));
}

CirclePoint CirclePoint::operator-() const { return wrap(-value_); }

CirclePoint& CirclePoint::operator+=(const CirclePoint& o) {
  *this = wrap(value_ + o.value_);
  return *this;
}

CirclePoint& CirclePoint::operator-=(const CirclePoint& o) {
  *this = wrap(value_ - o.value_);
  return *this;
}

CirclePoint frac(const PreciseReal& x, BoundaryMode mode) {
  mpz_class fl = floor_certified(x, mode);
  mpz_class m = x.mantissa() - (fl << precision_bits());
  // snap mode can leave the midpoint one period off; wrap keeps [0,1).
  return CirclePoint::wrap(PreciseReal(m, x.err()));
}

CirclePoint scale_mod1(const mpz_class& n, const CirclePoint& x) {
  check_multiplier(n);
  return CirclePoint::wrap(n * x.value());
}

PreciseReal circle_distance(const CirclePoint& a, const CirclePoint& b) {
  const unsigned B = precision_bits();
  mpz_class d = mod_pow2(a.mantissa() - b.mantissa(), B);
  mpz_class half = mpz_class(1) << (B - 1);
  if (d > half) d = (mpz_class(1) << B) - d;
  return {d, a.err() + b.err()};
}

UnitComplex unit_exp(const CirclePoint& x) {
  const unsigned B = precision_bits();
  const mpz_class& m = x.mantissa();
  unsigned long quadrant = shift_floor(m, B - 2).get_ui();
  mpz_class rest = m - (mpz_class(quadrant) << (B - 2));
  // rest < 2^(B-2): keep its top 62 bits as a fraction of a full turn.
  double turn = std::ldexp(static_cast<double>(shift_floor(rest, B - 64).get_ui()), -64);
  double angle = 2.0 * std::numbers::pi * turn;
  double c = std::cos(angle);
  double s = std::sin(angle);
  switch (quadrant & 3u) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

PreciseComplex unit_exp_precise(const CirclePoint& x) {
  const unsigned B = precision_bits();
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(B) + 64;
  mpfr_t angle, s, c;
  mpfr_inits2(prec, angle, s, c, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(angle, MPFR_RNDN);
  mpfr_mul_2ui(angle, angle, 1, MPFR_RNDN);
  mpfr_t t;
  mpfr_init2(t, prec);
  mpfr_set_z(t, x.mantissa().get_mpz_t(), MPFR_RNDN);
  mpfr_div_2ui(t, t, B, MPFR_RNDN);
  mpfr_mul(angle, angle, t, MPFR_RNDN);
  mpfr_sin_cos(s, c, angle, MPFR_RNDN);
  mpfr_mul_2ui(s, s, B, MPFR_RNDN);
  mpfr_mul_2ui(c, c, B, MPFR_RNDN);
  mpz_class re, im;
  mpfr_get_z(re.get_mpz_t(), c, MPFR_RNDN);
  mpfr_get_z(im.get_mpz_t(), s, MPFR_RNDN);
  mpfr_clears(angle, s, c, t, static_cast<mpfr_ptr>(nullptr));
  mpz_class err = 7 * x.err() + 2;
  return {PreciseReal(re, err), PreciseReal(im, err)};
}

mpz_class binomial(const mpz_class& n, unsigned long k) {
  if (n < 0) throw std::invalid_argument("binomial: negative n");
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

}  // namespace nilosc
