#include "nilosc/heisenberg.hpp"

#include <string>

namespace nilosc {

namespace {

mpz_class to_mpz(std::uint64_t n) { return mpz_class(static_cast<unsigned long>(n)); }

/// n and C(n,2), both checked against the guard budget.
std::pair<mpz_class, mpz_class> orbit_multipliers(std::uint64_t n) {
  mpz_class nz = to_mpz(n);
  mpz_class c2 = binomial(nz, 2);
  check_multiplier(nz);
  check_multiplier(c2);
  return {nz, c2};
}

CirclePoint unit_cube(const PreciseReal& x, const mpz_class& floor_x) {
  return CirclePoint::wrap(x - PreciseReal::from_int(floor_x));
}

void require_m(const FundamentalPoint& p, std::size_t m, Coordinates convention) {
  if (p.coords.size() != 2 * m + 1) throw DimensionMismatch("fundamental point has wrong dimension");
  if (p.convention != convention) throw std::invalid_argument("fundamental point uses the other coordinate convention");
}

void require_same_m(std::size_t lhs, std::size_t rhs) {
  if (lhs != rhs) throw DimensionMismatch("H_m dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs));
}

}  // namespace

const char* to_string(Coordinates c) { return c == Coordinates::first_kind ? "first_kind" : "malcev2"; }

HeisenbergMElement HeisenbergMElement::identity(std::size_t m) {
  return {std::vector<PreciseReal>(m), std::vector<PreciseReal>(m), PreciseReal{}};
}

FundamentalPoint FundamentalPoint::origin(std::size_t m, Coordinates convention) {
  return {std::vector<CirclePoint>(2 * m + 1), convention};
}

// --- H -------------------------------------------------------------------

HeisenbergElement multiply(const HeisenbergElement& g, const HeisenbergElement& h) {
  return {g.a + h.a, g.b + h.b, g.c + h.c + g.a * h.b};
}

HeisenbergElement inverse(const HeisenbergElement& g) { return {-g.a, -g.b, g.a * g.b - g.c}; }

HeisenbergElement power(const HeisenbergElement& g, std::uint64_t n) {
  mpz_class nz = to_mpz(n);
  return {nz * g.a, nz * g.b, nz * g.c + binomial(nz, 2) * (g.a * g.b)};
}

HeisenbergElement to_element(const LatticeElement& l) {
  if (l.a.size() != 1 || l.b.size() != 1) throw DimensionMismatch("lattice element is not in H");
  return {PreciseReal::from_int(l.a[0]), PreciseReal::from_int(l.b[0]), PreciseReal::from_int(l.c)};
}

HeisenbergElement to_element(const FundamentalPoint& p) {
  require_m(p, 1, Coordinates::first_kind);
  return {p.coords[0].value(), p.coords[1].value(), p.coords[2].value()};
}

std::pair<FundamentalPoint, LatticeElement> reduce_fundamental(const HeisenbergElement& x) {
  mpz_class f1 = floor_certified(x.a);
  mpz_class f2 = floor_certified(x.b);
  PreciseReal t = x.c - f2 * x.a;
  mpz_class f3 = floor_certified(t);
  FundamentalPoint p{{unit_cube(x.a, f1), unit_cube(x.b, f2), unit_cube(t, f3)}, Coordinates::first_kind};
  return {std::move(p), LatticeElement{{-f1}, {-f2}, -f3}};
}

FundamentalPoint orbit_point(const HeisenbergElement& g, const FundamentalPoint& x, std::uint64_t n) {
  require_m(x, 1, Coordinates::first_kind);
  auto [nz, c2] = orbit_multipliers(n);
  const PreciseReal& x1 = x.coords[0].value();
  const PreciseReal& x2 = x.coords[1].value();
  const PreciseReal& x3 = x.coords[2].value();
  PreciseReal u1 = nz * g.a + x1;
  PreciseReal u2 = nz * g.b + x2;
  mpz_class floor_u2 = floor_certified(u2);
  check_multiplier(floor_u2);
  PreciseReal third = nz * g.c + x3 + c2 * (g.a * g.b) + nz * (g.a * x2) - floor_u2 * u1;
  return {{CirclePoint::wrap(u1), CirclePoint::wrap(u2), CirclePoint::wrap(third)}, Coordinates::first_kind};
}

// --- Mal'cev second kind ---------------------------------------------------

MalcevIIElement malcev2_multiply(const MalcevIIElement& p, const MalcevIIElement& q) {
  return {p.t1 + q.t1, p.t2 + q.t2, p.t3 + q.t3 - p.t2 * q.t1};
}

MalcevIIElement malcev2_power(const MalcevIIElement& g, std::uint64_t n) {
  mpz_class nz = to_mpz(n);
  return {nz * g.t1, nz * g.t2, nz * g.t3 - binomial(nz, 2) * (g.t1 * g.t2)};
}

HeisenbergElement malcev2_convert(const MalcevIIElement& p) { return {p.t1, p.t2, p.t3 + p.t1 * p.t2}; }

MalcevIIElement malcev2_convert(const HeisenbergElement& g) { return {g.a, g.b, g.c - g.a * g.b}; }

std::pair<FundamentalPoint, LatticeElement> malcev2_reduce(const MalcevIIElement& x) {
  mpz_class f1 = floor_certified(x.t1);
  mpz_class f2 = floor_certified(x.t2);
  PreciseReal t = x.t3 + f1 * x.t2;
  mpz_class f3 = floor_certified(t);
  FundamentalPoint p{{unit_cube(x.t1, f1), unit_cube(x.t2, f2), unit_cube(t, f3)}, Coordinates::malcev2};
  return {std::move(p), LatticeElement{{-f1}, {-f2}, -f3}};
}

FundamentalPoint malcev2_orbit_point(const MalcevIIElement& g, const FundamentalPoint& x, std::uint64_t n) {
  require_m(x, 1, Coordinates::malcev2);
  auto [nz, c2] = orbit_multipliers(n);
  const PreciseReal& x1 = x.coords[0].value();
  const PreciseReal& x2 = x.coords[1].value();
  const PreciseReal& x3 = x.coords[2].value();
  PreciseReal u1 = nz * g.t1 + x1;
  PreciseReal u2 = nz * g.t2 + x2;
  mpz_class floor_u1 = floor_certified(u1);
  check_multiplier(floor_u1);
  PreciseReal third = nz * g.t3 + x3 - c2 * (g.t1 * g.t2) - nz * (g.t2 * x1) + floor_u1 * u2;
  return {{CirclePoint::wrap(u1), CirclePoint::wrap(u2), CirclePoint::wrap(third)}, Coordinates::malcev2};
}

FundamentalPoint orbit_origin_malcev2(const MalcevIIElement& g, std::uint64_t n) {
  return malcev2_orbit_point(g, FundamentalPoint::origin(1, Coordinates::malcev2), n);
}

// --- H_m -------------------------------------------------------------------

PreciseReal bilinear(const std::vector<PreciseReal>& a, const std::vector<PreciseReal>& y) {
  require_same_m(a.size(), y.size());
  PreciseReal sum;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * y[i];
  return sum;
}

HeisenbergMElement multiply_m(const HeisenbergMElement& g, const HeisenbergMElement& h) {
  require_same_m(g.m(), h.m());
  require_same_m(g.a.size(), g.b.size());
  require_same_m(h.a.size(), h.b.size());
  HeisenbergMElement r;
  r.a.reserve(g.m());
  r.b.reserve(g.m());
  for (std::size_t i = 0; i < g.m(); ++i) {
    r.a.push_back(g.a[i] + h.a[i]);
    r.b.push_back(g.b[i] + h.b[i]);
  }
  r.c = g.c + h.c + bilinear(g.a, h.b);
  return r;
}

HeisenbergMElement inverse_m(const HeisenbergMElement& g) {
  HeisenbergMElement r;
  for (const auto& v : g.a) r.a.push_back(-v);
  for (const auto& v : g.b) r.b.push_back(-v);
  r.c = bilinear(g.a, g.b) - g.c;
  return r;
}

HeisenbergMElement power(const HeisenbergMElement& g, std::uint64_t n) {
  mpz_class nz = to_mpz(n);
  HeisenbergMElement r;
  for (const auto& v : g.a) r.a.push_back(nz * v);
  for (const auto& v : g.b) r.b.push_back(nz * v);
  r.c = nz * g.c + binomial(nz, 2) * bilinear(g.a, g.b);
  return r;
}

HeisenbergMElement to_element_m(const LatticeElement& l) {
  require_same_m(l.a.size(), l.b.size());
  HeisenbergMElement r;
  for (const auto& v : l.a) r.a.push_back(PreciseReal::from_int(v));
  for (const auto& v : l.b) r.b.push_back(PreciseReal::from_int(v));
  r.c = PreciseReal::from_int(l.c);
  return r;
}

HeisenbergMElement to_element_m(const FundamentalPoint& p) {
  std::size_t m = p.m();
  require_m(p, m, Coordinates::first_kind);
  HeisenbergMElement r;
  for (std::size_t i = 0; i < m; ++i) r.a.push_back(p.coords[i].value());
  for (std::size_t i = 0; i < m; ++i) r.b.push_back(p.coords[m + i].value());
  r.c = p.coords[2 * m].value();
  return r;
}

std::pair<FundamentalPoint, LatticeElement> reduce_fundamental(const HeisenbergMElement& x) {
  require_same_m(x.a.size(), x.b.size());
  const std::size_t m = x.m();
  FundamentalPoint p{{}, Coordinates::first_kind};
  LatticeElement gamma;
  p.coords.reserve(2 * m + 1);
  PreciseReal t = x.c;
  for (std::size_t i = 0; i < m; ++i) {
    mpz_class f = floor_certified(x.a[i]);
    p.coords.push_back(unit_cube(x.a[i], f));
    gamma.a.push_back(-f);
  }
  for (std::size_t i = 0; i < m; ++i) {
    mpz_class f = floor_certified(x.b[i]);
    p.coords.push_back(unit_cube(x.b[i], f));
    gamma.b.push_back(-f);
    t -= f * x.a[i];
  }
  mpz_class fz = floor_certified(t);
  p.coords.push_back(unit_cube(t, fz));
  gamma.c = -fz;
  return {std::move(p), std::move(gamma)};
}

FundamentalPoint orbit_point(const HeisenbergMElement& g, const FundamentalPoint& x, std::uint64_t n) {
  const std::size_t m = g.m();
  require_same_m(g.a.size(), g.b.size());
  require_m(x, m, Coordinates::first_kind);
  auto [nz, c2] = orbit_multipliers(n);
  FundamentalPoint r{{}, Coordinates::first_kind};
  r.coords.resize(2 * m + 1);
  PreciseReal third = nz * g.c + x.coords[2 * m].value() + c2 * bilinear(g.a, g.b);
  for (std::size_t i = 0; i < m; ++i) {
    const PreciseReal& xi = x.coords[i].value();
    const PreciseReal& yi = x.coords[m + i].value();
    PreciseReal u = nz * g.a[i] + xi;
    PreciseReal v = nz * g.b[i] + yi;
    mpz_class floor_v = floor_certified(v);
    check_multiplier(floor_v);
    third += nz * (g.a[i] * yi) - floor_v * u;
    r.coords[i] = CirclePoint::wrap(u);
    r.coords[m + i] = CirclePoint::wrap(v);
  }
  r.coords[2 * m] = CirclePoint::wrap(third);
  return r;
}

OmegaSequence::OmegaSequence(std::vector<PreciseReal> alpha, std::vector<PreciseReal> beta, PreciseReal gamma)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
  if (alpha_.empty()) throw std::invalid_argument("omega sequence needs m >= 1");
  alpha_dot_beta_ = bilinear(alpha_, beta_);
}

CirclePoint OmegaSequence::operator()(std::uint64_t n) const {
  auto [nz, c2] = orbit_multipliers(n);
  PreciseReal w = nz * gamma_ + c2 * alpha_dot_beta_;
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    mpz_class floor_nb = floor_certified(nz * beta_[i]);
    check_multiplier(floor_nb);
    w -= (floor_nb * nz) * alpha_[i];
  }
  return CirclePoint::wrap(w);
}

}  // namespace nilosc
