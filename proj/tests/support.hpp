#pragma once

// Shared fixtures and comparison helpers for the unit tests and the
// acceptance runner.

#include <random>
#include <vector>

#include "nilosc/heisenberg.hpp"
#include "nilosc/numeric.hpp"
#include "oracle.hpp"

namespace support {

struct Setup {
  Setup() {
    nilosc::configure_precision(nilosc::kDefaultPrecisionBits);
    oracle::init();
  }
};

/// Equal as points of R/Z within the combined error radius.
inline bool same_point(const nilosc::CirclePoint& a, const nilosc::CirclePoint& b) {
  nilosc::PreciseReal d = nilosc::circle_distance(a, b);
  return d.mantissa() <= d.err();
}

inline bool same_points(const std::vector<nilosc::CirclePoint>& a, const std::vector<nilosc::CirclePoint>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_point(a[i], b[i])) return false;
  return true;
}

inline bool same(const nilosc::PreciseReal& a, const nilosc::PreciseReal& b) { return a.consistent_with(b); }

inline bool same(const nilosc::HeisenbergElement& g, const nilosc::HeisenbergElement& h) {
  return same(g.a, h.a) && same(g.b, h.b) && same(g.c, h.c);
}

inline bool same(const nilosc::MalcevIIElement& g, const nilosc::MalcevIIElement& h) {
  return same(g.t1, h.t1) && same(g.t2, h.t2) && same(g.t3, h.t3);
}

inline bool same(const nilosc::HeisenbergMElement& g, const nilosc::HeisenbergMElement& h) {
  if (g.m() != h.m() || !same(g.c, h.c)) return false;
  for (std::size_t i = 0; i < g.m(); ++i)
    if (!same(g.a[i], h.a[i]) || !same(g.b[i], h.b[i])) return false;
  return true;
}

inline bool in_cube(const nilosc::FundamentalPoint& p) {
  for (const auto& c : p.coords)
    if (c.mantissa() < 0 || c.mantissa() >= (mpz_class(1) << nilosc::precision_bits())) return false;
  return true;
}

inline nilosc::HeisenbergElement random_h(std::mt19937_64& gen, long range = 8) {
  return {oracle::random_real(gen, range), oracle::random_real(gen, range), oracle::random_real(gen, range)};
}

inline nilosc::MalcevIIElement random_malcev(std::mt19937_64& gen, long range = 8) {
  return {oracle::random_real(gen, range), oracle::random_real(gen, range), oracle::random_real(gen, range)};
}

inline nilosc::HeisenbergMElement random_hm(std::mt19937_64& gen, std::size_t m, long range = 8) {
  nilosc::HeisenbergMElement g;
  for (std::size_t i = 0; i < m; ++i) {
    g.a.push_back(oracle::random_real(gen, range));
    g.b.push_back(oracle::random_real(gen, range));
  }
  g.c = oracle::random_real(gen, range);
  return g;
}

inline nilosc::FundamentalPoint random_cube_point(std::mt19937_64& gen, std::size_t m = 1) {
  nilosc::FundamentalPoint p = nilosc::FundamentalPoint::origin(m);
  for (auto& c : p.coords) c = oracle::random_point(gen);
  return p;
}

}  // namespace support
