#pragma once

// The Heisenberg groups H (dimension 3) and H_m (dimension 2m+1) with the
// lattice of integer points.
//
// First-kind coordinates: <a,b,c><x,y,z> = <a+x, b+y, c+z+B(a,y)> with
// B(a,y) = sum a_i y_i.  Second-kind (Mal'cev) coordinates for H relate by
// <t1,t2,t3>_II = <t1,t2,t3+t1 t2>.  The nilmanifold G/Gamma is represented by
// the unit cube; reduce_fundamental() finds the unique lattice element
// gamma_x with x gamma_x in the cube.
//
// Every function takes n >= 0 (uint64_t); negative powers go through
// inverse().  Integer multipliers are checked against the guard budget.

#include <cstdint>
#include <utility>
#include <vector>

#include "nilosc/numeric.hpp"

namespace nilosc {

struct HeisenbergElement {
  PreciseReal a, b, c;

  static HeisenbergElement identity() { return {}; }
};

struct HeisenbergMElement {
  std::vector<PreciseReal> a, b;
  PreciseReal c;

  static HeisenbergMElement identity(std::size_t m);
  std::size_t m() const { return a.size(); }
};

struct MalcevIIElement {
  PreciseReal t1, t2, t3;

  static MalcevIIElement identity() { return {}; }
};

/// Integer point of the lattice Gamma (H_m layout; m = 1 for H).
struct LatticeElement {
  std::vector<mpz_class> a, b;
  mpz_class c;

  friend bool operator==(const LatticeElement&, const LatticeElement&) = default;
};

enum class Coordinates { first_kind, malcev2 };

const char* to_string(Coordinates c);

/// A point of the unit cube [0,1)^{2m+1}: (x_1..x_m, y_1..y_m, z).
struct FundamentalPoint {
  std::vector<CirclePoint> coords;
  Coordinates convention = Coordinates::first_kind;

  static FundamentalPoint origin(std::size_t m = 1, Coordinates convention = Coordinates::first_kind);
  std::size_t m() const { return (coords.size() - 1) / 2; }
};

// --- H -------------------------------------------------------------------

HeisenbergElement multiply(const HeisenbergElement& g, const HeisenbergElement& h);
HeisenbergElement inverse(const HeisenbergElement& g);
/// g^n = <n a, n b, n c + C(n,2) a b>.
HeisenbergElement power(const HeisenbergElement& g, std::uint64_t n);
HeisenbergElement to_element(const LatticeElement& l);
HeisenbergElement to_element(const FundamentalPoint& p);

/// tau(x) = <{x1}, {x2}, {x3 - x1 [x2]}> and gamma_x = <-[x1], -[x2], -[x3 - x1 [x2]]>.
std::pair<FundamentalPoint, LatticeElement> reduce_fundamental(const HeisenbergElement& x);

/// T_g^n x for x in the cube, in one shot:
/// <n a1 + x1, n a2 + x2, n a3 + x3 + C(n,2) a1 a2 + n a1 x2 - (n a1 + x1)[n a2 + x2]> mod 1.
FundamentalPoint orbit_point(const HeisenbergElement& g, const FundamentalPoint& x, std::uint64_t n);

// --- Mal'cev second kind ---------------------------------------------------

MalcevIIElement malcev2_multiply(const MalcevIIElement& p, const MalcevIIElement& q);
MalcevIIElement malcev2_power(const MalcevIIElement& g, std::uint64_t n);
HeisenbergElement malcev2_convert(const MalcevIIElement& p);
MalcevIIElement malcev2_convert(const HeisenbergElement& g);

/// tau(x) = <{x1}, {x2}, {x3 + [x1] x2}>_II and gamma_x = <-[x1], -[x2], -[x3 + [x1] x2]>_II.
std::pair<FundamentalPoint, LatticeElement> malcev2_reduce(const MalcevIIElement& x);

/// T_g^n x in second-kind coordinates:
/// <n a1 + x1, n a2 + x2, n a3 + x3 - C(n,2) a1 a2 - n a2 x1 + [n a1 + x1](n a2 + x2)>_II mod 1.
FundamentalPoint malcev2_orbit_point(const MalcevIIElement& g, const FundamentalPoint& x, std::uint64_t n);
/// T_g^n 0 = <{n a1}, {n a2}, {n a3 - C(n,2) a1 a2 + [n a1] n a2}>_II.
FundamentalPoint orbit_origin_malcev2(const MalcevIIElement& g, std::uint64_t n);

// --- H_m -------------------------------------------------------------------

PreciseReal bilinear(const std::vector<PreciseReal>& a, const std::vector<PreciseReal>& y);

HeisenbergMElement multiply_m(const HeisenbergMElement& g, const HeisenbergMElement& h);
HeisenbergMElement inverse_m(const HeisenbergMElement& g);
HeisenbergMElement power(const HeisenbergMElement& g, std::uint64_t n);
HeisenbergMElement to_element_m(const LatticeElement& l);
HeisenbergMElement to_element_m(const FundamentalPoint& p);

/// tau(x) = <{x}, {y}, {z - B(x, [y])}>.
std::pair<FundamentalPoint, LatticeElement> reduce_fundamental(const HeisenbergMElement& x);

FundamentalPoint orbit_point(const HeisenbergMElement& g, const FundamentalPoint& x, std::uint64_t n);

/// Translation data g = <alpha, beta, gamma> in H_m with B(alpha, beta)
/// cached for repeated omega() calls.
class OmegaSequence {
 public:
  OmegaSequence(std::vector<PreciseReal> alpha, std::vector<PreciseReal> beta, PreciseReal gamma);

  const std::vector<PreciseReal>& alpha() const { return alpha_; }
  const std::vector<PreciseReal>& beta() const { return beta_; }
  const PreciseReal& gamma() const { return gamma_; }
  HeisenbergMElement element() const { return {alpha_, beta_, gamma_}; }

  /// omega_n = n gamma + C(n,2) B(alpha, beta) - B(n alpha, [n beta]) mod 1,
  /// the last coordinate of T_g^n 0.
  CirclePoint operator()(std::uint64_t n) const;

 private:
  std::vector<PreciseReal> alpha_, beta_;
  PreciseReal gamma_;
  PreciseReal alpha_dot_beta_;
};

inline CirclePoint omega(const OmegaSequence& seq, std::uint64_t n) { return seq(n); }

}  // namespace nilosc
