#pragma once

// Abelian tower extension of a base system (X, T) with a continuous
// eigenfunction gamma~ (T gamma~ = e(xi) gamma~):
//
//   S(x, z_1, ..., z_p) = (Tx, gamma(x) z_1, z_1 z_2, ..., z_{p-1} z_p),
//   gamma = lambda * gamma~.
//
// All circle factors are stored as phases in [0,1), so products become sums
// mod 1.  The closed form for S^n uses exact integer binomials:
//   phase(Z_j) = C(n,j+1) xi + C(n,j) arg gamma(x) + sum_{i<j} C(n,j-i) z_i + z_j.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nilosc/heisenberg.hpp"
#include "nilosc/numeric.hpp"

namespace nilosc {

using BasePoint = std::vector<CirclePoint>;

struct BaseSystem {
  std::string name;
  /// x -> T^n x.
  std::function<BasePoint(const BasePoint&, std::uint64_t)> orbit;
  /// x -> arg gamma~(x) in [0,1).
  std::function<CirclePoint(const BasePoint&)> eigenphase;
  /// arg of the eigenvalue: eigenphase(Tx) = eigenphase(x) + xi mod 1.
  CirclePoint xi;
};

/// x -> x + alpha on the circle; gamma~(x) = e(x), xi = alpha.
BaseSystem circle_rotation(const CirclePoint& alpha);
/// x -> x + alpha on T^k; gamma~(x) = e(x_j) for the chosen coordinate.
BaseSystem torus_rotation(std::vector<CirclePoint> alpha, std::size_t eigen_coordinate = 0);
/// T_g on H/Gamma in first-kind coordinates; gamma~(x) = e(x_1), xi = {a}.
BaseSystem heisenberg_base(const HeisenbergElement& g);

struct ExtensionState {
  BasePoint x;
  std::vector<CirclePoint> z;  // phases of z_1..z_p
  CirclePoint lambda;

  std::size_t p() const { return z.size(); }
};

/// One application of S.
ExtensionState step(const BaseSystem& base, const ExtensionState& s);

/// S^n in one shot.
ExtensionState power_closed_form(const BaseSystem& base, const ExtensionState& s, std::uint64_t n);

/// Deterministic phase in [0,1) from a seed: the B-bit mantissa is filled
/// with consecutive 64-bit outputs of std::mt19937_64(seed), most
/// significant word first.
CirclePoint choose_lambda(std::uint64_t seed);

using StateObservable = std::function<std::complex<double>(const ExtensionState&)>;

/// F(x, z) = e(z_j), j in [1, p].
StateObservable tower_character(std::size_t j);
/// F(x, z) = f(x) e(z_j).
StateObservable product_observable(std::function<std::complex<double>(const BasePoint&)> f, std::size_t j);

/// F(S^n s) for n < N, each term from the closed form.
std::vector<std::complex<double>> observe(const BaseSystem& base, const ExtensionState& s, const StateObservable& F,
                                          std::size_t N);

}  // namespace nilosc
