#pragma once

// Sequence families: polynomial phases, bracket (generalized) polynomials,
// quasi-eigenfunction orbits, and affine unipotent torus maps that realize a
// polynomial phase as an observable along an orbit.

#include <complex>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "nilosc/numeric.hpp"

namespace nilosc {

/// P(t) = sum_j c_j t^j with each c_j kept mod 1.  For integer arguments
/// e(P(n)) depends only on the fractional parts of the coefficients, so the
/// reduction loses nothing.
class PhasePoly {
 public:
  PhasePoly() = default;
  explicit PhasePoly(std::vector<CirclePoint> coeffs);
  /// Coefficients given as reals; reduced mod 1 on construction.
  static PhasePoly from_reals(const std::vector<PreciseReal>& coeffs);
  /// Comma-separated constants, lowest degree first: "0, 0, sqrt(2)".
  static PhasePoly parse(std::string_view text);

  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const std::vector<CirclePoint>& coeffs() const { return coeffs_; }

  /// P(n) mod 1 as a sum of {c_j n^j} big-integer products.
  CirclePoint phase_at(const mpz_class& n) const;
  CirclePoint phase_at(std::uint64_t n) const { return phase_at(mpz_class(static_cast<unsigned long>(n))); }

 private:
  std::vector<CirclePoint> coeffs_;
};

/// e(P(n)).
UnitComplex poly_phase(const PhasePoly& P, std::uint64_t n);

/// A trigonometric polynomial on the circle without constant term,
/// phi(x) = sum_k c_k e(k x).
class TrigObservable {
 public:
  using Term = std::pair<long, std::complex<double>>;

  explicit TrigObservable(std::vector<Term> terms);
  /// The character e(k x).
  static TrigObservable character(long k);

  const std::vector<Term>& terms() const { return terms_; }
  std::complex<double> operator()(const CirclePoint& x) const;

 private:
  std::vector<Term> terms_;
};

/// phi(n a_1 [n b_1] + ... + n a_m [n b_m]).
struct BracketForm {
  std::vector<PreciseReal> alpha;
  std::vector<PreciseReal> beta;
  TrigObservable phi = TrigObservable::character(1);

  /// Parses "phi=exp(m=1); a=[sqrt(2)]; b=[sqrt(3)]".  phi may also be
  /// "trig(k:re[:im], ...)".
  static BracketForm parse(std::string_view text);
  std::size_t m() const { return alpha.size(); }
};

/// sum_i n a_i [n b_i] mod 1.
CirclePoint bracket_value(const BracketForm& form, std::uint64_t n);
std::complex<double> bracket_eval(const BracketForm& form, std::uint64_t n);

/// S y = U y + b on the torus T^k, U unipotent with integer entries.
class AffineUnipotentSystem {
 public:
  using Matrix = std::vector<std::vector<mpz_class>>;

  AffineUnipotentSystem(Matrix U, std::vector<CirclePoint> b, std::vector<CirclePoint> y0);

  std::size_t dimension() const { return b_.size(); }
  const Matrix& U() const { return U_; }
  const std::vector<CirclePoint>& b() const { return b_; }
  const std::vector<CirclePoint>& y0() const { return y0_; }

  std::vector<CirclePoint> apply(const std::vector<CirclePoint>& y) const;

 private:
  Matrix U_;
  std::vector<CirclePoint> b_;
  std::vector<CirclePoint> y0_;
};

/// Finite-difference realization: state (P(n), dP(n), ..., d^{d-1}P(n)),
/// U = I + shift, b = (0, ..., 0, d^d P).  Degree 0 uses a 1-dimensional
/// identity system.  The observable is f(y) = e(y_1).
AffineUnipotentSystem poly_to_affine(const PhasePoly& P);
inline UnitComplex affine_observable(const std::vector<CirclePoint>& y) { return unit_exp(y.at(0)); }

/// S^n y0 by n applications of S.
std::vector<CirclePoint> affine_orbit(const AffineUnipotentSystem& A, std::uint64_t n);
/// y0, S y0, ..., S^{N-1} y0.
std::vector<std::vector<CirclePoint>> affine_trajectory(const AffineUnipotentSystem& A, std::size_t N);
/// U^n y0 + (sum_{j<n} U^j) b via the binomial expansion of the nilpotent
/// part (U - I); exact integer matrices, no iteration.
std::vector<CirclePoint> affine_orbit_closed(const AffineUnipotentSystem& A, std::uint64_t n);

struct QuasiEigenData {
  /// theta_0 (eigenvalue argument), theta_1, ..., theta_{k-1}.
  std::vector<CirclePoint> theta;

  std::size_t order() const { return theta.size(); }
};

/// p_x(n) = sum_j theta_j C(n, k - j) mod 1.
CirclePoint quasi_eigen_phase(const QuasiEigenData& Q, std::uint64_t n);
/// f(T^n x) = f(x) e(p_x(n)), with f(x) given by its phase.
UnitComplex quasi_eigen_orbit(const QuasiEigenData& Q, const CirclePoint& f_x, std::uint64_t n);

}  // namespace nilosc
