#pragma once

// Weyl averages A_N(P) = (1/N) sum_{n<N} w_n e(P(n)) and certified brackets
// for sup_{P in R_d[t]} |A_N(P)|.
//
// The supremum runs over the coefficient torus [0,1)^d: shifting a
// coefficient by an integer leaves e(P(n)) unchanged for integer n, and the
// constant term only rotates A_N by a unit scalar, so it is dropped.  On the
// torus the sweep is a grid search.  Coefficients of degree >= 2 take values
// i/K_j; for every such tuple the degree-1 coefficient is swept at k/M by one
// length-M DFT of the zero-padded modulated sequence.  The bracket is
//
//   lower = max over evaluated points,
//   upper = lower + 2 pi sum_{j=1..d} s_j (1/N) sum_{n<N} n^j |w_n|,
//
// with s_1 = 1/(2M) and s_j = 1/(2K_j) the half-steps, from
// |e(u) - e(v)| <= 2 pi |u - v|.  For d >= 2 the slack grows like N^j s_j,
// so a useful upper bound at large N needs K_j of order N^j.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilosc/numeric.hpp"
#include "nilosc/polyseq.hpp"

namespace nilosc {

class EmptyRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BadWindow : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GridTooCoarse : public std::runtime_error {
 public:
  GridTooCoarse(const std::string& what, double slack) : std::runtime_error(what), slack_(slack) {}
  double slack() const { return slack_; }

 private:
  double slack_;
};

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Sequence = std::vector<std::complex<double>>;
using SequenceView = std::span<const std::complex<double>>;

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(std::complex<double> v);
  std::complex<double> value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_one(double& sum, double& comp, double v);
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

struct WeylAverage {
  std::size_t N = 0;
  std::complex<double> value;
  PhasePoly P;
};

enum class SumMode {
  fast,    // double-precision e(P(n)), compensated double sum
  golden,  // full-precision e(P(n)) and fixed-point accumulation
};

/// (1/N) sum_{n<N} w_n e(P(n)).  Throws EmptyRange for N = 0.
WeylAverage weyl_average(SequenceView w, std::size_t N, const PhasePoly& P, SumMode mode = SumMode::fast);

struct GridSpec {
  /// Grid points per coefficient of degree >= 2; 0 picks the default
  /// (256 for d <= 2, 64 for d = 3, 16 above).
  std::size_t points_per_coeff = 0;
  /// DFT length M for the degree-1 sweep; 0 picks the next power of two >= 4N.
  std::size_t fft_size = 0;
  /// Extra polynomials evaluated on top of the grid (their degree-0
  /// coefficient is ignored).  Their higher coefficients also get a full
  /// degree-1 sweep.
  std::vector<PhasePoly> injected;
  /// Throw GridTooCoarse when the Lipschitz slack exceeds this.
  std::optional<double> max_slack;
};

std::size_t default_points_per_coeff(std::size_t degree);

struct SupEstimate {
  std::size_t degree = 0;
  std::size_t N = 0;
  double lower = 0;
  double upper = 0;
  double slack = 0;
  /// (1/N) sum |w_n|, the bound every |A_N(P)| obeys.
  double trivial_bound = 0;
  std::size_t fft_size = 0;
  std::size_t points_per_coeff = 0;
  /// s_1..s_d.
  std::vector<double> half_steps;
  /// Coefficients c_0..c_d of the maximizing polynomial (c_0 = 0).
  PhasePoly argmax;
};

SupEstimate sup_over_degree(SequenceView w, std::size_t N, std::size_t degree, const GridSpec& grid = {});

/// Lipschitz slack for given half-steps (index j-1 holds s_j).
double lipschitz_slack(SequenceView w, std::size_t N, std::span<const double> half_steps);

struct VanDerCorput {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

constexpr double kVanDerCorputTolerance = 0x1p-30;

/// Both sides of
///   |(1/N) sum u_n|^2 <= (N+H)/(N(H+1)) (1/N) sum |u_n|^2
///     + 2 (N+H)/(N(H+1)^2) |sum_{h=1}^{H} (H+1-h)(N-h)/N (1/(N-h)) sum_{n<N-h} u_{n+h} conj(u_n)|
/// for u_n = w_n e(P(n)).  Throws BadWindow unless 0 <= H < N.
VanDerCorput van_der_corput_check(SequenceView w, std::size_t N, std::size_t H, const PhasePoly& P = {});

/// (1/(H+1)^2) sum_{h=1}^{H} (H+1-h) values[h-1].
std::complex<double> cesaro2(SequenceView values, std::size_t H);

/// |(1/N) sum_{n<N} e(m x_n)| for m = 1..max_freq.
std::vector<double> equidistribution_weyl_test(std::span<const CirclePoint> x, std::size_t N, std::size_t max_freq);

struct OscillationReport {
  std::string sequence;
  std::vector<SupEstimate> points;

  /// Appends, keeping N strictly increasing.
  void add(SupEstimate e);
};

struct DecayFit {
  double exponent = 0;
  /// Root-mean-square residual of the log-log fit.
  double residual = 0;
};

/// Least-squares slope of log(upper) against log(N).
DecayFit decay_fit(const OscillationReport& report);

}  // namespace nilosc
