// Generates tests/fixtures/prerun.json: thresholds for the quantitative
// fixtures, produced by slow reference sweeps.  Run once; the tests and the
// acceptance runner only read the file.
//
//   prerun_fixtures <output.json>
//
// tau1       sup over linear phases of |A_N| for w_n = e(n^2 sqrt 2), N = 10^4,
//            by direct summation at 160000 equally spaced frequencies (16N,
//            four times the default DFT resolution).  Phases come from MPFR.
// tau_star   sup over quadratic phases of |A_N| for w_n = e(n sqrt2 [n sqrt3]),
//            N = 10^5, on a grid four times finer than the default in both
//            swept coefficients (1024 points for the quadratic coefficient,
//            DFT length 2^21 for the linear one).
// equidist   |(1/N) sum e(m n^2 {sqrt 2})| for N = 10^5, m = 1..5, from MPFR
//            phases.
//
// Every threshold is a certified upper bound of the fine sweep: its grid
// maximum plus the Lipschitz slack of that grid.

#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "nilosc/oscillation.hpp"
#include "nilosc/polyseq.hpp"
#include "oracle.hpp"

using namespace nilosc;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// {n^2 sqrt 2} for n < N at oracle precision, rounded to long double.
std::vector<long double> square_root2_phases(std::size_t N) {
  std::vector<long double> out(N);
  oracle::Real s = oracle::sqrt_of(2);
  for (std::size_t n = 0; n < N; ++n) {
    oracle::Real x = oracle::frac(oracle::Real(n) * oracle::Real(n) * s);
    out[n] = static_cast<long double>(x);
  }
  return out;
}

nlohmann::ordered_json tau1() {
  const std::size_t N = 10000, G = 16 * N;
  auto phases = square_root2_phases(N);
  const long double two_pi = 2 * std::acos(-1.0L);
  std::vector<std::complex<long double>> w(N);
  for (std::size_t n = 0; n < N; ++n) w[n] = std::polar(1.0L, two_pi * phases[n]);

  long double best = 0;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < G; ++k) {
    const long double a = two_pi * static_cast<long double>(k) / static_cast<long double>(G);
    const std::complex<long double> r = std::polar(1.0L, a);
    std::complex<long double> z = 1, sum = 0;
    for (std::size_t n = 0; n < N; ++n) {
      sum += w[n] * z;
      z *= r;
      if ((n & 1023) == 1023) z = std::polar(1.0L, a * static_cast<long double>(n + 1));
    }
    long double v = std::abs(sum) / static_cast<long double>(N);
    if (v > best) best = v, best_k = k;
  }
  // Half-step 1/(2G) in the linear coefficient; (1/N) sum n |w_n| = (N-1)/2.
  const double slack = 2 * M_PI * (0.5 / static_cast<double>(G)) * (static_cast<double>(N) - 1) / 2;
  return {{"N", N},
          {"degree", 1},
          {"sequence", "e(n^2 sqrt(2))"},
          {"frequencies", G},
          {"argmax_linear_coeff", std::to_string(best_k) + "/" + std::to_string(G)},
          {"lower", static_cast<double>(best)},
          {"slack", slack},
          {"threshold", static_cast<double>(best) + slack}};
}

nlohmann::ordered_json tau_star() {
  const std::size_t N = 100000;
  Sequence w(N);
  BracketForm form{{PreciseReal::sqrt_of(2)}, {PreciseReal::sqrt_of(3)}, TrigObservable::character(1)};
  for (std::size_t n = 0; n < N; ++n) w[n] = bracket_eval(form, n);
  GridSpec fine;
  fine.points_per_coeff = 4 * default_points_per_coeff(2);
  fine.fft_size = 2097152;
  SupEstimate e = sup_over_degree(w, N, 2, fine);
  std::vector<std::string> argmax;
  for (const auto& c : e.argmax.coeffs()) argmax.push_back(c.value().to_decimal(20));
  return {{"N", N},
          {"degree", 2},
          {"sequence", "bracket: phi=exp(m=1); a=[sqrt(2)]; b=[sqrt(3)]"},
          {"points_per_coeff", e.points_per_coeff},
          {"fft_size", e.fft_size},
          {"argmax_coeffs", argmax},
          {"lower", e.lower},
          {"slack", e.slack},
          {"threshold", e.upper}};
}

nlohmann::ordered_json equidistribution() {
  const std::size_t N = 100000, max_freq = 5;
  oracle::Real s = oracle::frac(oracle::sqrt_of(2));
  const long double two_pi = 2 * std::acos(-1.0L);
  std::vector<double> magnitudes, thresholds;
  for (std::size_t m = 1; m <= max_freq; ++m) {
    std::complex<long double> sum = 0;
    for (std::size_t n = 0; n < N; ++n) {
      oracle::Real x = oracle::frac(oracle::Real(m) * oracle::Real(n) * oracle::Real(n) * s);
      sum += std::polar(1.0L, two_pi * static_cast<long double>(x));
    }
    const double v = static_cast<double>(std::abs(sum) / static_cast<long double>(N));
    magnitudes.push_back(v);
    thresholds.push_back(v + 1e-9);
  }
  return {{"N", N},
          {"sequence", "x_n = n^2 {sqrt(2)}"},
          {"magnitudes", magnitudes},
          {"margin", 1e-9},
          {"thresholds", thresholds}};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: prerun_fixtures <output.json>\n";
    return 2;
  }
  configure_precision(kDefaultPrecisionBits);
  oracle::init();
  nlohmann::ordered_json doc;
  doc["schema"] = "nilosc.fixtures/1";
  doc["precision_bits"] = precision_bits();

  auto t0 = std::chrono::steady_clock::now();
  doc["tau1"] = tau1();
  std::cerr << "tau1 done in " << seconds_since(t0) << " s\n";
  t0 = std::chrono::steady_clock::now();
  doc["equidistribution_n2_sqrt2"] = equidistribution();
  std::cerr << "equidistribution done in " << seconds_since(t0) << " s\n";
  t0 = std::chrono::steady_clock::now();
  doc["tau_star"] = tau_star();
  std::cerr << "tau_star done in " << seconds_since(t0) << " s\n";

  std::ofstream(argv[1]) << doc.dump(2) << "\n";
  return 0;
}
