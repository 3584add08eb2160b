#include "nilosc/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include <fftw3.h>

namespace nilosc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_range(SequenceView w, std::size_t N) {
  if (N == 0) throw EmptyRange("average over an empty range (N = 0)");
  if (N > w.size()) throw std::invalid_argument("sequence shorter than N");
}

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

/// In-place backward DFT of length M: out[k] = sum_n in[n] e^{+2 pi i k n / M}.
class BackwardDft {
 public:
  explicit BackwardDft(std::size_t M)
      : size_(M), buf_(fftw_alloc_complex(M), &fftw_free) {
    // FFTW_ESTIMATE keeps the plan, and so the rounding, identical across runs.
    plan_ = fftw_plan_dft_1d(static_cast<int>(M), buf_.get(), buf_.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~BackwardDft() { fftw_destroy_plan(plan_); }
  BackwardDft(const BackwardDft&) = delete;
  BackwardDft& operator=(const BackwardDft&) = delete;

  std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(buf_.get()); }
  std::size_t size() const { return size_; }
  void execute() { fftw_execute(plan_); }

 private:
  std::size_t size_;
  std::unique_ptr<fftw_complex, decltype(&fftw_free)> buf_;
  fftw_plan plan_;
};

struct SweepMax {
  double value = -1;
  std::size_t bin = 0;
};

/// Loads u into the transform (zero padded), runs it, returns the largest |.|/N.
SweepMax sweep_linear(BackwardDft& dft, const Sequence& u, std::size_t N) {
  auto* buf = dft.data();
  std::copy(u.begin(), u.end(), buf);
  std::fill(buf + u.size(), buf + dft.size(), std::complex<double>{});
  dft.execute();
  SweepMax best;
  double best_norm = -1;
  for (std::size_t k = 0; k < dft.size(); ++k) {
    double v = std::norm(buf[k]);
    if (v > best_norm) {
      best_norm = v;
      best.bin = k;
    }
  }
  best.value = std::sqrt(best_norm) / static_cast<double>(N);
  return best;
}

/// n^j mod K for j = 0..d, n < N, flattened as [n * (d+1) + j].
std::vector<std::uint64_t> power_residues(std::size_t N, std::size_t d, std::uint64_t K) {
  std::vector<std::uint64_t> r(N * (d + 1));
  for (std::size_t n = 0; n < N; ++n) {
    unsigned __int128 p = 1 % K;
    for (std::size_t j = 0; j <= d; ++j) {
      r[n * (d + 1) + j] = static_cast<std::uint64_t>(p);
      p = (p * (n % K)) % K;
    }
  }
  return r;
}

}  // namespace

void CompensatedSum::add_one(double& sum, double& comp, double v) {
  double t = sum + v;
  if (std::abs(sum) >= std::abs(v))
    comp += (sum - t) + v;
  else
    comp += (v - t) + sum;
  sum = t;
}

void CompensatedSum::add(std::complex<double> v) {
  add_one(re_, re_c_, v.real());
  add_one(im_, im_c_, v.imag());
}

WeylAverage weyl_average(SequenceView w, std::size_t N, const PhasePoly& P, SumMode mode) {
  require_range(w, N);
  if (mode == SumMode::fast) {
    CompensatedSum sum;
    for (std::size_t n = 0; n < N; ++n) sum.add(w[n] * poly_phase(P, n));
    return {N, sum.value() / static_cast<double>(N), P};
  }
  PreciseReal re, im;
  for (std::size_t n = 0; n < N; ++n) {
    PreciseComplex e = unit_exp_precise(P.phase_at(static_cast<std::uint64_t>(n)));
    PreciseReal wr = PreciseReal::from_double(w[n].real());
    PreciseReal wi = PreciseReal::from_double(w[n].imag());
    re += wr * e.re - wi * e.im;
    im += wr * e.im + wi * e.re;
  }
  const double scale = static_cast<double>(N);
  return {N, {re.to_double() / scale, im.to_double() / scale}, P};
}

std::size_t default_points_per_coeff(std::size_t degree) {
  if (degree <= 2) return 256;
  if (degree == 3) return 64;
  return 16;
}

double lipschitz_slack(SequenceView w, std::size_t N, std::span<const double> half_steps) {
  require_range(w, N);
  double total = 0;
  for (std::size_t j = 1; j <= half_steps.size(); ++j) {
    long double moment = 0;
    for (std::size_t n = 0; n < N; ++n)
      moment += std::pow(static_cast<long double>(n), static_cast<long double>(j)) * std::abs(w[n]);
    total += half_steps[j - 1] * static_cast<double>(moment / static_cast<long double>(N));
  }
  return kTwoPi * total;
}

SupEstimate sup_over_degree(SequenceView w, std::size_t N, std::size_t degree, const GridSpec& grid) {
  require_range(w, N);
  SupEstimate est;
  est.degree = degree;
  est.N = N;
  {
    double t = 0;
    for (std::size_t n = 0; n < N; ++n) t += std::abs(w[n]);
    est.trivial_bound = t / static_cast<double>(N);
  }
  if (degree == 0) {
    // |A_N| does not depend on the constant term.
    est.lower = est.upper = std::abs(weyl_average(w, N, PhasePoly{}).value);
    est.argmax = PhasePoly({CirclePoint{}});
    return est;
  }

  const std::size_t M = grid.fft_size ? grid.fft_size : next_pow2(4 * N);
  if (M < N) throw std::invalid_argument("DFT length must be at least N");
  const std::size_t K = grid.points_per_coeff ? grid.points_per_coeff : default_points_per_coeff(degree);
  est.fft_size = M;
  est.points_per_coeff = degree >= 2 ? K : 0;
  est.half_steps.push_back(0.5 / static_cast<double>(M));
  for (std::size_t j = 2; j <= degree; ++j) est.half_steps.push_back(0.5 / static_cast<double>(K));
  est.slack = lipschitz_slack(w, N, est.half_steps);
  if (grid.max_slack && est.slack > *grid.max_slack)
    throw GridTooCoarse("Lipschitz slack " + std::to_string(est.slack) + " exceeds the bound " +
                            std::to_string(*grid.max_slack) + "; refine the grid",
                        est.slack);

  BackwardDft dft(M);
  Sequence u(N);
  double best = -1;

  auto make_argmax = [&](std::size_t bin, const std::vector<CirclePoint>& higher) {
    std::vector<CirclePoint> c{CirclePoint{}, CirclePoint::wrap(PreciseReal::rational(bin, M))};
    c.insert(c.end(), higher.begin(), higher.end());
    return PhasePoly(std::move(c));
  };

  // Regular grid: coefficients i_j / K for j = 2..d, last degree varying fastest.
  const std::size_t free = degree - 1;
  std::vector<std::uint64_t> residues;
  std::vector<std::complex<double>> roots;
  if (free > 0) {
    residues = power_residues(N, degree, K);
    roots.resize(K);
    for (std::size_t r = 0; r < K; ++r) {
      double a = kTwoPi * static_cast<double>(r) / static_cast<double>(K);
      roots[r] = {std::cos(a), std::sin(a)};
    }
  }
  std::vector<std::size_t> idx(free, 0);
  while (true) {
    for (std::size_t n = 0; n < N; ++n) {
      unsigned __int128 total = 0;
      for (std::size_t j = 2; j <= degree; ++j)
        total += static_cast<unsigned __int128>(idx[j - 2]) * residues[n * (degree + 1) + j];
      u[n] = free > 0 ? w[n] * roots[static_cast<std::size_t>(total % K)] : w[n];
    }
    SweepMax m = sweep_linear(dft, u, N);
    if (m.value > best) {
      best = m.value;
      std::vector<CirclePoint> higher;
      for (std::size_t j = 0; j < free; ++j) higher.push_back(CirclePoint::wrap(PreciseReal::rational(idx[j], K)));
      est.argmax = make_argmax(m.bin, higher);
    }
    std::size_t pos = free;
    while (pos > 0 && ++idx[pos - 1] == K) idx[--pos] = 0;
    if (pos == 0) break;
  }

  // Injected polynomials: full sweep along their higher coefficients plus the
  // exact point itself.
  for (const auto& P : grid.injected) {
    if (P.degree() > degree) throw std::invalid_argument("injected polynomial exceeds the sweep degree");
    std::vector<CirclePoint> higher(P.coeffs().begin() + std::min<std::size_t>(2, P.coeffs().size()), P.coeffs().end());
    higher.resize(free);
    std::vector<CirclePoint> shifted{CirclePoint{}, CirclePoint{}};
    shifted.insert(shifted.end(), higher.begin(), higher.end());
    PhasePoly high(shifted);
    for (std::size_t n = 0; n < N; ++n) u[n] = w[n] * poly_phase(high, n);
    SweepMax m = sweep_linear(dft, u, N);
    if (m.value > best) {
      best = m.value;
      est.argmax = make_argmax(m.bin, higher);
    }
    std::vector<CirclePoint> exact = P.coeffs();
    exact.resize(degree + 1);
    exact[0] = CirclePoint{};
    PhasePoly exact_poly(exact);
    double v = std::abs(weyl_average(w, N, exact_poly).value);
    if (v > best) {
      best = v;
      est.argmax = exact_poly;
    }
  }

  est.lower = best;
  est.upper = est.lower + est.slack;
  return est;
}

VanDerCorput van_der_corput_check(SequenceView w, std::size_t N, std::size_t H, const PhasePoly& P) {
  require_range(w, N);
  if (H >= N) throw BadWindow("Van der Corput window needs 0 <= H < N (H = " + std::to_string(H) +
                              ", N = " + std::to_string(N) + ")");
  Sequence u(N);
  for (std::size_t n = 0; n < N; ++n) u[n] = P.coeffs().empty() ? w[n] : w[n] * poly_phase(P, n);

  const double Nd = static_cast<double>(N);
  const double Hd = static_cast<double>(H);
  CompensatedSum mean;
  double energy = 0, energy_c = 0;
  for (const auto& v : u) {
    mean.add(v);
    double e = std::norm(v);
    double t = energy + e;
    energy_c += (energy >= e) ? (energy - t) + e : (e - t) + energy;
    energy = t;
  }
  const double lhs = std::norm(mean.value() / Nd);
  const double mean_energy = (energy + energy_c) / Nd;

  CompensatedSum weighted;
  for (std::size_t h = 1; h <= H; ++h) {
    CompensatedSum corr;
    for (std::size_t n = 0; n + h < N; ++n) corr.add(u[n + h] * std::conj(u[n]));
    const double len = static_cast<double>(N - h);
    const double weight = (Hd + 1 - static_cast<double>(h)) * len / Nd;
    weighted.add(weight * (corr.value() / len));
  }
  const double rhs = (Nd + Hd) / (Nd * (Hd + 1)) * mean_energy +
                     2 * (Nd + Hd) / (Nd * (Hd + 1) * (Hd + 1)) * std::abs(weighted.value());
  return {lhs, rhs, lhs <= rhs + kVanDerCorputTolerance};
}

std::complex<double> cesaro2(SequenceView values, std::size_t H) {
  if (H == 0) throw std::invalid_argument("second-order Cesaro mean needs H >= 1");
  if (values.size() < H) throw std::invalid_argument("fewer than H values");
  CompensatedSum sum;
  for (std::size_t h = 1; h <= H; ++h) sum.add(static_cast<double>(H + 1 - h) * values[h - 1]);
  const double d = static_cast<double>(H + 1);
  return sum.value() / (d * d);
}

std::vector<double> equidistribution_weyl_test(std::span<const CirclePoint> x, std::size_t N, std::size_t max_freq) {
  if (N == 0) throw EmptyRange("equidistribution test over an empty range");
  if (N > x.size()) throw std::invalid_argument("sequence shorter than N");
  std::vector<double> out;
  out.reserve(max_freq);
  for (std::size_t m = 1; m <= max_freq; ++m) {
    CompensatedSum sum;
    const mpz_class mz(static_cast<unsigned long>(m));
    for (std::size_t n = 0; n < N; ++n) sum.add(unit_exp(scale_mod1(mz, x[n])));
    out.push_back(std::abs(sum.value()) / static_cast<double>(N));
  }
  return out;
}

void OscillationReport::add(SupEstimate e) {
  if (!points.empty() && e.N <= points.back().N) throw std::invalid_argument("report lengths must be strictly increasing");
  points.push_back(std::move(e));
}

DecayFit decay_fit(const OscillationReport& report) {
  const auto& pts = report.points;
  if (pts.size() < 3) throw DegenerateFit("decay fit needs at least three points");
  for (const auto& p : pts)
    if (!(p.upper > 0)) throw DegenerateFit("decay fit needs positive suprema");
  bool all_equal = std::all_of(pts.begin(), pts.end(), [&](const SupEstimate& p) { return p.upper == pts.front().upper; });
  if (all_equal) throw DegenerateFit("all suprema are equal");

  const double k = static_cast<double>(pts.size());
  double sx = 0, sy = 0;
  for (const auto& p : pts) {
    sx += std::log(static_cast<double>(p.N));
    sy += std::log(p.upper);
  }
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    double dx = std::log(static_cast<double>(p.N)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.upper) - my);
  }
  DecayFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  double rss = 0;
  for (const auto& p : pts) {
    double r = std::log(p.upper) - (intercept + fit.exponent * std::log(static_cast<double>(p.N)));
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / k);
  return fit;
}

}  // namespace nilosc
