#include "nilosc/extension.hpp"

#include <random>
#include <stdexcept>

namespace nilosc {

namespace {

mpz_class to_mpz(std::uint64_t n) { return mpz_class(static_cast<unsigned long>(n)); }

void require_valid(const ExtensionState& s) {
  if (s.z.empty()) throw std::invalid_argument("extension needs p >= 1");
}

}  // namespace

BaseSystem circle_rotation(const CirclePoint& alpha) {
  BaseSystem b;
  b.name = "circle_rotation";
  b.orbit = [alpha](const BasePoint& x, std::uint64_t n) {
    if (x.size() != 1) throw DimensionMismatch("circle rotation expects a 1-dimensional point");
    return BasePoint{x[0] + scale_mod1(to_mpz(n), alpha)};
  };
  b.eigenphase = [](const BasePoint& x) { return x.at(0); };
  b.xi = alpha;
  return b;
}

BaseSystem torus_rotation(std::vector<CirclePoint> alpha, std::size_t eigen_coordinate) {
  if (eigen_coordinate >= alpha.size()) throw std::invalid_argument("eigen coordinate out of range");
  BaseSystem b;
  b.name = "torus_rotation";
  b.xi = alpha[eigen_coordinate];
  b.orbit = [alpha = std::move(alpha)](const BasePoint& x, std::uint64_t n) {
    if (x.size() != alpha.size()) throw DimensionMismatch("torus rotation dimension mismatch");
    BasePoint r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + scale_mod1(to_mpz(n), alpha[i]);
    return r;
  };
  b.eigenphase = [eigen_coordinate](const BasePoint& x) { return x.at(eigen_coordinate); };
  return b;
}

BaseSystem heisenberg_base(const HeisenbergElement& g) {
  BaseSystem b;
  b.name = "heisenberg";
  b.orbit = [g](const BasePoint& x, std::uint64_t n) {
    return orbit_point(g, FundamentalPoint{x, Coordinates::first_kind}, n).coords;
  };
  b.eigenphase = [](const BasePoint& x) { return x.at(0); };
  b.xi = CirclePoint::wrap(g.a);
  return b;
}

ExtensionState step(const BaseSystem& base, const ExtensionState& s) {
  require_valid(s);
  ExtensionState r{base.orbit(s.x, 1), s.z, s.lambda};
  r.z[0] = s.lambda + base.eigenphase(s.x) + s.z[0];
  for (std::size_t j = 1; j < s.z.size(); ++j) r.z[j] = s.z[j - 1] + s.z[j];
  return r;
}

ExtensionState power_closed_form(const BaseSystem& base, const ExtensionState& s, std::uint64_t n) {
  require_valid(s);
  const mpz_class nz = to_mpz(n);
  const CirclePoint gamma_phase = s.lambda + base.eigenphase(s.x);
  ExtensionState r{base.orbit(s.x, n), s.z, s.lambda};
  // z index i (0-based) is tower level j = i + 1.
  for (std::size_t i = 0; i < s.z.size(); ++i) {
    const unsigned long j = i + 1;
    CirclePoint phase = scale_mod1(binomial(nz, j + 1), base.xi) + scale_mod1(binomial(nz, j), gamma_phase) + s.z[i];
    for (std::size_t k = 0; k < i; ++k) phase += scale_mod1(binomial(nz, j - (k + 1)), s.z[k]);
    r.z[i] = phase;
  }
  return r;
}

CirclePoint choose_lambda(std::uint64_t seed) {
  const unsigned B = precision_bits();
  std::mt19937_64 gen(seed);
  mpz_class m = 0;
  unsigned words = (B + 63) / 64;
  for (unsigned w = 0; w < words; ++w) {
    m <<= 64;
    std::uint64_t v = gen();
    m += mpz_class(static_cast<unsigned long>(v));
  }
  m >>= (words * 64 - B);
  return CirclePoint::wrap(PreciseReal(m, 0));
}

StateObservable tower_character(std::size_t j) {
  return [j](const ExtensionState& s) {
    if (j == 0 || j > s.z.size()) throw std::out_of_range("tower level out of range");
    return unit_exp(s.z[j - 1]);
  };
}

StateObservable product_observable(std::function<std::complex<double>(const BasePoint&)> f, std::size_t j) {
  return [f = std::move(f), j](const ExtensionState& s) {
    if (j == 0 || j > s.z.size()) throw std::out_of_range("tower level out of range");
    return f(s.x) * unit_exp(s.z[j - 1]);
  };
}

std::vector<std::complex<double>> observe(const BaseSystem& base, const ExtensionState& s, const StateObservable& F,
                                          std::size_t N) {
  std::vector<std::complex<double>> out;
  out.reserve(N);
  for (std::size_t n = 0; n < N; ++n) out.push_back(F(power_closed_form(base, s, n)));
  return out;
}

}  // namespace nilosc
