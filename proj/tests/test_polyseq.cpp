#include <doctest.h>

#include "nilosc/heisenberg.hpp"
#include "nilosc/polyseq.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace nilosc;
using support::same_point;
using support::same_points;
using support::Setup;

namespace {

CirclePoint P(const char* s) { return CirclePoint::parse(s); }
PreciseReal R(const char* s) { return PreciseReal::parse(s); }

PhasePoly random_poly(std::mt19937_64& gen, std::size_t degree) {
  std::vector<CirclePoint> c;
  for (std::size_t j = 0; j <= degree; ++j) c.push_back(oracle::random_point(gen));
  return PhasePoly(c);
}

using Matrix = AffineUnipotentSystem::Matrix;

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix r(a.size(), std::vector<mpz_class>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

std::vector<CirclePoint> matrix_apply(const Matrix& m, const std::vector<CirclePoint>& y) {
  std::vector<CirclePoint> r(y.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i] += scale_mod1(m[i][j], y[j]);
  return r;
}

}  // namespace

TEST_CASE_FIXTURE(Setup, "poly_phase") {
  PhasePoly zero;
  PhasePoly zeros({CirclePoint{}, CirclePoint{}});
  for (std::uint64_t n : {0u, 1u, 17u, 99999u}) {
    CHECK(poly_phase(zero, n) == UnitComplex(1.0, 0.0));
    CHECK(poly_phase(zeros, n) == UnitComplex(1.0, 0.0));
  }
  PhasePoly half({CirclePoint{}, P("0.5")});
  CHECK(poly_phase(half, 3) == UnitComplex(-1.0, 0.0));

  PhasePoly quad = PhasePoly::parse("0, 0, sqrt(2)");
  CHECK(quad.degree() == 2);
  const std::uint64_t n = 10000;
  oracle::Real ref = oracle::frac(oracle::Real(n) * oracle::Real(n) * oracle::sqrt_of(2));
  CirclePoint phase = quad.phase_at(n);
  CHECK(oracle::circle_distance(oracle::value(phase), ref) < oracle::Real(1e-20) * ref);
  PreciseComplex e = unit_exp_precise(phase);
  std::complex<double> ref_e = oracle::unit_exp(ref);
  oracle::Real angle = 2 * oracle::pi() * ref;
  CHECK(boost::multiprecision::abs(oracle::value(e.re) - boost::multiprecision::cos(angle)) < 1e-20);
  CHECK(boost::multiprecision::abs(oracle::value(e.im) - boost::multiprecision::sin(angle)) < 1e-20);
  CHECK(std::abs(poly_phase(quad, n) - ref_e) < 1e-15);
}

TEST_CASE_FIXTURE(Setup, "bracket forms") {
  BracketForm form = BracketForm::parse("phi=exp(m=1); a=[sqrt(2)]; b=[sqrt(3)]");
  CHECK(form.m() == 1);
  CHECK(bracket_eval(form, 0) == std::complex<double>(1.0, 0.0));

  BracketForm small = BracketForm::parse("phi=exp(m=1); a=[sqrt(2)]; b=[0.7]");
  CHECK(bracket_eval(small, 1) == std::complex<double>(1.0, 0.0));

  // n alpha [n beta] with alpha = 0.25, beta = 1.5, n = 3: 3 * 0.25 * 4 = 3.
  BracketForm exact = BracketForm::parse("phi=exp(m=1); a=[0.25]; b=[1.5]");
  CHECK(bracket_value(exact, 3) == CirclePoint{});
  CHECK(bracket_value(exact, 2) == P("0.5"));  // 2 * 0.25 * 3

  BracketForm trig = BracketForm::parse("phi=trig(1:0.5, -2:0:0.25); a=[0.25, sqrt(2)]; b=[1.5, 0.1]");
  CHECK(trig.m() == 2);
  REQUIRE(trig.phi.terms().size() == 2);
  CirclePoint x = bracket_value(trig, 5);
  std::complex<double> expect = 0.5 * unit_exp(x) + std::complex<double>(0, 0.25) * unit_exp(scale_mod1(-2, x));
  CHECK(std::abs(bracket_eval(trig, 5) - expect) < 1e-15);

  CHECK_THROWS_AS(BracketForm::parse("a=[1]"), ParseError);
  CHECK_THROWS_AS(BracketForm::parse("phi=exp(m=1); a=[1,2]; b=[1]"), DimensionMismatch);
  CHECK_THROWS_AS(BracketForm::parse("phi=cos; a=[1]; b=[1]"), ParseError);
  CHECK_THROWS(BracketForm::parse("phi=trig(0:1); a=[1]; b=[1]"));
}

TEST_CASE_FIXTURE(Setup, "bracket values agree with omega") {
  for (const char* beta : {"sqrt(3)", "sqrt(5)", "0.375"}) {
    BracketForm form{{R("sqrt(2)")}, {R(beta)}, TrigObservable::character(1)};
    OmegaSequence omega({R("sqrt(2)")}, {R(beta)}, PreciseReal{});
    const PreciseReal ab = R("sqrt(2)") * R(beta);
    for (std::uint64_t n = 0; n <= 5000; ++n) {
      CirclePoint q = CirclePoint::wrap(binomial(n, 2) * ab);
      REQUIRE(same_point(bracket_value(form, n) + omega(n), q));
      REQUIRE(std::abs(bracket_eval(form, n) * unit_exp(omega(n)) - unit_exp(q)) < 1e-13);
    }
  }
}

TEST_CASE_FIXTURE(Setup, "poly_to_affine") {
  AffineUnipotentSystem c = poly_to_affine(PhasePoly({P("0.3")}));
  CHECK(c.dimension() == 1);
  CHECK(c.U() == Matrix{{1}});
  for (std::uint64_t n : {0u, 1u, 50u}) CHECK(same_point(affine_orbit(c, n)[0], P("0.3")));

  AffineUnipotentSystem rot = poly_to_affine(PhasePoly({CirclePoint{}, P("sqrt(2)")}));
  CHECK(rot.dimension() == 1);
  CHECK(rot.y0()[0] == CirclePoint{});
  CHECK(same_point(rot.b()[0], P("sqrt(2)")));

  AffineUnipotentSystem sq = poly_to_affine(PhasePoly({CirclePoint{}, CirclePoint{}, P("sqrt(2)")}));
  CHECK(sq.dimension() == 2);
  CHECK(sq.U() == Matrix{{1, 1}, {0, 1}});
  CHECK(sq.y0()[0] == CirclePoint{});
  CHECK(same_point(sq.y0()[1], P("sqrt(2)")));
  CHECK(same_point(sq.b()[1], P("2*sqrt(2)")));
  auto traj = affine_trajectory(sq, 101);
  for (std::uint64_t n = 0; n <= 100; ++n) {
    oracle::Real ref = oracle::frac(oracle::Real(n * n) * oracle::sqrt_of(2));
    REQUIRE(oracle::circle_distance(oracle::value(traj[n][0]), ref) < 1e-40);
    REQUIRE(std::abs(affine_observable(traj[n]) - oracle::unit_exp(ref)) < 1e-15);
  }
}

TEST_CASE_FIXTURE(Setup, "affine_orbit") {
  std::mt19937_64 gen(51);
  AffineUnipotentSystem rot(Matrix{{1}}, {P("sqrt(2)")}, {P("0.1")});
  CHECK(affine_orbit(rot, 0) == rot.y0());
  for (std::uint64_t n : {1u, 7u, 300u})
    CHECK(same_point(affine_orbit(rot, n)[0], P("0.1") + scale_mod1(static_cast<long>(n), P("sqrt(2)"))));

  Matrix U{{1, 2, -1}, {0, 1, 3}, {0, 0, 1}};
  AffineUnipotentSystem A(U, {oracle::random_point(gen), oracle::random_point(gen), oracle::random_point(gen)},
                          {oracle::random_point(gen), oracle::random_point(gen), oracle::random_point(gen)});
  Matrix upow{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Matrix usum{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  for (std::uint64_t n = 0; n <= 200; ++n) {
    auto ref = matrix_apply(upow, A.y0());
    auto shift = matrix_apply(usum, A.b());
    for (std::size_t i = 0; i < 3; ++i) ref[i] += shift[i];
    REQUIRE(same_points(affine_orbit(A, n), ref));
    REQUIRE(same_points(affine_orbit_closed(A, n), ref));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) usum[i][j] += upow[i][j];
    upow = matmul(upow, U);
  }

  CHECK_THROWS_AS(AffineUnipotentSystem(Matrix{{2}}, {P("0")}, {P("0")}), std::invalid_argument);
  CHECK_THROWS_AS(AffineUnipotentSystem(Matrix{{1, 1}, {1, 1}}, {P("0"), P("0")}, {P("0"), P("0")}),
                  std::invalid_argument);
  CHECK_THROWS_AS(AffineUnipotentSystem(Matrix{{1}}, {P("0"), P("0")}, {P("0")}), DimensionMismatch);
}

TEST_CASE_FIXTURE(Setup, "quasi_eigen_orbit") {
  std::mt19937_64 gen(52);
  CirclePoint fx = oracle::random_point(gen);
  QuasiEigenData k1{{P("sqrt(2)")}};
  for (std::uint64_t n = 0; n < 100; ++n)
    CHECK(std::abs(quasi_eigen_orbit(k1, fx, n) - unit_exp(fx + scale_mod1(static_cast<long>(n), P("sqrt(2)")))) < 1e-15);

  QuasiEigenData k3{{oracle::random_point(gen), oracle::random_point(gen), oracle::random_point(gen)}};
  CHECK(quasi_eigen_orbit(k3, fx, 0) == unit_exp(fx));

  // Cocycle iteration: a_0 = theta_0 fixed; a_j(n+1) = a_j(n) + a_{j-1}(n);
  // a_j(0) = theta_j for 0 < j < k and a_k(0) = arg f(x).
  std::vector<CirclePoint> a = k3.theta;
  a.push_back(fx);
  for (std::uint64_t n = 0; n <= 300; ++n) {
    REQUIRE(same_point(fx + quasi_eigen_phase(k3, n), a[3]));
    REQUIRE(std::abs(quasi_eigen_orbit(k3, fx, n) - unit_exp(a[3])) < 1e-14);
    for (std::size_t j = 3; j >= 1; --j) a[j] += a[j - 1];
  }
}

TEST_CASE_FIXTURE(Setup, "property: coefficient periodicity") {
  std::mt19937_64 gen(53);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PreciseReal> c;
    for (int j = 0; j <= 3; ++j) c.push_back(oracle::random_real(gen, 1));
    std::vector<PreciseReal> shifted = c;
    shifted[trial % 4] += PreciseReal::from_int(static_cast<long>(gen() % 2001) - 1000);
    PhasePoly p = PhasePoly::from_reals(c), q = PhasePoly::from_reals(shifted);
    for (std::uint64_t n : {0u, 1u, 2u, 1000u, 123457u}) {
      CHECK(p.phase_at(n) == q.phase_at(n));
      CHECK(poly_phase(p, n) == poly_phase(q, n));
    }
  }
}

TEST_CASE_FIXTURE(Setup, "property: affine realization reproduces the phase") {
  std::mt19937_64 gen(54);
  for (std::size_t d = 0; d <= 4; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      PhasePoly poly = random_poly(gen, d);
      AffineUnipotentSystem A = poly_to_affine(poly);
      auto traj = affine_trajectory(A, 300);
      for (std::uint64_t n = 0; n < traj.size(); ++n) {
        REQUIRE(same_point(traj[n][0], poly.phase_at(n)));
        REQUIRE(std::abs(affine_observable(traj[n]) - poly_phase(poly, n)) < 1e-14);
      }
    }
  }
}

TEST_CASE_FIXTURE(Setup, "property: quasi-eigen recursion") {
  std::mt19937_64 gen(55);
  for (std::size_t k = 2; k <= 5; ++k) {
    QuasiEigenData Q;
    for (std::size_t j = 0; j < k; ++j) Q.theta.push_back(oracle::random_point(gen));
    QuasiEigenData lower{std::vector<CirclePoint>(Q.theta.begin(), Q.theta.end() - 1)};
    CirclePoint fx = oracle::random_point(gen);
    for (std::uint64_t n = 0; n < 200; ++n) {
      // p(n+1) - p(n) = q(n) + theta_{k-1} by C(n+1,j) = C(n,j) + C(n,j-1).
      CirclePoint step = quasi_eigen_phase(lower, n) + Q.theta.back();
      REQUIRE(same_point(quasi_eigen_phase(Q, n + 1), quasi_eigen_phase(Q, n) + step));
      REQUIRE(std::abs(quasi_eigen_orbit(Q, fx, n + 1) - quasi_eigen_orbit(Q, fx, n) * unit_exp(step)) < 1e-13);
    }
  }
}
