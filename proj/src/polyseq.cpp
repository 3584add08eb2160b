#include "nilosc/polyseq.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace nilosc {

namespace {

mpz_class to_mpz(std::uint64_t n) { return mpz_class(static_cast<unsigned long>(n)); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view strip_wrapping(std::string_view s, char open, char close, std::string_view what) {
  s = trim(s);
  if (s.size() < 2 || s.front() != open || s.back() != close)
    throw ParseError(std::string(what) + ": expected " + open + "..." + close);
  return trim(s.substr(1, s.size() - 2));
}

std::vector<PreciseReal> parse_real_list(std::string_view s) {
  std::vector<PreciseReal> out;
  for (auto item : split(strip_wrapping(s, '[', ']', "bracket form list"), ',')) out.push_back(PreciseReal::parse(item));
  return out;
}

double parse_double(std::string_view s) {
  std::string str(trim(s));
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(str, &used);
  } catch (const std::exception&) {
    throw ParseError("bad number '" + str + "'");
  }
  if (used != str.size()) throw ParseError("bad number '" + str + "'");
  return v;
}

long parse_long(std::string_view s) {
  std::string str(trim(s));
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(str, &used);
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + str + "'");
  }
  if (used != str.size()) throw ParseError("bad integer '" + str + "'");
  return v;
}

TrigObservable parse_phi(std::string_view s) {
  s = trim(s);
  if (s.starts_with("exp")) {
    auto inner = strip_wrapping(s.substr(3), '(', ')', "phi=exp");
    if (inner.starts_with("m=")) inner = trim(inner.substr(2));
    return TrigObservable::character(parse_long(inner));
  }
  if (s.starts_with("trig")) {
    std::vector<TrigObservable::Term> terms;
    for (auto item : split(strip_wrapping(s.substr(4), '(', ')', "phi=trig"), ',')) {
      auto fields = split(item, ':');
      if (fields.size() < 2 || fields.size() > 3) throw ParseError("trig term must be k:re or k:re:im");
      double im = fields.size() == 3 ? parse_double(fields[2]) : 0.0;
      terms.emplace_back(parse_long(fields[0]), std::complex<double>(parse_double(fields[1]), im));
    }
    return TrigObservable(std::move(terms));
  }
  throw ParseError("phi must be exp(m=k) or trig(...)");
}

using Matrix = AffineUnipotentSystem::Matrix;

Matrix identity(std::size_t k) {
  Matrix m(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i) m[i][i] = 1;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  const std::size_t k = a.size();
  Matrix r(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < k; ++j) r[i][j] += a[i][l] * b[l][j];
  return r;
}

bool is_zero(const Matrix& m) {
  for (const auto& row : m)
    for (const auto& v : row)
      if (v != 0) return false;
  return true;
}

std::vector<CirclePoint> apply_matrix(const Matrix& m, const std::vector<CirclePoint>& y) {
  std::vector<CirclePoint> r(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (m[i][j] != 0) r[i] += scale_mod1(m[i][j], y[j]);
  return r;
}

}  // namespace

// --- PhasePoly -----------------------------------------------------------

PhasePoly::PhasePoly(std::vector<CirclePoint> coeffs) : coeffs_(std::move(coeffs)) {}

PhasePoly PhasePoly::from_reals(const std::vector<PreciseReal>& coeffs) {
  std::vector<CirclePoint> c;
  c.reserve(coeffs.size());
  for (const auto& v : coeffs) c.push_back(CirclePoint::wrap(v));
  return PhasePoly(std::move(c));
}

PhasePoly PhasePoly::parse(std::string_view text) {
  std::vector<CirclePoint> c;
  for (auto item : split(text, ',')) c.push_back(CirclePoint::parse(item));
  return PhasePoly(std::move(c));
}

CirclePoint PhasePoly::phase_at(const mpz_class& n) const {
  CirclePoint acc;
  mpz_class pw = 1;
  for (const auto& c : coeffs_) {
    acc += scale_mod1(pw, c);
    pw *= n;
  }
  return acc;
}

UnitComplex poly_phase(const PhasePoly& P, std::uint64_t n) { return unit_exp(P.phase_at(n)); }

// --- observables and bracket forms ------------------------------------------

TrigObservable::TrigObservable(std::vector<Term> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("trigonometric observable needs at least one term");
  for (const auto& [k, c] : terms_)
    if (k == 0) throw std::invalid_argument("trigonometric observable must have zero constant term");
}

TrigObservable TrigObservable::character(long k) { return TrigObservable(std::vector<Term>{Term{k, {1.0, 0.0}}}); }

std::complex<double> TrigObservable::operator()(const CirclePoint& x) const {
  std::complex<double> sum = 0;
  for (const auto& [k, c] : terms_) sum += c * unit_exp(scale_mod1(k, x));
  return sum;
}

BracketForm BracketForm::parse(std::string_view text) {
  BracketForm form;
  bool have_a = false, have_b = false;
  for (auto part : split(text, ';')) {
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ParseError("bracket form: expected key=value in '" + std::string(part) + "'");
    auto key = trim(part.substr(0, eq));
    auto value = trim(part.substr(eq + 1));
    if (key == "phi") {
      form.phi = parse_phi(value);
    } else if (key == "a") {
      form.alpha = parse_real_list(value);
      have_a = true;
    } else if (key == "b") {
      form.beta = parse_real_list(value);
      have_b = true;
    } else {
      throw ParseError("bracket form: unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_a || !have_b) throw ParseError("bracket form needs both a=[...] and b=[...]");
  if (form.alpha.size() != form.beta.size()) throw DimensionMismatch("bracket form: a and b differ in length");
  return form;
}

CirclePoint bracket_value(const BracketForm& form, std::uint64_t n) {
  if (form.alpha.size() != form.beta.size()) throw DimensionMismatch("bracket form: a and b differ in length");
  if (form.alpha.empty()) throw std::invalid_argument("bracket form needs m >= 1");
  const mpz_class nz = to_mpz(n);
  check_multiplier(nz);
  PreciseReal sum;
  for (std::size_t i = 0; i < form.alpha.size(); ++i) {
    mpz_class k = floor_certified(nz * form.beta[i]) * nz;
    check_multiplier(k);
    sum += k * form.alpha[i];
  }
  return CirclePoint::wrap(sum);
}

std::complex<double> bracket_eval(const BracketForm& form, std::uint64_t n) { return form.phi(bracket_value(form, n)); }

// --- affine unipotent systems -------------------------------------------------

AffineUnipotentSystem::AffineUnipotentSystem(Matrix U, std::vector<CirclePoint> b, std::vector<CirclePoint> y0)
    : U_(std::move(U)), b_(std::move(b)), y0_(std::move(y0)) {
  const std::size_t k = b_.size();
  if (k == 0) throw std::invalid_argument("affine system needs dimension >= 1");
  if (y0_.size() != k || U_.size() != k) throw DimensionMismatch("affine system: U, b, y0 sizes differ");
  for (const auto& row : U_)
    if (row.size() != k) throw DimensionMismatch("affine system: U is not square");
  Matrix nil = U_;
  for (std::size_t i = 0; i < k; ++i) nil[i][i] -= 1;
  Matrix pw = nil;
  for (std::size_t i = 1; i < k; ++i) pw = matmul(pw, nil);
  if (!is_zero(pw)) throw std::invalid_argument("affine system: U is not unipotent");
}

std::vector<CirclePoint> AffineUnipotentSystem::apply(const std::vector<CirclePoint>& y) const {
  if (y.size() != dimension()) throw DimensionMismatch("affine system: point has wrong dimension");
  auto r = apply_matrix(U_, y);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b_[i];
  return r;
}

AffineUnipotentSystem poly_to_affine(const PhasePoly& P) {
  const std::size_t d = P.degree();
  if (d == 0) {
    CirclePoint c = P.coeffs().empty() ? CirclePoint{} : P.coeffs()[0];
    return AffineUnipotentSystem(identity(1), {CirclePoint{}}, {c});
  }
  // Delta^k P(0) = sum_i (-1)^(k-i) C(k,i) P(i)
  std::vector<CirclePoint> values;
  for (std::size_t i = 0; i <= d; ++i) values.push_back(P.phase_at(static_cast<std::uint64_t>(i)));
  auto difference = [&](std::size_t k) {
    CirclePoint acc;
    for (std::size_t i = 0; i <= k; ++i) {
      mpz_class c = binomial(mpz_class(static_cast<unsigned long>(k)), i);
      if ((k - i) % 2) c = -c;
      acc += scale_mod1(c, values[i]);
    }
    return acc;
  };
  Matrix U = identity(d);
  for (std::size_t i = 0; i + 1 < d; ++i) U[i][i + 1] = 1;
  std::vector<CirclePoint> y0(d), b(d);
  for (std::size_t k = 0; k < d; ++k) y0[k] = difference(k);
  b[d - 1] = difference(d);
  return AffineUnipotentSystem(std::move(U), std::move(b), std::move(y0));
}

std::vector<CirclePoint> affine_orbit(const AffineUnipotentSystem& A, std::uint64_t n) {
  auto y = A.y0();
  for (std::uint64_t i = 0; i < n; ++i) y = A.apply(y);
  return y;
}

std::vector<std::vector<CirclePoint>> affine_trajectory(const AffineUnipotentSystem& A, std::size_t N) {
  std::vector<std::vector<CirclePoint>> out;
  out.reserve(N);
  if (N == 0) return out;
  out.push_back(A.y0());
  for (std::size_t n = 1; n < N; ++n) out.push_back(A.apply(out.back()));
  return out;
}

std::vector<CirclePoint> affine_orbit_closed(const AffineUnipotentSystem& A, std::uint64_t n) {
  const std::size_t k = A.dimension();
  const mpz_class nz = to_mpz(n);
  Matrix nil = A.U();
  for (std::size_t i = 0; i < k; ++i) nil[i][i] -= 1;
  // U^n = sum_j C(n,j) N^j,  sum_{i<n} U^i = sum_j C(n,j+1) N^j
  Matrix un(k, std::vector<mpz_class>(k, 0)), sum(k, std::vector<mpz_class>(k, 0));
  Matrix pw = identity(k);
  for (std::size_t j = 0; j < k; ++j) {
    mpz_class cj = binomial(nz, j), cj1 = binomial(nz, j + 1);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) {
        un[r][c] += cj * pw[r][c];
        sum[r][c] += cj1 * pw[r][c];
      }
    pw = matmul(pw, nil);
  }
  auto y = apply_matrix(un, A.y0());
  auto shift = apply_matrix(sum, A.b());
  for (std::size_t i = 0; i < k; ++i) y[i] += shift[i];
  return y;
}

// --- quasi-eigenfunctions -------------------------------------------------------

CirclePoint quasi_eigen_phase(const QuasiEigenData& Q, std::uint64_t n) {
  const std::size_t k = Q.order();
  if (k == 0) throw std::invalid_argument("quasi-eigenfunction order must be >= 1");
  const mpz_class nz = to_mpz(n);
  CirclePoint acc;
  for (std::size_t j = 0; j < k; ++j) acc += scale_mod1(binomial(nz, k - j), Q.theta[j]);
  return acc;
}

UnitComplex quasi_eigen_orbit(const QuasiEigenData& Q, const CirclePoint& f_x, std::uint64_t n) {
  return unit_exp(f_x + quasi_eigen_phase(Q, n));
}

}  // namespace nilosc
