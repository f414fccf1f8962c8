#include "monospec/scalar.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "monospec/error.hpp"

namespace monospec {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) noexcept {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorCode::AssertionFailure, "cyclotomic table overflow");
  return r;
}

long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Error(ErrorCode::AssertionFailure, "cyclotomic table overflow");
  return r;
}

// Exact quotient of num by a monic divisor, both ascending.
std::vector<long long> divide_monic(std::vector<long long> num,
                                    const std::vector<long long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long long> quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const long long c = num[k];
    quot[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j)
      num[k - dn + j] = checked_sub(num[k - dn + j], checked_mul(c, den[j]));
  }
  return quot;
}

std::vector<long long> compute_cyclotomic(int n,
                                          std::map<int, std::vector<long long>>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::vector<long long> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) poly = divide_monic(poly, compute_cyclotomic(d, memo));
  memo.emplace(n, poly);
  return poly;
}

std::unique_ptr<CyclotomicTable> build_table(int n) {
  static std::map<int, std::vector<long long>> memo;  // guarded by caller's mutex
  auto table = std::make_unique<CyclotomicTable>();
  table->conductor = n;
  table->cyclotomic = compute_cyclotomic(n, memo);
  const int phi = static_cast<int>(table->cyclotomic.size()) - 1;
  table->phi = phi;
  const int count = std::max(n, 2 * phi - 1) + 1;
  table->powers.reserve(static_cast<std::size_t>(count));
  std::vector<long long> cur(static_cast<std::size_t>(phi), 0);
  cur[0] = 1;
  for (int k = 0; k < count; ++k) {
    table->powers.push_back(cur);
    // multiply by x and reduce the degree-phi term
    long long top = cur[static_cast<std::size_t>(phi) - 1];
    for (int j = phi - 1; j > 0; --j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j) - 1];
    cur[0] = 0;
    if (top != 0)
      for (int j = 0; j < phi; ++j)
        cur[static_cast<std::size_t>(j)] =
            checked_sub(cur[static_cast<std::size_t>(j)], checked_mul(top, table->cyclotomic[static_cast<std::size_t>(j)]));
  }
  return table;
}

void require_conductor(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "conductor must be positive");
}

}  // namespace

std::size_t hash_value(const Integer& z) noexcept {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_sgn(p) + 1);
  const std::size_t limbs = mpz_size(p);
  for (std::size_t i = 0; i < limbs; ++i)
    h = hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(p, static_cast<mp_size_t>(i))));
  return h;
}

std::size_t hash_value(const Rational& q) noexcept {
  return hash_combine(hash_value(q.get_num()), hash_value(q.get_den()));
}

long gcd_long(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long lcm_long(long a, long b) { return a / gcd_long(a, b) * b; }

long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

const CyclotomicTable& cyclotomic_table(int conductor) {
  require_conductor(conductor);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CyclotomicTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[conductor];
  if (!slot) slot = build_table(conductor);
  return *slot;
}

std::vector<long long> cyclotomic_polynomial(int conductor) {
  return cyclotomic_table(conductor).cyclotomic;
}

CycloScalar::CycloScalar() : conductor_(1), coeffs_(1) {}

CycloScalar::CycloScalar(long value) : conductor_(1), coeffs_{Rational(value)} {}

CycloScalar::CycloScalar(Rational value, int conductor) : conductor_(conductor) {
  const auto& table = cyclotomic_table(conductor);
  coeffs_.assign(static_cast<std::size_t>(table.phi), Rational(0));
  value.canonicalize();
  coeffs_[0] = std::move(value);
}

CycloScalar::CycloScalar(int conductor, std::vector<Rational> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {
  const auto& table = cyclotomic_table(conductor);
  if (coeffs_.size() != static_cast<std::size_t>(table.phi))
    throw Error(ErrorCode::InvalidInput, "coefficient vector length must equal phi(N)");
  for (auto& c : coeffs_) c.canonicalize();
}

CycloScalar CycloScalar::root_of_unity(int conductor, long power) {
  const auto& table = cyclotomic_table(conductor);
  long p = power % conductor;
  if (p < 0) p += conductor;
  std::vector<Rational> coeffs(static_cast<std::size_t>(table.phi));
  const auto& row = table.powers[static_cast<std::size_t>(p)];
  for (int j = 0; j < table.phi; ++j) coeffs[static_cast<std::size_t>(j)] = static_cast<long>(row[static_cast<std::size_t>(j)]);
  CycloScalar out;
  out.conductor_ = conductor;
  out.coeffs_ = std::move(coeffs);
  return out;
}

CycloScalar CycloScalar::from_terms(int conductor, const std::vector<Term>& terms) {
  CycloScalar sum(Rational(0), conductor);
  for (const auto& t : terms) {
    if (t.denominator == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in scalar term");
    Rational q(t.numerator, t.denominator);
    q.canonicalize();
    sum += CycloScalar(q, conductor) * root_of_unity(conductor, t.power);
  }
  return sum;
}

bool CycloScalar::is_zero() const noexcept {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycloScalar::is_one() const noexcept {
  if (coeffs_[0] != 1) return false;
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    if (coeffs_[j] != 0) return false;
  return true;
}

bool CycloScalar::is_rational() const noexcept {
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    if (coeffs_[j] != 0) return false;
  return true;
}

bool CycloScalar::is_integral() const noexcept {
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

CycloScalar CycloScalar::in_conductor(int target) const {
  if (target == conductor_) return *this;
  if (target % conductor_ != 0)
    throw Error(ErrorCode::ConductorMismatch,
                "conductor " + std::to_string(conductor_) + " does not divide " + std::to_string(target));
  const auto& table = cyclotomic_table(target);
  const int ratio = target / conductor_;
  std::vector<Rational> out(static_cast<std::size_t>(table.phi), Rational(0));
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    const auto& row = table.powers[j * static_cast<std::size_t>(ratio)];
    for (int k = 0; k < table.phi; ++k)
      if (row[static_cast<std::size_t>(k)] != 0) out[static_cast<std::size_t>(k)] += coeffs_[j] * static_cast<long>(row[static_cast<std::size_t>(k)]);
  }
  CycloScalar r;
  r.conductor_ = target;
  r.coeffs_ = std::move(out);
  return r;
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& other) {
  if (other.conductor_ != conductor_) {
    const int m = static_cast<int>(lcm_long(conductor_, other.conductor_));
    *this = in_conductor(m);
    return *this += other.in_conductor(m);
  }
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& other) { return *this += -other; }

CycloScalar operator*(const CycloScalar& a, const CycloScalar& b) {
  if (a.conductor_ != b.conductor_) {
    const int m = static_cast<int>(lcm_long(a.conductor_, b.conductor_));
    return a.in_conductor(m) * b.in_conductor(m);
  }
  const std::size_t phi = a.coeffs_.size();
  CycloScalar r;
  r.conductor_ = a.conductor_;
  if (b.is_rational()) {
    r.coeffs_ = a.coeffs_;
    for (auto& c : r.coeffs_) c *= b.coeffs_[0];
    return r;
  }
  if (a.is_rational()) {
    r.coeffs_ = b.coeffs_;
    for (auto& c : r.coeffs_) c *= a.coeffs_[0];
    return r;
  }
  std::vector<Rational> conv(2 * phi - 1, Rational(0));
  for (std::size_t i = 0; i < phi; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < phi; ++j)
      if (b.coeffs_[j] != 0) conv[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  const auto& table = cyclotomic_table(a.conductor_);
  r.coeffs_.assign(conv.begin(), conv.begin() + static_cast<std::ptrdiff_t>(phi));
  for (std::size_t k = phi; k < conv.size(); ++k) {
    if (conv[k] == 0) continue;
    const auto& row = table.powers[k];
    for (std::size_t j = 0; j < phi; ++j)
      if (row[j] != 0) r.coeffs_[j] += conv[k] * static_cast<long>(row[j]);
  }
  return r;
}

CycloScalar& CycloScalar::operator*=(const CycloScalar& other) {
  *this = *this * other;
  return *this;
}

CycloScalar& CycloScalar::operator/=(const CycloScalar& other) {
  *this = *this * other.inverse();
  return *this;
}

bool operator==(const CycloScalar& a, const CycloScalar& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  const int m = static_cast<int>(lcm_long(a.conductor_, b.conductor_));
  return a.in_conductor(m).coeffs_ == b.in_conductor(m).coeffs_;
}

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero scalar");
  if (is_rational()) {
    CycloScalar r = *this;
    r.coeffs_[0] = 1 / coeffs_[0];
    return r;
  }
  // Solve (multiplication by this) * b = 1 in the power basis.
  const std::size_t phi = coeffs_.size();
  std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi + 1, Rational(0)));
  for (std::size_t j = 0; j < phi; ++j) {
    const CycloScalar col = *this * root_of_unity(conductor_, static_cast<long>(j));
    for (std::size_t i = 0; i < phi; ++i) m[i][j] = col.coeffs_[i];
  }
  m[0][phi] = 1;
  for (std::size_t c = 0; c < phi; ++c) {
    std::size_t piv = c;
    while (m[piv][c] == 0) ++piv;
    std::swap(m[piv], m[c]);
    const Rational inv = 1 / m[c][c];
    for (std::size_t k = c; k <= phi; ++k) m[c][k] *= inv;
    for (std::size_t r = 0; r < phi; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = c; k <= phi; ++k) m[r][k] -= f * m[c][k];
    }
  }
  CycloScalar r;
  r.conductor_ = conductor_;
  r.coeffs_.resize(phi);
  for (std::size_t i = 0; i < phi; ++i) r.coeffs_[i] = m[i][phi];
  return r;
}

CycloScalar CycloScalar::conjugate() const {
  if (is_rational()) return *this;
  const auto& table = cyclotomic_table(conductor_);
  const std::size_t phi = coeffs_.size();
  std::vector<Rational> out(phi, Rational(0));
  for (std::size_t j = 0; j < phi; ++j) {
    if (coeffs_[j] == 0) continue;
    const auto& row = table.powers[(static_cast<std::size_t>(conductor_) - j) % static_cast<std::size_t>(conductor_)];
    for (std::size_t k = 0; k < phi; ++k)
      if (row[k] != 0) out[k] += coeffs_[j] * static_cast<long>(row[k]);
  }
  CycloScalar r;
  r.conductor_ = conductor_;
  r.coeffs_ = std::move(out);
  return r;
}

CycloScalar CycloScalar::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  CycloScalar result(Rational(1), conductor_);
  CycloScalar base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

std::optional<Rational> CycloScalar::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return coeffs_[0];
}

Reality CycloScalar::reality() const {
  if (is_rational()) return Reality::rational;
  return conjugate() == *this ? Reality::real_irrational : Reality::non_real;
}

NumericValue CycloScalar::numeric() const {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double re = 0.0;
  double im = 0.0;
  double magnitude = 0.0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    const double c = coeffs_[j].get_d();
    if (j == 0) {
      re += c;
    } else {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(conductor_);
      re += c * std::cos(angle);
      im += c * std::sin(angle);
    }
    magnitude += std::fabs(c);
  }
  // coefficient rounding, cos/sin error, and summation error per term
  const double terms = static_cast<double>(coeffs_.size());
  const bool exact = is_rational() && Rational(re) == coeffs_[0];
  const double error = exact ? 0.0 : (terms + 8.0) * eps * magnitude * 2.0 + std::numeric_limits<double>::denorm_min();
  return {{re, im}, error};
}

NumericValue numeric_embed(const CycloScalar& a) { return a.numeric(); }

std::vector<CycloScalar::Term> CycloScalar::terms() const {
  std::vector<Term> out;
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    if (coeffs_[j] != 0) out.push_back({coeffs_[j].get_num(), coeffs_[j].get_den(), static_cast<long>(j)});
  return out;
}

std::string CycloScalar::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms()) {
    Rational q(t.numerator, t.denominator);
    if (!first) os << (q < 0 ? " - " : " + ");
    else if (q < 0) os << "-";
    first = false;
    const Rational a = abs(q);
    if (t.power == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "z" << conductor_;
      if (t.power != 1) os << "^" << t.power;
    }
  }
  return os.str();
}

std::size_t CycloScalar::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(conductor_);
  for (const auto& c : coeffs_) h = hash_combine(h, hash_value(c));
  return h;
}

}  // namespace monospec
