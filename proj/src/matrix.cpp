#include "monospec/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "monospec/error.hpp"

namespace monospec {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) noexcept {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

int shared_conductor(const std::vector<CycloScalar>& values) {
  long c = 1;
  for (const auto& v : values) c = lcm_long(c, v.conductor());
  return static_cast<int>(c);
}

void lift_all(std::vector<CycloScalar>& values, int conductor) {
  for (auto& v : values)
    if (v.conductor() != conductor) v = v.in_conductor(conductor);
}

}  // namespace

// ---------------------------------------------------------------- DenseMatrix

DenseMatrix::DenseMatrix(std::size_t n, int conductor)
    : n_(n), conductor_(conductor), entries_(n * n, CycloScalar(Rational(0), conductor)) {}

DenseMatrix::DenseMatrix(std::size_t n, std::vector<CycloScalar> row_major)
    : n_(n), entries_(std::move(row_major)) {
  if (entries_.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "dense matrix must be n x n");
  conductor_ = shared_conductor(entries_);
  lift_all(entries_, conductor_);
}

DenseMatrix DenseMatrix::identity(std::size_t n, int conductor) {
  DenseMatrix m(n, conductor);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = CycloScalar(Rational(1), conductor);
  return m;
}

DenseMatrix DenseMatrix::scalar(std::size_t n, const CycloScalar& value) {
  DenseMatrix m(n, value.conductor());
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = value;
  return m;
}

void DenseMatrix::set(std::size_t row, std::size_t col, const CycloScalar& value) {
  if (value.conductor() == conductor_) {
    entries_[row * n_ + col] = value;
    return;
  }
  const int c = static_cast<int>(lcm_long(conductor_, value.conductor()));
  if (c != conductor_) *this = with_conductor(c);
  entries_[row * n_ + col] = value.in_conductor(c);
}

DenseMatrix DenseMatrix::with_conductor(int conductor) const {
  if (conductor == conductor_) return *this;
  DenseMatrix m = *this;
  m.conductor_ = conductor;
  lift_all(m.entries_, conductor);
  return m;
}

bool DenseMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const CycloScalar& v) { return v.is_zero(); });
}

bool DenseMatrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const auto& v = (*this)(i, j);
      if (i == j ? !v.is_one() : !v.is_zero()) return false;
    }
  return true;
}

bool DenseMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j && !(*this)(i, j).is_zero()) return false;
  return true;
}

bool DenseMatrix::is_monomial() const { return MonomialMatrix::from_dense(*this).has_value(); }

DenseMatrix DenseMatrix::inverse() const {
  const std::size_t n = n_;
  std::vector<CycloScalar> a = entries_;
  DenseMatrix inv = identity(n, conductor_);
  auto& b = inv.entries_;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c].is_zero()) ++piv;
    if (piv == n) throw Error(ErrorCode::DivisionByZero, "matrix is singular");
    if (piv != c)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a[piv * n + k], a[c * n + k]);
        std::swap(b[piv * n + k], b[c * n + k]);
      }
    const CycloScalar s = a[c * n + c].inverse();
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[c * n + k].is_zero()) a[c * n + k] *= s;
      if (!b[c * n + k].is_zero()) b[c * n + k] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r * n + c].is_zero()) continue;
      const CycloScalar f = a[r * n + c];
      for (std::size_t k = 0; k < n; ++k) {
        if (!a[c * n + k].is_zero()) a[r * n + k] -= f * a[c * n + k];
        if (!b[c * n + k].is_zero()) b[r * n + k] -= f * b[c * n + k];
      }
    }
  }
  return inv;
}

DenseMatrix DenseMatrix::block(std::size_t row, std::size_t col, std::size_t size) const {
  DenseMatrix m(size, conductor_);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) m.entries_[i * size + j] = (*this)(row + i, col + j);
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix m(n_, conductor_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m.entries_[j * n_ + i] = (*this)(i, j);
  return m;
}

std::size_t DenseMatrix::hash() const noexcept {
  std::size_t h = n_;
  for (const auto& e : entries_) h = mix(h, e.hash());
  return h;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::DimensionMismatch, "matrix sum dimension mismatch");
  const int c = static_cast<int>(lcm_long(a.conductor_, b.conductor_));
  DenseMatrix r = a.with_conductor(c);
  const DenseMatrix bb = b.with_conductor(c);
  for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] += bb.entries_[k];
  return r;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::DimensionMismatch, "matrix difference dimension mismatch");
  const int c = static_cast<int>(lcm_long(a.conductor_, b.conductor_));
  DenseMatrix r = a.with_conductor(c);
  const DenseMatrix bb = b.with_conductor(c);
  for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] -= bb.entries_[k];
  return r;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::DimensionMismatch, "matrix product dimension mismatch");
  const int c = static_cast<int>(lcm_long(a.conductor_, b.conductor_));
  const DenseMatrix aa = a.with_conductor(c);
  const DenseMatrix bb = b.with_conductor(c);
  const std::size_t n = a.n_;
  DenseMatrix r(n, c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const auto& x = aa.entries_[i * n + k];
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& y = bb.entries_[k * n + j];
        if (!y.is_zero()) r.entries_[i * n + j] += x * y;
      }
    }
  return r;
}

DenseMatrix operator*(const CycloScalar& s, const DenseMatrix& a) {
  const int c = static_cast<int>(lcm_long(a.conductor_, s.conductor()));
  DenseMatrix r = a.with_conductor(c);
  for (auto& e : r.entries_)
    if (!e.is_zero()) e *= s;
  lift_all(r.entries_, c);
  return r;
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.n_ != b.n_) return false;
  if (a.conductor_ == b.conductor_) return a.entries_ == b.entries_;
  for (std::size_t k = 0; k < a.entries_.size(); ++k)
    if (!(a.entries_[k] == b.entries_[k])) return false;
  return true;
}

std::string DenseMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < n_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ------------------------------------------------------------- MonomialMatrix

MonomialMatrix::MonomialMatrix(std::vector<std::size_t> perm, std::vector<CycloScalar> weights)
    : perm_(std::move(perm)), weights_(std::move(weights)) {
  const std::size_t n = perm_.size();
  if (weights_.size() != n) throw Error(ErrorCode::DimensionMismatch, "perm and weights differ in length");
  std::vector<bool> seen(n, false);
  for (auto p : perm_) {
    if (p >= n || seen[p]) throw Error(ErrorCode::InvalidInput, "perm is not a bijection");
    seen[p] = true;
  }
  for (const auto& w : weights_)
    if (w.is_zero()) throw Error(ErrorCode::InvalidInput, "monomial weights must be nonzero");
  conductor_ = shared_conductor(weights_);
  lift_all(weights_, conductor_);
}

MonomialMatrix MonomialMatrix::identity(std::size_t n, int conductor) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return MonomialMatrix(std::move(perm), std::vector<CycloScalar>(n, CycloScalar(Rational(1), conductor)));
}

MonomialMatrix MonomialMatrix::diagonal(std::vector<CycloScalar> weights) {
  std::vector<std::size_t> perm(weights.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return MonomialMatrix(std::move(perm), std::move(weights));
}

MonomialMatrix MonomialMatrix::permutation(std::vector<std::size_t> perm, int conductor) {
  const std::size_t n = perm.size();
  return MonomialMatrix(std::move(perm), std::vector<CycloScalar>(n, CycloScalar(Rational(1), conductor)));
}

MonomialMatrix MonomialMatrix::scalar(std::size_t n, const CycloScalar& value) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return MonomialMatrix(std::move(perm), std::vector<CycloScalar>(n, value));
}

std::optional<MonomialMatrix> MonomialMatrix::from_dense(const DenseMatrix& m) {
  const std::size_t n = m.n();
  std::vector<std::size_t> perm(n);
  std::vector<CycloScalar> weights(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t found = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (m(i, j).is_zero()) continue;
      if (found != n) return std::nullopt;
      found = i;
    }
    if (found == n) return std::nullopt;
    perm[j] = found;
    weights[j] = m(found, j);
  }
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (seen[p]) return std::nullopt;
    seen[p] = true;
  }
  MonomialMatrix out(std::move(perm), std::move(weights));
  return out.with_conductor(m.conductor());
}

MonomialMatrix MonomialMatrix::with_conductor(int conductor) const {
  if (conductor == conductor_) return *this;
  MonomialMatrix m = *this;
  m.conductor_ = conductor;
  lift_all(m.weights_, conductor);
  return m;
}

bool MonomialMatrix::is_identity() const {
  for (std::size_t i = 0; i < n(); ++i)
    if (perm_[i] != i || !weights_[i].is_one()) return false;
  return true;
}

bool MonomialMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < n(); ++i)
    if (perm_[i] != i) return false;
  return true;
}

bool MonomialMatrix::is_scalar() const {
  if (!is_diagonal()) return false;
  for (std::size_t i = 1; i < n(); ++i)
    if (!(weights_[i] == weights_[0])) return false;
  return true;
}

bool MonomialMatrix::is_permutation() const {
  return std::all_of(weights_.begin(), weights_.end(), [](const CycloScalar& w) { return w.is_one(); });
}

bool MonomialMatrix::is_signed_permutation() const {
  return std::all_of(weights_.begin(), weights_.end(), [](const CycloScalar& w) {
    auto q = w.as_rational();
    return q && (*q == 1 || *q == -1);
  });
}

MonomialMatrix MonomialMatrix::inverse() const {
  MonomialMatrix r = *this;
  for (std::size_t i = 0; i < n(); ++i) {
    r.perm_[perm_[i]] = i;
    r.weights_[perm_[i]] = weights_[i].inverse();
  }
  return r;
}

MonomialMatrix MonomialMatrix::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  MonomialMatrix result = identity(n(), conductor_);
  MonomialMatrix base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

MonomialMatrix MonomialMatrix::scaled(const CycloScalar& s) const {
  std::vector<CycloScalar> w = weights_;
  for (auto& x : w) x *= s;
  return MonomialMatrix(perm_, std::move(w));
}

DenseMatrix MonomialMatrix::to_dense() const {
  DenseMatrix m(n(), conductor_);
  for (std::size_t i = 0; i < n(); ++i) m.set(perm_[i], i, weights_[i]);
  return m;
}

std::size_t MonomialMatrix::hash() const noexcept {
  std::size_t h = perm_.size();
  for (std::size_t i = 0; i < perm_.size(); ++i) h = mix(mix(h, perm_[i]), weights_[i].hash());
  return h;
}

MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "monomial product dimension mismatch");
  // (AB) e_i = wB_i * wA_{sB(i)} e_{sA(sB(i))}
  MonomialMatrix r;
  const std::size_t n = a.n();
  r.perm_.resize(n);
  r.weights_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t mid = b.perm_[i];
    r.perm_[i] = a.perm_[mid];
    r.weights_[i] = b.weights_[i] * a.weights_[mid];
  }
  r.conductor_ = shared_conductor(r.weights_);
  lift_all(r.weights_, r.conductor_);
  return r;
}

bool operator==(const MonomialMatrix& a, const MonomialMatrix& b) {
  return a.perm_ == b.perm_ && a.weights_ == b.weights_;
}

std::string MonomialMatrix::to_string() const {
  std::ostringstream os;
  os << "perm=[";
  for (std::size_t i = 0; i < n(); ++i) os << (i ? "," : "") << perm_[i] + 1;
  os << "] weights=[";
  for (std::size_t i = 0; i < n(); ++i) os << (i ? ", " : "") << weights_[i].to_string();
  os << "]";
  return os.str();
}

// --------------------------------------------------------------- DiagonalSign

DiagonalSign DiagonalSign::from_signs(const std::vector<int>& signs) {
  BitVector bits(signs.size());
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw Error(ErrorCode::InvalidInput, "signs must be +1 or -1");
    bits.set(i, signs[i] == -1);
  }
  return DiagonalSign(std::move(bits));
}

DiagonalSign DiagonalSign::minus_identity(std::size_t n) { return DiagonalSign(BitVector::ones(n)); }

std::optional<DiagonalSign> DiagonalSign::from_monomial(const MonomialMatrix& m) {
  if (!m.is_diagonal()) return std::nullopt;
  BitVector bits(m.n());
  for (std::size_t i = 0; i < m.n(); ++i) {
    auto q = m.weight(i).as_rational();
    if (!q || (*q != 1 && *q != -1)) return std::nullopt;
    bits.set(i, *q == -1);
  }
  return DiagonalSign(std::move(bits));
}

bool DiagonalSign::is_scalar() const {
  const std::size_t c = bits_.count();
  return c == 0 || c == bits_.size();
}

DiagonalSign DiagonalSign::conjugated_by(const std::vector<std::size_t>& perm) const {
  // (P^{-1} D P)_ii = d_{perm(i)}
  BitVector out(bits_.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out.set(i, bits_.get(perm[i]));
  return DiagonalSign(std::move(out));
}

MonomialMatrix DiagonalSign::to_monomial(int conductor) const {
  std::vector<CycloScalar> w;
  w.reserve(n());
  for (std::size_t i = 0; i < n(); ++i) w.emplace_back(Rational(sign(i)), conductor);
  return MonomialMatrix::diagonal(std::move(w));
}

// ------------------------------------------------------------------ free ops

MonomialMatrix cycle_matrix(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "cycle matrix needs n >= 1");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = (i + 1) % n;
  return MonomialMatrix::permutation(std::move(perm));
}

MonomialMatrix pattern(const MonomialMatrix& m) { return MonomialMatrix::permutation(m.perm()); }

MonomialMatrix tensor(const MonomialMatrix& a, const MonomialMatrix& b) {
  const std::size_t na = a.n();
  const std::size_t nb = b.n();
  std::vector<std::size_t> perm(na * nb);
  std::vector<CycloScalar> weights(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < nb; ++k) {
      perm[i * nb + k] = a.image(i) * nb + b.image(k);
      weights[i * nb + k] = a.weight(i) * b.weight(k);
    }
  return MonomialMatrix(std::move(perm), std::move(weights));
}

DenseMatrix tensor(const DenseMatrix& a, const DenseMatrix& b) {
  const std::size_t na = a.n();
  const std::size_t nb = b.n();
  std::vector<CycloScalar> entries(na * nb * na * nb);
  const std::size_t n = na * nb;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) entries[(i * nb + k) * n + (j * nb + l)] = a(i, j) * b(k, l);
  return DenseMatrix(n, std::move(entries));
}

MonomialMatrix tensor_chain(const std::vector<MonomialMatrix>& factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidInput, "empty tensor chain");
  MonomialMatrix acc = factors.back();
  for (std::size_t k = factors.size() - 1; k-- > 0;) acc = tensor(factors[k], acc);
  return acc;
}

int permutation_sign(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

CycloScalar determinant(const MonomialMatrix& m) {
  CycloScalar d(Rational(permutation_sign(m.perm())), m.conductor());
  for (const auto& w : m.weights()) d *= w;
  return d;
}

std::string MatrixClass::kind() const {
  if (scalar) return "scalar";
  if (diagonal) return "diagonal";
  if (signed_permutation) return "signed_permutation";
  return "general";
}

MatrixClass classify(const MonomialMatrix& m) {
  MatrixClass c;
  c.diagonal = m.is_diagonal();
  c.scalar = m.is_scalar();
  c.signed_permutation = m.is_signed_permutation();
  c.permutation = m.is_permutation();
  return c;
}

std::optional<long> element_order(const MonomialMatrix& m, long cap) {
  // lcm over cycles of length * order(product of weights along the cycle)
  const std::size_t n = m.n();
  std::vector<bool> seen(n, false);
  long order = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    long len = 0;
    CycloScalar prod(Rational(1), m.conductor());
    for (std::size_t j = i; !seen[j]; j = m.image(j)) {
      seen[j] = true;
      prod *= m.weight(j);
      ++len;
    }
    // roots of unity in Q(zeta_N) have order dividing 2N
    const long bound = 2L * m.conductor();
    if (!prod.pow(bound).is_one()) return std::nullopt;
    long k = 1;
    while (bound % k != 0 || !prod.pow(k).is_one()) ++k;
    order = lcm_long(order, len * k);
    if (order > cap) return std::nullopt;
  }
  return order;
}

std::optional<long> element_order(const DenseMatrix& m, long cap) {
  DenseMatrix p = m;
  for (long k = 1; k <= cap; ++k) {
    if (p.is_identity()) return k;
    p = p * m;
  }
  return std::nullopt;
}

}  // namespace monospec
