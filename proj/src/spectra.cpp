#include "monospec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_map>

#include "kernel.hpp"
#include "monospec/error.hpp"

namespace monospec {

// ---------------------------------------------------------------- RationalPoly

RationalPoly::RationalPoly(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

RationalPoly RationalPoly::monomial(long degree, Rational coeff) {
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
  c.back() = std::move(coeff);
  return RationalPoly(std::move(c));
}

void RationalPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalPoly RationalPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return RationalPoly(std::move(d));
}

RationalPoly RationalPoly::monic() const {
  if (is_zero()) return {};
  std::vector<Rational> c = coeffs_;
  const Rational lc = c.back();
  for (auto& x : c) x /= lc;
  return RationalPoly(std::move(c));
}

Rational RationalPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::pair<RationalPoly, RationalPoly> RationalPoly::divmod(const RationalPoly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (degree() < d.degree()) return {RationalPoly(), *this};
  std::vector<Rational> r = coeffs_;
  std::vector<Rational> q(static_cast<std::size_t>(degree() - d.degree() + 1), Rational(0));
  const std::size_t dd = static_cast<std::size_t>(d.degree());
  for (std::size_t top = r.size(); top-- > dd;) {
    if (r[top] == 0) continue;
    const Rational f = r[top] / d.coeffs_.back();
    q[top - dd] = f;
    for (std::size_t j = 0; j <= dd; ++j) r[top - dd + j] -= f * d.coeffs_[j];
  }
  return {RationalPoly(std::move(q)), RationalPoly(std::move(r))};
}

RationalPoly RationalPoly::gcd(RationalPoly a, RationalPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RationalPoly RationalPoly::squarefree() const {
  if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "squarefree part of the zero polynomial");
  if (degree() == 0) return RationalPoly({Rational(1)});
  return divmod(gcd(*this, derivative())).first.monic();
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return RationalPoly(std::move(c));
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] -= b.coeffs_[k];
  return RationalPoly(std::move(c));
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RationalPoly(std::move(c));
}

namespace {

std::string format_poly(const std::vector<std::string>& coeffs) {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    std::string c = coeffs[k];
    if (c == "0") continue;
    bool negative = false;
    const bool compound = c.find(" + ") != std::string::npos || c.find(" - ") != std::string::npos;
    if (!compound && c.front() == '-') {
      negative = true;
      c.erase(0, 1);
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (compound) c = "(" + c + ")";
    if (k == 0) {
      os << c;
      continue;
    }
    if (c != "1") os << c << "*";
    os << "x";
    if (k > 1) os << "^" << k;
  }
  return first ? "0" : os.str();
}

}  // namespace

std::string RationalPoly::to_string() const {
  std::vector<std::string> c;
  for (const auto& q : coeffs_) c.push_back(q.get_str());
  return format_poly(c);
}

// ------------------------------------------------------------------ CycloPoly

CycloPoly::CycloPoly(std::vector<CycloScalar> ascending) : coeffs_(std::move(ascending)) {
  long conductor = 1;
  for (const auto& c : coeffs_) conductor = lcm_long(conductor, c.conductor());
  for (auto& c : coeffs_)
    if (c.conductor() != conductor) c = c.in_conductor(static_cast<int>(conductor));
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

CycloPoly CycloPoly::from_rational(const RationalPoly& p) {
  std::vector<CycloScalar> c;
  for (const auto& q : p.coeffs()) c.emplace_back(q);
  return CycloPoly(std::move(c));
}

int CycloPoly::conductor() const noexcept { return coeffs_.empty() ? 1 : coeffs_.front().conductor(); }

std::optional<RationalPoly> CycloPoly::as_rational() const {
  std::vector<Rational> c;
  for (const auto& x : coeffs_) {
    auto q = x.as_rational();
    if (!q) return std::nullopt;
    c.push_back(*q);
  }
  return RationalPoly(std::move(c));
}

bool CycloPoly::is_real() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const CycloScalar& c) { return c.reality() != Reality::non_real; });
}

bool CycloPoly::is_power_of_x() const {
  if (coeffs_.empty() || !coeffs_.back().is_one()) return false;
  for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k)
    if (!coeffs_[k].is_zero()) return false;
  return true;
}

std::string CycloPoly::to_string() const {
  std::vector<std::string> c;
  for (const auto& x : coeffs_) c.push_back(x.to_string());
  return format_poly(c);
}

// ---------------------------------------------------------- characteristic poly

namespace {

// Integer scale L with L * entries integral; nullopt when it does not fit.
std::optional<long> integral_scale(const std::vector<CycloScalar>& entries) {
  Integer l = 1;
  for (const auto& e : entries)
    for (const auto& c : e.coeffs())
      if (c.get_den() != 1) l = lcm(l, Integer(c.get_den()));
  if (!l.fits_slong_p()) return std::nullopt;
  return l.get_si();
}

template <class Ring>
std::optional<std::vector<typename Ring::value_type>> to_ring(const Ring& ring, const std::vector<CycloScalar>& entries,
                                                              long scale) {
  std::vector<typename Ring::value_type> out;
  out.reserve(entries.size());
  const CycloScalar s(Rational(scale), 1);
  for (const auto& e : entries) {
    auto v = ring.from_scalar(scale == 1 ? e : e * s);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

// det(xI - cM) has coefficient c^k c_k in front of x^(n-k).
std::vector<CycloScalar> unscale(std::vector<CycloScalar> ascending, long scale) {
  if (scale == 1) return ascending;
  const std::size_t n = ascending.size() - 1;
  Rational inv(1, scale), f = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    f *= inv;
    ascending[n - k] *= CycloScalar(f);
  }
  return ascending;
}

template <class Ring>
std::optional<CycloPoly> fast_char_poly(const Ring& ring, const std::vector<CycloScalar>& entries, std::size_t n,
                                        int conductor) {
  const auto scale = integral_scale(entries);
  if (!scale) return std::nullopt;
  auto values = to_ring(ring, entries, *scale);
  if (!values) return std::nullopt;
  try {
    const auto coeffs = detail::berkowitz(ring, *values, n);
    std::vector<CycloScalar> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) out.push_back(ring.to_scalar(c, conductor));
    return CycloPoly(unscale(std::move(out), *scale));
  } catch (const detail::Overflow&) {
    return std::nullopt;
  }
}

CycloPoly char_poly_entries(const std::vector<CycloScalar>& entries, std::size_t n, int conductor) {
  if (conductor == 1) {
    if (auto p = fast_char_poly(detail::IntRing{}, entries, n, conductor)) return *p;
  } else if (detail::IntCycloRing::supports(conductor)) {
    if (auto p = fast_char_poly(detail::IntCycloRing(conductor), entries, n, conductor)) return *p;
  }
  return CycloPoly(detail::berkowitz(detail::ScalarRing(conductor), entries, n));
}

}  // namespace

CycloPoly char_poly(const DenseMatrix& m) { return char_poly_entries(m.entries(), m.n(), m.conductor()); }

CycloPoly char_poly(const MonomialMatrix& m) { return char_poly(m.to_dense()); }

DenseMatrix ring_commutator(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "commutator of matrices of different sizes");
  return a * b - b * a;
}

DenseMatrix ring_commutator(const MonomialMatrix& a, const MonomialMatrix& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "commutator of matrices of different sizes");
  const auto ab = a * b, ba = b * a;
  const int conductor = ab.conductor();
  const std::size_t n = a.n();
  DenseMatrix m(n, conductor);
  for (std::size_t i = 0; i < n; ++i) m.set(ab.image(i), i, m(ab.image(i), i) + ab.weight(i));
  for (std::size_t i = 0; i < n; ++i) m.set(ba.image(i), i, m(ba.image(i), i) - ba.weight(i));
  return m;
}

CycloPoly commutator_char_poly(const MonomialMatrix& a, const MonomialMatrix& b) {
  return char_poly(ring_commutator(a, b));
}

// ---------------------------------------------------------------- Sturm (exact)

namespace {

int sign_of(const Rational& q) { return sgn(q); }

std::vector<RationalPoly> sturm_chain(const RationalPoly& p) {
  std::vector<RationalPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    auto r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(RationalPoly() - r);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

long variations(const std::vector<int>& signs) {
  long v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

long variations_at_infinity(const std::vector<RationalPoly>& chain, bool positive) {
  std::vector<int> s;
  for (const auto& q : chain) {
    int sg = sign_of(q.leading());
    if (!positive && q.degree() % 2 == 1) sg = -sg;
    s.push_back(sg);
  }
  return variations(s);
}

long variations_at(const std::vector<RationalPoly>& chain, const Rational& x) {
  std::vector<int> s;
  for (const auto& q : chain) s.push_back(sign_of(q.eval(x)));
  return variations(s);
}

}  // namespace

long sturm_real_root_count(const RationalPoly& p, const std::optional<std::pair<Rational, Rational>>& interval) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "Sturm count of the zero polynomial");
  const auto sq = p.squarefree();
  if (sq.degree() == 0) return 0;
  const auto chain = sturm_chain(sq);
  if (!interval) return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
  const auto& [lo, hi] = *interval;
  if (!(lo < hi)) return 0;
  return variations_at(chain, lo) - variations_at(chain, hi);
}

RootVerdict has_all_real_roots(const CycloPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "root test on the zero polynomial");
  if (!p.is_real()) return RootVerdict::no;
  const auto q = p.as_rational();
  if (!q) return RootVerdict::real_irrational_coeffs;
  const auto sq = q->squarefree();
  return sturm_real_root_count(sq) == sq.degree() ? RootVerdict::yes : RootVerdict::no;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

// ------------------------------------------------------- Sturm (certified numeric)

namespace {

using CPoly = std::vector<CycloScalar>;  // ascending, trimmed

void ctrim(CPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

CPoly cderivative(const CPoly& p) {
  CPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * CycloScalar(static_cast<long>(k)));
  ctrim(d);
  return d;
}

std::pair<CPoly, CPoly> cdivmod(const CPoly& a, const CPoly& d) {
  if (d.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  CPoly r = a;
  if (a.size() < d.size()) return {CPoly{}, r};
  CPoly q(a.size() - d.size() + 1, CycloScalar(0));
  const auto lc_inv = d.back().inverse();
  const std::size_t dd = d.size() - 1;
  for (std::size_t top = r.size(); top-- > dd;) {
    if (r[top].is_zero()) continue;
    const CycloScalar f = r[top] * lc_inv;
    q[top - dd] = f;
    for (std::size_t j = 0; j <= dd; ++j) r[top - dd + j] -= f * d[j];
  }
  ctrim(q);
  ctrim(r);
  return {q, r};
}

CPoly cgcd(CPoly a, CPoly b) {
  while (!b.empty()) {
    auto r = cdivmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Certified sign of a real algebraic number; 0 means undecided.
int certified_sign(const CycloScalar& c, double tolerance) {
  if (auto q = c.as_rational()) return sgn(*q);
  const auto v = numeric_embed(c);
  const double re = v.value.real();
  if (std::abs(re) <= std::max(v.error, tolerance)) return 0;
  return re > 0 ? 1 : -1;
}

struct NumericCount {
  std::optional<long> count;
  long squarefree_degree = 0;
};

NumericCount numeric_count(const CycloPoly& p, double tolerance) {
  CPoly a = p.coeffs();
  NumericCount out;
  if (a.empty()) throw Error(ErrorCode::ZeroPolynomial, "root count of the zero polynomial");
  if (a.size() == 1) {
    out.count = 0;
    return out;
  }
  const auto g = cgcd(a, cderivative(a));
  const CPoly sq = cdivmod(a, g).first;
  out.squarefree_degree = static_cast<long>(sq.size()) - 1;
  std::vector<CPoly> chain{sq, cderivative(sq)};
  while (!chain.back().empty()) {
    auto r = cdivmod(chain[chain.size() - 2], chain.back()).second;
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  std::vector<int> plus, minus;
  for (const auto& q : chain) {
    const int s = certified_sign(q.back(), tolerance);
    if (s == 0) return out;
    plus.push_back(s);
    minus.push_back((q.size() - 1) % 2 == 1 ? -s : s);
  }
  out.count = variations(minus) - variations(plus);
  return out;
}

}  // namespace

std::optional<long> numeric_real_root_count(const CycloPoly& p, double tolerance) {
  if (!p.is_real()) throw Error(ErrorCode::InvalidInput, "numeric root count needs conjugation-fixed coefficients");
  return numeric_count(p, tolerance).count;
}

SpectrumVerdict decide_real_roots(const CycloPoly& p, bool numeric_fallback, double tolerance) {
  SpectrumVerdict out;
  out.char_poly = p;
  switch (has_all_real_roots(p)) {
    case RootVerdict::yes: out.verdict = Verdict::yes; return out;
    case RootVerdict::no: out.verdict = Verdict::no; return out;
    case RootVerdict::real_irrational_coeffs: break;
  }
  if (!numeric_fallback) return out;
  out.numeric = true;
  const auto c = numeric_count(p, tolerance);
  if (c.count) out.verdict = *c.count == c.squarefree_degree ? Verdict::yes : Verdict::no;
  return out;
}

SpectrumVerdict has_real_spectrum(const DenseMatrix& m, bool numeric_fallback, double tolerance) {
  return decide_real_roots(char_poly(m), numeric_fallback, tolerance);
}

bool is_nilpotent(const DenseMatrix& m) { return char_poly(m).is_power_of_x(); }

bool is_involution(const DenseMatrix& m) { return (m * m).is_identity(); }

bool is_involution(const MonomialMatrix& m) { return (m * m).is_identity(); }

// ------------------------------------------------------------ commutator scans

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::size_t h = v.size();
    for (auto x : v) h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct CachedVerdict {
  Verdict verdict;
  bool numeric;
};

// Scaled integral copy of a group element; absent when it does not fit.
template <class Ring>
struct ScaledMonomial {
  bool ok = false;
  std::vector<typename Ring::value_type> weights;
};

template <class Ring>
struct ScaledDense {
  bool ok = false;
  std::vector<typename Ring::value_type> entries;
};

class Scanner {
 public:
  explicit Scanner(const ScanOptions& options) : options_(options) {}

  // Runs the pair loop; `eval(i, j)` returns nullopt for commuting pairs and
  // a verdict otherwise.
  template <class Eval, class Witness>
  CommutatorScan run(std::size_t order, Eval&& eval, Witness&& witness) {
    CommutatorScan scan;
    bool undetermined = false;
    auto visit = [&](std::size_t i, std::size_t j) -> bool {
      ++scan.pairs_checked;
      const auto v = eval(i, j);
      if (!v) {
        ++scan.commuting_skipped;
        return true;
      }
      scan.numeric = scan.numeric || v->numeric;
      if (v->verdict == Verdict::undetermined) undetermined = true;
      if (v->verdict == Verdict::no) {
        scan.verdict = Verdict::no;
        scan.witness = witness(i, j);
        return false;
      }
      return true;
    };
    if (options_.sample) {
      scan.sampled = true;
      if (order >= 2) {
        std::mt19937_64 rng(options_.seed);
        std::uniform_int_distribution<std::size_t> pick(0, order - 1);
        for (std::uint64_t s = 0; s < *options_.sample; ++s) {
          std::size_t i = pick(rng), j = pick(rng);
          while (i == j) j = pick(rng);
          if (i > j) std::swap(i, j);
          if (!visit(i, j)) break;
        }
      }
    } else {
      const std::uint64_t total = static_cast<std::uint64_t>(order) * (order > 0 ? order - 1 : 0) / 2;
      if (total > options_.pair_budget)
        throw Error(ErrorCode::CapExceeded, "pair count exceeds the scan budget",
                    {{"pairs", total}, {"budget", options_.pair_budget}});
      bool go = true;
      for (std::size_t i = 0; i < order && go; ++i)
        for (std::size_t j = i + 1; j < order && go; ++j) go = visit(i, j);
    }
    if (scan.verdict != Verdict::no && undetermined) scan.verdict = Verdict::undetermined;
    scan.distinct_char_polys = cache_.size() + uncached_;
    return scan;
  }

  template <class Ring>
  std::optional<CachedVerdict> decide(const Ring& ring, const std::vector<typename Ring::value_type>& coeffs,
                                      int conductor) {
    key_.clear();
    for (const auto& c : coeffs) ring.append_key(c, key_);
    auto it = cache_.find(key_);
    if (it != cache_.end()) return it->second;
    std::vector<CycloScalar> s;
    for (const auto& c : coeffs) s.push_back(ring.to_scalar(c, conductor));
    const auto v = decide_real_roots(CycloPoly(std::move(s)), options_.numeric_fallback, options_.tolerance);
    CachedVerdict cv{v.verdict, v.numeric};
    cache_.emplace(key_, cv);
    return cv;
  }

  std::optional<CachedVerdict> decide_exact(const CycloPoly& p) {
    ++uncached_;
    const auto v = decide_real_roots(p, options_.numeric_fallback, options_.tolerance);
    return CachedVerdict{v.verdict, v.numeric};
  }

 private:
  const ScanOptions& options_;
  std::unordered_map<std::vector<std::int64_t>, CachedVerdict, KeyHash> cache_;
  std::vector<std::int64_t> key_;
  std::uint64_t uncached_ = 0;
};

template <class Ring>
CommutatorScan scan_monomial(const MonomialGroup& g, const ScanOptions& options, const Ring* ring) {
  using V = typename Ring::value_type;
  const std::size_t n = g.n();
  const int conductor = g.conductor();
  std::vector<ScaledMonomial<Ring>> scaled(g.order());
  if (ring) {
    for (std::size_t e = 0; e < g.order(); ++e) {
      const auto s = integral_scale(g[e].weights());
      if (!s) continue;
      auto w = to_ring(*ring, g[e].weights(), *s);
      if (!w) continue;
      scaled[e].ok = true;
      scaled[e].weights = std::move(*w);
    }
  }
  Scanner scanner(options);
  std::vector<V> wab(n), wba(n), dense;
  auto exact = [&](std::size_t i, std::size_t j) -> std::optional<CachedVerdict> {
    const auto& a = g[i];
    const auto& b = g[j];
    if (a * b == b * a) return std::nullopt;
    return scanner.decide_exact(commutator_char_poly(a, b));
  };
  auto eval = [&](std::size_t i, std::size_t j) -> std::optional<CachedVerdict> {
    if (!ring || !scaled[i].ok || !scaled[j].ok) return exact(i, j);
    const auto& a = g[i];
    const auto& b = g[j];
    const auto& wa = scaled[i].weights;
    const auto& wb = scaled[j].weights;
    try {
      bool commute = true;
      for (std::size_t c = 0; c < n; ++c) {
        if (a.image(b.image(c)) != b.image(a.image(c))) commute = false;
        wab[c] = ring->mul(wb[c], wa[b.image(c)]);
        wba[c] = ring->mul(wa[c], wb[a.image(c)]);
        if (commute && wab[c] != wba[c]) commute = false;
      }
      if (commute) return std::nullopt;
      dense.assign(n * n, ring->zero());
      for (std::size_t c = 0; c < n; ++c) {
        auto& x = dense[a.image(b.image(c)) * n + c];
        x = ring->add(x, wab[c]);
        auto& y = dense[b.image(a.image(c)) * n + c];
        y = ring->sub(y, wba[c]);
      }
      const auto coeffs = detail::berkowitz(*ring, dense, n);
      return scanner.decide(*ring, coeffs, conductor);
    } catch (const detail::Overflow&) {
      return exact(i, j);
    }
  };
  auto witness = [&](std::size_t i, std::size_t j) {
    return CommutatorWitness{i, j, g[i].to_dense(), g[j].to_dense(), commutator_char_poly(g[i], g[j])};
  };
  return scanner.run(g.order(), eval, witness);
}

template <class Ring>
CommutatorScan scan_dense(const DenseGroup& g, const ScanOptions& options, const Ring* ring) {
  using V = typename Ring::value_type;
  const std::size_t n = g.n();
  const int conductor = g.conductor();
  std::vector<ScaledDense<Ring>> scaled(g.order());
  if (ring) {
    for (std::size_t e = 0; e < g.order(); ++e) {
      const auto s = integral_scale(g[e].entries());
      if (!s) continue;
      auto w = to_ring(*ring, g[e].entries(), *s);
      if (!w) continue;
      scaled[e].ok = true;
      scaled[e].entries = std::move(*w);
    }
  }
  Scanner scanner(options);
  std::vector<V> ab, ba;
  auto exact = [&](std::size_t i, std::size_t j) -> std::optional<CachedVerdict> {
    const auto m = ring_commutator(g[i], g[j]);
    if (m.is_zero()) return std::nullopt;
    return scanner.decide_exact(char_poly(m));
  };
  auto product = [&](const std::vector<V>& x, const std::vector<V>& y, std::vector<V>& out) {
    out.assign(n * n, ring->zero());
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) {
        const V& xv = x[r * n + k];
        if (ring->is_zero(xv)) continue;
        for (std::size_t c = 0; c < n; ++c) {
          const V& yv = y[k * n + c];
          if (ring->is_zero(yv)) continue;
          out[r * n + c] = ring->add(out[r * n + c], ring->mul(xv, yv));
        }
      }
  };
  auto eval = [&](std::size_t i, std::size_t j) -> std::optional<CachedVerdict> {
    if (!ring || !scaled[i].ok || !scaled[j].ok) return exact(i, j);
    try {
      product(scaled[i].entries, scaled[j].entries, ab);
      product(scaled[j].entries, scaled[i].entries, ba);
      bool zero = true;
      for (std::size_t k = 0; k < n * n; ++k) {
        ab[k] = ring->sub(ab[k], ba[k]);
        if (!ring->is_zero(ab[k])) zero = false;
      }
      if (zero) return std::nullopt;
      return scanner.decide(*ring, detail::berkowitz(*ring, ab, n), conductor);
    } catch (const detail::Overflow&) {
      return exact(i, j);
    }
  };
  auto witness = [&](std::size_t i, std::size_t j) {
    return CommutatorWitness{i, j, g[i], g[j], char_poly(ring_commutator(g[i], g[j]))};
  };
  return scanner.run(g.order(), eval, witness);
}

}  // namespace

CommutatorScan all_commutators_real(const MonomialGroup& g, const ScanOptions& options) {
  if (g.conductor() == 1) {
    const detail::IntRing ring;
    return scan_monomial(g, options, &ring);
  }
  if (detail::IntCycloRing::supports(g.conductor())) {
    const detail::IntCycloRing ring(g.conductor());
    return scan_monomial(g, options, &ring);
  }
  return scan_monomial<detail::IntRing>(g, options, nullptr);
}

CommutatorScan all_commutators_real(const DenseGroup& g, const ScanOptions& options) {
  if (g.conductor() == 1) {
    const detail::IntRing ring;
    return scan_dense(g, options, &ring);
  }
  if (detail::IntCycloRing::supports(g.conductor())) {
    const detail::IntCycloRing ring(g.conductor());
    return scan_dense(g, options, &ring);
  }
  return scan_dense<detail::IntRing>(g, options, nullptr);
}

}  // namespace monospec
