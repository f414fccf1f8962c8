#pragma once

// Fixed-width arithmetic over Z and Z[zeta_N] for hot loops. Every operation
// throws Overflow instead of wrapping; callers redo the work exactly.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

#include "monospec/scalar.hpp"

namespace monospec::detail {

struct Overflow {};

class IntRing {
 public:
  using value_type = std::int64_t;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    value_type r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  value_type sub(value_type a, value_type b) const {
    value_type r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  value_type mul(value_type a, value_type b) const {
    value_type r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  value_type neg(value_type a) const { return sub(0, a); }

  std::optional<value_type> from_scalar(const CycloScalar& s) const {
    const auto q = s.as_rational();
    if (!q || q->get_den() != 1 || !q->get_num().fits_slong_p()) return std::nullopt;
    return q->get_num().get_si();
  }
  CycloScalar to_scalar(value_type a, int conductor) const { return CycloScalar(Rational(a), conductor); }
  void append_key(value_type a, std::vector<std::int64_t>& key) const { key.push_back(a); }
};

inline constexpr int kMaxPhi = 16;

class IntCycloRing {
 public:
  using value_type = std::array<std::int64_t, kMaxPhi>;

  explicit IntCycloRing(int conductor) : table_(&cyclotomic_table(conductor)), phi_(table_->phi) {}
  static bool supports(int conductor) { return euler_phi(conductor) <= kMaxPhi; }

  value_type zero() const { return value_type{}; }
  value_type one() const {
    value_type r{};
    r[0] = 1;
    return r;
  }
  bool is_zero(const value_type& a) const {
    for (int k = 0; k < phi_; ++k)
      if (a[k] != 0) return false;
    return true;
  }
  value_type add(const value_type& a, const value_type& b) const {
    value_type r{};
    for (int k = 0; k < phi_; ++k)
      if (__builtin_add_overflow(a[k], b[k], &r[k])) throw Overflow{};
    return r;
  }
  value_type sub(const value_type& a, const value_type& b) const {
    value_type r{};
    for (int k = 0; k < phi_; ++k)
      if (__builtin_sub_overflow(a[k], b[k], &r[k])) throw Overflow{};
    return r;
  }
  value_type neg(const value_type& a) const { return sub(zero(), a); }
  value_type mul(const value_type& a, const value_type& b) const {
    constexpr std::int64_t kLimit = std::int64_t{1} << 31;
    std::array<__int128, 2 * kMaxPhi> conv{};
    for (int i = 0; i < phi_; ++i) {
      if (a[i] == 0) continue;
      if (a[i] >= kLimit || a[i] <= -kLimit) throw Overflow{};
      for (int j = 0; j < phi_; ++j) {
        if (b[j] >= kLimit || b[j] <= -kLimit) throw Overflow{};
        conv[i + j] += static_cast<__int128>(a[i]) * b[j];
      }
    }
    std::array<__int128, kMaxPhi> acc{};
    for (int k = 0; k < 2 * phi_ - 1; ++k) {
      if (conv[k] == 0) continue;
      if (k < phi_) {
        acc[k] += conv[k];
        continue;
      }
      const auto& row = table_->powers[static_cast<std::size_t>(k)];
      for (int j = 0; j < phi_; ++j)
        if (row[static_cast<std::size_t>(j)] != 0) acc[j] += conv[k] * row[static_cast<std::size_t>(j)];
    }
    value_type r{};
    for (int k = 0; k < phi_; ++k) {
      if (acc[k] > INT64_MAX || acc[k] < INT64_MIN) throw Overflow{};
      r[k] = static_cast<std::int64_t>(acc[k]);
    }
    return r;
  }

  std::optional<value_type> from_scalar(const CycloScalar& s) const {
    const auto& c = s.in_conductor(table_->conductor).coeffs();
    value_type r{};
    for (int k = 0; k < phi_; ++k) {
      const auto& q = c[static_cast<std::size_t>(k)];
      if (q.get_den() != 1 || !q.get_num().fits_slong_p()) return std::nullopt;
      r[k] = q.get_num().get_si();
    }
    return r;
  }
  CycloScalar to_scalar(const value_type& a, int) const {
    std::vector<Rational> c(static_cast<std::size_t>(phi_));
    for (int k = 0; k < phi_; ++k) c[static_cast<std::size_t>(k)] = Rational(static_cast<long>(a[k]));
    return CycloScalar(table_->conductor, std::move(c));
  }
  void append_key(const value_type& a, std::vector<std::int64_t>& key) const {
    key.insert(key.end(), a.begin(), a.begin() + phi_);
  }

 private:
  const CyclotomicTable* table_;
  int phi_;
};

/// Exact scalar ring used by the generic path.
class ScalarRing {
 public:
  using value_type = CycloScalar;
  explicit ScalarRing(int conductor) : conductor_(conductor) {}
  value_type zero() const { return CycloScalar(Rational(0), conductor_); }
  value_type one() const { return CycloScalar(Rational(1), conductor_); }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }

 private:
  int conductor_;
};

/// Ascending coefficients of det(xI - A) for row-major A by Berkowitz's
/// division-free recurrence.
template <class Ring>
std::vector<typename Ring::value_type> berkowitz(const Ring& ring, const std::vector<typename Ring::value_type>& a,
                                                 std::size_t n) {
  using V = typename Ring::value_type;
  // descending coefficients of the leading principal minors
  std::vector<V> p{ring.one()};
  std::vector<V> t, v, w;
  for (std::size_t r = 0; r < n; ++r) {
    t.assign(r + 2, ring.zero());
    t[0] = ring.one();
    t[1] = ring.neg(a[r * n + r]);
    // v = C, the column above the diagonal entry
    v.assign(r, ring.zero());
    for (std::size_t i = 0; i < r; ++i) v[i] = a[i * n + r];
    for (std::size_t j = 2; j < r + 2; ++j) {
      V dot = ring.zero();
      for (std::size_t i = 0; i < r; ++i) {
        const V& row = a[r * n + i];
        if (ring.is_zero(row) || ring.is_zero(v[i])) continue;
        dot = ring.add(dot, ring.mul(row, v[i]));
      }
      t[j] = ring.neg(dot);
      if (j + 1 < r + 2) {
        w.assign(r, ring.zero());
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t k = 0; k < r; ++k) {
            const V& m = a[i * n + k];
            if (ring.is_zero(m) || ring.is_zero(v[k])) continue;
            w[i] = ring.add(w[i], ring.mul(m, v[k]));
          }
        v.swap(w);
      }
    }
    std::vector<V> next(r + 2, ring.zero());
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) {
        if (ring.is_zero(t[i - j]) || ring.is_zero(p[j])) continue;
        next[i] = ring.add(next[i], ring.mul(t[i - j], p[j]));
      }
    p.swap(next);
  }
  return {p.rbegin(), p.rend()};
}

}  // namespace monospec::detail
