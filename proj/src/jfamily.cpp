#include "monospec/jfamily.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include <gmpxx.h>

#include "monospec/error.hpp"

namespace monospec {

SignVectorSpace::SignVectorSpace(std::size_t n, std::vector<BitVector> spanning) : n_(n), basis_(std::move(spanning)) {
  for (const auto& v : basis_)
    if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "sign vector length mismatch");
  rref(basis_);
}

std::string SignVectorSpace::order_string() const {
  mpz_class v = 1;
  v <<= static_cast<mp_bitcnt_t>(basis_.size());
  return v.get_str();
}

std::optional<std::uint64_t> SignVectorSpace::order() const {
  if (basis_.size() >= 64) return std::nullopt;
  return std::uint64_t{1} << basis_.size();
}

bool SignVectorSpace::contains(const BitVector& v) const {
  if (v.size() != n_) return false;
  return reduce(v, basis_).none();
}

bool SignVectorSpace::is_scalar() const {
  if (basis_.empty()) return true;
  return basis_.size() == 1 && basis_.front() == BitVector::ones(n_);
}

std::vector<DiagonalSign> SignVectorSpace::members() const {
  std::vector<DiagonalSign> out;
  for (auto& v : span_members(basis_, n_)) out.emplace_back(std::move(v));
  return out;
}

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void require_abelian(const MonomialGroup& k) {
  if (!is_abelian(k)) throw Error(ErrorCode::NotAbelian, "group is not abelian");
}

void require_permutation_group(const MonomialGroup& k) {
  for (const auto& g : k.generators())
    if (!g.is_permutation()) throw Error(ErrorCode::NotPermutationGroup, "generator has a nontrivial weight");
}

// Orbits of the cyclic group generated by a permutation.
std::vector<std::vector<std::size_t>> cycles(const std::vector<std::size_t>& perm) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> c;
    for (std::size_t i = s; !seen[i]; i = perm[i]) {
      seen[i] = true;
      c.push_back(i);
    }
    out.push_back(std::move(c));
  }
  return out;
}

long perm_order(const std::vector<std::size_t>& perm) {
  long m = 1;
  for (const auto& c : cycles(perm)) m = lcm_long(m, static_cast<long>(c.size()));
  return m;
}

// avg_G(J) for a permutation G: entry i is the product of J over the orbit of
// i, taken order/|orbit| times.
BitVector avg_bits(const BitVector& j, const std::vector<std::size_t>& perm) {
  const long m = perm_order(perm);
  BitVector out(j.size());
  for (const auto& c : cycles(perm)) {
    if ((m / static_cast<long>(c.size())) % 2 == 0) continue;
    bool parity = false;
    for (auto i : c) parity ^= j.get(i);
    if (parity)
      for (auto i : c) out.set(i);
  }
  return out;
}

std::vector<BitVector> j_plus_equations(const MonomialGroup& k) {
  const std::size_t n = k.n();
  std::vector<BitVector> rows{BitVector::ones(n)};  // det(J) = 1
  for (const auto& g : prime_order_generators(k)) {
    const long m = perm_order(g.perm());
    for (const auto& c : cycles(g.perm())) {
      if ((m / static_cast<long>(c.size())) % 2 == 0) continue;
      BitVector row(n);
      for (auto i : c) row.set(i);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

std::vector<MonomialMatrix> prime_order_generators(const MonomialGroup& k) {
  require_abelian(k);
  std::vector<std::pair<long, MonomialMatrix>> found;
  std::unordered_set<MonomialMatrix, ElementHash<MonomialMatrix>> covered;
  for (const auto& e : k.elements()) {
    if (covered.contains(e)) continue;
    const auto order = element_order(e, static_cast<long>(k.order()) + 1);
    if (!order || !is_prime(*order)) continue;
    MonomialMatrix p = e;
    for (long i = 1; i < *order; ++i) {
      covered.insert(p);
      p = p * e;
    }
    found.emplace_back(*order, e);
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<MonomialMatrix> out;
  for (auto& [p, g] : found) out.push_back(std::move(g));
  return out;
}

JPlus j_plus(const MonomialGroup& k, JMode mode) {
  require_permutation_group(k);
  require_abelian(k);
  const std::size_t n = k.n();
  auto rows = j_plus_equations(k);
  JPlus out;
  if (mode == JMode::rank) {
    out.dimension = n - rank(rows);
    out.space = SignVectorSpace(n, nullspace(std::move(rows), n));
    return out;
  }
  out.space = SignVectorSpace(n, nullspace(std::move(rows), n));
  out.dimension = out.space.rank();
  out.members = out.space.members();
  return out;
}

bool in_j_family(const DiagonalSign& j, const MonomialGroup& k) {
  require_permutation_group(k);
  const BitVector det = j.determinant() == 1 ? BitVector(j.n()) : BitVector::ones(j.n());
  for (std::size_t i = 1; i < k.order(); ++i)
    if (!(avg_bits(j.bits(), k[i].perm()) == det)) return false;
  return true;
}

Cardinality j_cardinality(long n) {
  if (n < 3 || n % 2 == 0) throw Error(ErrorCode::InvalidInput, "j_cardinality needs an odd n >= 3", {{"n", n}});
  const auto k = MonomialGroup::closure(static_cast<std::size_t>(n), {cycle_matrix(static_cast<std::size_t>(n))});
  Cardinality c;
  c.n = n;
  c.rank_exponent = j_plus(k, JMode::rank).dimension;
  c.formula_exponent = static_cast<std::size_t>(euler_phi(n));
  if (c.rank_exponent != c.formula_exponent)
    throw Error(ErrorCode::AssertionFailure, "GF(2) rank disagrees with 2^phi(n)",
                {{"n", n}, {"rank_exponent", c.rank_exponent}, {"formula_exponent", c.formula_exponent}});
  return c;
}

MainGroup build_main_group(long n, const std::vector<DiagonalSign>& d_generators, std::size_t cap) {
  if (n % 2 == 0) throw Error(ErrorCode::EvenN, "n must be odd", {{"n", n}});
  if (n < 3) throw Error(ErrorCode::InvalidInput, "n must be at least 3", {{"n", n}});
  const auto un = static_cast<std::size_t>(n);
  const auto c = cycle_matrix(un);
  std::vector<BitVector> spanning;
  for (const auto& j : d_generators) {
    if (j.n() != un) throw Error(ErrorCode::DimensionMismatch, "sign vector length differs from n");
    const BitVector det = j.determinant() == 1 ? BitVector(un) : BitVector::ones(un);
    auto g = c;
    for (long power = 1; power < n; ++power, g = g * c) {
      const auto a = avg_bits(j.bits(), g.perm());
      if (!(a == det)) {
        std::vector<int> signs;
        for (std::size_t i = 0; i < un; ++i) signs.push_back(a.get(i) ? -1 : 1);
        std::vector<int> jsigns;
        for (std::size_t i = 0; i < un; ++i) jsigns.push_back(j.sign(i));
        throw Error(ErrorCode::NotInJn, "generator is not in J_n",
                    {{"generator", jsigns}, {"cycle_power", power}, {"avg", signs}});
      }
    }
    spanning.push_back(j.bits());
  }
  MainGroup out;
  SignVectorSpace given(un, spanning);
  // C_n-stable closure: add every cyclic shift of every generator
  std::vector<BitVector> shifted;
  for (const auto& j : d_generators) {
    DiagonalSign s = j;
    for (long k = 0; k < n; ++k) {
      shifted.push_back(s.bits());
      s = s.conjugated_by(c.perm());
    }
  }
  out.d = SignVectorSpace(un, std::move(shifted));
  out.stabilized = out.d.rank() != given.rank();
  if (out.d.is_scalar()) throw Error(ErrorCode::ScalarD, "D is contained in {I, -I}");
  std::vector<MonomialMatrix> gens{c};
  for (const auto& b : out.d.basis()) gens.push_back(DiagonalSign(b).to_monomial());
  out.group = MonomialGroup::closure(un, std::move(gens), cap);
  const std::uint64_t expected = static_cast<std::uint64_t>(n) * *out.d.order();
  if (out.group.order() != expected)
    throw Error(ErrorCode::AssertionFailure, "C_n D has unexpected order",
                {{"order", out.group.order()}, {"expected", expected}});
  return out;
}

}  // namespace monospec
