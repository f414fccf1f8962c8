#include "monospec/group.hpp"

#include <cstdlib>
#include <unordered_set>

namespace monospec {

std::size_t default_cap() {
  if (const char* env = std::getenv("MONOSPEC_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultCap;
}

DenseGroup to_dense_group(const MonomialGroup& g) {
  std::vector<DenseMatrix> gens;
  for (const auto& x : g.generators()) gens.push_back(x.to_dense());
  return DenseGroup::closure(g.n(), std::move(gens), g.cap());
}

MonomialGroup to_monomial_group(const DenseGroup& g) {
  std::vector<MonomialMatrix> gens;
  for (const auto& x : g.generators()) {
    auto m = MonomialMatrix::from_dense(x);
    if (!m) throw Error(ErrorCode::NotMonomial, "group has a non-monomial generator");
    gens.push_back(*m);
  }
  return MonomialGroup::closure(g.n(), std::move(gens), g.cap());
}

namespace {

template <class G>
bool same_elements_impl(const G& a, const G& b) {
  if (a.n() != b.n() || a.order() != b.order()) return false;
  for (const auto& e : b.elements())
    if (!a.contains(e)) return false;
  return true;
}

template <class G>
bool is_abelian_impl(const G& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!(gens[i] * gens[j] == gens[j] * gens[i])) return false;
  return true;
}

template <class G>
G commutator_subgroup_impl(const G& g) {
  using E = std::decay_t<decltype(g.identity())>;
  std::vector<E> inverses;
  inverses.reserve(g.order());
  for (const auto& e : g.elements()) inverses.push_back(e.inverse());
  std::unordered_set<E, ElementHash<E>> seen;
  std::vector<E> commutators;
  for (std::size_t i = 0; i < g.order(); ++i)
    for (std::size_t j = 0; j < g.order(); ++j) {
      if (i == j) continue;
      E c = g[i] * g[j] * inverses[i] * inverses[j];
      if (seen.insert(c).second) commutators.push_back(std::move(c));
    }
  return G::generated_by(g.n(), commutators, g.cap());
}

}  // namespace

bool same_elements(const MonomialGroup& a, const MonomialGroup& b) { return same_elements_impl(a, b); }
bool same_elements(const DenseGroup& a, const DenseGroup& b) { return same_elements_impl(a, b); }

bool is_abelian(const MonomialGroup& g) { return is_abelian_impl(g); }
bool is_abelian(const DenseGroup& g) { return is_abelian_impl(g); }

MonomialGroup diagonal_subgroup(const MonomialGroup& g) {
  std::vector<MonomialMatrix> diag;
  for (const auto& e : g.elements())
    if (e.is_diagonal()) diag.push_back(e);
  return MonomialGroup::generated_by(g.n(), diag, g.cap());
}

MonomialGroup commutator_subgroup(const MonomialGroup& g) { return commutator_subgroup_impl(g); }
DenseGroup commutator_subgroup(const DenseGroup& g) { return commutator_subgroup_impl(g); }

MonomialGroup pattern_group(const MonomialGroup& g) {
  std::vector<MonomialMatrix> gens;
  for (const auto& x : g.generators()) gens.push_back(pattern(x));
  return MonomialGroup::closure(g.n(), std::move(gens), g.cap());
}

MonomialGroup pattern_group(const DenseGroup& g) { return pattern_group(to_monomial_group(g)); }

bool has_commutative_pattern(const MonomialGroup& g) { return is_abelian(pattern_group(g)); }

MonomialMatrix conj_action(const MonomialMatrix& d, const MonomialMatrix& g) { return g.inverse() * d * g; }

DenseMatrix conj_action(const DenseMatrix& d, const DenseMatrix& g) { return g.inverse() * d * g; }

namespace {

void require_diagonal(const MonomialMatrix& d) {
  if (!d.is_diagonal()) throw Error(ErrorCode::InvalidInput, "averaging needs a diagonal matrix");
}

}  // namespace

MonomialMatrix avg(const MonomialMatrix& d, const MonomialGroup& k) {
  require_diagonal(d);
  if (d.n() != k.n()) throw Error(ErrorCode::DimensionMismatch, "avg dimension mismatch");
  // (K^-1 D K)_ii = d_{perm_K(i)}
  std::vector<CycloScalar> acc(d.n(), CycloScalar(Rational(1), d.conductor()));
  for (const auto& x : k.elements())
    for (std::size_t i = 0; i < d.n(); ++i) acc[i] *= d.weight(x.image(i));
  return MonomialMatrix::diagonal(std::move(acc));
}

MonomialMatrix avg(const MonomialMatrix& d, const MonomialMatrix& g) {
  require_diagonal(d);
  const auto m = element_order(g);
  if (!m) throw Error(ErrorCode::InvalidInput, "avg over an element of infinite or huge order");
  std::vector<CycloScalar> acc(d.n(), CycloScalar(Rational(1), d.conductor()));
  MonomialMatrix p = MonomialMatrix::identity(g.n(), g.conductor());
  for (long k = 0; k < *m; ++k) {
    for (std::size_t i = 0; i < d.n(); ++i) acc[i] *= d.weight(p.image(i));
    p = p * g;
  }
  return MonomialMatrix::diagonal(std::move(acc));
}

bool is_indecomposable(const MonomialGroup& g) {
  const std::size_t n = g.n();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t c = stack.back();
    stack.pop_back();
    for (const auto& x : g.generators()) {
      const std::size_t d = x.image(c);
      if (!seen[d]) {
        seen[d] = true;
        ++reached;
        stack.push_back(d);
      }
    }
  }
  return reached == n;
}

std::size_t span_dimension(const DenseGroup& g) {
  const std::size_t n2 = g.n() * g.n();
  std::vector<std::vector<CycloScalar>> basis;
  std::vector<std::size_t> pivots;
  for (const auto& e : g.elements()) {
    std::vector<CycloScalar> v = e.entries();
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (v[pivots[k]].is_zero()) continue;
      const CycloScalar f = v[pivots[k]];
      for (std::size_t j = 0; j < n2; ++j)
        if (!basis[k][j].is_zero()) v[j] -= f * basis[k][j];
    }
    std::size_t p = 0;
    while (p < n2 && v[p].is_zero()) ++p;
    if (p == n2) continue;
    const CycloScalar inv = v[p].inverse();
    for (auto& x : v)
      if (!x.is_zero()) x *= inv;
    basis.push_back(std::move(v));
    pivots.push_back(p);
    if (basis.size() == n2) break;
  }
  return basis.size();
}

bool is_irreducible(const DenseGroup& g) { return span_dimension(g) == g.n() * g.n(); }

bool is_irreducible(const MonomialGroup& g) {
  // same criterion, with the monomial sparsity used directly
  const std::size_t n = g.n();
  const std::size_t n2 = n * n;
  std::vector<std::vector<CycloScalar>> basis;
  std::vector<std::size_t> pivots;
  const CycloScalar zero(Rational(0), g.conductor());
  for (const auto& e : g.elements()) {
    std::vector<CycloScalar> v(n2, zero);
    for (std::size_t i = 0; i < n; ++i) v[e.image(i) * n + i] = e.weight(i);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (v[pivots[k]].is_zero()) continue;
      const CycloScalar f = v[pivots[k]];
      for (std::size_t j = 0; j < n2; ++j)
        if (!basis[k][j].is_zero()) v[j] -= f * basis[k][j];
    }
    std::size_t p = 0;
    while (p < n2 && v[p].is_zero()) ++p;
    if (p == n2) continue;
    const CycloScalar inv = v[p].inverse();
    for (auto& x : v)
      if (!x.is_zero()) x *= inv;
    basis.push_back(std::move(v));
    pivots.push_back(p);
    if (basis.size() == n2) return true;
  }
  return basis.size() == n2;
}

DiagonalCommutation has_no_diagonal_commutation(const MonomialGroup& g) {
  std::vector<const MonomialMatrix*> diagonals;
  for (const auto& e : g.elements())
    if (e.is_diagonal() && !e.is_scalar()) diagonals.push_back(&e);
  for (const auto& x : g.elements()) {
    if (x.is_diagonal()) continue;
    for (const auto* d : diagonals) {
      // x d = d x  iff  d_i = d_{perm(i)} for all i
      bool commute = true;
      for (std::size_t i = 0; i < g.n() && commute; ++i) commute = d->weight(i) == d->weight(x.image(i));
      if (commute) return {false, std::make_pair(x, *d)};
    }
  }
  return {};
}

std::vector<MonomialMatrix> involution_set(const MonomialGroup& g) {
  std::vector<MonomialMatrix> out;
  for (const auto& e : g.elements())
    if ((e * e).is_identity()) out.push_back(e);
  return out;
}

std::vector<DenseMatrix> involution_set(const DenseGroup& g) {
  std::vector<DenseMatrix> out;
  for (const auto& e : g.elements())
    if ((e * e).is_identity()) out.push_back(e);
  return out;
}

DenseGroup conjugate_group(const DenseGroup& g, const DenseMatrix& s, const DenseMatrix& s_inv) {
  std::vector<DenseMatrix> gens;
  for (const auto& x : g.generators()) gens.push_back(s_inv * x * s);
  return DenseGroup::closure(g.n(), std::move(gens), g.cap());
}

}  // namespace monospec
