#include "monospec/structure.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <unordered_set>

#include "kernel.hpp"

namespace monospec {

std::string to_string(SimilarityKind k) {
  switch (k) {
    case SimilarityKind::diagonal: return "diagonal";
    case SimilarityKind::permutation: return "permutation";
    case SimilarityKind::monomial: return "monomial";
    case SimilarityKind::block_diagonal: return "block_diagonal";
    case SimilarityKind::general: return "general";
  }
  return "general";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::theorem_form: return "theorem_form";
    case Outcome::counterexample: return "counterexample";
    case Outcome::not_irreducible: return "not_irreducible";
    case Outcome::not_applicable: return "not_applicable";
  }
  return "not_applicable";
}

// ---------------------------------------------------------------- Similarity

Similarity Similarity::identity(std::size_t n, int conductor) {
  Similarity s;
  s.s_ = DenseMatrix::identity(n, conductor);
  s.s_inv_ = s.s_;
  s.kind_ = SimilarityKind::diagonal;
  return s;
}

Similarity Similarity::from_matrix(DenseMatrix m) {
  Similarity s;
  s.s_inv_ = m.inverse();
  s.s_ = std::move(m);
  s.classify();
  return s;
}

Similarity Similarity::from_monomial(const MonomialMatrix& m) {
  Similarity s;
  s.s_ = m.to_dense();
  s.s_inv_ = m.inverse().to_dense();
  s.classify();
  return s;
}

Similarity Similarity::from_pair(DenseMatrix m, DenseMatrix m_inv) {
  if (m.n() != m_inv.n()) throw Error(ErrorCode::DimensionMismatch, "similarity pair dimension mismatch");
  if (!(m * m_inv).is_identity()) throw Error(ErrorCode::AssertionFailure, "similarity pair is not inverse");
  Similarity s;
  s.s_ = std::move(m);
  s.s_inv_ = std::move(m_inv);
  s.classify();
  return s;
}

void Similarity::classify() {
  if (s_.is_diagonal()) {
    kind_ = SimilarityKind::diagonal;
    return;
  }
  if (auto m = MonomialMatrix::from_dense(s_)) {
    kind_ = m->is_permutation() ? SimilarityKind::permutation : SimilarityKind::monomial;
    return;
  }
  kind_ = SimilarityKind::general;
}

void Similarity::classify_blocks(std::size_t block_size) {
  if (kind_ != SimilarityKind::general || block_size == 0 || s_.n() % block_size != 0) return;
  for (std::size_t i = 0; i < s_.n(); ++i)
    for (std::size_t j = 0; j < s_.n(); ++j)
      if (i / block_size != j / block_size && !s_(i, j).is_zero()) return;
  kind_ = SimilarityKind::block_diagonal;
}

Similarity Similarity::then(const Similarity& next) const {
  if (next.n() != n()) throw Error(ErrorCode::DimensionMismatch, "similarity dimension mismatch");
  Similarity s;
  s.s_ = s_ * next.s_;
  s.s_inv_ = next.s_inv_ * s_inv_;
  s.classify();
  return s;
}

DenseGroup Similarity::apply(const DenseGroup& g) const { return conjugate_group(g, s_, s_inv_); }

MonomialGroup Similarity::apply_monomial(const MonomialGroup& g) const {
  std::vector<MonomialMatrix> gens;
  for (const auto& x : g.generators()) {
    auto m = MonomialMatrix::from_dense(s_inv_ * x.to_dense() * s_);
    if (!m) throw Error(ErrorCode::NotMonomial, "conjugated generator is not monomial");
    gens.push_back(std::move(*m));
  }
  return MonomialGroup::closure(g.n(), std::move(gens), g.cap());
}

// ------------------------------------------------------- linear algebra helpers

namespace {

using Vec = std::vector<CycloScalar>;

std::size_t pivot_of(const Vec& v) {
  std::size_t p = 0;
  while (p < v.size() && v[p].is_zero()) ++p;
  return p;
}

// Reduced echelon basis of the span, pivots normalized to 1.
std::vector<Vec> echelon(std::vector<Vec> rows) {
  std::vector<Vec> basis;
  for (auto& v : rows) {
    for (const auto& b : basis) {
      const std::size_t p = pivot_of(b);
      if (v[p].is_zero()) continue;
      const CycloScalar f = v[p];
      for (std::size_t j = p; j < v.size(); ++j)
        if (!b[j].is_zero()) v[j] -= f * b[j];
    }
    const std::size_t p = pivot_of(v);
    if (p == v.size()) continue;
    const CycloScalar inv = v[p].inverse();
    for (auto& x : v)
      if (!x.is_zero()) x *= inv;
    for (auto& b : basis) {
      if (b[p].is_zero()) continue;
      const CycloScalar f = b[p];
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!v[j].is_zero()) b[j] -= f * v[j];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Vec apply_to(const DenseMatrix& m, const Vec& v) {
  const std::size_t n = m.n();
  Vec out(n, CycloScalar(Rational(0), m.conductor()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
  return out;
}

DenseMatrix block_diagonal(const std::vector<DenseMatrix>& blocks) {
  std::size_t n = 0;
  long conductor = 1;
  for (const auto& b : blocks) {
    n += b.n();
    conductor = lcm_long(conductor, b.conductor());
  }
  DenseMatrix m(n, static_cast<int>(conductor));
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.n(); ++i)
      for (std::size_t j = 0; j < b.n(); ++j)
        if (!b(i, j).is_zero()) m.set(offset + i, offset + j, b(i, j));
    offset += b.n();
  }
  return m;
}

nlohmann::json error_certificate(const std::string& stage, const Error& e) {
  return {{"stage", stage},
          {"error", std::string(to_string(e.code()))},
          {"message", e.what()},
          {"detail", e.detail()}};
}

}  // namespace

// ------------------------------------------------------------- involutions

Similarity diagonalize_involutions(const std::vector<DenseMatrix>& involutions) {
  if (involutions.empty()) throw Error(ErrorCode::InvalidInput, "no involutions given");
  const std::size_t n = involutions.front().n();
  long conductor = 1;
  for (std::size_t i = 0; i < involutions.size(); ++i) {
    const auto& j = involutions[i];
    if (j.n() != n) throw Error(ErrorCode::DimensionMismatch, "involution dimension mismatch");
    if (!is_involution(j)) throw Error(ErrorCode::NotInvolution, "matrix is not an involution", {{"index", i}});
    conductor = lcm_long(conductor, j.conductor());
  }
  for (std::size_t a = 0; a < involutions.size(); ++a)
    for (std::size_t b = a + 1; b < involutions.size(); ++b)
      if (!(involutions[a] * involutions[b] == involutions[b] * involutions[a]))
        throw Error(ErrorCode::NotCommuting, "involutions do not commute", {{"pair", {a, b}}});
  if (std::all_of(involutions.begin(), involutions.end(), [](const DenseMatrix& j) { return j.is_diagonal(); }))
    return Similarity::identity(n, static_cast<int>(conductor));

  const int c = static_cast<int>(conductor);
  std::vector<std::vector<Vec>> spaces(1);
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, CycloScalar(Rational(0), c));
    e[i] = CycloScalar(Rational(1), c);
    spaces[0].push_back(std::move(e));
  }
  for (const auto& j : involutions) {
    std::vector<std::vector<Vec>> refined;
    for (const auto& w : spaces) {
      std::vector<Vec> plus, minus;
      for (const auto& v : w) {
        const Vec jv = apply_to(j, v);
        Vec p(n), m(n);
        for (std::size_t k = 0; k < n; ++k) {
          p[k] = v[k] + jv[k];
          m[k] = v[k] - jv[k];
        }
        plus.push_back(std::move(p));
        minus.push_back(std::move(m));
      }
      for (auto part : {echelon(std::move(plus)), echelon(std::move(minus))})
        if (!part.empty()) refined.push_back(std::move(part));
    }
    spaces.swap(refined);
  }
  std::vector<Vec> columns;
  for (auto& w : spaces)
    for (auto& v : w) columns.push_back(std::move(v));
  if (columns.size() != n) throw Error(ErrorCode::AssertionFailure, "eigenspaces do not span");
  std::stable_sort(columns.begin(), columns.end(),
                   [](const Vec& a, const Vec& b) { return pivot_of(a) < pivot_of(b); });
  DenseMatrix s(n, c);
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t row = 0; row < n; ++row)
      if (!columns[col][row].is_zero()) s.set(row, col, columns[col][row]);
  return Similarity::from_matrix(std::move(s));
}

// ------------------------------------------------------------- Clifford blocks

BlockDecomposition clifford_decompose(const DenseGroup& g, const std::vector<DenseMatrix>& diagonal_involutions) {
  const std::size_t n = g.n();
  std::vector<std::vector<int>> chars(n);
  for (std::size_t k = 0; k < diagonal_involutions.size(); ++k) {
    const auto& j = diagonal_involutions[k];
    if (j.n() != n) throw Error(ErrorCode::DimensionMismatch, "involution dimension mismatch");
    if (!j.is_diagonal()) throw Error(ErrorCode::InvalidInput, "involution is not diagonal", {{"index", k}});
    for (std::size_t i = 0; i < n; ++i) {
      const auto q = j(i, i).as_rational();
      if (!q || (*q != 1 && *q != -1))
        throw Error(ErrorCode::InvalidInput, "involution entry is not a sign", {{"index", k}});
      chars[i].push_back(*q == 1 ? 1 : -1);
    }
  }
  BlockDecomposition b;
  std::vector<std::size_t> class_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find(b.class_characters.begin(), b.class_characters.end(), chars[i]);
    if (it == b.class_characters.end()) {
      b.class_characters.push_back(chars[i]);
      b.classes.emplace_back();
      it = b.class_characters.end() - 1;
    }
    const auto c = static_cast<std::size_t>(it - b.class_characters.begin());
    b.classes[c].push_back(i);
    class_of[i] = c;
  }
  if (b.classes.size() == 1) throw Error(ErrorCode::ScalarJ, "involutions act as scalars");

  for (std::size_t k = 0; k < g.generators().size(); ++k) {
    const auto& x = g.generators()[k];
    for (std::size_t c = 0; c < b.classes.size(); ++c) {
      std::optional<std::size_t> target;
      for (std::size_t col : b.classes[c])
        for (std::size_t row = 0; row < n; ++row) {
          if (x(row, col).is_zero()) continue;
          if (target && *target != class_of[row])
            throw Error(ErrorCode::NotBlockMonomial, "generator mixes weight spaces",
                        {{"generator", k}, {"class", c}});
          target = class_of[row];
        }
    }
  }
  for (const auto& c : b.classes)
    if (c.size() != b.classes.front().size())
      throw Error(ErrorCode::NotBlockMonomial, "weight spaces have different dimensions");
  return b;
}

BlockNormalization block_normalize(const DenseGroup& g, const BlockDecomposition& b) {
  const std::size_t n = g.n();
  const std::size_t r = b.classes.size();
  const std::size_t s = b.block_size();
  if (r == 0 || r * s != n) throw Error(ErrorCode::InvalidInput, "classes do not partition the coordinates");

  std::vector<std::size_t> order;
  for (const auto& c : b.classes) order.insert(order.end(), c.begin(), c.end());
  const Similarity p = Similarity::from_monomial(MonomialMatrix::permutation(order, g.conductor()));
  const DenseGroup g1 = p.apply(g);

  std::vector<DenseMatrix> x(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (const auto& e : g1.elements()) {
      DenseMatrix blk = e.block(0, i * s, s);
      if (!blk.is_zero()) {
        x[i] = std::move(blk);
        break;
      }
    }
    if (x[i].n() == 0) throw Error(ErrorCode::NotBlockMonomial, "block action is not transitive", {{"class", i}});
  }
  std::vector<DenseMatrix> x_inv;
  for (const auto& xi : x) x_inv.push_back(xi.inverse());
  const Similarity xs = Similarity::from_pair(block_diagonal(x_inv), block_diagonal(x));
  Similarity total = p.then(xs);
  total.classify_blocks(s);
  DenseGroup g2 = xs.apply(g1);

  using BlockSet = std::unordered_set<DenseMatrix, ElementHash<DenseMatrix>>;
  std::vector<BlockSet> sets(r * r);
  for (const auto& e : g2.elements())
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        DenseMatrix blk = e.block(i * s, j * s, s);
        if (!blk.is_zero()) sets[i * r + j].insert(std::move(blk));
      }
  const BlockSet& h = sets[0];
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const BlockSet& hij = sets[i * r + j];
      bool equal = hij.size() == h.size();
      for (const auto& m : hij)
        if (equal && !h.contains(m)) equal = false;
      if (!equal)
        throw Error(ErrorCode::BlockSetMismatch, "block sets differ", {{"block", {i, j}}});
    }
  std::vector<DenseMatrix> hv(h.begin(), h.end());
  std::sort(hv.begin(), hv.end(), [](const DenseMatrix& a, const DenseMatrix& c) { return a.to_string() < c.to_string(); });
  DenseGroup hg = DenseGroup::generated_by(s, hv, g.cap());
  if (hg.order() != h.size()) throw Error(ErrorCode::BlockSetMismatch, "block set is not a group");
  return {std::move(total), std::move(hg), std::move(g2)};
}

Similarity monomialize(const DenseGroup& g) {
  const std::size_t n = g.n();
  if (std::all_of(g.generators().begin(), g.generators().end(),
                  [](const DenseMatrix& x) { return x.is_monomial(); }))
    return Similarity::identity(n, g.conductor());
  const auto involutions = involution_set(g);
  const Similarity s1 = diagonalize_involutions(involutions);
  const DenseGroup g1 = s1.apply(g);
  std::vector<DenseMatrix> diag;
  for (const auto& j : involutions) diag.push_back(s1.apply(j));
  const BlockDecomposition b = clifford_decompose(g1, diag);
  BlockNormalization bn = block_normalize(g1, b);
  Similarity total = s1.then(bn.similarity);
  const std::size_t s = b.block_size();
  if (s > 1) {
    const Similarity t = monomialize(bn.h);
    const std::vector<DenseMatrix> ts(b.classes.size(), t.s());
    const std::vector<DenseMatrix> ts_inv(b.classes.size(), t.s_inv());
    total = total.then(Similarity::from_pair(block_diagonal(ts), block_diagonal(ts_inv)));
  }
  for (const auto& x : g.generators())
    if (!total.apply(x).is_monomial()) throw Error(ErrorCode::NotMonomial, "monomialization failed");
  return total;
}

// ------------------------------------------------------------- abelian groups

namespace {

using IntRow = std::vector<Integer>;

// Adds a relation row to a triangular lattice basis indexed by pivot column.
void insert_relation(std::vector<std::optional<IntRow>>& basis, IntRow row) {
  const std::size_t m = row.size();
  for (std::size_t c = 0; c < m; ++c) {
    if (row[c] == 0) continue;
    if (!basis[c]) {
      if (row[c] < 0)
        for (auto& x : row) x = -x;
      basis[c] = std::move(row);
      return;
    }
    IntRow& piv = *basis[c];
    const Integer a = piv[c];
    const Integer b = row[c];
    Integer g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer ag = a / g;
    const Integer bg = b / g;
    IntRow top(m), rest(m);
    for (std::size_t k = 0; k < m; ++k) {
      top[k] = x * piv[k] + y * row[k];
      rest[k] = bg * piv[k] - ag * row[k];
    }
    piv = std::move(top);
    row = std::move(rest);
  }
}

struct Smith {
  std::vector<Integer> diagonal;
  std::vector<IntRow> q_inv;  // rows give the new generators
};

// Smith form of a square relation matrix, tracking the inverse column transform.
Smith smith_form(std::vector<IntRow> a) {
  const std::size_t m = a.size();
  std::vector<IntRow> q_inv(m, IntRow(m, 0));
  for (std::size_t i = 0; i < m; ++i) q_inv[i][i] = 1;

  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& f) {  // col_dst += f col_src
    for (std::size_t i = 0; i < m; ++i) a[i][dst] += f * a[i][src];
    for (std::size_t k = 0; k < m; ++k) q_inv[src][k] -= f * q_inv[dst][k];
  };
  auto col_swap = [&](std::size_t u, std::size_t v) {
    for (std::size_t i = 0; i < m; ++i) std::swap(a[i][u], a[i][v]);
    std::swap(q_inv[u], q_inv[v]);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t k = 0; k < m; ++k) a[dst][k] += f * a[src][k];
  };

  for (std::size_t t = 0; t < m; ++t) {
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < m; ++j)
          if (a[i][j] != 0 && (!best || abs(a[i][j]) < abs(a[best->first][best->second]))) best = {{i, j}};
      if (!best) break;
      std::swap(a[t], a[best->first]);
      col_swap(t, best->second);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        const Integer f = a[i][t] / a[t][t];
        row_add(i, t, -f);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (a[t][j] == 0) continue;
        const Integer f = a[t][j] / a[t][t];
        col_add(j, t, -f);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m && !bad; ++i)
        for (std::size_t j = t + 1; j < m; ++j)
          if (a[i][j] % a[t][t] != 0) {
            bad = i;
            break;
          }
      if (!bad) break;
      row_add(t, *bad, 1);
    }
  }
  Smith out;
  for (std::size_t t = 0; t < m; ++t) out.diagonal.push_back(abs(a[t][t]));
  out.q_inv = std::move(q_inv);
  return out;
}

MonomialMatrix power_product(const std::vector<MonomialMatrix>& gens, const std::vector<long>& exps, std::size_t n,
                             int conductor) {
  MonomialMatrix r = MonomialMatrix::identity(n, conductor);
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (exps[j] != 0) r = r * gens[j].pow(exps[j]);
  return r;
}

}  // namespace

SmithDecomposition abelian_invariants(const MonomialGroup& k) {
  if (!is_abelian(k)) throw Error(ErrorCode::NotAbelian, "group is not abelian");
  const auto& gens = k.generators();
  const std::size_t m = gens.size();
  SmithDecomposition out;
  if (m == 0 || k.order() == 1) return out;

  std::vector<std::optional<std::vector<long>>> exps(k.order());
  std::vector<std::optional<IntRow>> lattice(m);
  exps[0] = std::vector<long>(m, 0);
  std::vector<std::size_t> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::size_t e = queue[q];
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t next = *k.index_of(k[e] * gens[j]);
      std::vector<long> v = *exps[e];
      ++v[j];
      if (!exps[next]) {
        exps[next] = std::move(v);
        queue.push_back(next);
        continue;
      }
      IntRow rel(m);
      for (std::size_t t = 0; t < m; ++t) rel[t] = v[t] - (*exps[next])[t];
      insert_relation(lattice, std::move(rel));
    }
  }
  std::vector<IntRow> rows;
  for (auto& r : lattice) {
    if (!r) throw Error(ErrorCode::AssertionFailure, "relation lattice is not of full rank");
    rows.push_back(std::move(*r));
  }
  const Smith smith = smith_form(std::move(rows));

  std::vector<long> gen_orders;
  for (const auto& g : gens) gen_orders.push_back(*element_order(g));
  for (std::size_t t = m; t-- > 0;) {
    const Integer& d = smith.diagonal[t];
    if (d <= 1) continue;
    std::vector<long> row(m);
    for (std::size_t j = 0; j < m; ++j) {
      Integer e = smith.q_inv[t][j] % gen_orders[j];
      if (e < 0) e += gen_orders[j];
      row[j] = e.get_si();
    }
    out.invariant_factors.push_back(d.get_si());
    out.generator_exponents.push_back(std::move(row));
  }
  std::vector<std::size_t> idx(out.invariant_factors.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return out.invariant_factors[a] > out.invariant_factors[b]; });
  SmithDecomposition sorted;
  for (std::size_t i : idx) {
    sorted.invariant_factors.push_back(out.invariant_factors[i]);
    sorted.generator_exponents.push_back(out.generator_exponents[i]);
  }
  return sorted;
}

AbelianMonomialization monomialize_abelian(const MonomialGroup& k) {
  const std::size_t n = k.n();
  if (!is_abelian(k)) throw Error(ErrorCode::NotAbelian, "group is not abelian");
  if (!is_indecomposable(k)) throw Error(ErrorCode::NotIndecomposable, "group is decomposable");
  for (const auto& e : k.elements())
    if (e.is_diagonal() && !e.is_identity())
      throw Error(ErrorCode::NontrivialDiagonal, "group has a nontrivial diagonal element",
                  {{"element", e.to_string()}});
  if (k.order() != n) throw Error(ErrorCode::AssertionFailure, "transitive abelian group is not regular");

  const SmithDecomposition smith = abelian_invariants(k);
  AbelianMonomialization out;
  out.orders = smith.invariant_factors;
  for (const auto& row : smith.generator_exponents)
    out.cycle_generators.push_back(power_product(k.generators(), row, n, k.conductor()));

  std::vector<std::size_t> perm(n);
  std::vector<CycloScalar> weights(n);
  std::vector<bool> seen(n, false);
  std::vector<long> digits(out.orders.size(), 0);
  for (std::size_t t = 0; t < n; ++t) {
    const MonomialMatrix gt = power_product(out.cycle_generators, digits, n, k.conductor());
    perm[t] = gt.image(0);
    weights[t] = gt.weight(0);
    if (seen[perm[t]]) throw Error(ErrorCode::AssertionFailure, "orbit re-indexing is not bijective");
    seen[perm[t]] = true;
    for (std::size_t j = digits.size(); j-- > 0;) {
      if (++digits[j] < out.orders[j]) break;
      digits[j] = 0;
    }
  }
  out.reindex = MonomialMatrix::permutation(perm, k.conductor());
  out.scaling = MonomialMatrix::diagonal(weights);
  const MonomialMatrix s = out.reindex * out.scaling;
  out.similarity = Similarity::from_monomial(s);
  const MonomialMatrix s_inv = s.inverse();

  std::vector<MonomialMatrix> expected;
  for (std::size_t j = 0; j < out.orders.size(); ++j) {
    std::vector<MonomialMatrix> factors;
    for (std::size_t i = 0; i < out.orders.size(); ++i)
      factors.push_back(i == j ? cycle_matrix(static_cast<std::size_t>(out.orders[i]))
                               : MonomialMatrix::identity(static_cast<std::size_t>(out.orders[i])));
    expected.push_back(tensor_chain(factors));
    if (!(s_inv * out.cycle_generators[j] * s == expected.back().with_conductor(k.conductor())))
      throw Error(ErrorCode::AssertionFailure, "conjugated generator is not a tensor cycle", {{"factor", j}});
  }
  std::vector<MonomialMatrix> gens;
  for (const auto& x : k.generators()) gens.push_back(s_inv * x * s);
  out.conjugated = MonomialGroup::closure(n, std::move(gens), k.cap());
  if (!same_elements(out.conjugated, MonomialGroup::closure(n, expected, k.cap())))
    throw Error(ErrorCode::AssertionFailure, "conjugated group is not the tensor cycle group");
  return out;
}

// ---------------------------------------------------------- odd complement

namespace {

MonomialMatrix odd_part(const MonomialMatrix& g) {
  long order = *element_order(g);
  MonomialMatrix h = g;
  while (order % 2 == 0) {
    h = h * h;
    order /= 2;
  }
  return h;
}

}  // namespace

MonomialGroup find_odd_complement(const MonomialGroup& g, const MonomialGroup& j) {
  const std::size_t n = g.n();
  if (j.n() != n) throw Error(ErrorCode::DimensionMismatch, "subgroup dimension mismatch");
  for (const auto& x : j.elements())
    if (!x.is_diagonal() || !(x * x).is_identity())
      throw Error(ErrorCode::InvalidInput, "subgroup is not made of diagonal involutions");
  for (const auto& x : j.generators())
    if (!g.contains(x)) throw Error(ErrorCode::InvalidInput, "subgroup is not contained in the group");
  if (g.order() % j.order() != 0) throw Error(ErrorCode::InvalidInput, "subgroup order does not divide");
  const std::size_t m = g.order() / j.order();
  if (m % 2 == 0) throw Error(ErrorCode::EvenQuotient, "quotient has even order", {{"quotient_order", m}});
  if (m == 1) return MonomialGroup::closure(n, {}, g.cap());

  std::vector<MonomialMatrix> gens;
  for (const auto& x : g.generators())
    if (!x.is_identity()) gens.push_back(odd_part(x));
  MonomialGroup k = MonomialGroup::closure(n, gens, g.cap());
  if (k.order() == m) return k;

  gens.clear();
  k = MonomialGroup::closure(n, {}, g.cap());
  for (const auto& x : g.elements()) {
    const MonomialMatrix h = odd_part(x);
    if (k.contains(h)) continue;
    auto trial_gens = gens;
    trial_gens.push_back(h);
    MonomialGroup trial = MonomialGroup::closure(n, trial_gens, g.cap());
    if (trial.order() % 2 == 0 || m % trial.order() != 0) continue;
    gens = std::move(trial_gens);
    k = std::move(trial);
    if (k.order() == m) return k;
  }
  throw Error(ErrorCode::NoComplement, "no odd-order complement found", {{"quotient_order", m}});
}

// ---------------------------------------------------------- structure pipeline

namespace {

struct PipelineInput {
  const DenseGroup& dense;
  const MonomialGroup* monomial;
};

StructureReport run_pipeline(const PipelineInput& in, const RecoverOptions& options) {
  StructureReport report;
  const DenseGroup& g = in.dense;
  const long n = static_cast<long>(g.n());
  report.n = n;
  if (n == 1) {
    report.outcome = Outcome::not_applicable;
    report.stage = "dimension";
    report.certificate = {{"reason", "dimension 1"}};
    return report;
  }

  report.span_dimension = span_dimension(g);
  if (report.span_dimension < g.n() * g.n()) {
    report.outcome = Outcome::not_irreducible;
    report.stage = "irreducibility";
    report.certificate = {{"span_dimension", report.span_dimension}, {"required", g.n() * g.n()}};
    return report;
  }

  report.scan = in.monomial ? all_commutators_real(*in.monomial, options.scan) : all_commutators_real(g, options.scan);
  if (report.scan.verdict != Verdict::yes) {
    report.stage = "commutators";
    if (report.scan.verdict == Verdict::no) {
      report.outcome = Outcome::counterexample;
      const auto& w = *report.scan.witness;
      report.certificate = {{"pair", {w.i, w.j}}, {"char_poly", w.char_poly.to_string()}};
    } else {
      report.outcome = Outcome::not_applicable;
      report.certificate = {{"reason", "commutator spectrum undetermined"}};
    }
    return report;
  }

  auto fail = [&](const std::string& stage, nlohmann::json cert) {
    report.outcome = Outcome::counterexample;
    report.stage = stage;
    report.certificate = std::move(cert);
    report.certificate["stage"] = stage;
    return report;
  };

  Similarity s_mono;
  MonomialGroup gm;
  try {
    s_mono = monomialize(g);
    gm = s_mono.is_identity() && in.monomial ? *in.monomial : to_monomial_group(s_mono.apply(g));
  } catch (const Error& e) {
    return fail("monomialize", error_certificate("monomialize", e));
  }

  const MonomialGroup d = diagonal_subgroup(gm);
  for (const auto& x : d.elements())
    if (!(x * x).is_identity()) return fail("diagonal_involutions", {{"element", x.to_string()}});
  for (const auto& x : gm.elements()) {
    const MonomialMatrix x2 = x * x;
    if (!x2.is_identity() && (x2 * x2).is_identity()) return fail("order_four", {{"element", x.to_string()}});
  }

  AbelianMonomialization am;
  try {
    const MonomialGroup k = find_odd_complement(gm, d);
    am = monomialize_abelian(k);
  } catch (const Error& e) {
    return fail("complement", error_certificate("complement", e));
  }
  if (am.orders.size() != 1 || am.orders.front() != n) {
    nlohmann::json orders = am.orders;
    return fail("cyclic", {{"orders", orders}});
  }
  MonomialGroup gf = am.similarity.apply_monomial(gm);

  const auto commutation = has_no_diagonal_commutation(gf);
  if (!commutation.holds)
    return fail("diagonal_commutation", {{"pair",
                                          {commutation.witness->first.to_string(),
                                           commutation.witness->second.to_string()}}});
  const MonomialGroup df = diagonal_subgroup(gf);
  std::vector<BitVector> bits;
  std::vector<DiagonalSign> signs;
  for (const auto& x : df.generators()) {
    auto sign = DiagonalSign::from_monomial(x);
    if (!sign) return fail("diagonal_signs", {{"element", x.to_string()}});
    bits.push_back(sign->bits());
    signs.push_back(*sign);
  }
  SignVectorSpace space(g.n(), bits);
  const MonomialGroup cn = MonomialGroup::closure(g.n(), {cycle_matrix(g.n())});
  for (const auto& sign : signs) {
    if (!in_j_family(sign, cn)) return fail("j_family", {{"element", sign.to_monomial().to_string()}});
    if (!space.contains(sign.conjugated_by(cycle_matrix(g.n()).perm())))
      return fail("cycle_stability", {{"element", sign.to_monomial().to_string()}});
  }
  if (space.is_scalar()) return fail("scalar_d", {{"rank", space.rank()}});

  std::vector<DiagonalSign> basis;
  for (const auto& v : space.basis()) basis.emplace_back(v);
  MainGroup main;
  try {
    main = build_main_group(n, basis, g.cap());
  } catch (const Error& e) {
    return fail("normal_form", error_certificate("normal_form", e));
  }
  if (!same_elements(gf, main.group)) return fail("normal_form", {{"reason", "element sets differ"}});

  report.outcome = Outcome::theorem_form;
  report.stage = "normal_form";
  report.similarity = s_mono.then(am.similarity);
  report.d_basis = std::move(space);
  report.normal_form = std::move(gf);
  report.certificate = {{"order", g.order()}, {"d_order", report.d_basis.order_string()}};
  return report;
}

}  // namespace

StructureReport recover_structure(const DenseGroup& g, const RecoverOptions& options) {
  return run_pipeline({g, nullptr}, options);
}

StructureReport recover_structure(const MonomialGroup& g, const RecoverOptions& options) {
  const DenseGroup dense = to_dense_group(g);
  return run_pipeline({dense, &g}, options);
}

// ---------------------------------------------------------- theorem check

namespace {

// Integer characteristic polynomial of AB - BA for signed permutations.
std::vector<std::int64_t> int_commutator_poly(const MonomialMatrix& a, const MonomialMatrix& b) {
  const std::size_t n = a.n();
  std::vector<std::int64_t> m(n * n, 0);
  const MonomialMatrix ab = a * b;
  const MonomialMatrix ba = b * a;
  for (std::size_t i = 0; i < n; ++i) {
    m[ab.image(i) * n + i] += ab.weight(i).as_rational()->get_num().get_si();
    m[ba.image(i) * n + i] -= ba.weight(i).as_rational()->get_num().get_si();
  }
  return detail::berkowitz(detail::IntRing{}, m, n);
}

// Divides out x, x - 2 and x + 2 and reports whether nothing else remains.
bool roots_in_pm2_zero(std::vector<std::int64_t> p) {
  auto divide = [&](std::int64_t root) {
    const std::size_t d = p.size() - 1;
    std::vector<std::int64_t> q(d);
    q[d - 1] = p[d];
    for (std::size_t k = d - 1; k > 0; --k) q[k - 1] = p[k] + root * q[k];
    if (p[0] + root * q[0] != 0) return false;
    p = std::move(q);
    return true;
  };
  while (p.size() > 1)
    if (!divide(0) && !divide(2) && !divide(-2)) return false;
  return true;
}

bool is_x_power(const std::vector<std::int64_t>& p) {
  for (std::size_t k = 0; k + 1 < p.size(); ++k)
    if (p[k] != 0) return false;
  return true;
}

}  // namespace

TheoremCheck verify_theorem(long n, const std::vector<DiagonalSign>& d_generators, const ScanOptions& options,
                            std::size_t cap) {
  TheoremCheck out;
  out.main = build_main_group(n, d_generators, cap);
  out.scan = all_commutators_real(out.main.group, options);
  const auto& el = out.main.group.elements();
  const std::size_t order = el.size();

  auto check_pair = [&](std::size_t i, std::size_t j) {
    const bool diagonal = (el[i] * el[j]).is_diagonal();
    const auto p = int_commutator_poly(el[i], el[j]);
    bool ok;
    if (diagonal) {
      ++out.diagonal_pairs;
      ok = roots_in_pm2_zero(p);
    } else {
      ++out.nondiagonal_pairs;
      ok = is_x_power(p);
    }
    if (!ok && out.case_split_holds) {
      out.case_split_holds = false;
      out.case_split_failure = {{i, j}};
    }
  };

  if (options.sample) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, order - 1);
    for (std::uint64_t t = 0; t < *options.sample && order > 1; ++t) {
      const std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      while (j == i) j = pick(rng);
      check_pair(std::min(i, j), std::max(i, j));
    }
  } else {
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = i + 1; j < order; ++j) check_pair(i, j);
  }
  return out;
}

// ---------------------------------------------------------- commutator involutions

CommutatorInvolutionCheck check_commutator_involutions(const MonomialGroup& g) {
  CommutatorInvolutionCheck out;
  const MonomialGroup c = commutator_subgroup(g);
  out.commutator_subgroup_order = c.order();
  out.commutators_are_involutions =
      std::all_of(c.elements().begin(), c.elements().end(), [](const MonomialMatrix& x) { return (x * x).is_identity(); });
  const CycloScalar one(Rational(1), g.conductor());
  out.scalar_signed_form = std::all_of(g.elements().begin(), g.elements().end(), [&](const MonomialMatrix& x) {
    const CycloScalar w0 = x.weight(0).inverse();
    for (std::size_t i = 1; i < x.n(); ++i) {
      const CycloScalar r = x.weight(i) * w0;
      if (!(r == one) && !(r == -one)) return false;
    }
    return true;
  });
  out.commutative_pattern = has_commutative_pattern(g);
  out.agree = out.commutators_are_involutions == (out.scalar_signed_form && out.commutative_pattern);
  return out;
}

// ---------------------------------------------------------- scalar splitting

namespace {

bool entries_in_roots(const MonomialMatrix& m, long order) {
  for (const auto& w : m.weights())
    if (!w.pow(order).is_one()) return false;
  return true;
}

// A y in the order-y_order roots with every entry of m / y in the order-x_order roots.
std::optional<CycloScalar> scalar_factor(const MonomialMatrix& m, long x_order, long y_order) {
  for (long k = 0; k < y_order; ++k) {
    const CycloScalar y = CycloScalar::root_of_unity(static_cast<int>(y_order), k);
    if (entries_in_roots(m.scaled(y.inverse()), x_order)) return y;
  }
  return std::nullopt;
}

// Diagonal similarity with new basis vectors f(x) e_0, f(x) = prod f_i^{x_i}.
Similarity orbit_scaling(const std::vector<MonomialMatrix>& f, const std::vector<long>& orders, std::size_t n,
                         int conductor) {
  std::vector<CycloScalar> weights(n);
  std::vector<bool> seen(n, false);
  std::vector<long> digits(orders.size(), 0);
  for (std::size_t t = 0; t < n; ++t) {
    const MonomialMatrix ft = power_product(f, digits, n, conductor);
    const std::size_t pos = ft.image(0);
    if (seen[pos]) throw Error(ErrorCode::AssertionFailure, "pattern group is not regular");
    seen[pos] = true;
    weights[pos] = ft.weight(0);
    for (std::size_t j = digits.size(); j-- > 0;) {
      if (++digits[j] < orders[j]) break;
      digits[j] = 0;
    }
  }
  return Similarity::from_monomial(MonomialMatrix::diagonal(weights));
}

nlohmann::json diagonal_json(const MonomialMatrix& d) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : d.weights()) out.push_back(w.to_string());
  return out;
}

}  // namespace

SplitReport split_scalars(const MonomialGroup& g, long x_order, long y_order) {
  if (x_order < 1 || y_order < 1) throw Error(ErrorCode::InvalidInput, "root orders must be positive");
  if (!is_indecomposable(g)) throw Error(ErrorCode::NotIndecomposable, "group is decomposable");
  if (!has_commutative_pattern(g)) throw Error(ErrorCode::NotAbelian, "pattern group is not abelian");
  const std::size_t n = g.n();
  const long nl = static_cast<long>(n);
  SplitReport out;
  out.divisible = gcd_long(y_order, nl) == 1;

  const int conductor = static_cast<int>(lcm_long(lcm_long(g.conductor(), x_order), y_order));
  const MonomialMatrix zeta_y = MonomialMatrix::scalar(n, CycloScalar::root_of_unity(static_cast<int>(y_order), 1));
  MonomialGroup gy = g;
  if (!g.contains(zeta_y)) {
    auto gens = g.generators();
    gens.push_back(zeta_y);
    gy = MonomialGroup::closure(n, gens, g.cap());
    out.y_adjoined = true;
  }
  for (const auto& x : gy.elements())
    if (x.is_diagonal() && !scalar_factor(x, x_order, y_order))
      throw Error(ErrorCode::InvalidInput, "diagonal subgroup is not contained in Y D_X",
                  {{"element", diagonal_json(x)}});

  const MonomialGroup pat = pattern_group(g);
  const SmithDecomposition smith = abelian_invariants(pat);
  std::vector<MonomialMatrix> a;
  for (const auto& row : smith.generator_exponents)
    a.push_back(power_product(pat.generators(), row, n, pat.conductor()));
  const auto& orders = smith.invariant_factors;

  if (!out.divisible) {
    out.errors.push_back("NotDivisible");
  } else {
    std::vector<MonomialMatrix> f;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const MonomialMatrix* lift = nullptr;
      for (const auto& x : gy.elements())
        if (pattern(x) == a[i]) {
          lift = &x;
          break;
        }
      if (!lift) throw Error(ErrorCode::AssertionFailure, "pattern generator has no lift");
      const MonomialMatrix q = lift->pow(orders[i]);
      const auto y = scalar_factor(q, x_order, y_order);
      if (!y) throw Error(ErrorCode::AssertionFailure, "lift power is not in Y D_X");
      std::optional<CycloScalar> mu;
      const CycloScalar target = y->inverse();
      for (long k = 0; k < y_order && !mu; ++k) {
        const CycloScalar c = CycloScalar::root_of_unity(static_cast<int>(y_order), k);
        if (c.pow(orders[i]) == target) mu = c;
      }
      if (!mu) throw Error(ErrorCode::AssertionFailure, "no root of the scalar factor in Y");
      f.push_back(lift->scaled(*mu));
    }
    Similarity s = orbit_scaling(f, orders, n, conductor);
    const MonomialGroup conj = s.apply_monomial(gy);
    out.scalar_split_verified = std::all_of(conj.elements().begin(), conj.elements().end(),
                                            [&](const MonomialMatrix& x) { return scalar_factor(x, x_order, y_order).has_value(); });
    out.scalar_split = std::move(s);
  }

  out.pattern.attempted = gcd_long(x_order, nl) == 1;
  if (out.pattern.attempted) {
    std::vector<std::vector<const MonomialMatrix*>> candidates(a.size());
    nlohmann::json powers = nlohmann::json::array();
    bool missing = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::unordered_set<MonomialMatrix, ElementHash<MonomialMatrix>> values;
      for (const auto& x : g.elements()) {
        if (!(pattern(x) == a[i])) continue;
        const MonomialMatrix p = x.pow(orders[i]);
        if (p.is_identity()) candidates[i].push_back(&x);
        values.insert(p);
      }
      std::vector<std::string> listed;
      for (const auto& v : values) listed.push_back(v.to_string());
      std::sort(listed.begin(), listed.end());
      powers.push_back({{"generator", a[i].to_string()}, {"order", orders[i]}, {"powers", listed}});
      if (candidates[i].empty()) missing = true;
    }
    std::vector<const MonomialMatrix*> chosen;
    std::function<bool(std::size_t)> search = [&](std::size_t i) {
      if (i == a.size()) return true;
      for (const auto* c : candidates[i]) {
        bool ok = true;
        for (const auto* prev : chosen)
          if (!((*prev) * (*c) == (*c) * (*prev))) {
            ok = false;
            break;
          }
        if (!ok) continue;
        chosen.push_back(c);
        if (search(i + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (!missing && search(0)) {
      std::vector<MonomialMatrix> f;
      for (const auto* c : chosen) f.push_back(*c);
      Similarity s = orbit_scaling(f, orders, n, g.conductor());
      const MonomialGroup conj = s.apply_monomial(g);
      out.pattern.possible = std::all_of(a.begin(), a.end(), [&](const MonomialMatrix& p) { return conj.contains(p); });
      if (out.pattern.possible) out.pattern.similarity = std::move(s);
    }
    if (!out.pattern.possible) {
      out.pattern.certificate = {{"reason", missing ? "no lift of order dividing the generator order"
                                                    : "no commuting choice of lifts"},
                                 {"lifts", powers}};
      out.errors.push_back("SplitImpossible");
    }
  }
  return out;
}

// ---------------------------------------------------------- involutions

bool check_noncentral_involution(const MonomialGroup& g) {
  for (const auto& j : involution_set(g))
    for (const auto& x : g.generators())
      if (!(j * x == x * j)) return true;
  return false;
}

bool check_noncentral_involution(const DenseGroup& g) {
  for (const auto& j : involution_set(g))
    for (const auto& x : g.generators())
      if (!(j * x == x * j)) return true;
  return false;
}

}  // namespace monospec
