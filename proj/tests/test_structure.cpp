#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <unordered_set>

#include "monospec/error.hpp"
#include "monospec/structure.hpp"

using namespace monospec;

namespace {

MonomialMatrix diag(std::initializer_list<long> v) {
  std::vector<CycloScalar> w;
  for (long x : v) w.emplace_back(x);
  return MonomialMatrix::diagonal(w);
}

DiagonalSign signs(std::initializer_list<int> v) { return DiagonalSign::from_signs(std::vector<int>(v)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::AssertionFailure;
}

DenseMatrix random_dense(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> pick(-3, 3);
  while (true) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, CycloScalar(pick(rng)));
    try {
      (void)m.inverse();
      return m;
    } catch (const Error&) {
    }
  }
}

// Random permutation times random weights drawn from +-1, +-2, +-1/3 and zeta_8 powers.
MonomialMatrix random_monomial(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<int> pick(0, 7);
  std::vector<CycloScalar> w;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational mags[] = {Rational(1), Rational(2), Rational(1, 3), Rational(-1)};
    w.push_back(CycloScalar(mags[pick(rng) % 4]) * CycloScalar::root_of_unity(8, pick(rng)));
  }
  return MonomialMatrix(perm, w);
}

std::vector<DenseMatrix> conjugate_all(const std::vector<DenseMatrix>& v, const DenseMatrix& s) {
  const DenseMatrix s_inv = s.inverse();
  std::vector<DenseMatrix> out;
  for (const auto& x : v) out.push_back(s_inv * x * s);
  return out;
}

MonomialGroup quaternion() {
  const auto i4 = CycloScalar::root_of_unity(4, 1);
  return MonomialGroup::closure(
      2, {MonomialMatrix::diagonal({i4, -i4}), MonomialMatrix({1, 0}, {CycloScalar(1), CycloScalar(-1)})});
}

// Number of x with x^m = 1, for every m dividing the order.
std::map<long, long> power_counts(const MonomialGroup& g) {
  std::map<long, long> out;
  const long order = static_cast<long>(g.order());
  for (long m = 1; m <= order; ++m) {
    if (order % m != 0) continue;
    long c = 0;
    for (const auto& x : g.elements())
      if (x.pow(m).is_identity()) ++c;
    out[m] = c;
  }
  return out;
}

std::map<long, long> power_counts(const std::vector<long>& factors, long order) {
  std::map<long, long> out;
  for (long m = 1; m <= order; ++m) {
    if (order % m != 0) continue;
    long c = 1;
    for (long d : factors) c *= std::gcd(m, d);
    out[m] = c;
  }
  return out;
}

MonomialGroup tensor_cycles(const std::vector<std::size_t>& orders) {
  std::vector<MonomialMatrix> gens;
  for (std::size_t j = 0; j < orders.size(); ++j) {
    std::vector<MonomialMatrix> f;
    for (std::size_t i = 0; i < orders.size(); ++i)
      f.push_back(i == j ? cycle_matrix(orders[i]) : MonomialMatrix::identity(orders[i]));
    gens.push_back(tensor_chain(f));
  }
  return MonomialGroup::closure(std::move(gens));
}

}  // namespace

TEST_CASE("similarity composition and kinds") {
  std::mt19937_64 rng(3);
  const auto a = Similarity::from_matrix(random_dense(3, rng));
  const auto b = Similarity::from_monomial(MonomialMatrix({2, 0, 1}, {CycloScalar(2), CycloScalar(1), CycloScalar(-1)}));
  CHECK(b.kind() == SimilarityKind::monomial);
  CHECK(Similarity::from_monomial(cycle_matrix(3)).kind() == SimilarityKind::permutation);
  CHECK(Similarity::from_monomial(diag({1, 2, 3})).kind() == SimilarityKind::diagonal);
  const auto ab = a.then(b);
  const DenseMatrix x = cycle_matrix(3).to_dense();
  CHECK(ab.apply(x) == b.apply(a.apply(x)));
  CHECK((ab.s() * ab.s_inv()).is_identity());
  CHECK_THROWS_AS(Similarity::from_matrix(DenseMatrix(3)), Error);
}

TEST_CASE("diagonalize commuting involutions") {
  std::mt19937_64 rng(11);
  const std::vector<DenseMatrix> diagonal{diag({1, -1, 1, -1}).to_dense(), diag({1, 1, -1, -1}).to_dense(),
                                          diag({-1, -1, -1, -1}).to_dense()};
  for (int trial = 0; trial < 10; ++trial) {
    const auto hidden = conjugate_all(diagonal, random_dense(4, rng));
    const Similarity s = diagonalize_involutions(hidden);
    for (const auto& j : hidden) {
      const DenseMatrix d = s.s_inv() * j * s.s();
      CHECK(d.is_diagonal());
      CHECK(is_involution(d));
    }
  }
  CHECK(diagonalize_involutions(diagonal).is_identity());
  const DenseMatrix swap = MonomialMatrix::permutation({1, 0}).to_dense();
  CHECK(code_of([&] { diagonalize_involutions({diag({1, -1}).to_dense(), swap}); }) == ErrorCode::NotCommuting);
  CHECK(code_of([&] { diagonalize_involutions({cycle_matrix(3).to_dense()}); }) == ErrorCode::NotInvolution);
}

TEST_CASE("Clifford blocks and block normalization") {
  // (C_3 (x) I_2)(J_3 (x) <C_2>), hidden by a block-diagonal rational similarity
  const auto i2 = MonomialMatrix::identity(2);
  const auto g0 = MonomialGroup::closure(
      6, {tensor(cycle_matrix(3), i2), tensor(diag({1, 1, -1}), i2), tensor(MonomialMatrix::identity(3), cycle_matrix(2))});
  CHECK(g0.order() == 48);
  std::mt19937_64 rng(5);
  const DenseMatrix hide = tensor(MonomialMatrix::identity(3).to_dense(), random_dense(2, rng));
  const DenseGroup g = DenseGroup::closure(6, conjugate_all(to_dense_group(g0).generators(), hide));

  std::vector<DenseMatrix> invs;
  for (const auto& d : {diag({1, 1, -1}), diag({1, -1, 1}), diag({-1, 1, 1})})
    invs.push_back(tensor(d, i2).to_dense());
  const auto b = clifford_decompose(g, invs);
  REQUIRE(b.classes.size() == 3);
  CHECK(b.classes[0] == std::vector<std::size_t>{0, 1});
  CHECK(b.classes[2] == std::vector<std::size_t>{4, 5});
  CHECK(b.block_size() == 2);

  const auto bn = block_normalize(g, b);
  CHECK(bn.h.order() == 4);
  CHECK(bn.h.contains(DenseMatrix::identity(2)));
  for (const auto& e : bn.conjugated.elements())
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const DenseMatrix blk = e.block(2 * i, 2 * j, 2);
        if (!blk.is_zero()) CHECK(bn.h.contains(blk));
      }
  CHECK(same_elements(bn.conjugated, bn.similarity.apply(g)));

  CHECK(code_of([&] { clifford_decompose(g, {DenseMatrix::scalar(6, CycloScalar(-1))}); }) == ErrorCode::ScalarJ);
  const auto mixed = DenseGroup::closure(6, {MonomialMatrix::permutation({1, 2, 3, 4, 5, 0}).to_dense()});
  CHECK(code_of([&] { clifford_decompose(mixed, invs); }) == ErrorCode::NotBlockMonomial);
}

TEST_CASE("abelian invariants") {
  const auto c = cycle_matrix(15);
  const auto c15 = MonomialGroup::closure(15, {c.pow(5), c.pow(3)});
  CHECK(abelian_invariants(c15).invariant_factors == std::vector<long>{15});
  const std::vector<std::pair<std::vector<std::size_t>, std::vector<long>>> cases{
      {{2, 2}, {2, 2}}, {{4, 2}, {4, 2}}, {{3, 5}, {15}}, {{2, 4, 3}, {12, 2}}, {{3, 3}, {3, 3}}};
  for (const auto& [orders, expected] : cases) {
    const auto k = tensor_cycles(orders);
    const auto smith = abelian_invariants(k);
    CHECK(smith.invariant_factors == expected);
    CHECK(power_counts(k) == power_counts(smith.invariant_factors, static_cast<long>(k.order())));
  }
  CHECK_THROWS_AS(abelian_invariants(quaternion()), Error);
}

TEST_CASE("monomialize abelian groups") {
  std::mt19937_64 rng(21);
  for (const auto& orders : std::vector<std::vector<std::size_t>>{{5}, {2, 2}, {4, 2}, {3, 3}, {9}}) {
    const auto t = tensor_cycles(orders);
    for (int trial = 0; trial < 4; ++trial) {
      const MonomialMatrix hide = random_monomial(t.n(), rng);
      std::vector<MonomialMatrix> gens;
      for (const auto& x : t.generators()) gens.push_back(hide.inverse() * x * hide);
      const auto k = MonomialGroup::closure(t.n(), gens);
      const auto am = monomialize_abelian(k);
      CHECK(am.similarity.kind() != SimilarityKind::general);
      long product = 1;
      for (long d : am.orders) product *= d;
      CHECK(product == static_cast<long>(t.order()));
      std::vector<std::size_t> sizes(am.orders.begin(), am.orders.end());
      const auto expected = tensor_cycles(sizes);
      std::vector<DenseMatrix> conj;
      for (const auto& x : k.generators()) conj.push_back(am.similarity.s_inv() * x.to_dense() * am.similarity.s());
      CHECK(same_elements(DenseGroup::closure(t.n(), conj), to_dense_group(expected)));
    }
  }
}

TEST_CASE("monomialize abelian: scaling is diag(1, d_1, d_1 d_2, ...) for a single cycle") {
  // D C_5 with det D = 1 so that (D C_5)^5 = I
  const std::vector<long> d{2, 3, -1, 5};
  std::vector<CycloScalar> w{CycloScalar(Rational(-1, 30))};
  for (long x : d) w.emplace_back(x);
  const auto h = MonomialMatrix::diagonal(w) * cycle_matrix(5);
  const auto am = monomialize_abelian(MonomialGroup::closure(5, {h}));
  REQUIRE(am.orders == std::vector<long>{5});
  CHECK(am.reindex.is_identity());
  Rational x = 1;
  CHECK(am.scaling.weight(0) == CycloScalar(x));
  for (std::size_t t = 1; t < 5; ++t) {
    x *= Rational(d[t - 1]);
    CHECK(am.scaling.weight(t) == CycloScalar(x));
  }
}

TEST_CASE("monomialize abelian preconditions") {
  const auto omega = CycloScalar::root_of_unity(3, 1);
  CHECK(code_of([&] { monomialize_abelian(MonomialGroup::closure(3, {cycle_matrix(3), MonomialMatrix::scalar(3, omega)})); }) ==
        ErrorCode::NontrivialDiagonal);
  CHECK(code_of([&] { monomialize_abelian(MonomialGroup::closure(4, {MonomialMatrix::permutation({1, 0, 3, 2})})); }) ==
        ErrorCode::NotIndecomposable);
  CHECK(code_of([&] { monomialize_abelian(quaternion()); }) == ErrorCode::NotAbelian);
}

TEST_CASE("odd complement") {
  for (long n : {3L, 5L, 7L}) {
    std::vector<int> v(static_cast<std::size_t>(n), 1);
    v[0] = v[1] = -1;
    const auto main = build_main_group(n, {DiagonalSign::from_signs(v)});
    const auto& g = main.group;
    const auto j = diagonal_subgroup(g);
    const auto k = find_odd_complement(g, j);
    CHECK(k.order() * j.order() == g.order());
    for (const auto& x : k.elements())
      if (!x.is_identity()) CHECK_FALSE(j.contains(x));
    std::unordered_set<MonomialMatrix, ElementHash<MonomialMatrix>> products;
    for (const auto& a : k.elements())
      for (const auto& b : j.elements()) products.insert(a * b);
    CHECK(products.size() == g.order());
  }
  const auto signed2 = MonomialGroup::closure(2, {MonomialMatrix::permutation({1, 0}), diag({1, -1})});
  CHECK(code_of([&] { find_odd_complement(signed2, diagonal_subgroup(signed2)); }) == ErrorCode::EvenQuotient);
  const auto j3 = MonomialGroup::closure(3, {diag({-1, 1, 1}), diag({1, -1, 1}), diag({1, 1, -1})});
  CHECK(find_odd_complement(j3, j3).order() == 1);
}

TEST_CASE("recover structure from hidden main groups") {
  std::mt19937_64 rng(2024);
  struct Case {
    long n;
    std::vector<DiagonalSign> d;
  };
  const std::vector<Case> cases{{3, {signs({-1, -1, 1})}},
                                {3, {signs({-1, -1, 1}), signs({-1, -1, -1})}},
                                {5, {signs({-1, -1, 1, 1, 1})}},
                                {5, {signs({-1, 1, 1, 1, 1})}}};
  for (const auto& c : cases) {
    const auto main = build_main_group(c.n, c.d);
    for (int trial = 0; trial < 2; ++trial) {
      const MonomialMatrix hide = random_monomial(static_cast<std::size_t>(c.n), rng);
      std::vector<MonomialMatrix> gens;
      for (const auto& x : main.group.generators()) gens.push_back(hide.inverse() * x * hide);
      const auto input = MonomialGroup::closure(static_cast<std::size_t>(c.n), gens);
      const auto report = recover_structure(input);
      REQUIRE(report.outcome == Outcome::theorem_form);
      CHECK(report.n == c.n);
      CHECK(report.d_basis.order() == main.d.order());
      REQUIRE(report.normal_form);
      CHECK(same_elements(*report.normal_form, main.group));
      std::vector<DenseMatrix> back;
      for (const auto& x : report.normal_form->elements())
        back.push_back(report.similarity->s() * x.to_dense() * report.similarity->s_inv());
      CHECK(same_elements(DenseGroup::closure(input.n(), back), to_dense_group(input)));
    }
  }
}

TEST_CASE("recover structure from a dense hidden group") {
  std::mt19937_64 rng(77);
  const auto main = build_main_group(3, {signs({-1, -1, 1})});
  const DenseMatrix hide = random_dense(3, rng);
  const auto input = DenseGroup::closure(3, conjugate_all(to_dense_group(main.group).generators(), hide));
  const auto report = recover_structure(input);
  REQUIRE(report.outcome == Outcome::theorem_form);
  CHECK(same_elements(*report.normal_form, main.group));
  CHECK(report.similarity->kind() == SimilarityKind::general);
  for (const auto& x : input.generators())
    CHECK(report.normal_form->contains(*MonomialMatrix::from_dense(report.similarity->apply(x))));
}

TEST_CASE("recover structure: other outcomes") {
  const auto q = recover_structure(quaternion());
  CHECK(q.outcome == Outcome::counterexample);
  CHECK(q.stage == "commutators");
  CHECK(q.certificate["char_poly"] == "x^2 + 4");

  const auto reducible = MonomialGroup::closure(3, {diag({-1, 1, 1}), diag({1, -1, 1})});
  const auto r = recover_structure(reducible);
  CHECK(r.outcome == Outcome::not_irreducible);
  CHECK(r.span_dimension == 3);

  CHECK(recover_structure(MonomialGroup::closure(1, {diag({-1})})).outcome == Outcome::not_applicable);

  // D outside J_9: C_9-stable span of diag(-1,-1,1,...,1)
  std::vector<MonomialMatrix> gens{cycle_matrix(9), diag({-1, -1, 1, 1, 1, 1, 1, 1, 1})};
  const auto outside = MonomialGroup::closure(9, gens);
  CHECK(recover_structure(outside).outcome == Outcome::counterexample);

  // scalar D: abelian, hence reducible
  const auto scalar_d = MonomialGroup::closure(3, {cycle_matrix(3), diag({-1, -1, -1})});
  CHECK(recover_structure(scalar_d).outcome == Outcome::not_irreducible);
}

TEST_CASE("verify theorem case split") {
  const auto t3 = verify_theorem(3, {signs({-1, -1, 1})});
  CHECK(t3.scan.verdict == Verdict::yes);
  CHECK(t3.case_split_holds);
  CHECK(t3.diagonal_pairs + t3.nondiagonal_pairs == 66);
  const auto t5 = verify_theorem(5, {signs({-1, 1, 1, 1, 1})});
  CHECK(t5.main.group.order() == 160);
  CHECK(t5.scan.verdict == Verdict::yes);
  CHECK(t5.case_split_holds);
  CHECK(t5.diagonal_pairs + t5.nondiagonal_pairs == 160 * 159 / 2);
  ScanOptions sample;
  sample.sample = 2000;
  sample.seed = 9;
  const auto t7 = verify_theorem(7, {signs({-1, -1, 1, 1, 1, 1, 1})}, sample);
  CHECK(t7.case_split_holds);
  CHECK(t7.diagonal_pairs + t7.nondiagonal_pairs == 2000);
  CHECK(code_of([] { verify_theorem(4, {}); }) == ErrorCode::EvenN);
}

TEST_CASE("commutator subgroup of involutions versus scalar signed form") {
  const auto c3j3 = MonomialGroup::closure(3, {cycle_matrix(3), diag({1, 1, -1})});
  const auto a = check_commutator_involutions(c3j3);
  CHECK(a.commutators_are_involutions);
  CHECK(a.scalar_signed_form);
  CHECK(a.commutative_pattern);
  CHECK(a.agree);

  const auto q = check_commutator_involutions(quaternion());
  CHECK(q.commutator_subgroup_order == 2);
  CHECK(q.commutators_are_involutions);
  CHECK(q.agree);

  const auto s3 = MonomialGroup::closure(3, {cycle_matrix(3), MonomialMatrix::permutation({1, 0, 2})});
  const auto b = check_commutator_involutions(s3);
  CHECK_FALSE(b.commutators_are_involutions);
  CHECK_FALSE(b.commutative_pattern);
  CHECK(b.agree);

  const auto abelian = MonomialGroup::closure(2, {cycle_matrix(2).scaled(CycloScalar::root_of_unity(3, 1))});
  const auto c = check_commutator_involutions(abelian);
  CHECK(c.commutator_subgroup_order == 1);
  CHECK(c.scalar_signed_form);
  CHECK(c.agree);
}

TEST_CASE("scalar splitting: the n = 3, zeta_9 example") {
  const auto xi = CycloScalar::root_of_unity(9, 1);
  const auto g = MonomialGroup::closure(3, {cycle_matrix(3).scaled(xi), diag({-1, 1, 1}), diag({1, -1, 1})});
  CHECK(g.order() == 72);
  const auto report = split_scalars(g, 2, 3);
  CHECK_FALSE(report.divisible);
  CHECK_FALSE(report.scalar_split);
  CHECK(report.pattern.attempted);
  CHECK_FALSE(report.pattern.possible);
  CHECK(report.errors == std::vector<std::string>{"NotDivisible", "SplitImpossible"});

  // oracle: every lift of the 3-cycle pattern cubes to a scalar other than +-I
  for (const auto& x : g.elements()) {
    if (!(pattern(x) == cycle_matrix(3))) continue;
    const auto c = x.pow(3);
    CHECK(c.is_scalar());
    CHECK_FALSE(c.is_identity());
    CHECK_FALSE(c == MonomialMatrix::scalar(3, CycloScalar(-1)).with_conductor(c.conductor()));
  }
  const auto& lifts = report.pattern.certificate["lifts"];
  REQUIRE(lifts.size() == 1);
  CHECK(lifts[0]["powers"].size() == 2);
}

TEST_CASE("scalar splitting: splittable groups") {
  // C_3 J_3 hidden by a rational diagonal similarity
  const auto hide = diag({1, 4, -2});
  std::vector<MonomialMatrix> gens;
  for (const auto& x : {cycle_matrix(3), diag({1, -1, -1})}) gens.push_back(hide.inverse() * x * hide);
  const auto g = MonomialGroup::closure(3, gens);
  const auto report = split_scalars(g, 2, 2);
  CHECK(report.divisible);
  CHECK(report.y_adjoined);
  REQUIRE(report.scalar_split);
  CHECK(report.scalar_split->kind() == SimilarityKind::diagonal);
  CHECK(report.scalar_split_verified);
  CHECK(report.pattern.possible);
  REQUIRE(report.pattern.similarity);
  CHECK(report.pattern.similarity->apply_monomial(g).contains(cycle_matrix(3)));
  CHECK(report.errors.empty());

  const auto adjoined = split_scalars(MonomialGroup::closure(3, {cycle_matrix(3), diag({1, -1, -1})}), 2, 5);
  CHECK(adjoined.y_adjoined);
  CHECK(adjoined.scalar_split_verified);
  CHECK(code_of([&] { split_scalars(MonomialGroup::closure(4, {MonomialMatrix::permutation({1, 0, 3, 2})}), 2, 1); }) ==
        ErrorCode::NotIndecomposable);
}

TEST_CASE("noncentral involutions") {
  CHECK(check_noncentral_involution(MonomialGroup::closure(3, {cycle_matrix(3), diag({1, -1, -1})})));
  CHECK_FALSE(check_noncentral_involution(MonomialGroup::closure(3, {cycle_matrix(3), diag({-1, -1, -1})})));
  CHECK_FALSE(check_noncentral_involution(quaternion()));
  CHECK(check_noncentral_involution(to_dense_group(MonomialGroup::closure(3, {cycle_matrix(3), diag({1, -1, -1})}))));
}
