#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "monospec/error.hpp"
#include "monospec/jfamily.hpp"
#include "monospec/spectra.hpp"

using namespace monospec;

namespace {

RationalPoly rp(std::initializer_list<long> ascending) {
  std::vector<Rational> c;
  for (long x : ascending) c.emplace_back(x);
  return RationalPoly(c);
}

CycloPoly cp(std::initializer_list<long> ascending) { return CycloPoly::from_rational(rp(ascending)); }

DenseMatrix dense(std::size_t n, std::initializer_list<long> row_major) {
  std::vector<CycloScalar> e;
  for (long x : row_major) e.emplace_back(x);
  return DenseMatrix(n, e);
}

MonomialMatrix diag(std::initializer_list<long> v) {
  std::vector<CycloScalar> w;
  for (long x : v) w.emplace_back(x);
  return MonomialMatrix::diagonal(w);
}

DenseMatrix random_dense(std::mt19937_64& rng, std::size_t n, int conductor, bool rational_entries) {
  std::uniform_int_distribution<long> num(-4, 4), den(1, 3), pw(0, conductor - 1);
  std::vector<CycloScalar> e;
  for (std::size_t k = 0; k < n * n; ++k) {
    CycloScalar x(Rational(num(rng), rational_entries ? den(rng) : 1));
    if (conductor > 1) x *= CycloScalar::root_of_unity(conductor, pw(rng));
    e.push_back(x);
  }
  return DenseMatrix(n, e);
}

MonomialGroup quaternion() {
  const auto i4 = CycloScalar::root_of_unity(4, 1);
  return MonomialGroup::closure(
      2, {MonomialMatrix::diagonal({i4, -i4}), MonomialMatrix({1, 0}, {CycloScalar(1), CycloScalar(-1)})});
}

// Roots x^a (x-2)^b (x+2)^c only.
bool roots_in_pm2_zero(RationalPoly p) {
  const RationalPoly factors[] = {rp({0, 1}), rp({-2, 1}), rp({2, 1})};
  bool progress = true;
  while (p.degree() > 0 && progress) {
    progress = false;
    for (const auto& f : factors) {
      auto [q, r] = p.divmod(f);
      if (r.is_zero()) {
        p = q;
        progress = true;
      }
    }
  }
  return p.degree() == 0;
}

}  // namespace

TEST_CASE("characteristic polynomials") {
  CHECK(char_poly(cycle_matrix(3)) == cp({-1, 0, 0, 1}));
  CHECK(char_poly(diag({1, -1}).to_dense()) == cp({-1, 0, 1}));
  const auto j = diag({1, -1});
  const auto c2 = cycle_matrix(2);
  const auto comm = ring_commutator(j.to_dense(), c2.to_dense());
  CHECK(comm == dense(2, {0, 2, -2, 0}));
  CHECK(ring_commutator(j, c2) == comm);
  CHECK(char_poly(comm) == cp({4, 0, 1}));
  CHECK(commutator_char_poly(j, c2) == cp({4, 0, 1}));
  CHECK(ring_commutator(c2.to_dense(), c2.to_dense()).is_zero());
  CHECK(ring_commutator(j.to_dense(), diag({3, 5}).to_dense()).is_zero());
  CHECK(char_poly(DenseMatrix(3)).is_power_of_x());
}

TEST_CASE("fast and exact characteristic polynomial paths agree") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int conductor = trial % 3 == 0 ? 1 : (trial % 3 == 1 ? 4 : 9);
    const auto m = random_dense(rng, 4, conductor, trial % 2 == 0);
    // Faddeev-LeVerrier over the exact field as an independent oracle
    const std::size_t n = m.n();
    std::vector<CycloScalar> c(n + 1, CycloScalar(0));
    c[n] = CycloScalar(1);
    DenseMatrix mk = DenseMatrix::identity(n, m.conductor());
    DenseMatrix ak(n, m.conductor());
    for (std::size_t k = 1; k <= n; ++k) {
      ak = m * mk;
      CycloScalar tr(0);
      for (std::size_t i = 0; i < n; ++i) tr += ak(i, i);
      c[n - k] = -tr / CycloScalar(static_cast<long>(k));
      mk = ak + DenseMatrix::scalar(n, c[n - k]);
    }
    CHECK(char_poly(m) == CycloPoly(c));
  }
}

TEST_CASE("similarity invariance") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    const auto m = random_dense(rng, 4, 8, false);
    auto s = random_dense(rng, 4, 1, true);
    for (std::size_t i = 0; i < 4; ++i) s.set(i, i, s(i, i) + CycloScalar(10));
    CHECK(char_poly(s.inverse() * m * s) == char_poly(m));
  }
}

TEST_CASE("exact characteristic polynomial vanishes at numeric eigenvalues") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_dense(rng, 4, trial % 2 ? 8 : 1, true);
    Eigen::Matrix4cd e;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) e(static_cast<int>(i), static_cast<int>(j)) = numeric_embed(m(i, j)).value;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(e);
    const auto p = char_poly(m);
    for (int k = 0; k < 4; ++k) {
      const std::complex<double> lambda = solver.eigenvalues()(k);
      std::complex<double> acc = 0;
      double scale = 0;
      for (std::size_t d = p.coeffs().size(); d-- > 0;) {
        acc = acc * lambda + numeric_embed(p.coeffs()[d]).value;
        scale = scale * std::abs(lambda) + std::abs(numeric_embed(p.coeffs()[d]).value);
      }
      CHECK(std::abs(acc) <= 1e-8 * (1 + scale));
    }
  }
}

TEST_CASE("Sturm counts") {
  CHECK(sturm_real_root_count(rp({1, 0, 1})) == 0);
  CHECK(sturm_real_root_count(rp({0, -1, 0, 1})) == 3);
  CHECK(sturm_real_root_count(rp({-2, 0, 1})) == 2);
  CHECK(sturm_real_root_count(rp({0, -1, 0, 1}), std::make_pair(Rational(0), Rational(2))) == 1);
  CHECK(sturm_real_root_count(rp({0, -1, 0, 1}), std::make_pair(Rational(-1), Rational(1))) == 2);
  CHECK_THROWS_AS(sturm_real_root_count(RationalPoly()), Error);
  // (x-1)^2 (x+2)
  CHECK(sturm_real_root_count(rp({2, -3, 0, 1})) == 2);

  std::mt19937_64 rng(47);
  std::uniform_int_distribution<long> coef(-6, 6);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> c;
    for (int k = 0; k < 5; ++k) c.emplace_back(coef(rng));
    c.emplace_back(1);
    const RationalPoly p(c);
    CHECK(sturm_real_root_count(p * rp({1, 0, 1})) == sturm_real_root_count(p));
    // product of linear factors: all roots real
    const RationalPoly q = rp({coef(rng), 1}) * rp({coef(rng), 1}) * rp({coef(rng), 1});
    CHECK(has_all_real_roots(CycloPoly::from_rational(q)) == RootVerdict::yes);
  }
}

TEST_CASE("real root decisions") {
  CHECK(has_all_real_roots(cp({-1, 0, 0, 1})) == RootVerdict::no);
  CHECK(has_all_real_roots(cp({2, -3, 0, 1})) == RootVerdict::yes);
  CHECK(has_all_real_roots(cp({4, 0, 1})) == RootVerdict::no);
  CHECK_THROWS_AS(has_all_real_roots(CycloPoly()), Error);
  const auto i4 = CycloScalar::root_of_unity(4, 1);
  CHECK(has_all_real_roots(CycloPoly({i4, CycloScalar(1)})) == RootVerdict::no);

  // x^2 - 2cos(2pi/5) has two real roots, x^2 + 2cos(2pi/5) none
  const auto c5 = CycloScalar::root_of_unity(5, 1) + CycloScalar::root_of_unity(5, 4);
  const CycloPoly real_roots({-c5, CycloScalar(0), CycloScalar(1)});
  const CycloPoly no_roots({c5, CycloScalar(0), CycloScalar(1)});
  CHECK(has_all_real_roots(real_roots) == RootVerdict::real_irrational_coeffs);
  const auto v1 = decide_real_roots(real_roots, true);
  CHECK(v1.verdict == Verdict::yes);
  CHECK(v1.numeric);
  CHECK(decide_real_roots(no_roots, true).verdict == Verdict::no);
  CHECK(decide_real_roots(no_roots, false).verdict == Verdict::undetermined);
  CHECK(numeric_real_root_count(real_roots) == 2);
  // a double root with irrational coefficients: (x - c5)^2
  const CycloPoly double_root({c5 * c5, CycloScalar(-2) * c5, CycloScalar(1)});
  CHECK(decide_real_roots(double_root, true).verdict == Verdict::yes);
}

TEST_CASE("spectrum predicates") {
  CHECK(has_real_spectrum(diag({1, -1, -1}).to_dense()).verdict == Verdict::yes);
  CHECK(has_real_spectrum(dense(2, {0, 2, -2, 0})).verdict == Verdict::no);
  CHECK(has_real_spectrum(dense(3, {0, 1, 5, 0, 0, 7, 0, 0, 0})).verdict == Verdict::yes);
  CHECK(is_nilpotent(((diag({1, -1, -1}).to_dense() - DenseMatrix::identity(3)) * cycle_matrix(3).to_dense())));
  CHECK_FALSE(is_nilpotent(cycle_matrix(3).to_dense()));
  CHECK(is_nilpotent(DenseMatrix(3)));
  CHECK(is_involution(diag({1, -1})));
  CHECK_FALSE(is_involution(cycle_matrix(3)));
  CHECK(is_involution(cycle_matrix(2)));
}

TEST_CASE("commutator scans") {
  const auto g = build_main_group(3, {DiagonalSign::from_signs({-1, 1, 1}), DiagonalSign::minus_identity(3)}).group;
  const auto scan = all_commutators_real(g);
  CHECK(scan.verdict == Verdict::yes);
  CHECK(scan.pairs_checked == 24 * 23 / 2);
  CHECK_FALSE(scan.numeric);
  // the dense path agrees
  CHECK(all_commutators_real(to_dense_group(g)).verdict == Verdict::yes);

  const auto q = all_commutators_real(quaternion());
  CHECK(q.verdict == Verdict::no);
  REQUIRE(q.witness);
  CHECK(q.witness->char_poly == cp({4, 0, 1}));
  CHECK(char_poly(ring_commutator(q.witness->a, q.witness->b)) == cp({4, 0, 1}));
  CHECK(all_commutators_real(to_dense_group(quaternion())).verdict == Verdict::no);

  const auto abelian = MonomialGroup::closure(5, {cycle_matrix(5)});
  const auto a = all_commutators_real(abelian);
  CHECK(a.verdict == Verdict::yes);
  CHECK(a.commuting_skipped == a.pairs_checked);

  ScanOptions sample;
  sample.sample = 200;
  sample.seed = 9;
  const auto s1 = all_commutators_real(g, sample);
  const auto s2 = all_commutators_real(g, sample);
  CHECK(s1.sampled);
  CHECK(s1.pairs_checked == 200);
  CHECK(s1.verdict == s2.verdict);
  CHECK(s1.commuting_skipped == s2.commuting_skipped);

  ScanOptions tight;
  tight.pair_budget = 10;
  CHECK_THROWS_AS(all_commutators_real(g, tight), Error);
}

TEST_CASE("proof case split and nilpotency lemma for n = 3") {
  const auto g = build_main_group(3, {DiagonalSign::from_signs({-1, 1, 1}), DiagonalSign::minus_identity(3)}).group;
  for (const auto& a : g.elements())
    for (const auto& b : g.elements()) {
      const auto p = *commutator_char_poly(a, b).as_rational();
      if ((a * b).is_diagonal()) CHECK(roots_in_pm2_zero(p));
      else CHECK(p == RationalPoly::monomial(3));
    }
  for (const auto& x : g.elements())
    for (const auto& y : g.elements()) {
      if (!x.is_diagonal() || !y.is_diagonal() || !(determinant(x) == determinant(y))) continue;
      for (const auto& h : g.elements())
        if (!h.is_diagonal()) CHECK(is_nilpotent((x.to_dense() - y.to_dense()) * h.to_dense()));
    }
}
