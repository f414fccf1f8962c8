#include <doctest.h>

#include <random>

#include "monospec/matrix.hpp"

using namespace monospec;

namespace {

CycloScalar z(int n, long k) { return CycloScalar::root_of_unity(n, k); }

// Dense matrix built entry by entry from the column convention, independently
// of MonomialMatrix::to_dense.
std::vector<std::vector<CycloScalar>> dense_oracle(const std::vector<std::size_t>& perm,
                                                   const std::vector<CycloScalar>& w) {
  const std::size_t n = perm.size();
  std::vector<std::vector<CycloScalar>> m(n, std::vector<CycloScalar>(n, CycloScalar(0)));
  for (std::size_t i = 0; i < n; ++i) m[perm[i]][i] = w[i];
  return m;
}

std::vector<std::vector<CycloScalar>> mul_oracle(const std::vector<std::vector<CycloScalar>>& a,
                                                 const std::vector<std::vector<CycloScalar>>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<CycloScalar>> c(n, std::vector<CycloScalar>(n, CycloScalar(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

bool same(const DenseMatrix& m, const std::vector<std::vector<CycloScalar>>& o) {
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j)
      if (!(m(i, j) == o[i][j])) return false;
  return true;
}

MonomialMatrix random_monomial(std::mt19937_64& rng, std::size_t n, int conductor) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_int_distribution<long> pw(0, conductor - 1);
  std::vector<CycloScalar> w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(z(conductor, pw(rng)));
  return {perm, w};
}

}  // namespace

TEST_CASE("cycle matrix") {
  const auto c3 = cycle_matrix(3);
  CHECK(c3.perm() == std::vector<std::size_t>{1, 2, 0});
  const auto d = c3.to_dense();
  // ones on the subdiagonal and in the top-right corner
  CHECK(d(1, 0).is_one());
  CHECK(d(2, 1).is_one());
  CHECK(d(0, 2).is_one());
  CHECK(c3.pow(3).is_identity());
  CHECK(cycle_matrix(1).is_identity());
  CHECK(element_order(cycle_matrix(7)) == 7);
}

TEST_CASE("pattern and classification") {
  const MonomialMatrix j2c2({1, 0}, {CycloScalar(1), CycloScalar(-1)});
  CHECK(pattern(j2c2) == cycle_matrix(2));
  CHECK(pattern(MonomialMatrix::diagonal({z(8, 1), CycloScalar(3)})).is_identity());
  const auto xi_c3 = cycle_matrix(3).scaled(z(9, 1));
  CHECK(pattern(xi_c3) == cycle_matrix(3));
  CHECK(pattern(pattern(xi_c3)) == pattern(xi_c3));
  CHECK(classify(MonomialMatrix::scalar(2, CycloScalar(5))).kind() == "scalar");
  CHECK(classify(MonomialMatrix::scalar(2, CycloScalar(5))).diagonal);
  CHECK(classify(j2c2).kind() == "signed_permutation");
  CHECK(classify(xi_c3).kind() == "general");
}

TEST_CASE("tensor convention") {
  const auto t = tensor(cycle_matrix(2), MonomialMatrix::identity(2)).to_dense();
  // (i,j)-block is (C_2)_ij * I_2
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const bool one = (i / 2 != j / 2) && (i % 2 == j % 2);
      CHECK(t(i, j) == CycloScalar(one ? 1 : 0));
    }
  CHECK(tensor(MonomialMatrix::identity(3), MonomialMatrix::identity(4)).is_identity());
  // brute-force powering oracle for the order of C_2 (x) C_3
  const auto c = tensor(cycle_matrix(2), cycle_matrix(3)).to_dense();
  auto p = c;
  int order = 1;
  while (!p.is_identity()) {
    p = p * c;
    ++order;
  }
  CHECK(order == 6);
  CHECK(element_order(tensor(cycle_matrix(2), cycle_matrix(3))) == 6);
  // dense and monomial tensors agree
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_monomial(rng, 2, 4), b = random_monomial(rng, 3, 3);
    CHECK(tensor(a, b).to_dense() == tensor(a.to_dense(), b.to_dense()));
  }
}

TEST_CASE("monomial product and inverse agree with dense multiplication") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const auto a = random_monomial(rng, n, 12), b = random_monomial(rng, n, 12);
    const auto oa = dense_oracle(a.perm(), a.weights()), ob = dense_oracle(b.perm(), b.weights());
    CHECK(same(a.to_dense(), oa));
    CHECK(same((a * b).to_dense(), mul_oracle(oa, ob)));
    CHECK((a * a.inverse()).is_identity());
    CHECK(a.inverse().to_dense() == a.to_dense().inverse());
    CHECK(pattern(a * b) == pattern(a) * pattern(b));
    CHECK(determinant(a) * determinant(b) == determinant(a * b));
  }
  const auto c3 = cycle_matrix(3);
  CHECK((c3 * c3 * c3).is_identity());
  const auto g = MonomialMatrix::diagonal({CycloScalar(1), CycloScalar(-1), CycloScalar(-1)}) * c3;
  CHECK((g.inverse() * g).is_identity());
  const auto j1 = MonomialMatrix::diagonal({CycloScalar(-1), CycloScalar(1), CycloScalar(-1)});
  CHECK(pattern((j1 * c3) * (g)) == c3 * c3);
}

TEST_CASE("tensor determinant and associativity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_monomial(rng, 2, 8), b = random_monomial(rng, 3, 8), c = random_monomial(rng, 2, 8);
    CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
    CHECK(tensor_chain({a, b, c}) == tensor(a, tensor(b, c)));
    CHECK(determinant(tensor(a, b)) == determinant(a).pow(3) * determinant(b).pow(2));
  }
}

TEST_CASE("determinants") {
  CHECK(determinant(cycle_matrix(3)).is_one());
  CHECK(determinant(cycle_matrix(2)) == CycloScalar(-1));
  CHECK(determinant(MonomialMatrix::diagonal({CycloScalar(1), CycloScalar(-1), CycloScalar(-1)})).is_one());
  CHECK(determinant(MonomialMatrix::diagonal({CycloScalar(-1), CycloScalar(1), CycloScalar(1)})) == CycloScalar(-1));
}

TEST_CASE("diagonal signs") {
  const auto d = DiagonalSign::from_signs({1, -1, -1});
  CHECK(d.determinant() == 1);
  CHECK(d.to_monomial() == MonomialMatrix::diagonal({CycloScalar(1), CycloScalar(-1), CycloScalar(-1)}));
  CHECK(DiagonalSign::from_monomial(d.to_monomial()) == d);
  CHECK_FALSE(DiagonalSign::from_monomial(cycle_matrix(3)));
  const auto e = DiagonalSign::from_signs({-1, 1, -1});
  CHECK((d * e).to_monomial() == d.to_monomial() * e.to_monomial());
  // conjugated_by agrees with P^-1 D P
  const auto c = cycle_matrix(3);
  CHECK(d.conjugated_by(c.perm()).to_monomial() == c.inverse() * d.to_monomial() * c);
  CHECK(DiagonalSign::minus_identity(3).is_scalar());
  CHECK_FALSE(d.is_scalar());
}

TEST_CASE("dense inverse") {
  std::vector<CycloScalar> e{CycloScalar(2), CycloScalar(1), z(8, 1), CycloScalar(Rational(1, 3))};
  DenseMatrix m(2, e);
  CHECK((m * m.inverse()).is_identity());
  DenseMatrix singular(2, std::vector<CycloScalar>{CycloScalar(1), CycloScalar(2), CycloScalar(2), CycloScalar(4)});
  CHECK_THROWS(singular.inverse());
}
