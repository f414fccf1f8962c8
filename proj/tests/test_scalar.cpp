#include <doctest.h>

#include <cmath>
#include <random>

#include "monospec/error.hpp"
#include "monospec/scalar.hpp"

using namespace monospec;

namespace {

// Remainder of x^k modulo a monic integer polynomial by schoolbook division.
std::vector<long long> power_mod(long k, const std::vector<long long>& modulus) {
  std::vector<long long> r(static_cast<std::size_t>(k) + 1, 0);
  r.back() = 1;
  const std::size_t d = modulus.size() - 1;
  for (std::size_t top = r.size(); top-- > d;) {
    const long long c = r[top];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j) r[top - d + j] -= c * modulus[j];
  }
  r.resize(d);
  return r;
}

CycloScalar random_scalar(std::mt19937_64& rng, int conductor) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), pw(0, conductor - 1), count(0, 3);
  std::vector<CycloScalar::Term> terms;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) terms.push_back({num(rng), den(rng), pw(rng)});
  return CycloScalar::from_terms(conductor, terms);
}

}  // namespace

TEST_CASE("cyclotomic reduction matches polynomial division") {
  // Phi_9 = x^6 + x^3 + 1
  const std::vector<long long> phi9{1, 0, 0, 1, 0, 0, 1};
  CHECK(cyclotomic_polynomial(9) == phi9);
  const auto expected = power_mod(6, phi9);
  const auto z6 = CycloScalar::root_of_unity(9, 6);
  REQUIRE(z6.coeffs().size() == 6);
  for (std::size_t j = 0; j < 6; ++j) CHECK(z6.coeffs()[j] == Rational(static_cast<long>(expected[j])));
  CHECK(z6 == CycloScalar(-1) - CycloScalar::root_of_unity(9, 3));
  for (int n : {5, 8, 12, 15}) {
    const auto phi = cyclotomic_polynomial(n);
    for (long k = 0; k < 2 * n; ++k) {
      const auto r = power_mod(k, phi);
      const auto z = CycloScalar::root_of_unity(n, k);
      for (std::size_t j = 0; j < r.size(); ++j) CHECK(z.coeffs()[j] == Rational(static_cast<long>(r[j])));
    }
  }
}

TEST_CASE("scalar arithmetic basics") {
  const auto z8 = CycloScalar::root_of_unity(8, 1);
  const CycloScalar half(Rational(1, 2));
  CHECK((half + z8) + (half - z8) == CycloScalar(1));
  const auto z3 = CycloScalar::root_of_unity(3, 1);
  CHECK((z3 * z3 * z3).is_one());
  CHECK(z3.pow(-1) == z3 * z3);
  CHECK_THROWS_AS(CycloScalar(0).inverse(), Error);
  // mixed conductors lift to the lcm
  const auto mixed = z3 * CycloScalar::root_of_unity(4, 1);
  CHECK(mixed.conductor() == 12);
  CHECK(mixed == CycloScalar::root_of_unity(12, 7));
  CHECK_THROWS_AS(z8.in_conductor(12), Error);
}

TEST_CASE("conjugation and reality") {
  const auto z4 = CycloScalar::root_of_unity(4, 1);
  CHECK(z4.conjugate() == -z4);
  CHECK(CycloScalar(Rational(3, 7)).conjugate() == CycloScalar(Rational(3, 7)));
  const auto z9 = CycloScalar::root_of_unity(9, 1);
  CHECK(z9.conjugate().conjugate() == z9);
  CHECK(CycloScalar(Rational(5, 3)).is_real_rational() == Rational(5, 3));
  CHECK_FALSE(CycloScalar::root_of_unity(3, 1).is_real_rational());
  CHECK(CycloScalar::root_of_unity(3, 1).reality() == Reality::non_real);
  const auto c5 = CycloScalar::root_of_unity(5, 1) + CycloScalar::root_of_unity(5, 4);
  CHECK_FALSE(c5.is_real_rational());
  CHECK(c5 == c5.conjugate());
  CHECK(c5.reality() == Reality::real_irrational);
  CHECK(std::abs(c5.numeric().value.real() - 2 * std::cos(2 * M_PI / 5)) < 1e-12);
}

TEST_CASE("numeric embedding") {
  const auto z6 = numeric_embed(CycloScalar::root_of_unity(6, 1));
  CHECK(std::abs(z6.value - std::complex<double>(0.5, std::sqrt(3.0) / 2)) < 1e-12);
  CHECK(z6.error < 1e-12);
  const auto m1 = numeric_embed(CycloScalar(-1));
  CHECK(m1.value == std::complex<double>(-1.0, 0.0));
  CHECK(m1.error == 0.0);
  const auto v = numeric_embed(CycloScalar(Rational(1, 3)) + CycloScalar::root_of_unity(8, 1));
  CHECK(std::abs(v.value - std::complex<double>(1.0 / 3 + std::sqrt(0.5), std::sqrt(0.5))) < 1e-12);
}

TEST_CASE("field laws on random samples") {
  std::mt19937_64 rng(7);
  for (int conductor : {1, 3, 4, 8, 9, 15}) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = random_scalar(rng, conductor);
      const auto b = random_scalar(rng, conductor);
      const auto c = random_scalar(rng, conductor);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      const auto na = numeric_embed(a), nb = numeric_embed(b), nab = numeric_embed(a * b);
      const double bound = nab.error + na.error * (std::abs(nb.value) + nb.error) + nb.error * std::abs(na.value) + 1e-12;
      CHECK(std::abs(nab.value - na.value * nb.value) <= bound);
      // equality iff identical coordinates after a round trip through terms
      CHECK(CycloScalar::from_terms(conductor, a.terms()) == a);
      CHECK(CycloScalar::from_terms(conductor, a.terms()).coeffs() == a.coeffs());
    }
  }
}
