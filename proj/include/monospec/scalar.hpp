#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace monospec {

using Rational = mpq_class;
using Integer = mpz_class;

std::size_t hash_value(const Integer& z) noexcept;
std::size_t hash_value(const Rational& q) noexcept;

long euler_phi(long n);
long gcd_long(long a, long b);
long lcm_long(long a, long b);

/// Reduction data for Q(zeta_N): the N-th cyclotomic polynomial and the
/// power basis images x^k mod Phi_N for every exponent the arithmetic needs.
struct CyclotomicTable {
  int conductor = 1;
  int phi = 1;
  std::vector<long long> cyclotomic;           // Phi_N, ascending, monic
  std::vector<std::vector<long long>> powers;  // powers[k] = x^k mod Phi_N
};

/// Cached per conductor; safe to call from several threads.
const CyclotomicTable& cyclotomic_table(int conductor);

/// Integer coefficients of Phi_N, ascending.
std::vector<long long> cyclotomic_polynomial(int conductor);

enum class Reality { rational, real_irrational, non_real };

struct NumericValue {
  std::complex<double> value;
  double error = 0.0;  // rigorous absolute bound on |value - exact|
};

/// Exact element of Q(zeta_N) in the power basis 1, z, ..., z^(phi(N)-1)
/// reduced modulo Phi_N. Equality is coefficient equality once both sides
/// live in the same conductor; mixed conductors are lifted to the lcm.
class CycloScalar {
 public:
  CycloScalar();
  CycloScalar(long value);  // NOLINT(google-explicit-constructor)
  explicit CycloScalar(Rational value, int conductor = 1);
  CycloScalar(int conductor, std::vector<Rational> coeffs);

  /// zeta_N^power for any integer power.
  static CycloScalar root_of_unity(int conductor, long power);

  struct Term {
    Integer numerator;
    Integer denominator;
    long power;
  };
  /// Sum of (num/den) * zeta_N^power, canonicalized.
  static CycloScalar from_terms(int conductor, const std::vector<Term>& terms);

  int conductor() const noexcept { return conductor_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_rational() const noexcept;
  /// True when every coordinate is an integer (an element of Z[zeta_N]).
  bool is_integral() const noexcept;

  /// Same value expressed in Q(zeta_M); M must be a multiple of N.
  CycloScalar in_conductor(int target) const;

  CycloScalar inverse() const;
  CycloScalar conjugate() const;
  CycloScalar pow(long exponent) const;

  std::optional<Rational> as_rational() const;
  Reality reality() const;
  /// Rational value when conjugation-fixed and in Q.
  std::optional<Rational> is_real_rational() const { return as_rational(); }

  NumericValue numeric() const;

  /// Nonzero terms as (num, den, power); empty for zero.
  std::vector<Term> terms() const;
  std::string to_string() const;

  std::size_t hash() const noexcept;

  CycloScalar operator-() const;
  CycloScalar& operator+=(const CycloScalar& other);
  CycloScalar& operator-=(const CycloScalar& other);
  CycloScalar& operator*=(const CycloScalar& other);
  CycloScalar& operator/=(const CycloScalar& other);

  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b);
  friend CycloScalar operator/(CycloScalar a, const CycloScalar& b) { return a /= b; }
  friend bool operator==(const CycloScalar& a, const CycloScalar& b);

 private:
  int conductor_ = 1;
  std::vector<Rational> coeffs_;
};

NumericValue numeric_embed(const CycloScalar& a);

struct CycloScalarHash {
  std::size_t operator()(const CycloScalar& a) const noexcept { return a.hash(); }
};

}  // namespace monospec
