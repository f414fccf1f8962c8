#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monospec/group.hpp"
#include "monospec/matrix.hpp"
#include "monospec/scalar.hpp"

namespace monospec {

/// Polynomial with rational coefficients, ascending; empty means zero.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> ascending);
  static RationalPoly monomial(long degree, Rational coeff = 1);

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const Rational& leading() const { return coeffs_.back(); }

  RationalPoly derivative() const;
  RationalPoly monic() const;
  Rational eval(const Rational& x) const;

  /// Quotient and remainder; throws DivisionByZero on a zero divisor.
  std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& d) const;
  static RationalPoly gcd(RationalPoly a, RationalPoly b);
  /// p / gcd(p, p'), monic.
  RationalPoly squarefree() const;

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Polynomial over Q(zeta_N), ascending; coefficients share one conductor.
class CycloPoly {
 public:
  CycloPoly() = default;
  explicit CycloPoly(std::vector<CycloScalar> ascending);
  static CycloPoly from_rational(const RationalPoly& p);

  const std::vector<CycloScalar>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  int conductor() const noexcept;

  std::optional<RationalPoly> as_rational() const;
  /// True when every coefficient is fixed by complex conjugation.
  bool is_real() const;
  bool is_power_of_x() const;

  friend bool operator==(const CycloPoly& a, const CycloPoly& b) { return a.coeffs_ == b.coeffs_; }
  std::string to_string() const;

 private:
  std::vector<CycloScalar> coeffs_;
};

/// det(xI - M) by the division-free Berkowitz recurrence. Integral inputs
/// use a fixed-width kernel and fall back to exact arithmetic on overflow.
CycloPoly char_poly(const DenseMatrix& m);
CycloPoly char_poly(const MonomialMatrix& m);

DenseMatrix ring_commutator(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix ring_commutator(const MonomialMatrix& a, const MonomialMatrix& b);
/// Characteristic polynomial of AB - BA computed without densifying A and B.
CycloPoly commutator_char_poly(const MonomialMatrix& a, const MonomialMatrix& b);

/// Distinct real roots, in (lo, hi] when an interval is given.
long sturm_real_root_count(const RationalPoly& p,
                           const std::optional<std::pair<Rational, Rational>>& interval = std::nullopt);

enum class RootVerdict { yes, no, real_irrational_coeffs };
RootVerdict has_all_real_roots(const CycloPoly& p);

enum class Verdict { yes, no, undetermined };
std::string to_string(Verdict v);

struct SpectrumVerdict {
  Verdict verdict = Verdict::undetermined;
  bool numeric = false;  // decided by the certified numeric path
  CycloPoly char_poly;
};

inline constexpr double kDefaultTolerance = 1e-10;

/// Certified count of distinct real roots for a polynomial with real
/// (conjugation-fixed) coefficients: exact Sturm chain over Q(zeta_N) with
/// signs read from error-bounded embeddings. Nullopt when a sign is within
/// the tolerance of zero.
std::optional<long> numeric_real_root_count(const CycloPoly& p, double tolerance = kDefaultTolerance);

SpectrumVerdict decide_real_roots(const CycloPoly& p, bool numeric_fallback, double tolerance = kDefaultTolerance);
SpectrumVerdict has_real_spectrum(const DenseMatrix& m, bool numeric_fallback = true,
                                  double tolerance = kDefaultTolerance);

bool is_nilpotent(const DenseMatrix& m);
bool is_involution(const DenseMatrix& m);
bool is_involution(const MonomialMatrix& m);

struct ScanOptions {
  std::optional<std::uint64_t> sample;  // number of random pairs; exhaustive when absent
  std::uint64_t seed = 0;
  std::uint64_t pair_budget = 50'000'000;
  bool numeric_fallback = true;
  double tolerance = kDefaultTolerance;
};

struct CommutatorWitness {
  std::size_t i = 0, j = 0;  // element indices in enumeration order
  DenseMatrix a, b;
  CycloPoly char_poly;
};

struct CommutatorScan {
  Verdict verdict = Verdict::yes;
  std::uint64_t pairs_checked = 0;
  std::uint64_t commuting_skipped = 0;
  std::uint64_t distinct_char_polys = 0;
  bool numeric = false;
  bool sampled = false;
  std::optional<CommutatorWitness> witness;
};

/// Decides whether AB - BA has real spectrum for all pairs (exhaustive over
/// unordered pairs i < j) or for a seeded sample; stops at the first failure.
CommutatorScan all_commutators_real(const MonomialGroup& g, const ScanOptions& options = {});
CommutatorScan all_commutators_real(const DenseGroup& g, const ScanOptions& options = {});

}  // namespace monospec
