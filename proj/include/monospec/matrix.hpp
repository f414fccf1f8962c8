#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "monospec/gf2.hpp"
#include "monospec/scalar.hpp"

namespace monospec {

/// Square matrix of exact cyclotomic entries stored row-major. All entries
/// share one conductor so that equality and hashing are coefficient-wise.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, int conductor = 1);
  DenseMatrix(std::size_t n, std::vector<CycloScalar> row_major);

  static DenseMatrix identity(std::size_t n, int conductor = 1);
  static DenseMatrix scalar(std::size_t n, const CycloScalar& value);

  std::size_t n() const noexcept { return n_; }
  int conductor() const noexcept { return conductor_; }

  const CycloScalar& operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  /// Writes an entry, lifting the matrix or the value to a shared conductor.
  void set(std::size_t row, std::size_t col, const CycloScalar& value);

  const std::vector<CycloScalar>& entries() const noexcept { return entries_; }

  DenseMatrix with_conductor(int conductor) const;

  bool is_zero() const;
  bool is_identity() const;
  bool is_diagonal() const;
  bool is_monomial() const;

  /// Exact Gauss-Jordan inverse; throws DivisionByZero when singular.
  DenseMatrix inverse() const;

  /// Square sub-block starting at (row, col).
  DenseMatrix block(std::size_t row, std::size_t col, std::size_t size) const;

  DenseMatrix transpose() const;

  std::size_t hash() const noexcept;

  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator*(const CycloScalar& s, const DenseMatrix& a);
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b);

  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  int conductor_ = 1;
  std::vector<CycloScalar> entries_;
};

/// Invertible monomial matrix in column convention: M e_i = weight[i] e_perm[i]
/// (zero-based indices). The dense rendering has weight[i] at (perm[i], i).
class MonomialMatrix {
 public:
  MonomialMatrix() = default;
  MonomialMatrix(std::vector<std::size_t> perm, std::vector<CycloScalar> weights);

  static MonomialMatrix identity(std::size_t n, int conductor = 1);
  static MonomialMatrix diagonal(std::vector<CycloScalar> weights);
  static MonomialMatrix permutation(std::vector<std::size_t> perm, int conductor = 1);
  static MonomialMatrix scalar(std::size_t n, const CycloScalar& value);

  /// Monomial form of a dense matrix, or nullopt when it is not monomial.
  static std::optional<MonomialMatrix> from_dense(const DenseMatrix& m);

  std::size_t n() const noexcept { return perm_.size(); }
  int conductor() const noexcept { return conductor_; }
  const std::vector<std::size_t>& perm() const noexcept { return perm_; }
  const std::vector<CycloScalar>& weights() const noexcept { return weights_; }
  std::size_t image(std::size_t i) const { return perm_[i]; }
  const CycloScalar& weight(std::size_t i) const { return weights_[i]; }

  MonomialMatrix with_conductor(int conductor) const;

  bool is_identity() const;
  bool is_diagonal() const;
  bool is_scalar() const;
  bool is_permutation() const;
  bool is_signed_permutation() const;

  MonomialMatrix inverse() const;
  MonomialMatrix pow(long exponent) const;
  MonomialMatrix scaled(const CycloScalar& s) const;
  DenseMatrix to_dense() const;

  std::size_t hash() const noexcept;

  friend MonomialMatrix operator*(const MonomialMatrix& a, const MonomialMatrix& b);
  friend bool operator==(const MonomialMatrix& a, const MonomialMatrix& b);

  std::string to_string() const;

 private:
  int conductor_ = 1;
  std::vector<std::size_t> perm_;
  std::vector<CycloScalar> weights_;
};

/// Signed diagonal matrix encoded over GF(2): bit i set means entry i is -1.
class DiagonalSign {
 public:
  DiagonalSign() = default;
  explicit DiagonalSign(std::size_t n) : bits_(n) {}
  explicit DiagonalSign(BitVector bits) : bits_(std::move(bits)) {}
  /// From explicit signs in {+1, -1}.
  static DiagonalSign from_signs(const std::vector<int>& signs);
  static DiagonalSign minus_identity(std::size_t n);
  /// Nullopt unless m is diagonal with entries in {+1, -1}.
  static std::optional<DiagonalSign> from_monomial(const MonomialMatrix& m);

  std::size_t n() const noexcept { return bits_.size(); }
  const BitVector& bits() const noexcept { return bits_; }
  int sign(std::size_t i) const { return bits_.get(i) ? -1 : 1; }
  int determinant() const { return bits_.count() % 2 == 0 ? 1 : -1; }
  bool is_identity() const { return bits_.none(); }
  bool is_scalar() const;

  /// P^{-1} J P for a permutation pattern P (column convention).
  DiagonalSign conjugated_by(const std::vector<std::size_t>& perm) const;

  MonomialMatrix to_monomial(int conductor = 1) const;

  friend DiagonalSign operator*(const DiagonalSign& a, const DiagonalSign& b) {
    return DiagonalSign(a.bits_ ^ b.bits_);
  }
  friend bool operator==(const DiagonalSign& a, const DiagonalSign& b) { return a.bits_ == b.bits_; }

 private:
  BitVector bits_;
};

MonomialMatrix cycle_matrix(std::size_t n);
MonomialMatrix pattern(const MonomialMatrix& m);

/// Block matrix whose (i,j) block is a_ij * b.
MonomialMatrix tensor(const MonomialMatrix& a, const MonomialMatrix& b);
DenseMatrix tensor(const DenseMatrix& a, const DenseMatrix& b);
/// a_1 (x) (a_2 (x) (... (x) a_k)).
MonomialMatrix tensor_chain(const std::vector<MonomialMatrix>& factors);

/// Sign of a permutation given as images.
int permutation_sign(const std::vector<std::size_t>& perm);
CycloScalar determinant(const MonomialMatrix& m);

struct MatrixClass {
  bool diagonal = false;
  bool scalar = false;
  bool signed_permutation = false;
  bool permutation = false;
  /// Most specific of "scalar", "diagonal", "signed_permutation", "general".
  std::string kind() const;
};
MatrixClass classify(const MonomialMatrix& m);

/// Multiplicative order by repeated multiplication; nullopt beyond the cap.
std::optional<long> element_order(const MonomialMatrix& m, long cap = 1'000'000);
std::optional<long> element_order(const DenseMatrix& m, long cap = 100'000);

}  // namespace monospec
