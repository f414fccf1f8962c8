#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monospec/gf2.hpp"
#include "monospec/group.hpp"
#include "monospec/matrix.hpp"

namespace monospec {

/// Subgroup of the signed diagonal matrices, stored as a GF(2) subspace in
/// reduced row-echelon form (bit i set means diagonal entry i is -1).
class SignVectorSpace {
 public:
  SignVectorSpace() = default;
  SignVectorSpace(std::size_t n, std::vector<BitVector> spanning);

  std::size_t n() const noexcept { return n_; }
  const std::vector<BitVector>& basis() const noexcept { return basis_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  bool contains_minus_identity() const { return contains(BitVector::ones(n_)); }

  /// 2^rank as a decimal string (exact for any rank).
  std::string order_string() const;
  std::optional<std::uint64_t> order() const;

  bool contains(const BitVector& v) const;
  bool contains(const DiagonalSign& d) const { return contains(d.bits()); }
  bool is_scalar() const;

  /// All members in Gray-code order; throws CapExceeded beyond 2^30.
  std::vector<DiagonalSign> members() const;

 private:
  std::size_t n_ = 0;
  std::vector<BitVector> basis_;
};

/// One generator per subgroup of prime order, sorted by prime and then by
/// first appearance in the enumeration of K.
std::vector<MonomialMatrix> prime_order_generators(const MonomialGroup& k);

enum class JMode { enumerate, rank };

struct JPlus {
  SignVectorSpace space;
  std::size_t dimension = 0;          // log2 of the order
  std::vector<DiagonalSign> members;  // filled in enumerate mode
};

/// J_K^+ as the GF(2) kernel of avg_{G_i}(J) = I over the prime-order
/// generators G_i of an abelian permutation group K.
JPlus j_plus(const MonomialGroup& k, JMode mode = JMode::enumerate);

/// Full-definition test: avg_G(J) = det(J) I for every G in K other than I.
bool in_j_family(const DiagonalSign& j, const MonomialGroup& k);

struct Cardinality {
  long n = 0;
  std::size_t rank_exponent = 0;     // from GF(2) elimination
  std::size_t formula_exponent = 0;  // phi(n)
};
/// |J_n^+| = 2^phi(n), computed by rank and by formula; throws
/// AssertionFailure when they disagree.
Cardinality j_cardinality(long n);

struct MainGroup {
  MonomialGroup group;   // C_n D
  SignVectorSpace d;     // D
  bool stabilized = false;  // shifts had to be added to make D C_n-stable
};
/// Validates each generator against J_n, closes D under the C_n action and
/// GF(2) span, and returns the closure of C_n and D.
MainGroup build_main_group(long n, const std::vector<DiagonalSign>& d_generators,
                           std::size_t cap = default_cap());

}  // namespace monospec
