#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "monospec/group.hpp"
#include "monospec/jfamily.hpp"
#include "monospec/matrix.hpp"
#include "monospec/spectra.hpp"

namespace monospec {

enum class SimilarityKind { diagonal, permutation, monomial, block_diagonal, general };
std::string to_string(SimilarityKind k);

/// Change of basis acting by G -> S^-1 G S, with the exact inverse cached.
class Similarity {
 public:
  Similarity() = default;
  static Similarity identity(std::size_t n, int conductor = 1);
  /// Computes the inverse; throws DivisionByZero when S is singular.
  static Similarity from_matrix(DenseMatrix s);
  static Similarity from_monomial(const MonomialMatrix& s);
  /// Trusted pair (S, S^-1); checked with one multiplication.
  static Similarity from_pair(DenseMatrix s, DenseMatrix s_inv);

  const DenseMatrix& s() const noexcept { return s_; }
  const DenseMatrix& s_inv() const noexcept { return s_inv_; }
  SimilarityKind kind() const noexcept { return kind_; }
  std::size_t n() const noexcept { return s_.n(); }
  bool is_identity() const { return s_.is_identity(); }

  /// Apply this similarity, then `next`: the composite matrix is S * S_next.
  Similarity then(const Similarity& next) const;

  DenseMatrix apply(const DenseMatrix& g) const { return s_inv_ * g * s_; }
  DenseGroup apply(const DenseGroup& g) const;
  /// Monomial image of a monomial group; throws NotMonomial otherwise.
  MonomialGroup apply_monomial(const MonomialGroup& g) const;

  /// Marks the similarity as block diagonal with blocks of the given size.
  void classify_blocks(std::size_t block_size);

 private:
  void classify();
  DenseMatrix s_, s_inv_;
  SimilarityKind kind_ = SimilarityKind::diagonal;
};

/// Simultaneous diagonalization of commuting involutions by eigenspace
/// refinement. Throws NotInvolution or NotCommuting with the offending indices.
Similarity diagonalize_involutions(const std::vector<DenseMatrix>& involutions);

struct BlockDecomposition {
  std::vector<std::vector<std::size_t>> classes;    // coordinates of each weight space
  std::vector<std::vector<int>> class_characters;   // sign of each involution on the class
  std::size_t block_size() const { return classes.empty() ? 0 : classes.front().size(); }
};

/// Weight-space classes of a diagonal involution set and block-monomiality
/// of G with respect to them. Throws ScalarJ or NotBlockMonomial.
BlockDecomposition clifford_decompose(const DenseGroup& g, const std::vector<DenseMatrix>& diagonal_involutions);

struct BlockNormalization {
  Similarity similarity;
  DenseGroup h;  // common block group, dimension n / r
  DenseGroup conjugated;
};
/// Makes the classes contiguous and every nonzero block set equal to one
/// group H. Throws NotBlockMonomial or BlockSetMismatch.
BlockNormalization block_normalize(const DenseGroup& g, const BlockDecomposition& b);

struct AbelianMonomialization {
  Similarity similarity;
  std::vector<long> orders;                   // invariant factors, largest first
  std::vector<MonomialMatrix> cycle_generators;  // h_j in the original basis
  MonomialMatrix reindex;                    // permutation part of S
  MonomialMatrix scaling;                    // diagonal part of S
  MonomialGroup conjugated;                  // C_{n_1} (x) ... (x) C_{n_k}
};

/// Invariant factors of a finite abelian group given by generator exponent
/// relations, with new generators expressed as exponent rows.
struct SmithDecomposition {
  std::vector<long> invariant_factors;          // > 1, largest first
  std::vector<std::vector<long>> generator_exponents;  // one row per factor
};
SmithDecomposition abelian_invariants(const MonomialGroup& k);

/// Lemma: an indecomposable abelian monomial group whose only diagonal element
/// is I is monomially similar to a tensor product of cycle groups.
AbelianMonomialization monomialize_abelian(const MonomialGroup& k);

/// Odd-order complement K of a diagonal involution subgroup J (K n J = {I},
/// KJ = G). Throws EvenQuotient or NoComplement.
MonomialGroup find_odd_complement(const MonomialGroup& g, const MonomialGroup& j);

enum class Outcome { theorem_form, counterexample, not_irreducible, not_applicable };
std::string to_string(Outcome o);

struct StructureReport {
  Outcome outcome = Outcome::not_applicable;
  std::string stage;  // pipeline stage that decided the outcome
  std::optional<Similarity> similarity;
  long n = 0;
  SignVectorSpace d_basis;
  std::optional<MonomialGroup> normal_form;  // S^-1 G S = C_n D
  std::size_t span_dimension = 0;
  CommutatorScan scan;
  nlohmann::json certificate = nlohmann::json::object();
};

struct RecoverOptions {
  ScanOptions scan;
};

StructureReport recover_structure(const DenseGroup& g, const RecoverOptions& options = {});
StructureReport recover_structure(const MonomialGroup& g, const RecoverOptions& options = {});

/// Monomializes an irreducible group with commuting involutions through
/// diagonalization, Clifford blocks and recursion on the block group.
Similarity monomialize(const DenseGroup& g);

struct TheoremCheck {
  MainGroup main;
  CommutatorScan scan;
  std::uint64_t diagonal_pairs = 0;
  std::uint64_t nondiagonal_pairs = 0;
  bool case_split_holds = true;
  std::optional<std::pair<std::size_t, std::size_t>> case_split_failure;
};
/// Builds C_n D, scans every commutator and checks the two proof cases.
TheoremCheck verify_theorem(long n, const std::vector<DiagonalSign>& d_generators, const ScanOptions& options = {},
                            std::size_t cap = default_cap());

struct CommutatorInvolutionCheck {
  bool commutators_are_involutions = false;
  bool scalar_signed_form = false;  // each element is a scalar times a signed permutation
  bool commutative_pattern = false;
  bool agree = false;
  std::size_t commutator_subgroup_order = 0;
};
CommutatorInvolutionCheck check_commutator_involutions(const MonomialGroup& g);

struct PatternSplit {
  bool attempted = false;  // gcd(|X|, n) = 1
  bool possible = false;
  std::optional<Similarity> similarity;
  nlohmann::json certificate = nlohmann::json::object();
};

struct SplitReport {
  bool divisible = false;  // gcd(|Y|, n) = 1
  bool y_adjoined = false;
  std::optional<Similarity> scalar_split;  // diagonal similarity giving G = Y G_X
  bool scalar_split_verified = false;
  PatternSplit pattern;
  std::vector<std::string> errors;  // NotDivisible, SplitImpossible
};
/// X and Y are the groups of roots of unity of the given orders.
SplitReport split_scalars(const MonomialGroup& g, long x_order, long y_order);

bool check_noncentral_involution(const MonomialGroup& g);
bool check_noncentral_involution(const DenseGroup& g);

}  // namespace monospec
