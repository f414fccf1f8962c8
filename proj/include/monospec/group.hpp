#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "monospec/error.hpp"
#include "monospec/matrix.hpp"

namespace monospec {

inline constexpr std::size_t kDefaultCap = 1'000'000;

/// Element cap from MONOSPEC_CAP when set, else kDefaultCap.
std::size_t default_cap();

template <class Element>
struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept { return e.hash(); }
};

/// Finite matrix group with every element enumerated. Elements are listed in
/// breadth-first order over the generators (identity first), which fixes the
/// enumeration order used for witnesses. All elements share one conductor.
template <class Element>
class FiniteGroup {
 public:
  FiniteGroup() = default;

  static FiniteGroup closure(std::size_t n, std::vector<Element> generators,
                             std::size_t cap = default_cap()) {
    long conductor = 1;
    for (const auto& g : generators) {
      if (g.n() != n) throw Error(ErrorCode::DimensionMismatch, "generator dimension mismatch");
      conductor = lcm_long(conductor, g.conductor());
    }
    FiniteGroup group;
    group.n_ = n;
    group.conductor_ = static_cast<int>(conductor);
    group.cap_ = cap;
    for (auto& g : generators) g = g.with_conductor(group.conductor_);
    group.generators_ = std::move(generators);
    group.insert(Element::identity(n, group.conductor_));
    for (std::size_t i = 0; i < group.elements_.size(); ++i) {
      for (const auto& g : group.generators_) {
        Element next = group.elements_[i] * g;
        if (next.conductor() != group.conductor_) next = next.with_conductor(group.conductor_);
        if (!group.index_.contains(next)) {
          if (group.elements_.size() >= cap)
            throw Error(ErrorCode::CapExceeded, "group closure exceeded cap of " + std::to_string(cap),
                        {{"cap", cap}});
          group.insert(std::move(next));
        }
      }
    }
    return group;
  }

  static FiniteGroup closure(std::vector<Element> generators, std::size_t cap = default_cap()) {
    if (generators.empty()) throw Error(ErrorCode::InvalidInput, "closure needs n when no generators are given");
    const std::size_t n = generators.front().n();
    return closure(n, std::move(generators), cap);
  }

  /// Subgroup generated by a subset of elements, using a greedy generating set.
  static FiniteGroup generated_by(std::size_t n, const std::vector<Element>& elements,
                                  std::size_t cap = default_cap()) {
    std::vector<Element> gens;
    FiniteGroup current = closure(n, {}, cap);
    for (const auto& e : elements) {
      if (current.contains(e)) continue;
      gens.push_back(e);
      current = closure(n, gens, cap);
    }
    return current;
  }

  std::size_t n() const noexcept { return n_; }
  int conductor() const noexcept { return conductor_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t cap() const noexcept { return cap_; }
  const std::vector<Element>& generators() const noexcept { return generators_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  const Element& identity() const { return elements_.front(); }
  const Element& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> index_of(const Element& e) const {
    if (e.n() != n_) return std::nullopt;
    if (e.conductor() != conductor_) {
      if (conductor_ % e.conductor() != 0) {
        // may still be equal if the value lives in a common subfield
        for (std::size_t i = 0; i < elements_.size(); ++i)
          if (elements_[i] == e) return i;
        return std::nullopt;
      }
      return index_of(e.with_conductor(conductor_));
    }
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Element& e) const { return index_of(e).has_value(); }

 private:
  void insert(Element e) {
    index_.emplace(e, elements_.size());
    elements_.push_back(std::move(e));
  }

  std::size_t n_ = 0;
  int conductor_ = 1;
  std::size_t cap_ = kDefaultCap;
  std::vector<Element> generators_;
  std::vector<Element> elements_;
  std::unordered_map<Element, std::size_t, ElementHash<Element>> index_;
};

using MonomialGroup = FiniteGroup<MonomialMatrix>;
using DenseGroup = FiniteGroup<DenseMatrix>;

DenseGroup to_dense_group(const MonomialGroup& g);
/// Throws NotMonomial when some generator is not monomial.
MonomialGroup to_monomial_group(const DenseGroup& g);

/// Equal element sets (conductors are reconciled).
bool same_elements(const MonomialGroup& a, const MonomialGroup& b);
bool same_elements(const DenseGroup& a, const DenseGroup& b);

bool is_abelian(const MonomialGroup& g);
bool is_abelian(const DenseGroup& g);

MonomialGroup diagonal_subgroup(const MonomialGroup& g);

/// Closure of all group commutators A B A^-1 B^-1 over element pairs.
MonomialGroup commutator_subgroup(const MonomialGroup& g);
DenseGroup commutator_subgroup(const DenseGroup& g);

MonomialGroup pattern_group(const MonomialGroup& g);
MonomialGroup pattern_group(const DenseGroup& g);
bool has_commutative_pattern(const MonomialGroup& g);

/// D^G = G^-1 D G.
MonomialMatrix conj_action(const MonomialMatrix& d, const MonomialMatrix& g);
DenseMatrix conj_action(const DenseMatrix& d, const DenseMatrix& g);

/// Product of D^K over K in the subgroup; D must be diagonal.
MonomialMatrix avg(const MonomialMatrix& d, const MonomialGroup& k);
/// Product D D^G ... D^{G^(m-1)} with m the order of G.
MonomialMatrix avg(const MonomialMatrix& d, const MonomialMatrix& g);

/// Pattern action on coordinates is transitive.
bool is_indecomposable(const MonomialGroup& g);

/// Burnside criterion: the elements span all n x n matrices.
bool is_irreducible(const MonomialGroup& g);
bool is_irreducible(const DenseGroup& g);
/// Dimension of the linear span of the elements.
std::size_t span_dimension(const DenseGroup& g);

struct DiagonalCommutation {
  bool holds = true;  // no non-diagonal element commutes with a nonscalar diagonal one
  std::optional<std::pair<MonomialMatrix, MonomialMatrix>> witness;  // (non-diagonal, diagonal)
};
DiagonalCommutation has_no_diagonal_commutation(const MonomialGroup& g);

std::vector<MonomialMatrix> involution_set(const MonomialGroup& g);
std::vector<DenseMatrix> involution_set(const DenseGroup& g);

/// S^-1 G S, closed from the conjugated generators.
DenseGroup conjugate_group(const DenseGroup& g, const DenseMatrix& s, const DenseMatrix& s_inv);

}  // namespace monospec
