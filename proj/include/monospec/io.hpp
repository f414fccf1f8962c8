#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "monospec/group.hpp"
#include "monospec/jfamily.hpp"
#include "monospec/matrix.hpp"
#include "monospec/spectra.hpp"
#include "monospec/structure.hpp"

namespace monospec::io {

using nlohmann::json;

// Scalars are [num, den, power] terms of zeta_N with N the document
// conductor: a single term, a list of terms, or a plain integer.
json to_json(const CycloScalar& s, int conductor);
CycloScalar scalar_from_json(const json& j, int conductor);

json to_json(const MonomialMatrix& m, int conductor);  // {"perm": 1-based, "weights"}
json to_json(const DenseMatrix& m, int conductor);     // {"entries": rows}
bool is_monomial_json(const json& j);
MonomialMatrix monomial_from_json(const json& j, int conductor);
DenseMatrix dense_from_json(const json& j, int conductor);

json to_json(const CycloPoly& p);  // {"conductor", "coeffs"}
CycloPoly poly_from_json(const json& j, int conductor);

/// Generators of a group document; dense when any generator uses "entries".
struct GroupDocument {
  int conductor = 1;
  std::size_t n = 0;
  std::size_t cap = 0;
  bool monomial = true;
  std::vector<MonomialMatrix> monomial_generators;
  std::vector<DenseMatrix> dense_generators;

  MonomialGroup monomial_group() const;
  DenseGroup dense_group() const;
};
GroupDocument group_from_json(const json& j);
json to_json(const MonomialGroup& g);
json to_json(const DenseGroup& g);

// Sign vectors use GF(2) bits, 0 for +1 and 1 for -1.
json to_json(const DiagonalSign& d);
DiagonalSign sign_from_json(const json& j, std::size_t n);
json to_json(const SignVectorSpace& space);

json to_json(const Similarity& s);
json to_json(const CommutatorScan& scan);
json to_json(const StructureReport& r);
json to_json(const AbelianMonomialization& m);
json to_json(const SplitReport& r);

json read_file(const std::string& path);

}  // namespace monospec::io
