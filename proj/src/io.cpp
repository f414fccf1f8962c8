#include "monospec/io.hpp"

#include <fstream>

namespace monospec::io {

namespace {

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw Error(ErrorCode::InvalidInput, "bad integer literal");
    return z;
  }
  throw Error(ErrorCode::InvalidInput, "expected an integer");
}

CycloScalar::Term term_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::InvalidInput, "scalar term must be [num, den, power]");
  if (!j[2].is_number_integer()) throw Error(ErrorCode::InvalidInput, "scalar power must be an integer");
  return {integer_from_json(j[0]), integer_from_json(j[1]), static_cast<long>(j[2].get<std::int64_t>())};
}

int conductor_of(const json& j) {
  if (!j.contains("conductor")) return 1;
  const json& c = j.at("conductor");
  if (!c.is_number_integer() || c.get<long>() < 1) throw Error(ErrorCode::InvalidInput, "conductor must be a positive integer");
  return c.get<int>();
}

}  // namespace

json to_json(const CycloScalar& s, int conductor) {
  const auto terms = s.in_conductor(conductor).terms();
  if (terms.empty()) return json::array({0, 1, 0});
  auto term = [](const CycloScalar::Term& t) {
    return json::array({integer_json(t.numerator), integer_json(t.denominator), t.power});
  };
  if (terms.size() == 1) return term(terms.front());
  json out = json::array();
  for (const auto& t : terms) out.push_back(term(t));
  return out;
}

CycloScalar scalar_from_json(const json& j, int conductor) {
  if (j.is_number_integer()) return CycloScalar(Rational(static_cast<long>(j.get<std::int64_t>())), conductor);
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "scalar must be a term, a list of terms or an integer");
  std::vector<CycloScalar::Term> terms;
  if (!j.empty() && j[0].is_array()) {
    for (const auto& t : j) terms.push_back(term_from_json(t));
  } else if (!j.empty()) {
    terms.push_back(term_from_json(j));
  }
  return CycloScalar::from_terms(conductor, terms);
}

json to_json(const MonomialMatrix& m, int conductor) {
  json perm = json::array();
  json weights = json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    perm.push_back(m.image(i) + 1);
    weights.push_back(to_json(m.weight(i), conductor));
  }
  return {{"perm", perm}, {"weights", weights}};
}

json to_json(const DenseMatrix& m, int conductor) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.n(); ++k) row.push_back(to_json(m(i, k), conductor));
    rows.push_back(std::move(row));
  }
  return {{"entries", rows}};
}

bool is_monomial_json(const json& j) { return j.is_object() && j.contains("perm"); }

MonomialMatrix monomial_from_json(const json& j, int conductor) {
  if (!j.is_object() || !j.contains("perm") || !j.contains("weights"))
    throw Error(ErrorCode::InvalidInput, "monomial matrix needs perm and weights");
  const json& p = j.at("perm");
  const json& w = j.at("weights");
  if (!p.is_array() || !w.is_array() || p.size() != w.size())
    throw Error(ErrorCode::InvalidInput, "perm and weights must be arrays of equal length");
  const std::size_t n = p.size();
  std::vector<std::size_t> perm;
  std::vector<bool> seen(n, false);
  for (const auto& x : p) {
    if (!x.is_number_integer()) throw Error(ErrorCode::InvalidInput, "perm entries must be integers");
    const long v = x.get<long>();
    if (v < 1 || static_cast<std::size_t>(v) > n || seen[static_cast<std::size_t>(v - 1)])
      throw Error(ErrorCode::InvalidInput, "perm is not a permutation of 1..n");
    seen[static_cast<std::size_t>(v - 1)] = true;
    perm.push_back(static_cast<std::size_t>(v - 1));
  }
  std::vector<CycloScalar> weights;
  for (const auto& x : w) {
    weights.push_back(scalar_from_json(x, conductor));
    if (weights.back().is_zero()) throw Error(ErrorCode::InvalidInput, "monomial weight is zero");
  }
  return MonomialMatrix(std::move(perm), std::move(weights));
}

DenseMatrix dense_from_json(const json& j, int conductor) {
  if (is_monomial_json(j)) return monomial_from_json(j, conductor).to_dense();
  if (!j.is_object() || !j.contains("entries") || !j.at("entries").is_array())
    throw Error(ErrorCode::InvalidInput, "dense matrix needs entries");
  const json& rows = j.at("entries");
  const std::size_t n = rows.size();
  std::vector<CycloScalar> values;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) throw Error(ErrorCode::DimensionMismatch, "dense matrix must be square");
    for (const auto& x : row) values.push_back(scalar_from_json(x, conductor));
  }
  return DenseMatrix(n, std::move(values));
}

json to_json(const CycloPoly& p) {
  const bool rational = p.as_rational().has_value();
  const int c = rational ? 1 : p.conductor();
  json coeffs = json::array();
  for (const auto& x : p.coeffs()) coeffs.push_back(to_json(rational ? CycloScalar(*x.as_rational()) : x, c));
  json out = {{"coeffs", coeffs}};
  if (!rational) out["conductor"] = c;
  return out;
}

CycloPoly poly_from_json(const json& j, int conductor) {
  if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
    throw Error(ErrorCode::InvalidInput, "polynomial needs coeffs");
  if (j.contains("conductor")) conductor = conductor_of(j);
  std::vector<CycloScalar> coeffs;
  for (const auto& x : j.at("coeffs")) coeffs.push_back(scalar_from_json(x, conductor));
  return CycloPoly(std::move(coeffs));
}

MonomialGroup GroupDocument::monomial_group() const {
  if (!monomial) throw Error(ErrorCode::NotMonomial, "group has dense generators");
  return MonomialGroup::closure(n, monomial_generators, cap);
}

DenseGroup GroupDocument::dense_group() const { return DenseGroup::closure(n, dense_generators, cap); }

GroupDocument group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators") || !j.at("generators").is_array())
    throw Error(ErrorCode::InvalidInput, "group document needs generators");
  GroupDocument doc;
  doc.conductor = conductor_of(j);
  doc.cap = default_cap();
  if (j.contains("cap")) {
    if (!j.at("cap").is_number_integer() || j.at("cap").get<long>() < 1)
      throw Error(ErrorCode::InvalidInput, "cap must be a positive integer");
    doc.cap = j.at("cap").get<std::size_t>();
  }
  const json& gens = j.at("generators");
  for (const auto& g : gens)
    if (!is_monomial_json(g)) doc.monomial = false;
  for (const auto& g : gens) {
    DenseMatrix d = dense_from_json(g, doc.conductor);
    if (doc.monomial) doc.monomial_generators.push_back(monomial_from_json(g, doc.conductor));
    doc.dense_generators.push_back(std::move(d));
  }
  if (j.contains("n")) {
    doc.n = j.at("n").get<std::size_t>();
  } else if (!doc.dense_generators.empty()) {
    doc.n = doc.dense_generators.front().n();
  } else {
    throw Error(ErrorCode::InvalidInput, "group document needs n or a generator");
  }
  for (const auto& d : doc.dense_generators)
    if (d.n() != doc.n) throw Error(ErrorCode::DimensionMismatch, "generator dimension differs from n");
  return doc;
}

json to_json(const MonomialGroup& g) {
  json gens = json::array();
  for (const auto& x : g.generators()) gens.push_back(to_json(x, g.conductor()));
  return {{"conductor", g.conductor()}, {"n", g.n()}, {"order", g.order()}, {"generators", gens}};
}

json to_json(const DenseGroup& g) {
  json gens = json::array();
  for (const auto& x : g.generators()) gens.push_back(to_json(x, g.conductor()));
  return {{"conductor", g.conductor()}, {"n", g.n()}, {"order", g.order()}, {"generators", gens}};
}

json to_json(const DiagonalSign& d) {
  json bits = json::array();
  for (std::size_t i = 0; i < d.n(); ++i) bits.push_back(d.bits().get(i) ? 1 : 0);
  return bits;
}

DiagonalSign sign_from_json(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw Error(ErrorCode::DimensionMismatch, "sign vector must have n entries");
  BitVector bits(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_number_integer() || (j[i].get<long>() != 0 && j[i].get<long>() != 1))
      throw Error(ErrorCode::InvalidInput, "sign vector entries must be 0 or 1");
    if (j[i].get<long>() == 1) bits.set(i, true);
  }
  return DiagonalSign(std::move(bits));
}

json to_json(const SignVectorSpace& space) {
  json basis = json::array();
  for (const auto& v : space.basis()) basis.push_back(to_json(DiagonalSign(v)));
  return {{"rank", space.rank()}, {"order", space.order_string()}, {"basis", basis}};
}

json to_json(const Similarity& s) {
  const int c = std::max(s.s().conductor(), s.s_inv().conductor());
  return {{"kind", to_string(s.kind())},
          {"conductor", c},
          {"matrix", to_json(s.s(), c)["entries"]},
          {"inverse", to_json(s.s_inv(), c)["entries"]}};
}

json to_json(const CommutatorScan& scan) {
  json out = {{"verdict", to_string(scan.verdict)},
              {"pairs_checked", scan.pairs_checked},
              {"commuting_skipped", scan.commuting_skipped},
              {"distinct_char_polys", scan.distinct_char_polys},
              {"numeric", scan.numeric},
              {"sampled", scan.sampled}};
  if (scan.witness) {
    const auto& w = *scan.witness;
    const int c = std::max(w.a.conductor(), w.b.conductor());
    out["witness"] = {{"i", w.i}, {"j", w.j}, {"conductor", c}, {"a", to_json(w.a, c)}, {"b", to_json(w.b, c)}};
    out["char_poly"] = to_json(w.char_poly);
  }
  return out;
}

json to_json(const StructureReport& r) {
  json out = {{"outcome", to_string(r.outcome)},
              {"stage", r.stage},
              {"n", r.n},
              {"span_dimension", r.span_dimension},
              {"commutators", to_json(r.scan)},
              {"certificate", r.certificate}};
  if (r.outcome == Outcome::theorem_form) {
    out["d"] = to_json(r.d_basis);
    out["similarity"] = to_json(*r.similarity);
    out["normal_form"] = to_json(*r.normal_form);
  }
  return out;
}

json to_json(const AbelianMonomialization& m) {
  const int c = static_cast<int>(lcm_long(m.scaling.conductor(), m.conjugated.conductor()));
  return {{"orders", m.orders},
          {"similarity", to_json(m.similarity)},
          {"reindex", to_json(m.reindex, c)},
          {"scaling", to_json(m.scaling, c)},
          {"conjugated", to_json(m.conjugated)}};
}

json to_json(const SplitReport& r) {
  json out = {{"divisible", r.divisible},
              {"y_adjoined", r.y_adjoined},
              {"scalar_split_verified", r.scalar_split_verified},
              {"errors", r.errors}};
  if (r.scalar_split) out["scalar_split"] = to_json(*r.scalar_split);
  json pattern = {{"attempted", r.pattern.attempted}, {"possible", r.pattern.possible}};
  if (r.pattern.similarity) pattern["similarity"] = to_json(*r.pattern.similarity);
  if (!r.pattern.certificate.empty()) pattern["certificate"] = r.pattern.certificate;
  out["pattern_subgroup"] = pattern;
  return out;
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace monospec::io
