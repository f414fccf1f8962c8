#include "monospec/cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>

#include "monospec/io.hpp"

namespace monospec::cli {

namespace {

using io::json;

struct Common {
  std::optional<std::size_t> cap;
  double tolerance = kDefaultTolerance;
  std::string format = "json";
};

struct Result {
  json body;
  int code = kExitOk;
};

void print_human(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_human(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && j.front().is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) print_human(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

ScanOptions scan_options(const Common& c, std::optional<std::uint64_t> sample, std::optional<std::uint64_t> seed) {
  ScanOptions o;
  if (sample) {
    if (!seed) throw Error(ErrorCode::InvalidInput, "--sample requires an explicit --seed");
    o.sample = *sample;
    o.seed = *seed;
  }
  o.tolerance = c.tolerance;
  return o;
}

io::GroupDocument load_group(const std::string& path, const Common& c) {
  io::GroupDocument doc = io::group_from_json(io::read_file(path));
  if (c.cap) doc.cap = *c.cap;
  return doc;
}

std::size_t cap_of(const Common& c) { return c.cap ? *c.cap : default_cap(); }

json order_json(const SignVectorSpace& s) {
  if (auto o = s.order()) return *o;
  return s.order_string();
}

Result cmd_jgroup(const Common& c, std::optional<long> n, const std::string& file, bool count, const std::string& mode) {
  MonomialGroup k;
  json body;
  if (!file.empty()) {
    k = load_group(file, c).monomial_group();
  } else {
    if (!n || *n < 1) throw Error(ErrorCode::InvalidInput, "jgroup needs --n >= 1 or --file");
    k = MonomialGroup::closure(static_cast<std::size_t>(*n), {cycle_matrix(static_cast<std::size_t>(*n))}, cap_of(c));
  }
  body["n"] = k.n();
  const bool enumerate = mode == "enumerate" && !count;
  const JPlus jp = j_plus(k, enumerate ? JMode::enumerate : JMode::rank);
  body["j_plus_order"] = order_json(jp.space);
  if (count) return {body};
  body["dimension"] = jp.dimension;
  body["basis"] = io::to_json(jp.space)["basis"];
  if (enumerate) {
    json members = json::array();
    for (const auto& m : jp.members) members.push_back(io::to_json(m));
    body["members"] = members;
  }
  return {body};
}

std::vector<DiagonalSign> default_d(long n, std::size_t cap) {
  const auto k = MonomialGroup::closure(static_cast<std::size_t>(n), {cycle_matrix(static_cast<std::size_t>(n))}, cap);
  std::vector<DiagonalSign> gens;
  const JPlus jp = j_plus(k, JMode::rank);
  for (const auto& v : jp.space.basis()) gens.emplace_back(v);
  gens.push_back(DiagonalSign::minus_identity(static_cast<std::size_t>(n)));
  return gens;
}

Result cmd_verify(const Common& c, long n, const std::string& d_text, std::optional<std::uint64_t> sample,
                  std::optional<std::uint64_t> seed) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "verify needs --n");
  if (n % 2 == 0) throw Error(ErrorCode::EvenN, "n must be odd");
  std::vector<DiagonalSign> d;
  if (d_text.empty()) {
    d = default_d(n, cap_of(c));
  } else {
    json j;
    try {
      j = json::parse(d_text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::InvalidInput, std::string("malformed --d: ") + e.what());
    }
    if (j.is_object()) j = j.at("d_generators");
    if (!j.is_array()) throw Error(ErrorCode::InvalidInput, "--d must be a list of sign vectors");
    for (const auto& v : j) d.push_back(io::sign_from_json(v, static_cast<std::size_t>(n)));
  }
  const TheoremCheck t = verify_theorem(n, d, scan_options(c, sample, seed), cap_of(c));
  json body = io::to_json(t.scan);
  body["n"] = n;
  body["order"] = t.main.group.order();
  body["d"] = io::to_json(t.main.d);
  body["case_split"] = {{"holds", t.case_split_holds},
                        {"diagonal_pairs", t.diagonal_pairs},
                        {"nondiagonal_pairs", t.nondiagonal_pairs}};
  if (t.case_split_failure)
    body["case_split"]["failure"] = {t.case_split_failure->first, t.case_split_failure->second};
  const bool ok = t.scan.verdict == Verdict::yes && t.case_split_holds;
  return {body, ok ? kExitOk : kExitPropertyFails};
}

Result cmd_recover(const Common& c, const std::string& file) {
  const io::GroupDocument doc = load_group(file, c);
  RecoverOptions options;
  options.scan.tolerance = c.tolerance;
  const StructureReport r = doc.monomial ? recover_structure(doc.monomial_group(), options)
                                         : recover_structure(doc.dense_group(), options);
  return {io::to_json(r), r.outcome == Outcome::theorem_form ? kExitOk : kExitPropertyFails};
}

Result cmd_monomialize(const Common& c, const std::string& file) {
  const io::GroupDocument doc = load_group(file, c);
  if (doc.monomial) return {io::to_json(monomialize_abelian(doc.monomial_group()))};
  const DenseGroup g = doc.dense_group();
  const Similarity s = monomialize(g);
  return {{{"similarity", io::to_json(s)}, {"conjugated", io::to_json(to_monomial_group(s.apply(g)))}}};
}

Result cmd_spectrum(const Common& c, const std::string& file) {
  const json j = io::read_file(file);
  int conductor = 1;
  if (j.contains("conductor")) conductor = j.at("conductor").get<int>();
  CycloPoly p;
  json body;
  if (j.contains("coeffs")) {
    p = io::poly_from_json(j, conductor);
  } else {
    const json& mj = j.contains("matrix") ? j.at("matrix") : j;
    const DenseMatrix m = io::dense_from_json(mj, conductor);
    p = char_poly(m);
    body["nilpotent"] = is_nilpotent(m);
    body["involution"] = is_involution(m);
  }
  const SpectrumVerdict v = decide_real_roots(p, true, c.tolerance);
  body["char_poly"] = io::to_json(p);
  body["verdict"] = to_string(v.verdict);
  body["numeric"] = v.numeric;
  return {body, v.verdict == Verdict::yes ? kExitOk : kExitPropertyFails};
}

// Re-validates a serialized commutator witness against the group.
bool recheck_witness(const json& scan, const io::GroupDocument& doc, const Common& c) {
  const json& w = scan.at("witness");
  const int conductor = w.at("conductor").get<int>();
  const DenseMatrix a = io::dense_from_json(w.at("a"), conductor);
  const DenseMatrix b = io::dense_from_json(w.at("b"), conductor);
  const CycloPoly claimed = io::poly_from_json(scan.at("char_poly"), 1);
  const CycloPoly p = char_poly(ring_commutator(a, b));
  bool members;
  if (doc.monomial) {
    const MonomialGroup g = doc.monomial_group();
    const auto ma = MonomialMatrix::from_dense(a);
    const auto mb = MonomialMatrix::from_dense(b);
    members = ma && mb && g.contains(*ma) && g.contains(*mb);
  } else {
    const DenseGroup g = doc.dense_group();
    members = g.contains(a) && g.contains(b);
  }
  const auto claimed_rational = claimed.as_rational();
  const auto actual_rational = p.as_rational();
  const bool same = claimed_rational && actual_rational ? *claimed_rational == *actual_rational : claimed == p;
  return members && same && decide_real_roots(p, true, c.tolerance).verdict == Verdict::no;
}

Result cmd_commutators(const Common& c, const std::string& file, std::optional<std::uint64_t> sample,
                       std::optional<std::uint64_t> seed, bool recheck) {
  const io::GroupDocument doc = load_group(file, c);
  const ScanOptions o = scan_options(c, sample, seed);
  const CommutatorScan scan = doc.monomial ? all_commutators_real(doc.monomial_group(), o)
                                           : all_commutators_real(doc.dense_group(), o);
  json body = io::to_json(scan);
  if (recheck && scan.witness) body["recheck"] = recheck_witness(json::parse(body.dump()), doc, c);
  const int code = scan.verdict == Verdict::yes ? kExitOk : kExitPropertyFails;
  return {body, code};
}

Result cmd_split(const Common& c, const std::string& file, long x_order, long y_order) {
  const io::GroupDocument doc = load_group(file, c);
  const SplitReport r = split_scalars(doc.monomial_group(), x_order, y_order);
  return {io::to_json(r), r.errors.empty() ? kExitOk : kExitPropertyFails};
}

int emit(const Result& r, const Common& c, std::ostream& out) {
  if (c.format == "human") {
    print_human(r.body, "", out);
  } else {
    out << r.body.dump() << "\n";
  }
  return r.code;
}

int emit_error(const std::string& code, const std::string& message, const json& detail, int exit_code,
               std::ostream& out) {
  json body = {{"error", code}, {"message", message}};
  if (!detail.empty()) body["detail"] = detail;
  out << body.dump() << "\n";
  return exit_code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monomial matrix groups with real commutator spectra", "monospec"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--cap", common.cap, "element cap for group closure")->check(CLI::PositiveNumber);
  app.add_option("--tolerance", common.tolerance, "numeric fallback tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "human"}));

  std::optional<long> n;
  std::string file, mode = "enumerate", d_text;
  bool count = false, recheck = false;
  std::optional<std::uint64_t> sample, seed;
  long x_order = 0, y_order = 0;

  auto* jgroup = app.add_subcommand("jgroup", "J_K^+ for K = <C_n> or a permutation group file");
  jgroup->add_option("--n", n, "cycle length");
  jgroup->add_option("--file", file, "group document")->check(CLI::ExistingFile);
  jgroup->add_flag("--count", count, "print the order only");
  jgroup->add_option("--mode", mode, "enumerate or rank")->check(CLI::IsMember({"enumerate", "rank"}));

  auto* verify = app.add_subcommand("verify", "build C_n D and check every ring commutator");
  verify->add_option("--n", n, "odd dimension")->required();
  verify->add_option("--d", d_text, "JSON list of GF(2) sign vectors (default: J_n)");
  verify->add_option("--sample", sample, "number of random pairs");
  verify->add_option("--seed", seed, "sampling seed");

  auto* recover = app.add_subcommand("recover", "recover the C_n D normal form of a group");
  recover->add_option("--file", file, "group document")->required()->check(CLI::ExistingFile);

  auto* monomialize_cmd = app.add_subcommand("monomialize", "tensor-of-cycles form of an abelian monomial group");
  monomialize_cmd->add_option("--file", file, "group document")->required()->check(CLI::ExistingFile);

  auto* spectrum = app.add_subcommand("spectrum", "characteristic polynomial and real-spectrum verdict");
  spectrum->add_option("--file", file, "matrix or polynomial document")->required()->check(CLI::ExistingFile);

  auto* commutators = app.add_subcommand("commutators", "decide real spectra of all ring commutators");
  commutators->add_option("--file", file, "group document")->required()->check(CLI::ExistingFile);
  commutators->add_option("--sample", sample, "number of random pairs");
  commutators->add_option("--seed", seed, "sampling seed");
  commutators->add_flag("--recheck", recheck, "re-validate the emitted certificate");

  auto* split = app.add_subcommand("split", "scalar splitting G = Y G_X");
  split->add_option("--file", file, "group document")->required()->check(CLI::ExistingFile);
  split->add_option("--x-order", x_order, "order of X")->required()->check(CLI::PositiveNumber);
  split->add_option("--y-order", y_order, "order of Y")->required()->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return emit_error("InvalidInput", e.what(), json::object(), kExitInvalidInput, out);
  }

  try {
    Result r;
    if (*jgroup) r = cmd_jgroup(common, n, file, count, mode);
    else if (*verify) r = cmd_verify(common, *n, d_text, sample, seed);
    else if (*recover) r = cmd_recover(common, file);
    else if (*monomialize_cmd) r = cmd_monomialize(common, file);
    else if (*spectrum) r = cmd_spectrum(common, file);
    else if (*commutators) r = cmd_commutators(common, file, sample, seed, recheck);
    else r = cmd_split(common, file, x_order, y_order);
    return emit(r, common, out);
  } catch (const Error& e) {
    const int code = e.code() == ErrorCode::CapExceeded ? kExitCapExceeded : kExitInvalidInput;
    return emit_error(std::string(to_string(e.code())), e.what(), e.detail(), code, out);
  } catch (const json::exception& e) {
    return emit_error("InvalidInput", e.what(), json::object(), kExitInvalidInput, out);
  }
}

}  // namespace monospec::cli
