#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "monospec/cli.hpp"
#include "monospec/error.hpp"
#include "monospec/io.hpp"
#include "monospec/structure.hpp"

namespace py = pybind11;
using namespace monospec;
using io::json;

namespace {

io::GroupDocument group_doc(const std::string& text) { return io::group_from_json(json::parse(text)); }

ScanOptions scan_options(std::optional<std::uint64_t> sample, std::optional<std::uint64_t> seed) {
  ScanOptions o;
  if (sample) {
    if (!seed) throw Error(ErrorCode::InvalidInput, "sampling requires an explicit seed");
    o.sample = *sample;
    o.seed = *seed;
  }
  return o;
}

std::string j_plus_json(long n, bool enumerate) {
  const auto k = MonomialGroup::closure(static_cast<std::size_t>(n), {cycle_matrix(static_cast<std::size_t>(n))});
  const JPlus jp = j_plus(k, enumerate ? JMode::enumerate : JMode::rank);
  json body = io::to_json(jp.space);
  body["n"] = n;
  if (enumerate) {
    body["members"] = json::array();
    for (const auto& m : jp.members) body["members"].push_back(io::to_json(m));
  }
  return body.dump();
}

std::string verify_json(long n, std::optional<std::string> d_text, std::optional<std::uint64_t> sample,
                        std::optional<std::uint64_t> seed) {
  std::vector<DiagonalSign> d;
  if (d_text) {
    for (const auto& v : json::parse(*d_text)) d.push_back(io::sign_from_json(v, static_cast<std::size_t>(n)));
  } else {
    const auto k = MonomialGroup::closure(static_cast<std::size_t>(n), {cycle_matrix(static_cast<std::size_t>(n))});
    const JPlus jp = j_plus(k, JMode::rank);
    for (const auto& v : jp.space.basis()) d.emplace_back(v);
    d.push_back(DiagonalSign::minus_identity(static_cast<std::size_t>(n)));
  }
  const TheoremCheck t = verify_theorem(n, d, scan_options(sample, seed));
  json body = io::to_json(t.scan);
  body["n"] = n;
  body["order"] = t.main.group.order();
  body["d"] = io::to_json(t.main.d);
  body["case_split"] = {{"holds", t.case_split_holds},
                        {"diagonal_pairs", t.diagonal_pairs},
                        {"nondiagonal_pairs", t.nondiagonal_pairs}};
  return body.dump();
}

std::string commutators_json(const std::string& text, std::optional<std::uint64_t> sample,
                             std::optional<std::uint64_t> seed) {
  const auto doc = group_doc(text);
  const ScanOptions o = scan_options(sample, seed);
  return io::to_json(doc.monomial ? all_commutators_real(doc.monomial_group(), o)
                                  : all_commutators_real(doc.dense_group(), o))
      .dump();
}

std::string recover_json(const std::string& text) {
  const auto doc = group_doc(text);
  return io::to_json(doc.monomial ? recover_structure(doc.monomial_group()) : recover_structure(doc.dense_group()))
      .dump();
}

std::string monomialize_json(const std::string& text) {
  const auto doc = group_doc(text);
  if (doc.monomial) return io::to_json(monomialize_abelian(doc.monomial_group())).dump();
  const DenseGroup g = doc.dense_group();
  const Similarity s = monomialize(g);
  return json{{"similarity", io::to_json(s)}, {"conjugated", io::to_json(to_monomial_group(s.apply(g)))}}.dump();
}

std::string split_json(const std::string& text, long x_order, long y_order) {
  return io::to_json(split_scalars(group_doc(text).monomial_group(), x_order, y_order)).dump();
}

std::string spectrum_json(const std::string& text) {
  const json j = json::parse(text);
  const int conductor = j.value("conductor", 1);
  const CycloPoly p = j.contains("coeffs") ? io::poly_from_json(j, conductor)
                                           : char_poly(io::dense_from_json(j.value("matrix", j), conductor));
  const SpectrumVerdict v = decide_real_roots(p, true);
  return json{{"char_poly", io::to_json(p)}, {"verdict", to_string(v.verdict)}, {"numeric", v.numeric}}.dump();
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() { return py::exception<Error>(m, "Error", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const json info = {{"error", to_string(e.code())}, {"message", e.what()}, {"detail", e.detail()}};
      py::set_error(error_type.get_stored(), info.dump().c_str());
    } catch (const json::exception& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  m.def("j_cardinality", [](long n) {
    const Cardinality c = j_cardinality(n);
    return py::make_tuple(c.rank_exponent, c.formula_exponent);
  });
  m.def("j_plus", &j_plus_json, py::arg("n"), py::arg("enumerate") = false);
  m.def("verify", &verify_json, py::arg("n"), py::arg("d") = std::nullopt, py::arg("sample") = std::nullopt,
        py::arg("seed") = std::nullopt);
  m.def("commutators", &commutators_json, py::arg("group"), py::arg("sample") = std::nullopt,
        py::arg("seed") = std::nullopt);
  m.def("recover", &recover_json, py::arg("group"));
  m.def("monomialize", &monomialize_json, py::arg("group"));
  m.def("split", &split_json, py::arg("group"), py::arg("x_order"), py::arg("y_order"));
  m.def("spectrum", &spectrum_json, py::arg("document"));
  m.def("run_cli", &run_cli, py::arg("args"));
}
