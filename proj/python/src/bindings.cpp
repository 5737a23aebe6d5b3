// Python module expander_ec._core. Words cross the boundary as strings over
// {'0','1','?'} indexed by edge id; rationals as "p/q" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "eec/expander_code.hpp"
#include "eec/graph.hpp"
#include "eec/io.hpp"
#include "eec/list_decode.hpp"
#include "eec/unique_decode.hpp"

namespace py = pybind11;
using namespace eec;

namespace {

struct PyCode {
  io::GraphInstance instance;
  ExpanderCode code;
  std::optional<double> lambda;

  PyCode(const std::string& graph, const std::string& inner, std::uint64_t seed)
      : instance(io::make_graph(graph, seed)), code(instance.graph, io::make_code(inner, seed)) {}
};

std::vector<std::string> column_strings(const BitMatrix& m) {
  std::vector<std::string> out;
  for (const auto& c : m.columns()) out.push_back(c.to_string());
  return out;
}

AffineSpace affine_from(const std::string& offset, const std::vector<std::string>& basis) {
  const BitVector o = BitVector::from_string(offset);
  std::vector<BitVector> cols;
  for (const auto& b : basis) cols.push_back(BitVector::from_string(b));
  return AffineSpace(o, BitMatrix::from_columns(cols, o.size()));
}

py::dict report_dict(const DecodeReport& r) {
  py::dict d;
  d["status"] = to_string(r.status);
  d["erasures"] = r.erasures;
  d["regime"] = r.regime;
  d["within_budget"] = r.within_budget;
  d["bad"] = r.bad;
  d["e_prime"] = r.e_prime;
  d["b_prime"] = r.b_prime;
  d["e_b_prime"] = r.e_b_prime;
  d["s_actual"] = r.s_actual;
  d["a"] = r.a;
  d["frontier"] = r.frontier;
  d["heavy_threshold"] = r.thresholds.heavy.to_string();
  d["erasure_budget"] = r.thresholds.erasure_budget.to_string();
  d["class_size_ok"] = r.class_size_ok;
  d["class_count_ok"] = r.class_count_ok;
  d["e_b_prime_ok"] = r.e_b_prime_ok;
  d["timings"] = r.timings;
  return d;
}

DecoderParams make_params(const PyCode& c, std::size_t r, const std::string& epsilon, std::size_t s_cap,
                          std::size_t threads) {
  DecoderParams p;
  p.r = r;
  p.epsilon = Rational::parse(epsilon);
  p.s_cap = s_cap;
  p.threads = threads;
  p.lambda = c.lambda;
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Erasure list decoding of expander codes";

  py::register_exception<AdviceTooLarge>(m, "AdviceTooLarge", PyExc_RuntimeError);

  py::class_<LinearCode>(m, "InnerCode")
      .def_static(
          "from_spec", [](const std::string& spec, std::uint64_t seed) { return io::make_code(spec, seed); },
          py::arg("spec"), py::arg("seed") = 1)
      .def_property_readonly("name", &LinearCode::name)
      .def_property_readonly("length", &LinearCode::length)
      .def_property_readonly("dimension", &LinearCode::dimension)
      .def("min_distance", [](const LinearCode& c) { return c.min_distance().to_string(); })
      .def(
          "generalized_distance", [](const LinearCode& c, std::size_t r) { return c.generalized_distance(r).to_string(); },
          py::arg("r"));

  py::class_<PyCode>(m, "Code")
      .def(py::init<const std::string&, const std::string&, std::uint64_t>(), py::arg("graph"), py::arg("inner"),
           py::arg("seed") = 1)
      .def_property_readonly("block_length", [](const PyCode& c) { return c.code.block_length(); })
      .def_property_readonly("degree", [](const PyCode& c) { return c.code.degree(); })
      .def_property_readonly("side_size", [](const PyCode& c) { return c.code.side_size(); })
      .def_property_readonly("dimension", [](const PyCode& c) { return c.code.dimension(); })
      .def_property_readonly("inner", [](const PyCode& c) { return c.code.inner(); })
      .def_property(
          "lambda_", [](const PyCode& c) { return c.lambda; },
          [](PyCode& c, std::optional<double> v) { c.lambda = v; })
      .def("estimate_lambda",
           [](PyCode& c) {
             c.lambda = c.instance.base ? expansion_lambda(*c.instance.base).value
                                        : bipartite_lambda(c.code.graph()).value;
             return *c.lambda;
           })
      .def("is_codeword", [](const PyCode& c, const std::string& w) { return c.code.is_codeword(BitVector::from_string(w)); })
      .def("sample_codeword", [](const PyCode& c, std::uint64_t seed) { return c.code.sample_codeword(seed).to_string(); },
           py::arg("seed"))
      .def(
          "erase_count",
          [](const PyCode& c, const std::string& w, std::size_t count, std::uint64_t seed) {
            return c.code.erase_count(BitVector::from_string(w), count, seed).to_string();
          },
          py::arg("word"), py::arg("count"), py::arg("seed"))
      .def(
          "erase_rate",
          [](const PyCode& c, const std::string& w, double p, std::uint64_t seed) {
            return c.code.erase_rate(BitVector::from_string(w), p, seed).to_string();
          },
          py::arg("word"), py::arg("rate"), py::arg("seed"))
      .def(
          "erase_explicit",
          [](const PyCode& c, const std::string& w, const std::vector<std::uint32_t>& ids) {
            return c.code.erase_explicit(BitVector::from_string(w), ids).to_string();
          },
          py::arg("word"), py::arg("ids"))
      .def("second_generalized_distance", [](const PyCode& c) { return c.code.second_generalized_distance().to_string(); })
      .def("oracle_list_decode",
           [](const PyCode& c, const std::string& z) -> py::tuple {
             const auto s = c.code.oracle_list_decode(ErasedWord::from_string(z));
             if (s.is_empty()) return py::make_tuple(py::none(), py::list());
             return py::make_tuple(s.offset().to_string(), column_strings(s.basis()));
           })
      .def(
          "list_decode_fast",
          [](const PyCode& c, const std::string& z, std::size_t r, const std::string& eps) {
            const auto res = list_decode_fast(c.code, ErasedWord::from_string(z), make_params(c, r, eps, 12, 1));
            py::dict d;
            d["status"] = to_string(res.status);
            d["offset"] = res.status == ListStatus::Ok ? py::cast(res.list.ell.to_string()) : py::none();
            d["basis"] = res.status == ListStatus::Ok ? column_strings(res.list.L) : std::vector<std::string>{};
            d["report"] = report_dict(res.report);
            return d;
          },
          py::arg("received"), py::arg("r") = 2, py::arg("epsilon") = "1/2")
      .def(
          "list_decode_slow",
          [](const PyCode& c, const std::string& z, std::size_t r, const std::string& eps, std::size_t s_cap,
             std::size_t threads) {
            SlowDecodeResult res;
            {
              py::gil_scoped_release release;
              res = list_decode_slow(c.code, ErasedWord::from_string(z), make_params(c, r, eps, s_cap, threads));
            }
            py::dict d;
            d["status"] = to_string(res.status);
            std::vector<std::string> words;
            for (const auto& w : res.words) words.push_back(w.to_string());
            d["words"] = words;
            d["report"] = report_dict(res.report);
            return d;
          },
          py::arg("received"), py::arg("r") = 2, py::arg("epsilon") = "1/2", py::arg("s_cap") = 12,
          py::arg("threads") = 1)
      .def(
          "unique_decode",
          [](const PyCode& c, const std::string& z) {
            const auto res = unique_decode(c.code, ErasedWord::from_string(z));
            py::dict d;
            d["status"] = res.status == UniqueStatus::Complete ? "complete"
                          : res.status == UniqueStatus::Stuck  ? "stuck"
                                                               : "inconsistent";
            d["codeword"] = res.status == UniqueStatus::Complete ? py::cast(res.codeword.to_string()) : py::none();
            d["frontier"] = res.schedule.frontier;
            return d;
          },
          py::arg("received"))
      .def(
          "max_guaranteed_erasures",
          [](const PyCode& c, const std::string& lambda, const std::string& eps) {
            const auto g = max_guaranteed_erasures(c.code, Rational::parse(lambda), Rational::parse(eps));
            return py::make_tuple(g.count, g.hypothesis_holds);
          },
          py::arg("lambda_"), py::arg("epsilon"));

  m.def(
      "affine_equal",
      [](const std::string& o1, const std::vector<std::string>& b1, const std::string& o2,
         const std::vector<std::string>& b2) { return affine_equal(affine_from(o1, b1), affine_from(o2, b2)); },
      py::arg("offset_a"), py::arg("basis_a"), py::arg("offset_b"), py::arg("basis_b"));
  m.def(
      "enumerate_affine",
      [](const std::string& offset, const std::vector<std::string>& basis) {
        std::vector<std::string> out;
        for (const auto& w : affine_from(offset, basis).enumerate(20)) out.push_back(w.to_string());
        return out;
      },
      py::arg("offset"), py::arg("basis"));
}
