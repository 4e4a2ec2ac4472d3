#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hashbound/classical.hpp"
#include "hashbound/codes.hpp"
#include "hashbound/combiner.hpp"
#include "hashbound/oracle.hpp"
#include "hashbound/partition.hpp"
#include "hashbound/presets.hpp"
#include "hashbound/psi.hpp"
#include "hashbound/report.hpp"

namespace py = pybind11;
using namespace hashbound;

namespace {

// Reports cross the boundary as plain dicts through their JSON form.
py::object as_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::optional<PartitionSpec> make_spec(const std::optional<std::string>& kind, std::optional<double> eps) {
  if (!kind) return std::nullopt;
  if (!eps) throw std::invalid_argument("a partition needs eps");
  return PartitionSpec{parse_partition_kind(*kind), *eps};
}

py::dict subdomain_dict(const SubdomainMax& m) {
  py::dict d;
  d["which"] = to_string(m.which);
  d["value"] = m.value;
  d["certified_excess"] = m.certified_excess;
  d["upper_bound_only"] = m.upper_bound_only;
  d["config"] = m.argmax_config.describe();
  d["p"] = m.argmax.p;
  d["q"] = m.argmax.q;
  d["candidates"] = m.candidates;
  return d;
}

MaximizeOptions maximize_options(int grid, bool certify) {
  MaximizeOptions o;
  o.grid = grid;
  o.certify = certify;
  return o;
}

}  // namespace

PYBIND11_MODULE(hashbound, m) {
  m.doc() = "Upper bounds on the rate of (b,k)-hash codes";

  py::register_exception<std::invalid_argument>(m, "InvalidArgument", PyExc_ValueError);

  m.def("psi", [](const std::vector<double>& p, const std::vector<double>& q, int j) {
          const PsiParams params(static_cast<int>(p.size()), j);
          return psi_fast(DistVec::normalized(p), DistVec::normalized(q), params);
        },
        py::arg("p"), py::arg("q"), py::arg("j"));
  m.def("psi_naive", [](const std::vector<double>& p, const std::vector<double>& q, int j) {
          const PsiParams params(static_cast<int>(p.size()), j);
          return psi_naive(DistVec::normalized(p), DistVec::normalized(q), params);
        },
        py::arg("p"), py::arg("q"), py::arg("j"));
  m.def("psi_uniform", [](int b, int j) { return psi_uniform_closed_form(PsiParams(b, j)); }, py::arg("b"),
        py::arg("j"));

  m.def("rate_from_Mj", [](int b, int k, int j, double M) { return rate_from_Mj(ProblemParams(b, k, j), M); },
        py::arg("b"), py::arg("k"), py::arg("j"), py::arg("M"));
  m.def("fredman_komlos", [](int b, int k) { return fredman_komlos(ProblemParams(b, k)); }, py::arg("b"),
        py::arg("k"));
  m.def("korner_marton", [](int b, int k) {
          const BoundWithJ r = korner_marton(ProblemParams(b, k));
          return py::make_tuple(r.value, r.j);
        },
        py::arg("b"), py::arg("k"));
  m.def("dvj", [](int b, int k) { return dvj_bound(ProblemParams(b, k)); }, py::arg("b"), py::arg("k"));

  m.def("compute_mi", [](const std::string& kind, double eps, const std::string& which, int b, int j, int grid,
                         bool certify) {
          const PartitionSpec spec{parse_partition_kind(kind), eps};
          spec.validate(b, j);
          py::gil_scoped_release release;
          const SubdomainMax r = compute_Mi(spec, parse_selector(which), b, j, maximize_options(grid, certify));
          py::gil_scoped_acquire acquire;
          return subdomain_dict(r);
        },
        py::arg("kind"), py::arg("eps"), py::arg("which"), py::arg("b"), py::arg("j"), py::arg("grid") = 400,
        py::arg("certify") = false);

  m.def("combine", [](double m1, double m2, double m3, double m4, int b) {
          const CombineResult r = combine(MiTuple{m1, m2, m3, m4, b});
          py::dict d;
          d["M"] = r.M;
          d["eta0"] = r.eta.eta0;
          d["eta_rest"] = r.eta.eta_rest;
          d["fallback"] = r.fallback;
          return d;
        },
        py::arg("m1"), py::arg("m2"), py::arg("m3"), py::arg("m4"), py::arg("b"));

  m.def("bound", [](int b, int k, std::optional<int> j, std::optional<std::string> kind, std::optional<double> eps,
                    bool check_global, int grid, bool certify) {
          const int jj = j.value_or(k - 2);
          const auto spec = make_spec(kind, eps);
          FullBoundOptions o;
          o.maximize = maximize_options(grid, certify);
          o.run_global = check_global;
          BoundReport r;
          {
            py::gil_scoped_release release;
            r = full_bound(b, k, jj, spec, o);
          }
          return as_python(to_json(r));
        },
        py::arg("b"), py::arg("k"), py::arg("j") = py::none(), py::arg("kind") = py::none(),
        py::arg("eps") = py::none(), py::arg("check_global") = true, py::arg("grid") = 400,
        py::arg("certify") = false);

  m.def("preset", [](int b, int k) -> py::object {
          const auto p = find_preset(b, k);
          if (!p) return py::none();
          py::dict d;
          d["b"] = p->b;
          d["k"] = p->k;
          d["j"] = p->j;
          d["kind"] = to_string(p->spec.kind);
          d["eps"] = p->spec.epsilon;
          return d;
        },
        py::arg("b"), py::arg("k"));

  m.def("round_up", &round_up, py::arg("x"), py::arg("decimals"));
  m.def("format_up", &format_up, py::arg("x"), py::arg("decimals") = 5);

  m.def("check_lemma", [](const std::string& which, int b, int j, std::size_t samples, std::uint64_t seed,
                          bool boundary) {
          LemmaOptions o;
          o.boundary = boundary;
          const LemmaReport r = check_lemma_inequalities(parse_lemma(which), b, j, samples, seed, o);
          py::dict d;
          d["samples"] = r.samples;
          d["violations"] = r.violations;
          d["worst_gap"] = r.worst_gap;
          return d;
        },
        py::arg("which"), py::arg("b"), py::arg("j"), py::arg("samples") = 10000, py::arg("seed") = 1,
        py::arg("boundary") = false);

  m.def("sample_mi", [](const std::string& kind, double eps, const std::string& which, int b, int j,
                        std::size_t samples, std::uint64_t seed) {
          const PartitionSpec spec{parse_partition_kind(kind), eps};
          const SampleReport r = sample_subdomain(spec, parse_selector(which), b, j, samples, seed);
          py::dict d;
          d["best_value"] = r.best_value;
          d["accepted"] = r.accepted;
          d["attempts"] = r.attempts;
          d["inconclusive"] = r.inconclusive;
          d["p"] = r.best_p;
          d["q"] = r.best_q;
          return d;
        },
        py::arg("kind"), py::arg("eps"), py::arg("which"), py::arg("b"), py::arg("j"), py::arg("samples") = 10000,
        py::arg("seed") = 1);

  m.def("is_hash_code", [](const std::vector<std::vector<int>>& words, int b, int k) {
          Code c;
          c.b = b;
          c.n = words.empty() ? 0 : static_cast<int>(words.front().size());
          c.words = words;
          return is_bk_hash(c, k).ok;
        },
        py::arg("words"), py::arg("b"), py::arg("k"));
  m.def("max_code", [](int b, int k, int n, double budget_secs) {
          CodeSearchResult r;
          {
            py::gil_scoped_release release;
            r = max_code_exhaustive(b, k, n, budget_secs);
          }
          py::dict d;
          d["size"] = r.size;
          d["complete"] = r.complete;
          d["words"] = r.witness.words;
          return d;
        },
        py::arg("b"), py::arg("k"), py::arg("n"), py::arg("budget_secs") = 60.0);
}
