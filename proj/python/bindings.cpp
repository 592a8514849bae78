#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <hypgeo/analytic.hpp>
#include <hypgeo/criteria.hpp>
#include <hypgeo/report.hpp>
#include <hypgeo/scanner.hpp>

#include "cli.hpp"

namespace py = pybind11;
using namespace hypgeo;

namespace {

// Parameters arrive as their str() text (Fraction, int, decimal string).
ParameterSet params_from(const std::array<std::string, 5>& raw)
{
    return ParameterSet::make(parse_rational(raw[0]), parse_rational(raw[1]), parse_rational(raw[2]),
                              parse_rational(raw[3]), parse_rational(raw[4]));
}

Real real_from(const std::string& text)
{
    return to_real(parse_rational(text));
}

std::vector<Theorem> theorems_from(const std::vector<int>& ts)
{
    std::vector<Theorem> out;
    for (const int t : ts) {
        out.push_back(parse_theorem(std::to_string(t)));
    }
    return out;
}

std::string dump(const nlohmann::ordered_json& j)
{
    return j.dump();
}

} // namespace

PYBIND11_MODULE(_hypgeo, m)
{
    m.doc() = "Exact coefficient criteria and certified evaluation for z 3F2(a,b,c;d,e;z)";

    py::register_exception<TailBoundError>(m, "TailBoundError", PyExc_ArithmeticError);
    py::register_exception<DegenerateGridError>(m, "DegenerateGridError", PyExc_ArithmeticError);

    m.def("parse_rational", [](const std::string& text) { return to_string(parse_rational(text)); });

    m.def("coefficients",
          [](const std::array<std::string, 5>& raw, std::size_t n, const std::string& kind) {
              std::vector<std::string> out;
              const auto seq = build_sequence(params_from(raw), n, parse_sequence_kind(kind));
              for (const auto& q : seq.values()) {
                  out.push_back(to_string(q));
              }
              return out;
          },
          py::arg("params"), py::arg("n"), py::arg("kind") = "normalized");

    m.def("check",
          [](const std::array<std::string, 5>& raw, const std::vector<int>& theorems) {
              const auto p = params_from(raw);
              auto out = nlohmann::ordered_json::array();
              for (const auto t : theorems_from(theorems)) {
                  out.push_back(to_json(theorem_predicate(t, p)));
              }
              return dump(out);
          },
          py::arg("params"), py::arg("theorems"));

    m.def("audit",
          [](const std::array<std::string, 5>& raw, const std::vector<int>& theorems, std::size_t n) {
              const auto p = params_from(raw);
              auto out = nlohmann::ordered_json::array();
              for (const auto t : theorems_from(theorems)) {
                  out.push_back(to_json(proof_identity_audit(t, p, n)));
              }
              return dump(out);
          },
          py::arg("params"), py::arg("theorems"), py::arg("n"));

    m.def("lemmas",
          [](const std::array<std::string, 5>& raw, std::size_t n) {
              const auto p = params_from(raw);
              const auto normalized = build_sequence(p, n);
              const auto alexander = build_sequence(p, n, SequenceKind::alexander);
              nlohmann::ordered_json out;
              out["fejer_normalized"] = to_json(check_fejer(normalized));
              out["ozaki_normalized"] = to_json(check_ozaki(normalized));
              out["ozaki_odd"] = to_json(check_ozaki_odd(build_sequence(p, n, SequenceKind::odd_embedded)));
              out["fejer_alexander"] = to_json(check_fejer(alexander));
              out["ozaki_alexander"] = to_json(check_ozaki(alexander));
              return dump(out);
          },
          py::arg("params"), py::arg("n"));

    m.def("evaluate",
          [](const std::array<std::string, 5>& raw, const std::string& re, const std::string& im,
             const std::string& kind, const std::string& tol, bool derivative) {
              const auto seq = build_sequence(params_from(raw), 2, parse_sequence_kind(kind));
              const auto z = ComplexPoint::from(parse_rational(re), parse_rational(im));
              const auto r = derivative ? eval_derivative(seq, z, real_from(tol)) : eval_series(seq, z, real_from(tol));
              return dump(to_json(r));
          },
          py::arg("params"), py::arg("re"), py::arg("im"), py::arg("kind"), py::arg("tol"),
          py::arg("derivative"));

    m.def("evidence",
          [](const std::array<std::string, 5>& raw, const std::string& kind, std::optional<std::string> functional,
             std::size_t n_r, std::size_t n_theta, const std::string& r_max, const std::string& tol,
             unsigned workers) {
              const auto p = params_from(raw);
              const GridSpec grid{n_r, n_theta, parse_rational(r_max)};
              EvidenceOptions opts;
              opts.workers = workers;
              auto out = nlohmann::ordered_json::array();
              py::gil_scoped_release release;
              if (functional) {
                  const auto seq = build_sequence(p, 2, parse_sequence_kind(kind));
                  out.push_back(to_json(disk_minimum(seq, parse_functional(*functional), grid, real_from(tol), opts)));
              } else {
                  const auto [ctc, star] = ks_star_evidence(p, parse_sequence_kind(kind), grid, real_from(tol), opts);
                  out.push_back(to_json(ctc));
                  out.push_back(to_json(star));
              }
              return dump(out);
          },
          py::arg("params"), py::arg("kind"), py::arg("functional"), py::arg("n_r"), py::arg("n_theta"),
          py::arg("r_max"), py::arg("tol"), py::arg("workers"));

    m.def("scan",
          [](const std::map<std::string, std::string>& fixed,
             const std::vector<std::tuple<std::string, std::string, std::string, std::size_t>>& axes,
             bool lemmas, std::size_t lemma_n, bool disk, std::size_t n_r, std::size_t n_theta,
             const std::string& r_max, const std::string& tol, unsigned workers, const std::string& format) {
              SliceSpec spec;
              for (const auto& [name, value] : fixed) {
                  if (name.size() != 1) {
                      throw std::invalid_argument("parameter names are single letters a..e");
                  }
                  spec.fixed[name[0]] = parse_rational(value);
              }
              if (axes.size() != 2) {
                  throw std::invalid_argument("a scan needs exactly two axes");
              }
              for (std::size_t k = 0; k < 2; ++k) {
                  const auto& [name, start, stop, steps] = axes[k];
                  if (name.size() != 1) {
                      throw std::invalid_argument("parameter names are single letters a..e");
                  }
                  spec.axes[k] = ScanAxis{name[0], parse_rational(start), parse_rational(stop), steps};
              }
              spec.options.run_lemmas = lemmas;
              spec.options.lemma_length = lemma_n;
              spec.options.run_disk = disk;
              spec.options.grid = GridSpec{n_r, n_theta, parse_rational(r_max)};
              spec.options.tol = real_from(tol);
              spec.options.workers = workers;
              spec.validate();
              py::gil_scoped_release release;
              const auto result = run_scan(spec);
              return format == "csv" ? scan_to_csv(result) : scan_to_json(result);
          },
          py::arg("fixed"), py::arg("axes"), py::arg("lemmas"), py::arg("lemma_n"), py::arg("disk"), py::arg("n_r"),
          py::arg("n_theta"), py::arg("r_max"), py::arg("tol"), py::arg("workers"), py::arg("format"));

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              int code = 0;
              {
                  py::gil_scoped_release release;
                  code = cli::run(args, out, err);
              }
              return std::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"));
}
