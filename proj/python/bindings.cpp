#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.hpp"

namespace py = pybind11;
using namespace relproj;

namespace {

// Runs one command on a JSON input and returns the report as a JSON string.
std::string evaluate(const std::string& command, const std::string& sub, const std::string& input,
                     std::uint64_t seed, std::optional<std::size_t> samples) {
  cli::Options opt;
  opt.seed = seed;
  opt.samples = samples;
  cli::json doc = cli::json::parse(input);
  cli::Workspace ws;
  cli::json in = doc;
  if (doc.is_object() && doc.contains("objects")) {
    ws = cli::Workspace(doc);
    in = doc.contains("input") ? doc.at("input") : cli::json();
  }
  return cli::report_json(cli::dispatch(command, sub, ws, in, opt)).dump();
}

py::tuple run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"relproj"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact verification of algebra in twisted graded categories";
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.def("canonical_rational", [](const std::string& s) { return format_rational(parse_rational(s)); });
  m.def("run", &run, py::arg("args"), "Command line entry point: (exit code, stdout, stderr).");
  m.def("evaluate", &evaluate, py::arg("command"), py::arg("sub") = "", py::arg("input") = "{}",
        py::arg("seed") = 1, py::arg("samples") = std::nullopt);
  m.def(
      "octonion_suite",
      [](std::uint64_t seed, std::size_t samples) {
        cli::Options opt;
        opt.seed = seed;
        opt.samples = samples;
        return cli::report_json(cli::octonion_suite(opt)).dump();
      },
      py::arg("seed") = 1, py::arg("samples") = 200);
  m.def(
      "transition",
      [](std::size_t n, std::size_t from, std::size_t to, const std::vector<std::string>& coords) {
        const AlgebraPtr A = ground_field(Category::plain());
        std::vector<Vec> cs;
        for (const auto& c : coords) cs.push_back(Vec{parse_rational(c)});
        std::vector<std::string> out;
        for (const auto& v : transition(A, n, from, to, cs).coords) out.push_back(format_rational(v[0]));
        return out;
      },
      py::arg("n"), py::arg("source"), py::arg("target"), py::arg("coords"));
  m.def("pentagon", [](const std::string& which) {
    const CategoryPtr c = which == "octonion" ? Category::octonionic()
                          : which == "super"  ? Category::super_vector_spaces()
                                              : Category::plain();
    const CheckReport r = check_pentagon(c->associator());
    return py::make_tuple(r.checked, r.violations.size());
  });
  m.def("is_field_object", [](const std::string& name) {
    cli::Workspace ws;
    return is_field_object(ws.algebra(cli::json(name), "algebra"));
  });
}
