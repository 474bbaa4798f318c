#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "charpoly/error.hpp"
#include "charpoly/report.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_charpoly, m) {
  m.doc() = "Characteristic polyhedra with exact arithmetic";

  py::register_exception<charpoly::InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<charpoly::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<charpoly::BudgetExhausted>(m, "BudgetExhausted", PyExc_RuntimeError);

  m.def("commands", &charpoly::commands);
  m.def("input_digest", [](const std::string& text) { return charpoly::input_digest(text); });

  // Returns (report_json, exit_code, svg_or_None).
  m.def(
      "run",
      [](const std::string& command, const std::string& text, bool plain, bool raw_forms,
         const std::map<std::string, long>& budget, bool svg) {
        charpoly::RunFlags flags;
        flags.plain = plain;
        flags.raw_forms = raw_forms;
        flags.budget_overrides = budget;
        charpoly::RunReport rep;
        {
          py::gil_scoped_release release;
          rep = charpoly::run(command, text, flags);
        }
        py::object plot = py::none();
        if (svg && rep.plot && rep.plot->dim() == 2) plot = py::str(charpoly::render_svg(*rep.plot, command));
        return py::make_tuple(rep.json.dump(), static_cast<int>(rep.exit), plot);
      },
      py::arg("command"), py::arg("text"), py::arg("plain") = false, py::arg("raw_forms") = false,
      py::arg("budget") = std::map<std::string, long>{}, py::arg("svg") = false);

  m.def(
      "normalize_problem",
      [](const std::string& text) { return charpoly::print_problem(charpoly::parse_problem(text)); },
      "Parses a problem file and prints it canonically. Raises ValueError on malformed input.");
}
