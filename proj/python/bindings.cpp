// Python bindings: programs, truth tables, execution, generators, transforms
// and the exhaustive search.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "regseq/functions.hpp"
#include "regseq/generators.hpp"
#include "regseq/machine.hpp"
#include "regseq/report.hpp"
#include "regseq/search.hpp"
#include "regseq/transforms.hpp"

namespace py = pybind11;
using namespace regseq;

namespace {

py::dict outcome_dict(const Outcome& o) {
  py::dict d;
  d["description"] = describe(o);
  if (const auto* t = std::get_if<Terminated>(&o)) {
    d["status"] = "terminated";
    d["output"] = t->env.output;
    d["aux"] = t->env.aux;
  } else if (const auto* a = std::get_if<InvalidAccess>(&o)) {
    d["status"] = "invalid_access";
    d["position"] = a->position;
    d["register"] = render(a->reg);
  } else {
    d["status"] = "inaction";
  }
  return d;
}

SearchConstraints constraints(std::uint32_t n, std::uint32_t k, std::uint32_t max_len, bool allow_neg,
                              const std::string& prune) {
  SearchConstraints c;
  c.n_inputs = n;
  c.k_aux = k;
  c.max_len = max_len;
  c.allow_neg = allow_neg;
  c.pruning = PruneRules::parse(prune);
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Single-pass instruction sequences over Boolean registers";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SearchAborted>(m, "SearchAborted", PyExc_RuntimeError);

  py::class_<InstructionSequence>(m, "Program")
      .def(py::init([](const std::string& text) { return parse(text); }), py::arg("text"))
      .def("__str__", [](const InstructionSequence& x) { return render(x); })
      .def("__repr__", [](const InstructionSequence& x) { return "Program('" + render(x) + "')"; })
      .def("__len__", &InstructionSequence::size)
      .def("__eq__", [](const InstructionSequence& a, const InstructionSequence& b) { return a == b; })
      .def_property_readonly("max_input", [](const InstructionSequence& x) { return max_register_indices(x).max_input; })
      .def_property_readonly("max_aux", [](const InstructionSequence& x) { return max_register_indices(x).max_aux; });

  py::class_<TruthTable>(m, "TruthTable")
      .def(py::init([](const std::string& bits) { return TruthTable::from_bits(bits); }), py::arg("bits"))
      .def_property_readonly("arity", &TruthTable::arity)
      .def_property_readonly("bits", &TruthTable::bit_string)
      .def("__getitem__", [](const TruthTable& f, std::size_t row) {
        if (row >= f.rows()) throw py::index_error();
        return f[row];
      })
      .def("__len__", &TruthTable::rows)
      .def("__str__", &TruthTable::to_text)
      .def("__repr__", [](const TruthTable& f) { return "TruthTable('" + f.bit_string() + "')"; })
      .def("__eq__", [](const TruthTable& a, const TruthTable& b) { return a == b; })
      .def("__hash__", &TruthTable::hash)
      .def_static("from_text", &TruthTable::from_text);

  m.def("parse", &parse, py::arg("text"));
  m.def("render", [](const InstructionSequence& x) { return render(x); }, py::arg("program"));
  m.def("parity", [](unsigned n) { return parity(n); }, py::arg("n"));
  m.def("complement", &complement, py::arg("table"));

  m.def(
      "run",
      [](const InstructionSequence& x, const std::vector<bool>& inputs, std::size_t aux) {
        return outcome_dict(execute(x, Environment::fresh(inputs, aux)));
      },
      py::arg("program"), py::arg("inputs"), py::arg("aux") = 0);
  m.def(
      "trace",
      [](const InstructionSequence& x, const std::vector<bool>& inputs, std::size_t aux) {
        const Trace t = trace(x, Environment::fresh(inputs, aux));
        py::list steps;
        for (const auto& e : t.entries) {
          py::object reply = e.reply ? py::object(py::bool_(*e.reply)) : py::object(py::none());
          steps.append(py::make_tuple(e.position, render(e.instruction), reply));
        }
        return py::make_tuple(steps, outcome_dict(t.outcome));
      },
      py::arg("program"), py::arg("inputs"), py::arg("aux") = 0);

  m.def(
      "extract_function",
      [](const InstructionSequence& x, unsigned n) -> py::object {
        auto e = extract_function(x, n);
        if (const auto* f = std::get_if<TruthTable>(&e)) return py::cast(*f);
        return py::none();
      },
      py::arg("program"), py::arg("n"), "Truth table of the program, or None when some row does not terminate.");
  m.def(
      "computes",
      [](const InstructionSequence& x, const TruthTable& f) {
        const auto v = computes(x, f);
        return py::make_tuple(is_computes(v), describe(v));
      },
      py::arg("program"), py::arg("table"));

  m.def("pis0", &pis0, py::arg("n"));
  m.def("pis1", &pis1, py::arg("n"));
  m.def("family_length", [](const std::string& variant, std::uint32_t n) {
    const auto v = variant_from_name(variant);
    if (!v) throw py::value_error("unknown variant " + variant);
    return layout(*v, n).total();
  }, py::arg("variant"), py::arg("n"));

  m.def("strip_skips", &strip_skips, py::arg("program"));
  m.def("complement_transform", &complement_transform, py::arg("program"), py::arg("n"));
  m.def("eliminate_input", &eliminate_input, py::arg("program"), py::arg("input"), py::arg("value"));
  m.def("reachable_positions", &reachable_positions, py::arg("program"), py::arg("n"));
  m.def("mask_unreachable", &mask_unreachable, py::arg("program"), py::arg("n"));

  m.def(
      "exists_program",
      [](const TruthTable& f, std::size_t length, std::uint32_t aux, bool allow_neg, const std::string& prune,
         unsigned workers) {
        ExistsResult r;
        {
          py::gil_scoped_release release;
          r = exists_program(f, length, constraints(f.arity(), aux, static_cast<std::uint32_t>(length), allow_neg, prune),
                             SearchOptions{workers});
        }
        py::dict d;
        d["exists"] = r.stats.exists;
        d["candidates"] = r.stats.candidates;
        d["evaluated"] = r.stats.evaluated;
        d["computing"] = r.stats.computing;
        d["witness"] = r.witness ? py::cast(r.witness->sequence) : py::none();
        return d;
      },
      py::arg("table"), py::arg("length"), py::arg("aux") = 0, py::arg("allow_neg") = true,
      py::arg("prune") = "", py::arg("workers") = 1);

  m.def(
      "minimal_length_report",
      [](const TruthTable& f, std::uint32_t max_len, std::uint32_t aux, bool allow_neg, const std::string& prune,
         unsigned workers, const std::string& target_id) {
        const std::string started = report::utc_now();
        MinimalityProfile p = [&] {
          py::gil_scoped_release release;
          return minimal_length(f, constraints(f.arity(), aux, max_len, allow_neg, prune), SearchOptions{workers},
                                target_id);
        }();
        return report::to_json(report::SearchReportFile{std::move(p), started, report::utc_now()});
      },
      py::arg("table"), py::arg("max_len"), py::arg("aux") = 0, py::arg("allow_neg") = true,
      py::arg("prune") = "", py::arg("workers") = 1, py::arg("target_id") = "");

  m.def("strip_run_info", &report::strip_run_info, py::arg("report_json"));
  m.def(
      "separation",
      [](const std::string& without_aux, const std::string& with_aux, std::size_t budget) {
        const auto s = report::separation(report::search_report_from_json(without_aux).profile,
                                          report::search_report_from_json(with_aux).profile, budget);
        return py::make_tuple(s.certified, s.statement);
      },
      py::arg("without_aux_json"), py::arg("with_aux_json"), py::arg("budget"));
}
