// Python bindings for the main operations: parsing/evaluation, the
// exhaustive oracle, template synthesis, compilation, simulation, and the
// verification campaign primitives.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tiup/campaign.hpp"

namespace py = pybind11;
using namespace tiup;

namespace {

Assignment to_assignment(const py::dict& d) {
  Assignment sigma;
  for (auto item : d)
    sigma[py::cast<std::string>(item.first)] =
        static_cast<uint32_t>(py::cast<int64_t>(item.second));
  return sigma;
}

py::dict from_assignment(const Assignment& sigma) {
  py::dict d;
  for (const auto& [k, v] : sigma) d[py::str(k)] = static_cast<int64_t>(static_cast<int32_t>(v));
  return d;
}

py::dict run_result_dict(const RunResult& r) {
  py::dict d;
  d["finished"] = r.finished;
  d["hang"] = r.hang;
  d["result"] = r.result_value;
  d["finish"] = r.finish_value;
  d["retired"] = r.retired;
  d["cycles"] = r.cycles;
  d["check_fired"] = r.check_fired;
  return d;
}

SearchBudget budget_of(int grid_lo, int grid_hi, int samples, uint64_t seed) {
  SearchBudget b;
  b.grid_lo = grid_lo;
  b.grid_hi = grid_hi;
  b.random_samples = samples;
  b.seed = seed;
  return b;
}

}  // namespace

PYBIND11_MODULE(_tiup, m) {
  m.doc() = "tautology-driven processor verification core";

  m.def("parse", [](const std::string& text) {
    parse_formula(text);
    return true;
  }, py::arg("text"), "Parse and type-check a formula; raises on bad input.");

  m.def("roundtrip", [](const std::string& text) {
    return print_formula(parse_formula(text));
  }, py::arg("text"), "Parse a formula and print it back.");

  m.def("eval", [](const std::string& text, const py::dict& sigma, unsigned width) {
    EvalOptions opts;
    opts.width = width;
    return eval_formula(parse_formula(text), to_assignment(sigma), opts);
  }, py::arg("text"), py::arg("sigma"), py::arg("width") = 32,
     "Evaluate a formula under an assignment with wraparound semantics.");

  m.def("free_variables", [](const std::string& text) {
    return free_variables(parse_formula(text));
  });

  m.def("check_tautology", [](const std::string& text, unsigned width, uint64_t limit) {
    OracleVerdict v = check_tautology(parse_formula(text), width, limit);
    py::dict d;
    d["valid"] = v.valid;
    d["width"] = v.width;
    d["assignments_checked"] = v.assignments_checked;
    if (v.counterexample) d["counterexample"] = from_assignment(*v.counterexample);
    return d;
  }, py::arg("text"), py::arg("width") = 4, py::arg("limit") = (1ull << 24),
     "Exhaustive validity check at a small width.");

  m.def("builtin_seeds", []() {
    py::list out;
    for (const auto& s : builtin_seeds().seeds)
      out.append(py::make_tuple(s.name, print_formula(s.formula)));
    return out;
  });

  m.def("builtin_templates", []() {
    py::list out;
    for (const auto& t : builtin_templates().templates)
      out.append(py::make_tuple(t.name, print_formula(t.skeleton), t.placeholders));
    return out;
  });

  m.def("synthesize", [](uint64_t max_instances) {
    py::list out;
    for (const auto& inst : synthesize(builtin_templates(), builtin_seeds().seeds, max_instances))
      out.append(py::make_tuple(inst.name, print_formula(inst.formula)));
    return out;
  }, py::arg("max_instances") = 10000,
     "Instantiate the builtin templates with the builtin seeds.");

  m.def("count_instances", [](size_t seed_count) {
    return count_instances(builtin_templates(), seed_count);
  }, py::arg("seed_count"));

  m.def("compile", [](const std::string& text, const std::string& name) {
    Formula f = parse_formula(text);
    IrProgram ir = lower_to_ir(f, name);
    InstrSequence seq = emit_rv32i(ir);
    seq.source_text = print_formula(f);
    py::dict d;
    d["ir"] = print_ir(ir);
    d["assembly"] = format_assembly(seq);
    d["words"] = seq.words;
    d["inputs"] = seq.input_regs;
    return d;
  }, py::arg("text"), py::arg("name") = "formula",
     "Lower a formula to IR and encoded instruction words.");

  m.def("run", [](const std::string& text, const py::dict& sigma, const std::string& anomaly) {
    InstrSequence seq = compile_tautology(parse_formula(text), "formula");
    return run_result_dict(run_to_finish(seq, to_assignment(sigma), inject(anomaly)));
  }, py::arg("text"), py::arg("sigma"), py::arg("anomaly") = "golden",
     "Compile a formula and run it on the simulator.");

  m.def("disassemble", [](uint32_t word) { return disassemble(word); });

  m.def("list_anomalies", []() {
    py::list out;
    for (const auto& info : anomaly_catalog())
      out.append(py::make_tuple(info.name, info.synopsis, info.category, info.stage));
    return out;
  });

  m.def("verify_seeds", [](const std::string& anomaly, int grid_lo, int grid_hi, int samples,
                           uint64_t seed, int jobs) {
    std::vector<InstrSequence> seqs;
    for (const auto& s : builtin_seeds().seeds)
      seqs.push_back(compile_tautology(s.formula, s.name));
    TiupReport report =
        verify_tiup(seqs, inject(anomaly), budget_of(grid_lo, grid_hi, samples, seed), jobs);
    py::list out;
    for (const auto& v : report.verdicts) {
      py::dict d;
      d["name"] = v.name;
      d["outcome"] = outcome_name(v.outcome);
      d["assignments_tried"] = v.assignments_tried;
      if (v.counterexample) d["counterexample"] = from_assignment(v.counterexample->sigma);
      out.append(d);
    }
    return out;
  }, py::arg("anomaly") = "golden", py::arg("grid_lo") = -8, py::arg("grid_hi") = 7,
     py::arg("samples") = 200, py::arg("seed") = 0xC0FFEE, py::arg("jobs") = 1,
     "Universal-property check of the builtin seed corpus under an anomaly.");

  m.def("detection_row", [](const std::string& anomaly, int grid_lo, int grid_hi, int samples,
                            uint64_t seed, int jobs) {
    std::vector<InstrSequence> seqs;
    std::vector<EddivProgram> programs;
    for (const auto& s : builtin_seeds().seeds) {
      seqs.push_back(compile_tautology(s.formula, s.name));
      programs.push_back(build_eddiv(seqs.back()));
    }
    DetectionMatrix matrix = detection_matrix(
        {anomaly}, seqs, programs, budget_of(grid_lo, grid_hi, samples, seed), jobs);
    const MatrixRow& row = matrix.rows.front();
    py::dict d;
    d["anomaly"] = row.anomaly;
    d["tiup_detected"] = row.tiup.detected;
    d["tiup_outcome"] = row.tiup.outcome;
    d["sqed_detected"] = row.sqed.detected;
    d["sqed_outcome"] = row.sqed.outcome;
    return d;
  }, py::arg("anomaly"), py::arg("grid_lo") = -8, py::arg("grid_hi") = 7,
     py::arg("samples") = 200, py::arg("seed") = 0xC0FFEE, py::arg("jobs") = 2,
     "One detection-matrix row over the builtin seed corpus.");

  m.attr("__version__") = "0.1.0";
}
