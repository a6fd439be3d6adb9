#include "tiup/oracle.hpp"

#include <sstream>

namespace tiup {

OracleVerdict check_tautology(const Formula& f, unsigned width, uint64_t limit) {
  if (width < 1 || width > 32) throw OracleError("width must be in 1..32");
  if (infer_type(f) != Ty::Bool) throw OracleError("formula is not boolean-valued");

  std::vector<std::string> vars = free_variables(f);
  uint64_t per_var = 1ull << width;
  uint64_t total = 1;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (total > limit / per_var) throw OracleError("state space exceeds limit");
    total *= per_var;
  }
  if (total > limit) throw OracleError("state space exceeds limit");

  EvalOptions opts;
  opts.width = width;
  opts.mem_words = 8;

  OracleVerdict v;
  v.width = width;

  Assignment sigma;
  for (const auto& name : vars) sigma[name] = 0;
  std::vector<uint32_t> counters(vars.size(), 0);
  uint32_t top = static_cast<uint32_t>(per_var);

  for (uint64_t n = 0; n < total; ++n) {
    ++v.assignments_checked;
    if (!eval_formula(f, sigma, opts)) {
      v.valid = false;
      v.counterexample = sigma;
      return v;
    }
    // odometer: last (name-sorted) variable fastest, so assignments come out
    // in lexicographic order over the sorted variable tuple
    for (size_t i = counters.size(); i-- > 0;) {
      if (++counters[i] < top) {
        sigma[vars[i]] = counters[i];
        break;
      }
      counters[i] = 0;
      sigma[vars[i]] = 0;
    }
  }
  v.valid = true;
  return v;
}

AdmissionReport admit_seeds(const SeedLibrary& library, unsigned width, uint64_t limit) {
  AdmissionReport report;
  report.width = width;
  for (const auto& seed : library.seeds) {
    OracleVerdict v = check_tautology(seed.formula, width, limit);
    if (v.valid)
      report.admitted.push_back(seed);
    else
      report.rejected.push_back({seed.name, std::move(v)});
  }
  return report;
}

std::string format_assignment(const Assignment& sigma, unsigned width) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, value] : sigma) {
    if (!first) out << ' ';
    first = false;
    out << name << '=' << sign_extend(value, width);
  }
  return out.str();
}

}  // namespace tiup
