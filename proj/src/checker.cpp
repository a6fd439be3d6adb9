#include "tiup/checker.hpp"

#include <atomic>
#include <future>
#include <thread>

namespace tiup {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t fnv1a(const std::string& text) {
  uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

const char* outcome_name(CheckOutcome o) {
  switch (o) {
    case CheckOutcome::PassWithinBudget: return "pass-within-budget";
    case CheckOutcome::Violated: return "violated";
    case CheckOutcome::Hang: return "hang";
  }
  return "?";
}

std::vector<Assignment> assignment_grid(const std::vector<std::string>& vars, int32_t lo,
                                        int32_t hi) {
  std::vector<Assignment> out;
  if (vars.empty()) {
    out.push_back({});
    return out;
  }
  std::vector<int64_t> counter(vars.size(), lo);
  for (;;) {
    Assignment sigma;
    for (size_t i = 0; i < vars.size(); ++i)
      sigma[vars[i]] = static_cast<uint32_t>(static_cast<int32_t>(counter[i]));
    out.push_back(std::move(sigma));
    // odometer, last variable fastest
    bool done = true;
    size_t i = vars.size();
    while (i-- > 0) {
      if (++counter[i] <= hi) {
        done = false;
        break;
      }
      counter[i] = lo;
    }
    if (done) return out;
  }
}

Assignment random_assignment(const std::vector<std::string>& vars, uint64_t& prng_state) {
  Assignment sigma;
  for (const auto& v : vars) sigma[v] = static_cast<uint32_t>(splitmix64(prng_state));
  return sigma;
}

bool TiupReport::any_violation() const {
  for (const auto& v : verdicts)
    if (v.outcome != CheckOutcome::PassWithinBudget) return true;
  return false;
}

const TautologyVerdict* TiupReport::first_violation() const {
  for (const auto& v : verdicts)
    if (v.outcome != CheckOutcome::PassWithinBudget) return &v;
  return nullptr;
}

namespace {

std::vector<std::string> sequence_vars(const InstrSequence& seq) {
  std::vector<std::string> vars;
  for (const auto& [name, reg] : seq.input_regs) vars.push_back(name);
  return vars;  // map order: already sorted
}

TautologyVerdict check_one_tautology(const InstrSequence& seq, const AnomalySpec& anomaly,
                                     const SearchBudget& budget) {
  TautologyVerdict v;
  v.name = seq.name;
  std::vector<std::string> vars = sequence_vars(seq);

  auto probe = [&](const Assignment& sigma) -> bool {
    ++v.assignments_tried;
    RunResult r = run_to_finish(seq, sigma, anomaly);
    if (r.hang) {
      v.outcome = CheckOutcome::Hang;
      v.counterexample = Counterexample{sigma, seq.name, r.retired, true};
      return true;
    }
    if (r.finished && r.result_value == 0) {
      v.outcome = CheckOutcome::Violated;
      v.counterexample = Counterexample{sigma, seq.name, r.retired, false};
      return true;
    }
    return false;
  };

  for (const Assignment& sigma : assignment_grid(vars, budget.grid_lo, budget.grid_hi))
    if (probe(sigma)) return v;
  uint64_t prng = budget.seed ^ fnv1a(seq.name);
  for (int i = 0; i < budget.random_samples; ++i)
    if (probe(random_assignment(vars, prng))) return v;
  return v;
}

// Deterministic fork-join over an index range.
template <typename Fn>
void parallel_for(size_t count, int jobs, Fn fn) {
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  size_t workers = std::min<size_t>(static_cast<size_t>(jobs), count);
  std::vector<std::future<void>> futures;
  std::atomic<size_t> next{0};
  futures.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    }));
  }
  for (auto& f : futures) f.get();
}

}  // namespace

TiupReport verify_tiup(const std::vector<InstrSequence>& tautologies,
                       const AnomalySpec& anomaly, const SearchBudget& budget, int jobs) {
  TiupReport report;
  report.verdicts.resize(tautologies.size());
  parallel_for(tautologies.size(), jobs, [&](size_t i) {
    report.verdicts[i] = check_one_tautology(tautologies[i], anomaly, budget);
  });
  return report;
}

SqedReport verify_sqed(const std::vector<EddivProgram>& programs, const AnomalySpec& anomaly,
                       const SearchBudget& budget, int jobs) {
  struct ProgramResult {
    bool fired = false;
    bool hang = false;
    std::optional<Assignment> sigma;
    uint64_t tried = 0;
  };
  std::vector<ProgramResult> results(programs.size());

  parallel_for(programs.size(), jobs, [&](size_t i) {
    const EddivProgram& p = programs[i];
    std::vector<std::string> vars;
    for (const auto& [name, reg] : p.input_regs) vars.push_back(name);
    ProgramResult& pr = results[i];
    auto probe = [&](const Assignment& sigma) -> bool {
      ++pr.tried;
      RunResult r = run_eddiv(p, sigma, anomaly);
      if (r.check_fired) {
        pr.fired = true;
        pr.sigma = sigma;
        return true;
      }
      if (r.hang) pr.hang = true;
      return false;
    };
    for (const Assignment& sigma : assignment_grid(vars, budget.grid_lo, budget.grid_hi))
      if (probe(sigma)) return;
    uint64_t prng = budget.seed ^ fnv1a(p.name);
    for (int k = 0; k < budget.random_samples; ++k)
      if (probe(random_assignment(vars, prng))) return;
  });

  SqedReport report;
  for (size_t i = 0; i < programs.size(); ++i) {
    report.assignments_tried += results[i].tried;
    if (results[i].hang) report.hang = true;
    if (results[i].fired && !report.fired) {
      report.fired = true;
      report.witness_program = programs[i].name;
      report.witness_sigma = results[i].sigma;
    }
  }
  return report;
}

const MatrixRow* DetectionMatrix::row(const std::string& anomaly) const {
  for (const auto& r : rows)
    if (r.anomaly == anomaly) return &r;
  return nullptr;
}

DetectionMatrix detection_matrix(const std::vector<std::string>& anomaly_names,
                                 const std::vector<InstrSequence>& tautologies,
                                 const std::vector<EddivProgram>& programs,
                                 const SearchBudget& budget, int jobs) {
  DetectionMatrix matrix;
  for (const auto& name : anomaly_names) {
    AnomalySpec spec = inject(name);
    MatrixRow row;
    row.anomaly = name;
    if (!spec.golden()) {
      const AnomalyInfo& info = anomaly_info(spec.id);
      row.synopsis = info.synopsis;
      row.category = info.category;
    } else {
      row.synopsis = "anomaly-free reference";
      row.category = "-";
    }

    TiupReport tiup = verify_tiup(tautologies, spec, budget, jobs);
    for (const auto& v : tiup.verdicts) {
      row.tiup.assignments_tried += v.assignments_tried;
      switch (v.outcome) {
        case CheckOutcome::Violated: ++row.tiup.violated_count; break;
        case CheckOutcome::Hang: ++row.tiup.hang_count; break;
        case CheckOutcome::PassWithinBudget: ++row.tiup.pass_count; break;
      }
    }
    if (const TautologyVerdict* v = tiup.first_violation()) {
      row.tiup.detected = true;
      row.tiup.outcome = outcome_name(v->outcome);
      row.tiup.witness = v->name;
      row.tiup.witness_sigma = v->counterexample ? std::optional(v->counterexample->sigma)
                                                 : std::nullopt;
      row.tiup.retired = v->counterexample ? v->counterexample->retired : 0;
    } else {
      row.tiup.outcome = "pass-within-budget";
    }

    SqedReport sqed = verify_sqed(programs, spec, budget, jobs);
    row.sqed.assignments_tried = sqed.assignments_tried;
    row.sqed.detected = sqed.fired;
    row.sqed.outcome = sqed.fired ? "fired" : (sqed.hang ? "hang" : "pass-within-budget");
    row.sqed.witness = sqed.witness_program;
    row.sqed.witness_sigma = sqed.witness_sigma;

    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

bool replay_counterexample(const InstrSequence& seq, const Counterexample& cex,
                           const AnomalySpec& anomaly, RunResult* out) {
  RunOptions opts;
  opts.record_trace = true;
  RunResult r = run_to_finish(seq, cex.sigma, anomaly, opts);
  if (out) *out = r;
  if (cex.hang) return r.hang;
  return r.finished && r.finish_value == 1 && r.result_value == 0;
}

}  // namespace tiup
