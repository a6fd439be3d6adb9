#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tiup/anomaly.hpp"
#include "tiup/compiler.hpp"
#include "tiup/eddiv.hpp"
#include "tiup/formula.hpp"
#include "tiup/simulator.hpp"

namespace tiup {

// Input search: an exhaustive small-magnitude grid first (bug-friendly
// corners), then seeded full-width samples. Deterministic for a fixed seed
// regardless of the parallelism degree.
struct SearchBudget {
  int32_t grid_lo = -8;
  int32_t grid_hi = 7;
  int random_samples = 2000;
  uint64_t seed = 0xC0FFEE;
};

enum class CheckOutcome { PassWithinBudget, Violated, Hang };

const char* outcome_name(CheckOutcome o);

struct Counterexample {
  Assignment sigma;
  std::string tautology;
  uint64_t retired = 0;
  bool hang = false;  // witness replays to a cycle-cap hang, not Finish=1&&Result=0
};

struct TautologyVerdict {
  std::string name;
  CheckOutcome outcome = CheckOutcome::PassWithinBudget;
  std::optional<Counterexample> counterexample;
  uint64_t assignments_tried = 0;
};

struct TiupReport {
  std::vector<TautologyVerdict> verdicts;
  bool any_violation() const;  // violated or hang
  const TautologyVerdict* first_violation() const;
};

// Universal-property check: for each compiled tautology, search assignments
// for a final state with Finish_Reg=1 and Result_Reg=0 (or a hang). Each
// tautology stops at its first counterexample; tautologies are independent.
TiupReport verify_tiup(const std::vector<InstrSequence>& tautologies,
                       const AnomalySpec& anomaly, const SearchBudget& budget,
                       int jobs = 1);

struct SqedReport {
  bool fired = false;
  bool hang = false;  // a run hit the cycle cap without any check firing
  std::string witness_program;
  std::optional<Assignment> witness_sigma;
  uint64_t assignments_tried = 0;
};

// Self-consistency check over EDDI-V programs: a violation is any fired BNE
// divergence check on any assignment in the budget.
SqedReport verify_sqed(const std::vector<EddivProgram>& programs,
                       const AnomalySpec& anomaly, const SearchBudget& budget,
                       int jobs = 1);

struct MethodCell {
  bool detected = false;
  std::string outcome;  // "violated", "hang", "fired", "pass-within-budget"
  std::string witness;  // tautology/program name
  std::optional<Assignment> witness_sigma;
  uint64_t retired = 0;
  uint64_t assignments_tried = 0;
  uint64_t violated_count = 0;  // per-tautology outcomes behind the cell
  uint64_t hang_count = 0;
  uint64_t pass_count = 0;
};

struct MatrixRow {
  std::string anomaly;
  std::string synopsis;
  std::string category;
  MethodCell tiup, sqed;
};

struct DetectionMatrix {
  std::vector<MatrixRow> rows;
  const MatrixRow* row(const std::string& anomaly) const;
};

DetectionMatrix detection_matrix(const std::vector<std::string>& anomaly_names,
                                 const std::vector<InstrSequence>& tautologies,
                                 const std::vector<EddivProgram>& programs,
                                 const SearchBudget& budget, int jobs = 1);

// Deterministic grid+samples enumeration for a variable set; used by the
// checker and by the compiler-correctness sweeps.
std::vector<Assignment> assignment_grid(const std::vector<std::string>& vars,
                                        int32_t lo, int32_t hi);
Assignment random_assignment(const std::vector<std::string>& vars, uint64_t& prng_state);
uint64_t splitmix64(uint64_t& state);
uint64_t fnv1a(const std::string& text);

// Re-runs a counterexample with tracing; true when the stored outcome
// reproduces (Finish=1 && Result=0, or the hang).
bool replay_counterexample(const InstrSequence& seq, const Counterexample& cex,
                           const AnomalySpec& anomaly, RunResult* out = nullptr);

}  // namespace tiup
