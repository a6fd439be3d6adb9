#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tiup/anomaly.hpp"
#include "tiup/compiler.hpp"
#include "tiup/rv32i.hpp"

namespace tiup {

// Front-end queue feeding the fetch stage. In-range pcs serve the program;
// the first two out-of-range pcs serve the failing epilogue
// (Result_Reg <- 0 then Finish_Reg <- 1), everything past that is a NOP.
// Taken control transfers that overshoot the queue are clamped to the
// epilogue entry by the branch unit.
struct Scheduler {
  std::vector<uint32_t> queue;
  uint8_t result_reg = 30;
  uint8_t finish_reg = 31;

  uint32_t fetch(size_t pc) const;
  size_t epilogue_entry() const { return queue.size(); }
};

struct TraceEntry {
  uint64_t cycle = 0;
  size_t pc = 0;        // queue index
  uint32_t word = 0;
  bool squashed = false;
  bool illegal = false;
  bool wrote = false;
  uint8_t rd = 0;
  uint32_t value = 0;
  uint32_t op_a = 0, op_b = 0;  // operand values as delivered to execute
};

struct MachineState {
  std::array<uint32_t, 32> regs{};
  std::vector<uint32_t> mem;  // 256 words, word-indexed
  size_t pc = 0;              // next fetch index
  uint64_t cycle = 0;
  uint64_t retired = 0;
  std::vector<TraceEntry> committed;  // populated when tracing is on
};

struct RunOptions {
  bool record_trace = false;
  uint64_t cycle_cap = 0;  // 0: 10 * queue length + 100
  uint8_t result_reg = 30;
  uint8_t finish_reg = 31;
  std::map<uint8_t, uint32_t> init_regs;
  size_t check_begin = 0, check_end = 0;  // BNE self-check window [begin,end)
};

struct RunResult {
  bool finished = false;  // Finish_Reg reached exactly 1
  bool hang = false;
  uint64_t cycles = 0;
  uint64_t retired = 0;
  uint32_t result_value = 0;
  uint32_t finish_value = 0;
  bool check_fired = false;  // some in-window BNE saw differing operands
  bool illegal_seen = false;
  MachineState state;
  std::vector<TraceEntry> full_trace;  // retired + squashed, when tracing
};

// Five-stage in-order core (fetch, decode, execute, memory, writeback) with
// always-not-taken prediction. Branches resolve in execute; architectural
// effects land in execute order, so squashed wrong-path instructions never
// touched state and retirement at writeback only does the bookkeeping.
class PipelineSim {
 public:
  PipelineSim(Scheduler scheduler, AnomalySpec anomaly, RunOptions options);

  void step();
  bool drained() const;
  uint64_t cycles() const { return state_.cycle; }
  const MachineState& state() const { return state_; }
  MachineState& state() { return state_; }
  bool check_fired() const { return check_fired_; }
  bool illegal_seen() const { return illegal_seen_; }
  std::vector<TraceEntry> take_full_trace() { return std::move(full_trace_); }

 private:
  struct Slot {
    bool valid = false;
    bool squashed = false;
    bool executed = false;
    size_t pc = 0;
    uint32_t word = 0;
    Instr instr;
    bool illegal = false;
    uint32_t op_a = 0, op_b = 0;
    bool wrote = false;
    uint8_t rd = 0;
    uint32_t value = 0;
  };

  void retire(const Slot& slot);
  void decode_slot(Slot& slot);
  void execute(Slot& slot);
  uint32_t read_reg(uint8_t r) const;
  void write_reg(uint8_t r, uint32_t v, Slot& slot);
  void flush_younger();

  Scheduler sched_;
  AnomalySpec anomaly_;
  RunOptions opts_;
  MachineState state_;
  std::array<Slot, 5> slots_{};  // 0=fetch .. 4=writeback
  bool late_flush_pending_ = false;
  bool check_fired_ = false;
  bool illegal_seen_ = false;
  size_t first_mul_next_ = SIZE_MAX;     // a13/a14 trigger index
  std::vector<size_t> after_mul_;        // a12 trigger indices
  std::vector<TraceEntry> full_trace_;   // includes squashed entries
};

// Seeds the input registers from sigma (via the sequence's symbol table) and
// steps until Finish_Reg == 1 or the cycle cap; a cap breach is a hang.
RunResult run_to_finish(const InstrSequence& seq, const Assignment& sigma,
                        const AnomalySpec& anomaly = {}, RunOptions options = {});

RunResult run_queue(const std::vector<uint32_t>& queue, const AnomalySpec& anomaly,
                    RunOptions options);

// One line per instruction: cycle, pc, word, disassembly, writeback;
// squashed entries are marked.
std::string format_trace(const std::vector<TraceEntry>& trace);

}  // namespace tiup
