#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tiup/formula.hpp"
#include "tiup/ir.hpp"
#include "tiup/rv32i.hpp"

namespace tiup {

struct CompileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Register plan: x0 zero, x1..x4 input variables (name-sorted), x5..x29
// temporaries (linear, never reused, no spilling), x30 result accumulator,
// x31 finish flag.
struct RegPlan {
  uint8_t input_base = 1;
  uint8_t input_limit = 4;
  uint8_t temp_base = 5;
  uint8_t temp_limit = 29;
  uint8_t result_reg = 30;
  uint8_t finish_reg = 31;
};

struct InstrSequence {
  std::string name;  // tautology provenance
  std::string source_text;
  std::vector<uint32_t> words;
  std::map<std::string, uint8_t> input_regs;
  std::map<std::string, size_t> label_index;  // label -> instruction index
  uint8_t result_reg = 30;
  uint8_t finish_reg = 31;
  int temp_count = 0;
  bool uses_memory = false;

  // layout: [0] result prologue, [1..n-3] body, [n-2] accumulate, [n-1] finish
  size_t body_begin() const { return 1; }
  size_t body_end() const { return words.size() - 2; }
};

// AST -> three-address directives. Implications lower to a branch-if-zero
// over the antecedent: fall through into the consequent block, vacuous-true
// block loads 1, both arms define the join temp before the join label.
IrProgram lower_to_ir(const Formula& f, const std::string& name);

// Directives -> encoded words, with the Result_Reg <- 1 prologue first and
// branch offsets resolved from label indices. seq = SUB + SLTIU rd,rd,1;
// sne = SUB + SLTU rd,x0,rd; ld/st mask the word index with 0xFF and scale
// by 4. Throws CompileError (naming the tautology) on input or temp
// overflow and on out-of-range branch offsets.
InstrSequence emit_rv32i(const IrProgram& ir, const RegPlan& plan = {});

// Convenience: lower + emit.
InstrSequence compile_tautology(const Formula& f, const std::string& name,
                                const RegPlan& plan = {});

// Assembly listing with provenance comments; one instruction per line.
std::string format_assembly(const InstrSequence& seq);

void write_binary(const std::string& path, const std::vector<uint32_t>& words);
std::vector<uint32_t> read_binary(const std::string& path);

}  // namespace tiup
