#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tiup/formula.hpp"

namespace tiup {

// ISA-independent three-address directives. Temporaries are written once,
// except join temporaries, which get one definition per arm of an
// implication (the fall-through arm and the vacuous-true arm).

struct IrOperand {
  enum class Kind { Temp, Var, Imm };
  Kind kind = Kind::Imm;
  int temp = -1;
  std::string var;
  int32_t imm = 0;

  static IrOperand of_temp(int t) { IrOperand o; o.kind = Kind::Temp; o.temp = t; return o; }
  static IrOperand of_var(std::string v) { IrOperand o; o.kind = Kind::Var; o.var = std::move(v); return o; }
  static IrOperand of_imm(int32_t v) { IrOperand o; o.kind = Kind::Imm; o.imm = v; return o; }
};

enum class IrOp { Add, Sub, Mul, MulHU, And, Or, Xor, Slt, Sltu, Seq, Sne };

struct IrDirective {
  enum class Kind {
    Compute,     // dst = op a, b
    LoadImm,     // dst = li imm
    MemLoad,     // dst = load a      (a = word index)
    MemStore,    // store b at index a; dst is the scratch temp for the address
    Branch,      // beq cond, label   (taken when cond == 0)
    Jump,        // jmp label
    Label,       // label:
    Accumulate,  // result_reg &= temp a
    Finish,      // finish flag
  };
  Kind kind{};
  int dst = -1;
  IrOp op{};
  IrOperand a, b;
  int cond = -1;
  std::string label;
};

struct IrProgram {
  std::string name;                  // source tautology name
  std::vector<IrDirective> directives;
  std::vector<std::string> inputs;   // free variables, sorted
  int temp_count = 0;
  bool uses_memory = false;
  std::set<int> join_temps;
};

// One directive per line, Listing-style:
//   %t3 = add i32 %t1, %x
//   %t4 = li i32 2
//   %t5 = load i32 %t2
//   store i32 %t4, %t3
//   beq %t5, else_0
//   jmp join_0
//   else_0:
//   %result_reg = and i32 %t6, %result_reg
//   finish
std::string print_ir(const IrProgram& prog);

// Structural checks: temp defined before use and exactly once (join temps:
// once per arm), labels unique and resolvable, exactly one accumulate, and
// the accumulate precedes the final finish.
void validate_ir(const IrProgram& prog);

struct IrError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tiup
