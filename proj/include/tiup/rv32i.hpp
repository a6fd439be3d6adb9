#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tiup {

// The instruction subset the compiler emits and the simulator executes:
// RV32I base minus what the tautology code never needs, plus MUL/MULH/MULHU
// from the M extension.
enum class Opcode {
  Add, Sub, And, Or, Xor, Slt, Sltu, Mul, Mulh, Mulhu,  // R-type
  Addi, Andi, Xori, Slli, Sltiu,                         // I-type
  Lui,                                                   // U-type
  Beq, Bne,                                              // B-type
  Jal,                                                   // J-type
  Lw, Sw,                                                // loads/stores
  Illegal,
};

struct Instr {
  Opcode op = Opcode::Illegal;
  uint8_t rd = 0, rs1 = 0, rs2 = 0;
  int32_t imm = 0;  // I/B/J/S immediate or U-type upper 20 bits

  bool is_r_type() const;
  bool is_branch() const { return op == Opcode::Beq || op == Opcode::Bne; }
  bool is_mul_class() const {
    return op == Opcode::Mul || op == Opcode::Mulh || op == Opcode::Mulhu;
  }
};

constexpr uint32_t kNopWord = 0x00000013;  // addi x0, x0, 0

// Bit-exact encodings; encode(decode(w)) == w on the supported subset.
uint32_t encode(const Instr& instr);
Instr decode(uint32_t word);

std::string disassemble(const Instr& instr);
std::string disassemble(uint32_t word);

struct EncodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tiup
