#include "tiup/rv32i.hpp"

#include <cstdio>
#include <stdexcept>

namespace tiup {

namespace {

constexpr uint32_t OP = 0b0110011;
constexpr uint32_t OP_IMM = 0b0010011;
constexpr uint32_t LUI = 0b0110111;
constexpr uint32_t BRANCH = 0b1100011;
constexpr uint32_t JAL_OP = 0b1101111;
constexpr uint32_t LOAD = 0b0000011;
constexpr uint32_t STORE = 0b0100011;

uint32_t field(uint32_t v, unsigned hi, unsigned lo) {
  return (v >> lo) & ((1u << (hi - lo + 1)) - 1u);
}

void check_range(int64_t v, int64_t lo, int64_t hi, const char* what) {
  if (v < lo || v > hi) throw EncodeError(std::string(what) + " immediate out of range");
}

}  // namespace

bool Instr::is_r_type() const {
  switch (op) {
    case Opcode::Add: case Opcode::Sub: case Opcode::And: case Opcode::Or:
    case Opcode::Xor: case Opcode::Slt: case Opcode::Sltu: case Opcode::Mul:
    case Opcode::Mulh: case Opcode::Mulhu:
      return true;
    default:
      return false;
  }
}

uint32_t encode(const Instr& i) {
  uint32_t rd = i.rd & 31, rs1 = i.rs1 & 31, rs2 = i.rs2 & 31;
  auto r_type = [&](uint32_t funct7, uint32_t funct3) {
    return (funct7 << 25) | (rs2 << 20) | (rs1 << 15) | (funct3 << 12) | (rd << 7) | OP;
  };
  auto i_type = [&](uint32_t opcode, uint32_t funct3) {
    check_range(i.imm, -2048, 2047, "I-type");
    return (static_cast<uint32_t>(i.imm & 0xFFF) << 20) | (rs1 << 15) | (funct3 << 12) |
           (rd << 7) | opcode;
  };
  switch (i.op) {
    case Opcode::Add: return r_type(0x00, 0x0);
    case Opcode::Sub: return r_type(0x20, 0x0);
    case Opcode::Xor: return r_type(0x00, 0x4);
    case Opcode::Or: return r_type(0x00, 0x6);
    case Opcode::And: return r_type(0x00, 0x7);
    case Opcode::Slt: return r_type(0x00, 0x2);
    case Opcode::Sltu: return r_type(0x00, 0x3);
    case Opcode::Mul: return r_type(0x01, 0x0);
    case Opcode::Mulh: return r_type(0x01, 0x1);
    case Opcode::Mulhu: return r_type(0x01, 0x3);
    case Opcode::Addi: return i_type(OP_IMM, 0x0);
    case Opcode::Andi: return i_type(OP_IMM, 0x7);
    case Opcode::Xori: return i_type(OP_IMM, 0x4);
    case Opcode::Sltiu: return i_type(OP_IMM, 0x3);
    case Opcode::Slli:
      check_range(i.imm, 0, 31, "shift");
      return (static_cast<uint32_t>(i.imm) << 20) | (rs1 << 15) | (0x1u << 12) | (rd << 7) |
             OP_IMM;
    case Opcode::Lui:
      check_range(i.imm, 0, 0xFFFFF, "U-type");
      return (static_cast<uint32_t>(i.imm) << 12) | (rd << 7) | LUI;
    case Opcode::Lw:
      check_range(i.imm, -2048, 2047, "load");
      return (static_cast<uint32_t>(i.imm & 0xFFF) << 20) | (rs1 << 15) | (0x2u << 12) |
             (rd << 7) | LOAD;
    case Opcode::Sw: {
      check_range(i.imm, -2048, 2047, "store");
      uint32_t imm = static_cast<uint32_t>(i.imm & 0xFFF);
      return (field(imm, 11, 5) << 25) | (rs2 << 20) | (rs1 << 15) | (0x2u << 12) |
             (field(imm, 4, 0) << 7) | STORE;
    }
    case Opcode::Beq:
    case Opcode::Bne: {
      check_range(i.imm, -4096, 4094, "branch");
      if (i.imm & 1) throw EncodeError("branch offset must be even");
      uint32_t imm = static_cast<uint32_t>(i.imm);
      uint32_t funct3 = (i.op == Opcode::Beq) ? 0x0 : 0x1;
      return (field(imm, 12, 12) << 31) | (field(imm, 10, 5) << 25) | (rs2 << 20) |
             (rs1 << 15) | (funct3 << 12) | (field(imm, 4, 1) << 8) |
             (field(imm, 11, 11) << 7) | BRANCH;
    }
    case Opcode::Jal: {
      check_range(i.imm, -(1 << 20), (1 << 20) - 2, "jump");
      if (i.imm & 1) throw EncodeError("jump offset must be even");
      uint32_t imm = static_cast<uint32_t>(i.imm);
      return (field(imm, 20, 20) << 31) | (field(imm, 10, 1) << 21) |
             (field(imm, 11, 11) << 20) | (field(imm, 19, 12) << 12) | (rd << 7) | JAL_OP;
    }
    case Opcode::Illegal:
      throw EncodeError("cannot encode an illegal instruction");
  }
  throw EncodeError("unhandled opcode");
}

Instr decode(uint32_t word) {
  Instr out;
  uint32_t opcode = word & 0x7F;
  uint32_t rd = field(word, 11, 7);
  uint32_t funct3 = field(word, 14, 12);
  uint32_t rs1 = field(word, 19, 15);
  uint32_t rs2 = field(word, 24, 20);
  uint32_t funct7 = field(word, 31, 25);
  auto sext = [](uint32_t v, unsigned bits) {
    uint32_t sign = 1u << (bits - 1);
    return static_cast<int32_t>((v ^ sign) - sign);
  };

  switch (opcode) {
    case OP: {
      out.rd = rd; out.rs1 = rs1; out.rs2 = rs2;
      if (funct7 == 0x00) {
        switch (funct3) {
          case 0x0: out.op = Opcode::Add; return out;
          case 0x2: out.op = Opcode::Slt; return out;
          case 0x3: out.op = Opcode::Sltu; return out;
          case 0x4: out.op = Opcode::Xor; return out;
          case 0x6: out.op = Opcode::Or; return out;
          case 0x7: out.op = Opcode::And; return out;
        }
      } else if (funct7 == 0x20 && funct3 == 0x0) {
        out.op = Opcode::Sub; return out;
      } else if (funct7 == 0x01) {
        switch (funct3) {
          case 0x0: out.op = Opcode::Mul; return out;
          case 0x1: out.op = Opcode::Mulh; return out;
          case 0x3: out.op = Opcode::Mulhu; return out;
        }
      }
      break;
    }
    case OP_IMM: {
      out.rd = rd; out.rs1 = rs1;
      out.imm = sext(field(word, 31, 20), 12);
      switch (funct3) {
        case 0x0: out.op = Opcode::Addi; return out;
        case 0x3: out.op = Opcode::Sltiu; return out;
        case 0x4: out.op = Opcode::Xori; return out;
        case 0x7: out.op = Opcode::Andi; return out;
        case 0x1:
          if (funct7 == 0x00) {
            out.op = Opcode::Slli;
            out.imm = static_cast<int32_t>(rs2);  // shamt
            return out;
          }
          break;
      }
      break;
    }
    case LUI:
      out.op = Opcode::Lui;
      out.rd = rd;
      out.imm = static_cast<int32_t>(field(word, 31, 12));
      return out;
    case BRANCH: {
      if (funct3 != 0x0 && funct3 != 0x1) break;
      out.op = (funct3 == 0x0) ? Opcode::Beq : Opcode::Bne;
      out.rs1 = rs1; out.rs2 = rs2;
      uint32_t imm = (field(word, 31, 31) << 12) | (field(word, 7, 7) << 11) |
                     (field(word, 30, 25) << 5) | (field(word, 11, 8) << 1);
      out.imm = sext(imm, 13);
      return out;
    }
    case JAL_OP: {
      out.op = Opcode::Jal;
      out.rd = rd;
      uint32_t imm = (field(word, 31, 31) << 20) | (field(word, 19, 12) << 12) |
                     (field(word, 20, 20) << 11) | (field(word, 30, 21) << 1);
      out.imm = sext(imm, 21);
      return out;
    }
    case LOAD:
      if (funct3 == 0x2) {
        out.op = Opcode::Lw;
        out.rd = rd; out.rs1 = rs1;
        out.imm = sext(field(word, 31, 20), 12);
        return out;
      }
      break;
    case STORE:
      if (funct3 == 0x2) {
        out.op = Opcode::Sw;
        out.rs1 = rs1; out.rs2 = rs2;
        out.imm = sext((field(word, 31, 25) << 5) | field(word, 11, 7), 12);
        return out;
      }
      break;
  }
  out = Instr{};
  out.op = Opcode::Illegal;
  return out;
}

std::string disassemble(const Instr& i) {
  char buf[64];
  auto reg = [](uint8_t r) { return static_cast<int>(r); };
  switch (i.op) {
    case Opcode::Add: case Opcode::Sub: case Opcode::And: case Opcode::Or:
    case Opcode::Xor: case Opcode::Slt: case Opcode::Sltu: case Opcode::Mul:
    case Opcode::Mulh: case Opcode::Mulhu: {
      const char* name = "";
      switch (i.op) {
        case Opcode::Add: name = "add"; break;
        case Opcode::Sub: name = "sub"; break;
        case Opcode::And: name = "and"; break;
        case Opcode::Or: name = "or"; break;
        case Opcode::Xor: name = "xor"; break;
        case Opcode::Slt: name = "slt"; break;
        case Opcode::Sltu: name = "sltu"; break;
        case Opcode::Mul: name = "mul"; break;
        case Opcode::Mulh: name = "mulh"; break;
        default: name = "mulhu"; break;
      }
      std::snprintf(buf, sizeof buf, "%s x%d, x%d, x%d", name, reg(i.rd), reg(i.rs1), reg(i.rs2));
      return buf;
    }
    case Opcode::Addi:
      if (i.rd == 0 && i.rs1 == 0 && i.imm == 0) return "nop";
      std::snprintf(buf, sizeof buf, "addi x%d, x%d, %d", reg(i.rd), reg(i.rs1), i.imm);
      return buf;
    case Opcode::Andi:
      std::snprintf(buf, sizeof buf, "andi x%d, x%d, %d", reg(i.rd), reg(i.rs1), i.imm);
      return buf;
    case Opcode::Xori:
      std::snprintf(buf, sizeof buf, "xori x%d, x%d, %d", reg(i.rd), reg(i.rs1), i.imm);
      return buf;
    case Opcode::Slli:
      std::snprintf(buf, sizeof buf, "slli x%d, x%d, %d", reg(i.rd), reg(i.rs1), i.imm);
      return buf;
    case Opcode::Sltiu:
      std::snprintf(buf, sizeof buf, "sltiu x%d, x%d, %d", reg(i.rd), reg(i.rs1), i.imm);
      return buf;
    case Opcode::Lui:
      std::snprintf(buf, sizeof buf, "lui x%d, 0x%x", reg(i.rd), i.imm);
      return buf;
    case Opcode::Beq:
      std::snprintf(buf, sizeof buf, "beq x%d, x%d, %d", reg(i.rs1), reg(i.rs2), i.imm);
      return buf;
    case Opcode::Bne:
      std::snprintf(buf, sizeof buf, "bne x%d, x%d, %d", reg(i.rs1), reg(i.rs2), i.imm);
      return buf;
    case Opcode::Jal:
      std::snprintf(buf, sizeof buf, "jal x%d, %d", reg(i.rd), i.imm);
      return buf;
    case Opcode::Lw:
      std::snprintf(buf, sizeof buf, "lw x%d, %d(x%d)", reg(i.rd), i.imm, reg(i.rs1));
      return buf;
    case Opcode::Sw:
      std::snprintf(buf, sizeof buf, "sw x%d, %d(x%d)", reg(i.rs2), i.imm, reg(i.rs1));
      return buf;
    case Opcode::Illegal:
      return "<illegal>";
  }
  return "<?>";
}

std::string disassemble(uint32_t word) { return disassemble(decode(word)); }

}  // namespace tiup
