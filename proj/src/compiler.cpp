#include "tiup/compiler.hpp"

#include <fstream>
#include <sstream>

namespace tiup {

namespace {

class Lowerer {
 public:
  explicit Lowerer(std::string name) { prog_.name = std::move(name); }

  IrProgram run(const Formula& f) {
    if (infer_type(f) != Ty::Bool)
      throw CompileError(prog_.name + ": only boolean-valued formulas compile");
    prog_.inputs = free_variables(f);
    IrOperand top = lower(f);
    IrDirective acc;
    acc.kind = IrDirective::Kind::Accumulate;
    acc.a = as_temp(top);
    prog_.directives.push_back(acc);
    IrDirective fin;
    fin.kind = IrDirective::Kind::Finish;
    prog_.directives.push_back(fin);
    prog_.temp_count = next_temp_;
    validate_ir(prog_);
    return std::move(prog_);
  }

 private:
  int fresh() { return next_temp_++; }

  IrOperand as_temp(const IrOperand& o) {
    if (o.kind != IrOperand::Kind::Temp)
      throw CompileError(prog_.name + ": boolean value expected in a temporary");
    return o;
  }

  int emit_compute(IrOp op, IrOperand a, IrOperand b) {
    IrDirective d;
    d.kind = IrDirective::Kind::Compute;
    d.dst = fresh();
    d.op = op;
    d.a = std::move(a);
    d.b = std::move(b);
    prog_.directives.push_back(d);
    return d.dst;
  }

  int emit_load_imm(int32_t value) {
    IrDirective d;
    d.kind = IrDirective::Kind::LoadImm;
    d.dst = fresh();
    d.a = IrOperand::of_imm(value);
    prog_.directives.push_back(d);
    return d.dst;
  }

  // Memory expressions execute their stores in place; the data segment is
  // the single ambient memory.
  void lower_mem(const Formula& f) {
    const Expr& e = *f;
    if (e.kind == Expr::Kind::Var) return;
    lower_mem(e.a);
    IrOperand idx = lower(e.b);
    IrOperand val = lower(e.c);
    IrDirective d;
    d.kind = IrDirective::Kind::MemStore;
    d.dst = fresh();  // scratch register for the scaled address
    d.a = std::move(idx);
    d.b = std::move(val);
    prog_.directives.push_back(d);
  }

  IrOperand lower(const Formula& f) {
    const Expr& e = *f;
    switch (e.kind) {
      case Expr::Kind::Var:
        return IrOperand::of_var(e.name);
      case Expr::Kind::Const:
        return IrOperand::of_temp(emit_load_imm(static_cast<int32_t>(e.value)));
      case Expr::Kind::Unary: {
        switch (e.un_op) {
          case UnOp::Neg: {
            int zero = emit_load_imm(0);
            IrOperand child = lower(e.a);
            return IrOperand::of_temp(emit_compute(IrOp::Sub, IrOperand::of_temp(zero), child));
          }
          case UnOp::BitNot: {
            IrOperand child = lower(e.a);
            return IrOperand::of_temp(emit_compute(IrOp::Xor, child, IrOperand::of_imm(-1)));
          }
          case UnOp::LogNot: {
            IrOperand child = lower(e.a);
            int zero = emit_load_imm(0);
            return IrOperand::of_temp(emit_compute(IrOp::Seq, child, IrOperand::of_temp(zero)));
          }
        }
        break;
      }
      case Expr::Kind::Binary: {
        if (e.bin_op == BinOp::Implies) return lower_implies(e);
        IrOperand a = lower(e.a);
        IrOperand b = lower(e.b);
        switch (e.bin_op) {
          case BinOp::Add: return IrOperand::of_temp(emit_compute(IrOp::Add, a, b));
          case BinOp::Sub: return IrOperand::of_temp(emit_compute(IrOp::Sub, a, b));
          case BinOp::Mul: return IrOperand::of_temp(emit_compute(IrOp::Mul, a, b));
          case BinOp::MulHU: return IrOperand::of_temp(emit_compute(IrOp::MulHU, a, b));
          case BinOp::And: return IrOperand::of_temp(emit_compute(IrOp::And, a, b));
          case BinOp::Or: return IrOperand::of_temp(emit_compute(IrOp::Or, a, b));
          case BinOp::Xor: return IrOperand::of_temp(emit_compute(IrOp::Xor, a, b));
          case BinOp::LtS: return IrOperand::of_temp(emit_compute(IrOp::Slt, a, b));
          case BinOp::LtU: return IrOperand::of_temp(emit_compute(IrOp::Sltu, a, b));
          case BinOp::GtS: return IrOperand::of_temp(emit_compute(IrOp::Slt, b, a));
          case BinOp::Eq: return IrOperand::of_temp(emit_compute(IrOp::Seq, a, b));
          case BinOp::Ne: return IrOperand::of_temp(emit_compute(IrOp::Sne, a, b));
          case BinOp::LogAnd: return IrOperand::of_temp(emit_compute(IrOp::And, a, b));
          case BinOp::LogOr: return IrOperand::of_temp(emit_compute(IrOp::Or, a, b));
          case BinOp::Implies: break;
        }
        break;
      }
      case Expr::Kind::MemLoad: {
        lower_mem(e.a);
        IrOperand idx = lower(e.b);
        IrDirective d;
        d.kind = IrDirective::Kind::MemLoad;
        d.dst = fresh();
        d.a = std::move(idx);
        prog_.directives.push_back(d);
        return IrOperand::of_temp(d.dst);
      }
      case Expr::Kind::MemStore:
        throw CompileError(prog_.name + ": st outside ld");
    }
    throw CompileError(prog_.name + ": unsupported node");
  }

  // antecedent false -> jump to the vacuous-true block; otherwise fall
  // through into the consequent. Both arms define the join temp.
  IrOperand lower_implies(const Expr& e) {
    IrOperand cond = as_temp(lower(e.a));
    int block = next_block_++;
    int join_temp = fresh();
    prog_.join_temps.insert(join_temp);
    std::string if_label = "if_" + std::to_string(block);
    std::string else_label = "else_" + std::to_string(block);
    std::string join_label = "join_" + std::to_string(block);

    IrDirective br;
    br.kind = IrDirective::Kind::Branch;
    br.cond = cond.temp;
    br.label = else_label;
    prog_.directives.push_back(br);

    IrDirective ifl;
    ifl.kind = IrDirective::Kind::Label;
    ifl.label = if_label;
    prog_.directives.push_back(ifl);

    IrOperand q = lower(e.b);
    IrDirective mv;
    mv.kind = IrDirective::Kind::Compute;
    mv.dst = join_temp;
    mv.op = IrOp::Or;
    mv.a = q;
    mv.b = q;
    prog_.directives.push_back(mv);

    IrDirective jmp;
    jmp.kind = IrDirective::Kind::Jump;
    jmp.label = join_label;
    prog_.directives.push_back(jmp);

    IrDirective elsel;
    elsel.kind = IrDirective::Kind::Label;
    elsel.label = else_label;
    prog_.directives.push_back(elsel);

    IrDirective one;
    one.kind = IrDirective::Kind::LoadImm;
    one.dst = join_temp;
    one.a = IrOperand::of_imm(1);
    prog_.directives.push_back(one);

    IrDirective joinl;
    joinl.kind = IrDirective::Kind::Label;
    joinl.label = join_label;
    prog_.directives.push_back(joinl);

    return IrOperand::of_temp(join_temp);
  }

  IrProgram prog_;
  int next_temp_ = 0;
  int next_block_ = 0;
};

// ---------------------------------------------------------------------------
// Emission

class Emitter {
 public:
  Emitter(const IrProgram& ir, const RegPlan& plan) : ir_(ir), plan_(plan) {}

  InstrSequence run() {
    seq_.name = ir_.name;
    seq_.result_reg = plan_.result_reg;
    seq_.finish_reg = plan_.finish_reg;
    seq_.temp_count = ir_.temp_count;
    seq_.uses_memory = ir_.uses_memory;

    if (ir_.inputs.size() > static_cast<size_t>(plan_.input_limit - plan_.input_base + 1))
      throw CompileError(ir_.name + ": too many input variables (" +
                         std::to_string(ir_.inputs.size()) + ", register plan allows " +
                         std::to_string(plan_.input_limit - plan_.input_base + 1) + ")");
    for (size_t i = 0; i < ir_.inputs.size(); ++i)
      seq_.input_regs[ir_.inputs[i]] = static_cast<uint8_t>(plan_.input_base + i);

    int max_temp = ir_.temp_count - 1;
    if (plan_.temp_base + max_temp > plan_.temp_limit)
      throw CompileError(ir_.name + ": register pressure, " + std::to_string(ir_.temp_count) +
                         " temporaries exceed x" + std::to_string(plan_.temp_base) + "..x" +
                         std::to_string(plan_.temp_limit));

    assign_indices();
    emit_words();
    return std::move(seq_);
  }

 private:
  uint8_t temp_reg(int t) const { return static_cast<uint8_t>(plan_.temp_base + t); }

  uint8_t operand_reg(const IrOperand& o) const {
    switch (o.kind) {
      case IrOperand::Kind::Temp:
        return temp_reg(o.temp);
      case IrOperand::Kind::Var:
        return seq_.input_regs.at(o.var);
      case IrOperand::Kind::Imm:
        throw CompileError(ir_.name + ": immediate operand reached emission");
    }
    return 0;
  }

  static bool fits_i12(int32_t v) { return v >= -2048 && v <= 2047; }

  size_t directive_length(const IrDirective& d) const {
    switch (d.kind) {
      case IrDirective::Kind::Compute:
        return (d.op == IrOp::Seq || d.op == IrOp::Sne) ? 2 : 1;
      case IrDirective::Kind::LoadImm:
        return fits_i12(d.a.imm) ? 1 : 2;
      case IrDirective::Kind::MemLoad:
      case IrDirective::Kind::MemStore:
        return 3;
      case IrDirective::Kind::Label:
        return 0;
      default:
        return 1;
    }
  }

  void assign_indices() {
    size_t index = 1;  // the Result_Reg prologue occupies index 0
    for (const auto& d : ir_.directives) {
      if (d.kind == IrDirective::Kind::Label) seq_.label_index[d.label] = index;
      index += directive_length(d);
    }
  }

  void push(const Instr& i) { seq_.words.push_back(encode(i)); }

  void emit_words() {
    // prologue: Result_Reg starts at 1
    push({Opcode::Addi, plan_.result_reg, 0, 0, 1});

    for (const auto& d : ir_.directives) {
      size_t at = seq_.words.size();
      switch (d.kind) {
        case IrDirective::Kind::Compute: {
          uint8_t rd = temp_reg(d.dst);
          uint8_t ra = operand_reg(d.a);
          if (d.b.kind == IrOperand::Kind::Imm) {
            // only bitwise complement comes through with an immediate
            if (d.op != IrOp::Xor || !fits_i12(d.b.imm))
              throw CompileError(ir_.name + ": unsupported immediate compute");
            push({Opcode::Xori, rd, ra, 0, d.b.imm});
            break;
          }
          uint8_t rb = operand_reg(d.b);
          switch (d.op) {
            case IrOp::Add: push({Opcode::Add, rd, ra, rb, 0}); break;
            case IrOp::Sub: push({Opcode::Sub, rd, ra, rb, 0}); break;
            case IrOp::Mul: push({Opcode::Mul, rd, ra, rb, 0}); break;
            case IrOp::MulHU: push({Opcode::Mulhu, rd, ra, rb, 0}); break;
            case IrOp::And: push({Opcode::And, rd, ra, rb, 0}); break;
            case IrOp::Or: push({Opcode::Or, rd, ra, rb, 0}); break;
            case IrOp::Xor: push({Opcode::Xor, rd, ra, rb, 0}); break;
            case IrOp::Slt: push({Opcode::Slt, rd, ra, rb, 0}); break;
            case IrOp::Sltu: push({Opcode::Sltu, rd, ra, rb, 0}); break;
            case IrOp::Seq:
              push({Opcode::Sub, rd, ra, rb, 0});
              push({Opcode::Sltiu, rd, rd, 0, 1});
              break;
            case IrOp::Sne:
              push({Opcode::Sub, rd, ra, rb, 0});
              push({Opcode::Sltu, rd, 0, rd, 0});
              break;
          }
          break;
        }
        case IrDirective::Kind::LoadImm: {
          uint8_t rd = temp_reg(d.dst);
          int32_t v = d.a.imm;
          if (fits_i12(v)) {
            push({Opcode::Addi, rd, 0, 0, v});
          } else {
            int32_t hi = (v + 0x800) >> 12;
            int32_t lo = v - (hi << 12);
            push({Opcode::Lui, rd, 0, 0, hi & 0xFFFFF});
            push({Opcode::Addi, rd, rd, 0, lo});
          }
          break;
        }
        case IrDirective::Kind::MemLoad: {
          uint8_t rd = temp_reg(d.dst);
          push({Opcode::Andi, rd, operand_reg(d.a), 0, 0xFF});
          push({Opcode::Slli, rd, rd, 0, 2});
          push({Opcode::Lw, rd, rd, 0, 0});
          break;
        }
        case IrDirective::Kind::MemStore: {
          uint8_t scratch = temp_reg(d.dst);
          push({Opcode::Andi, scratch, operand_reg(d.a), 0, 0xFF});
          push({Opcode::Slli, scratch, scratch, 0, 2});
          push({Opcode::Sw, 0, scratch, operand_reg(d.b), 0});
          break;
        }
        case IrDirective::Kind::Branch: {
          int64_t delta = (static_cast<int64_t>(seq_.label_index.at(d.label)) -
                           static_cast<int64_t>(at)) * 4;
          if (delta < -4096 || delta > 4094)
            throw CompileError(ir_.name + ": branch offset to " + d.label + " out of range");
          push({Opcode::Beq, 0, temp_reg(d.cond), 0, static_cast<int32_t>(delta)});
          break;
        }
        case IrDirective::Kind::Jump: {
          int64_t delta = (static_cast<int64_t>(seq_.label_index.at(d.label)) -
                           static_cast<int64_t>(at)) * 4;
          push({Opcode::Jal, 0, 0, 0, static_cast<int32_t>(delta)});
          break;
        }
        case IrDirective::Kind::Label:
          break;
        case IrDirective::Kind::Accumulate:
          push({Opcode::And, plan_.result_reg, plan_.result_reg, operand_reg(d.a), 0});
          break;
        case IrDirective::Kind::Finish:
          push({Opcode::Addi, plan_.finish_reg, 0, 0, 1});
          break;
      }
    }
  }

  const IrProgram& ir_;
  const RegPlan& plan_;
  InstrSequence seq_;
};

}  // namespace

IrProgram lower_to_ir(const Formula& f, const std::string& name) {
  Lowerer lw(name);
  IrProgram prog = lw.run(f);
  prog.uses_memory = memory_variable(f).has_value();
  return prog;
}

InstrSequence emit_rv32i(const IrProgram& ir, const RegPlan& plan) {
  return Emitter(ir, plan).run();
}

InstrSequence compile_tautology(const Formula& f, const std::string& name, const RegPlan& plan) {
  IrProgram ir = lower_to_ir(f, name);
  InstrSequence seq = emit_rv32i(ir, plan);
  seq.source_text = print_formula(f);
  return seq;
}

std::string format_assembly(const InstrSequence& seq) {
  std::ostringstream out;
  out << "# " << seq.name << "\n";
  if (!seq.source_text.empty()) out << "# " << seq.source_text << "\n";
  for (size_t i = 0; i < seq.words.size(); ++i) {
    for (const auto& [label, index] : seq.label_index)
      if (index == i) out << label << ":\n";
    out << "    " << disassemble(seq.words[i]) << "\n";
  }
  return out.str();
}

void write_binary(const std::string& path, const std::vector<uint32_t>& words) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CompileError("cannot write " + path);
  for (uint32_t w : words) {
    char bytes[4] = {static_cast<char>(w & 0xFF), static_cast<char>((w >> 8) & 0xFF),
                     static_cast<char>((w >> 16) & 0xFF), static_cast<char>((w >> 24) & 0xFF)};
    out.write(bytes, 4);
  }
}

std::vector<uint32_t> read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CompileError("cannot read " + path);
  std::vector<uint32_t> words;
  char bytes[4];
  while (in.read(bytes, 4)) {
    words.push_back(static_cast<uint32_t>(static_cast<unsigned char>(bytes[0])) |
                    (static_cast<uint32_t>(static_cast<unsigned char>(bytes[1])) << 8) |
                    (static_cast<uint32_t>(static_cast<unsigned char>(bytes[2])) << 16) |
                    (static_cast<uint32_t>(static_cast<unsigned char>(bytes[3])) << 24));
  }
  return words;
}

}  // namespace tiup
