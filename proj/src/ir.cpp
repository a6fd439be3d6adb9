#include "tiup/ir.hpp"

#include <map>
#include <sstream>

namespace tiup {

namespace {

const char* ir_op_name(IrOp op) {
  switch (op) {
    case IrOp::Add: return "add";
    case IrOp::Sub: return "sub";
    case IrOp::Mul: return "mul";
    case IrOp::MulHU: return "mulhu";
    case IrOp::And: return "and";
    case IrOp::Or: return "or";
    case IrOp::Xor: return "xor";
    case IrOp::Slt: return "slt";
    case IrOp::Sltu: return "sltu";
    case IrOp::Seq: return "seq";
    case IrOp::Sne: return "sne";
  }
  return "?";
}

std::string operand_text(const IrOperand& o) {
  switch (o.kind) {
    case IrOperand::Kind::Temp: return "%t" + std::to_string(o.temp);
    case IrOperand::Kind::Var: return "%" + o.var;
    case IrOperand::Kind::Imm: return std::to_string(o.imm);
  }
  return "?";
}

}  // namespace

std::string print_ir(const IrProgram& prog) {
  std::ostringstream out;
  for (const auto& d : prog.directives) {
    switch (d.kind) {
      case IrDirective::Kind::Compute:
        out << "%t" << d.dst << " = " << ir_op_name(d.op) << " i32 " << operand_text(d.a)
            << ", " << operand_text(d.b) << "\n";
        break;
      case IrDirective::Kind::LoadImm:
        out << "%t" << d.dst << " = li i32 " << d.a.imm << "\n";
        break;
      case IrDirective::Kind::MemLoad:
        out << "%t" << d.dst << " = load i32 " << operand_text(d.a) << "\n";
        break;
      case IrDirective::Kind::MemStore:
        out << "store i32 " << operand_text(d.b) << ", " << operand_text(d.a) << "\n";
        break;
      case IrDirective::Kind::Branch:
        out << "beq %t" << d.cond << ", " << d.label << "\n";
        break;
      case IrDirective::Kind::Jump:
        out << "jmp " << d.label << "\n";
        break;
      case IrDirective::Kind::Label:
        out << d.label << ":\n";
        break;
      case IrDirective::Kind::Accumulate:
        out << "%result_reg = and i32 %t" << d.a.temp << ", %result_reg\n";
        break;
      case IrDirective::Kind::Finish:
        out << "finish\n";
        break;
    }
  }
  return out.str();
}

void validate_ir(const IrProgram& prog) {
  std::map<int, int> def_count;
  std::map<std::string, int> labels;
  int accumulates = 0;
  int finish_at = -1, accumulate_at = -1;

  auto use = [&](const IrOperand& o, size_t at) {
    if (o.kind != IrOperand::Kind::Temp) return;
    // A temp must have at least one definition textually before its use;
    // with the forward-only control flow this implies def-before-use on
    // every path that reaches the use.
    if (!def_count.count(o.temp))
      throw IrError(prog.name + ": %t" + std::to_string(o.temp) + " used before definition at directive " +
                    std::to_string(at));
  };
  auto define = [&](int temp, size_t at) {
    int& n = ++def_count[temp];
    int allowed = prog.join_temps.count(temp) ? 2 : 1;
    if (n > allowed)
      throw IrError(prog.name + ": %t" + std::to_string(temp) + " defined " + std::to_string(n) +
                    " times at directive " + std::to_string(at));
  };

  for (size_t i = 0; i < prog.directives.size(); ++i) {
    const auto& d = prog.directives[i];
    switch (d.kind) {
      case IrDirective::Kind::Compute:
        use(d.a, i); use(d.b, i); define(d.dst, i);
        break;
      case IrDirective::Kind::LoadImm:
        define(d.dst, i);
        break;
      case IrDirective::Kind::MemLoad:
        use(d.a, i); define(d.dst, i);
        break;
      case IrDirective::Kind::MemStore:
        use(d.a, i); use(d.b, i); define(d.dst, i);
        break;
      case IrDirective::Kind::Branch:
        if (!def_count.count(d.cond))
          throw IrError(prog.name + ": branch condition %t" + std::to_string(d.cond) + " undefined");
        break;
      case IrDirective::Kind::Label:
        if (labels.count(d.label)) throw IrError(prog.name + ": duplicate label " + d.label);
        labels[d.label] = static_cast<int>(i);
        break;
      case IrDirective::Kind::Accumulate:
        use(d.a, i);
        ++accumulates;
        accumulate_at = static_cast<int>(i);
        break;
      case IrDirective::Kind::Finish:
        finish_at = static_cast<int>(i);
        break;
      case IrDirective::Kind::Jump:
        break;
    }
  }
  for (const auto& d : prog.directives) {
    if ((d.kind == IrDirective::Kind::Branch || d.kind == IrDirective::Kind::Jump) &&
        !labels.count(d.label))
      throw IrError(prog.name + ": unresolved label " + d.label);
  }
  if (accumulates != 1) throw IrError(prog.name + ": expected exactly one accumulate");
  if (finish_at < 0) throw IrError(prog.name + ": missing finish");
  if (accumulate_at > finish_at) throw IrError(prog.name + ": accumulate must precede finish");
}

}  // namespace tiup
