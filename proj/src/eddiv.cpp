#include "tiup/eddiv.hpp"

#include <set>

namespace tiup {

namespace {

constexpr uint8_t kRenameLimit = 13;
constexpr uint8_t kRenameOffset = 16;
constexpr size_t kPad = 2;  // NOPs between sections

uint8_t max_register(const Instr& i) {
  uint8_t m = i.rd;
  if (i.rs1 > m) m = i.rs1;
  if (i.is_r_type() || i.op == Opcode::Sw || i.is_branch())
    if (i.rs2 > m) m = i.rs2;
  return m;
}

Instr rename(Instr i) {
  auto bump = [](uint8_t r) { return r == 0 ? r : static_cast<uint8_t>(r + kRenameOffset); };
  i.rd = bump(i.rd);
  i.rs1 = bump(i.rs1);
  i.rs2 = bump(i.rs2);
  return i;
}

}  // namespace

bool eddiv_eligible(const InstrSequence& seq) {
  for (size_t i = seq.body_begin(); i < seq.body_end(); ++i) {
    Instr d = decode(seq.words[i]);
    if (d.op == Opcode::Illegal) return false;
    if (max_register(d) > kRenameLimit) return false;
  }
  return true;
}

EddivProgram build_eddiv(const InstrSequence& original) {
  EddivProgram p;
  p.name = original.name;
  p.input_regs = original.input_regs;

  std::vector<Instr> body;
  for (size_t i = original.body_begin(); i < original.body_end(); ++i) {
    Instr d = decode(original.words[i]);
    if (d.op == Opcode::Illegal)
      throw EddivError(original.name + ": undecodable body instruction");
    if (max_register(d) > kRenameLimit)
      throw EddivError(original.name + ": register x" + std::to_string(max_register(d)) +
                       " outside the renameable range x0..x" + std::to_string(kRenameLimit));
    body.push_back(d);
  }

  // destination pairs to compare, in first-write order
  std::set<uint8_t> seen;
  for (const Instr& d : body) {
    bool writes = d.is_r_type() || d.op == Opcode::Addi || d.op == Opcode::Andi ||
                  d.op == Opcode::Xori || d.op == Opcode::Slli || d.op == Opcode::Sltiu ||
                  d.op == Opcode::Lui || d.op == Opcode::Lw;
    if (writes && d.rd != 0 && seen.insert(d.rd).second) p.checked_regs.push_back(d.rd);
  }

  for (const Instr& d : body) p.queue.push_back(encode(d));
  for (size_t i = 0; i < kPad; ++i) p.queue.push_back(kNopWord);
  for (const Instr& d : body) p.queue.push_back(encode(rename(d)));
  for (size_t i = 0; i < kPad; ++i) p.queue.push_back(kNopWord);

  p.check_begin = p.queue.size();
  size_t sink = p.check_begin + p.checked_regs.size();  // one past the last check
  for (uint8_t r : p.checked_regs) {
    size_t at = p.queue.size();
    int32_t offset = static_cast<int32_t>((sink - at) * 4);
    p.queue.push_back(encode({Opcode::Bne, 0, r, static_cast<uint8_t>(r + kRenameOffset), offset}));
  }
  p.check_end = p.queue.size();
  return p;
}

RunResult run_eddiv(const EddivProgram& program, const Assignment& sigma,
                    const AnomalySpec& anomaly, RunOptions options) {
  for (const auto& [var, reg] : program.input_regs) {
    auto it = sigma.find(var);
    if (it == sigma.end())
      throw EddivError(program.name + ": no value for input '" + var + "'");
    options.init_regs[reg] = it->second;
    options.init_regs[static_cast<uint8_t>(reg + kRenameOffset)] = it->second;
  }
  options.check_begin = program.check_begin;
  options.check_end = program.check_end;
  return run_queue(program.queue, anomaly, std::move(options));
}

}  // namespace tiup
