#include "tiup/simulator.hpp"

#include <cstdio>
#include <sstream>

namespace tiup {

uint32_t Scheduler::fetch(size_t pc) const {
  if (pc < queue.size()) return queue[pc];
  if (pc == queue.size()) return encode({Opcode::Addi, result_reg, 0, 0, 0});
  if (pc == queue.size() + 1) return encode({Opcode::Addi, finish_reg, 0, 0, 1});
  return kNopWord;
}

PipelineSim::PipelineSim(Scheduler scheduler, AnomalySpec anomaly, RunOptions options)
    : sched_(std::move(scheduler)), anomaly_(anomaly), opts_(std::move(options)) {
  state_.mem.assign(256, 0);
  for (const auto& [reg, value] : opts_.init_regs)
    if (reg != 0) state_.regs[reg] = value;

  // "next instruction" anomaly triggers are fixed queue positions derived
  // from the multiplies in the program
  for (size_t i = 0; i < sched_.queue.size(); ++i) {
    if (decode(sched_.queue[i]).is_mul_class()) {
      if (first_mul_next_ == SIZE_MAX) first_mul_next_ = i + 1;
      after_mul_.push_back(i + 1);
    }
  }
}

uint32_t PipelineSim::read_reg(uint8_t r) const {
  if (r == 0 && anomaly_.id != AnomalyId::A06) return 0;
  return state_.regs[r];
}

void PipelineSim::write_reg(uint8_t r, uint32_t v, Slot& slot) {
  if (anomaly_.id == AnomalyId::A03 && r == anomaly_.redirect_from) r = anomaly_.redirect_to;
  slot.wrote = true;
  slot.rd = r;
  slot.value = v;
  if (r == 0 && anomaly_.id != AnomalyId::A06) return;  // x0 hardwired to zero
  state_.regs[r] = v;
}

void PipelineSim::flush_younger() {
  slots_[1].squashed = true;
  slots_[0].squashed = true;
}

void PipelineSim::decode_slot(Slot& slot) {
  uint32_t word = slot.word;
  if (anomaly_.id == AnomalyId::A12) {
    for (size_t t : after_mul_) {
      if (slot.pc == t) {
        uint32_t rs2 = (word >> 20) & 31;
        word = (word & ~(31u << 20)) | (((rs2 + 1) & 31u) << 20);
        break;
      }
    }
  }
  if (anomaly_.id == AnomalyId::A13 && slot.pc == first_mul_next_) word = kNopWord;
  slot.instr = decode(word);
  slot.illegal = slot.instr.op == Opcode::Illegal;
}

void PipelineSim::execute(Slot& s) {
  s.executed = true;
  // Finish already raised: nothing younger may change state or retire.
  if (state_.regs[opts_.finish_reg] == 1) {
    s.squashed = true;
    return;
  }
  if (s.illegal) {
    illegal_seen_ = true;  // retires as a NOP with the diagnostic flag
    return;
  }
  const Instr& i = s.instr;

  uint8_t rs1 = i.rs1, rs2 = i.rs2;
  if (anomaly_.id == AnomalyId::A04) {
    if (rs1 == anomaly_.redirect_from) rs1 = anomaly_.redirect_to;
    if (rs2 == anomaly_.redirect_from) rs2 = anomaly_.redirect_to;
  }
  uint32_t a = read_reg(rs1);
  uint32_t b = read_reg(rs2);
  if (anomaly_.id == AnomalyId::A14 && s.pc == first_mul_next_) a = 0;
  if (anomaly_.id == AnomalyId::A17 && i.is_branch()) a = 0;
  s.op_a = a;
  s.op_b = b;

  switch (i.op) {
    case Opcode::Add:
      write_reg(i.rd, anomaly_.id == AnomalyId::A18 ? a - b : a + b, s);
      break;
    case Opcode::Sub: write_reg(i.rd, a - b, s); break;
    case Opcode::And: write_reg(i.rd, a & b, s); break;
    case Opcode::Or: write_reg(i.rd, a | b, s); break;
    case Opcode::Xor: write_reg(i.rd, a ^ b, s); break;
    case Opcode::Slt:
      write_reg(i.rd, static_cast<int32_t>(a) < static_cast<int32_t>(b) ? 1 : 0, s);
      break;
    case Opcode::Sltu:
      if (anomaly_.id == AnomalyId::A05)
        write_reg(i.rd, static_cast<int32_t>(a) < static_cast<int32_t>(b) ? 1 : 0, s);
      else
        write_reg(i.rd, a < b ? 1 : 0, s);
      break;
    case Opcode::Mul:
      write_reg(i.rd, static_cast<uint32_t>(static_cast<uint64_t>(a) * b), s);
      break;
    case Opcode::Mulh:
      write_reg(i.rd,
                static_cast<uint32_t>((static_cast<int64_t>(static_cast<int32_t>(a)) *
                                       static_cast<int64_t>(static_cast<int32_t>(b))) >> 32),
                s);
      break;
    case Opcode::Mulhu:
      if (anomaly_.id == AnomalyId::A16)
        write_reg(i.rd,
                  static_cast<uint32_t>((static_cast<int64_t>(static_cast<int32_t>(a)) *
                                         static_cast<int64_t>(static_cast<int32_t>(b))) >> 32),
                  s);
      else
        write_reg(i.rd, static_cast<uint32_t>((static_cast<uint64_t>(a) * b) >> 32), s);
      break;
    case Opcode::Addi: write_reg(i.rd, a + static_cast<uint32_t>(i.imm), s); break;
    case Opcode::Andi: write_reg(i.rd, a & static_cast<uint32_t>(i.imm), s); break;
    case Opcode::Xori: write_reg(i.rd, a ^ static_cast<uint32_t>(i.imm), s); break;
    case Opcode::Slli: write_reg(i.rd, a << (i.imm & 31), s); break;
    case Opcode::Sltiu:
      write_reg(i.rd, a < static_cast<uint32_t>(i.imm) ? 1 : 0, s);
      break;
    case Opcode::Lui: write_reg(i.rd, static_cast<uint32_t>(i.imm) << 12, s); break;
    case Opcode::Lw: {
      uint32_t addr = a + static_cast<uint32_t>(i.imm);
      write_reg(i.rd, state_.mem[(addr >> 2) & 0xFF], s);
      break;
    }
    case Opcode::Sw: {
      uint32_t addr = a + static_cast<uint32_t>(i.imm);
      state_.mem[(addr >> 2) & 0xFF] = b;
      break;
    }
    case Opcode::Beq:
    case Opcode::Bne:
    case Opcode::Jal: {
      bool taken;
      if (i.op == Opcode::Jal) {
        taken = true;
        write_reg(i.rd, static_cast<uint32_t>((s.pc + 1) * 4), s);
      } else {
        taken = (i.op == Opcode::Beq) ? (a == b) : (a != b);
        if (anomaly_.id == AnomalyId::A11) taken = !taken;
        if (i.op == Opcode::Bne && s.pc >= opts_.check_begin && s.pc < opts_.check_end &&
            a != b)
          check_fired_ = true;
      }
      if (taken) {
        int64_t target = static_cast<int64_t>(s.pc) + (i.imm / 4);
        if (anomaly_.id == AnomalyId::A10) target += anomaly_.target_delta;
        if (target < 0) target = 0;
        // overshooting the queue dispatches the failing epilogue
        if (target > static_cast<int64_t>(sched_.epilogue_entry()))
          target = static_cast<int64_t>(sched_.epilogue_entry());
        state_.pc = static_cast<size_t>(target);
        if (anomaly_.id == AnomalyId::A15)
          late_flush_pending_ = true;  // squash pulse arrives one cycle late
        else
          flush_younger();
      }
      break;
    }
    case Opcode::Illegal:
      break;
  }
}

void PipelineSim::retire(const Slot& slot) {
  if (!slot.valid) return;
  TraceEntry e;
  e.cycle = state_.cycle;
  e.pc = slot.pc;
  e.word = slot.word;
  e.squashed = slot.squashed;
  e.illegal = slot.illegal;
  e.wrote = slot.wrote;
  e.rd = slot.rd;
  e.value = slot.value;
  e.op_a = slot.op_a;
  e.op_b = slot.op_b;
  if (opts_.record_trace) full_trace_.push_back(e);
  if (!slot.squashed) {
    ++state_.retired;
    if (opts_.record_trace) state_.committed.push_back(e);
  }
}

void PipelineSim::step() {
  ++state_.cycle;

  retire(slots_[4]);
  slots_[4] = slots_[3];
  slots_[3] = slots_[2];
  slots_[2] = slots_[1];
  slots_[1] = slots_[0];

  Slot fetched;
  fetched.valid = true;
  fetched.pc = state_.pc;
  fetched.word = sched_.fetch(state_.pc);
  slots_[0] = fetched;
  ++state_.pc;

  if (late_flush_pending_) {
    slots_[1].squashed = true;
    slots_[0].squashed = true;
    late_flush_pending_ = false;
  }

  if (slots_[1].valid && !slots_[1].squashed) decode_slot(slots_[1]);
  if (slots_[2].valid && !slots_[2].squashed && !slots_[2].executed) execute(slots_[2]);
}

bool PipelineSim::drained() const {
  for (const auto& s : slots_)
    if (s.valid && !s.squashed) return false;
  return true;
}

RunResult run_queue(const std::vector<uint32_t>& queue, const AnomalySpec& anomaly,
                    RunOptions options) {
  Scheduler sched;
  sched.queue = queue;
  sched.result_reg = options.result_reg;
  sched.finish_reg = options.finish_reg;
  uint64_t cap = options.cycle_cap ? options.cycle_cap : 10 * queue.size() + 100;
  PipelineSim sim(std::move(sched), anomaly, options);

  RunResult r;
  while (sim.cycles() < cap) {
    sim.step();
    if (sim.state().regs[options.finish_reg] == 1) {
      // drain the pipe so everything older than finish retires
      for (int k = 0; k < 4; ++k) sim.step();
      r.finished = true;
      break;
    }
  }
  r.hang = !r.finished;
  r.cycles = sim.cycles();
  r.retired = sim.state().retired;
  r.result_value = sim.state().regs[options.result_reg];
  r.finish_value = sim.state().regs[options.finish_reg];
  r.check_fired = sim.check_fired();
  r.illegal_seen = sim.illegal_seen();
  r.full_trace = sim.take_full_trace();
  r.state = std::move(sim.state());
  return r;
}

RunResult run_to_finish(const InstrSequence& seq, const Assignment& sigma,
                        const AnomalySpec& anomaly, RunOptions options) {
  options.result_reg = seq.result_reg;
  options.finish_reg = seq.finish_reg;
  for (const auto& [var, reg] : seq.input_regs) {
    auto it = sigma.find(var);
    if (it == sigma.end())
      throw std::runtime_error(seq.name + ": no value for input '" + var + "'");
    options.init_regs[reg] = it->second;
  }
  return run_queue(seq.words, anomaly, std::move(options));
}

std::string format_trace(const std::vector<TraceEntry>& trace) {
  std::ostringstream out;
  char buf[160];
  for (const auto& e : trace) {
    std::snprintf(buf, sizeof buf, "%6llu  %04zx  %08x  %-28s",
                  static_cast<unsigned long long>(e.cycle), e.pc * 4, e.word,
                  disassemble(e.word).c_str());
    out << buf;
    if (e.wrote && !e.squashed) {
      std::snprintf(buf, sizeof buf, " x%d=%08x", e.rd, e.value);
      out << buf;
    }
    if (e.illegal) out << " [illegal]";
    if (e.squashed) out << " [squashed]";
    out << "\n";
  }
  return out.str();
}

}  // namespace tiup
