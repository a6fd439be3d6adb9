#include "doctest.h"
#include "test_helpers.hpp"
#include "tiup/corpus.hpp"
#include "tiup/simulator.hpp"
#include "tiup/synth.hpp"

using namespace tiup;
using tiup_test::Rng;

namespace {

InstrSequence compile_named(const std::string& name) {
  const Seed* seed = builtin_seeds().find(name);
  REQUIRE(seed != nullptr);
  return compile_tautology(seed->formula, seed->name);
}

// Independent single-instruction reference: architectural effect only, no
// pipeline. Used to cross-check the core's retired behavior.
struct RefCore {
  std::array<uint32_t, 32> regs{};
  std::array<uint32_t, 256> mem{};
  int64_t pc = 0;

  void exec(const Instr& i) {
    auto rd = [&](uint32_t v) { if (i.rd) regs[i.rd] = v; };
    uint32_t a = regs[i.rs1], b = regs[i.rs2];
    if (i.rs1 == 0) a = 0;
    if (i.rs2 == 0) b = 0;
    int64_t next = pc + 1;
    switch (i.op) {
      case Opcode::Add: rd(a + b); break;
      case Opcode::Sub: rd(a - b); break;
      case Opcode::And: rd(a & b); break;
      case Opcode::Or: rd(a | b); break;
      case Opcode::Xor: rd(a ^ b); break;
      case Opcode::Slt: rd(static_cast<int32_t>(a) < static_cast<int32_t>(b)); break;
      case Opcode::Sltu: rd(a < b); break;
      case Opcode::Mul: rd(static_cast<uint32_t>(static_cast<uint64_t>(a) * b)); break;
      case Opcode::Mulh:
        rd(static_cast<uint32_t>(
            (static_cast<int64_t>(static_cast<int32_t>(a)) * static_cast<int32_t>(b)) >> 32));
        break;
      case Opcode::Mulhu:
        rd(static_cast<uint32_t>((static_cast<uint64_t>(a) * b) >> 32));
        break;
      case Opcode::Addi: rd(a + static_cast<uint32_t>(i.imm)); break;
      case Opcode::Andi: rd(a & static_cast<uint32_t>(i.imm)); break;
      case Opcode::Xori: rd(a ^ static_cast<uint32_t>(i.imm)); break;
      case Opcode::Slli: rd(a << (i.imm & 31)); break;
      case Opcode::Sltiu: rd(a < static_cast<uint32_t>(i.imm)); break;
      case Opcode::Lui: rd(static_cast<uint32_t>(i.imm) << 12); break;
      case Opcode::Lw: rd(mem[((a + static_cast<uint32_t>(i.imm)) >> 2) & 0xFF]); break;
      case Opcode::Sw: mem[((a + static_cast<uint32_t>(i.imm)) >> 2) & 0xFF] = b; break;
      case Opcode::Beq: if (a == b) next = pc + i.imm / 4; break;
      case Opcode::Bne: if (a != b) next = pc + i.imm / 4; break;
      case Opcode::Jal: rd(static_cast<uint32_t>((pc + 1) * 4)); next = pc + i.imm / 4; break;
      case Opcode::Illegal: break;
    }
    regs[0] = 0;
    pc = next;
  }
};

}  // namespace

TEST_CASE("golden run: associative law finishes with Result_Reg = 1") {
  RunResult r = run_to_finish(compile_named("assoc"), {{"x", 3}, {"y", 1}, {"z", 2}});
  CHECK(r.finished);
  CHECK(r.finish_value == 1);
  CHECK(r.result_value == 1);
  CHECK_FALSE(r.hang);
  CHECK_FALSE(r.illegal_seen);
}

TEST_CASE("a18 flips an add to sub and the associative law fails") {
  // t3 = y + z executes as y - z = -1 instead of 1
  RunResult r = run_to_finish(compile_named("assoc"), {{"x", 0}, {"y", 0}, {"z", 1}},
                              inject("a18"));
  CHECK(r.finished);
  CHECK(r.finish_value == 1);
  CHECK(r.result_value == 0);
}

TEST_CASE("branch overshooting the queue dispatches the failing epilogue") {
  std::vector<uint32_t> queue = {
      encode({Opcode::Addi, 30, 0, 0, 1}),  // Result_Reg <- 1
      encode({Opcode::Jal, 0, 0, 0, 400}),  // way past the end
      encode({Opcode::Addi, 31, 0, 0, 1}),  // unreachable finish
  };
  RunResult r = run_queue(queue, {}, {});
  CHECK(r.finished);
  CHECK(r.finish_value == 1);
  CHECK(r.result_value == 0);  // epilogue cleared it
}

TEST_CASE("empty queue runs the epilogue only") {
  RunResult r = run_queue({}, {}, {});
  CHECK(r.finished);
  CHECK(r.finish_value == 1);
  CHECK(r.result_value == 0);
  CHECK(r.retired == 2);
}

TEST_CASE("scheduler serves a decodable word at every pc") {
  Scheduler sched;
  sched.queue = compile_named("eq_refl").words;
  for (size_t pc = 0; pc < sched.queue.size() + 10; ++pc) {
    Instr d = decode(sched.fetch(pc));
    CHECK(d.op != Opcode::Illegal);
  }
  CHECK(decode(sched.fetch(sched.queue.size())).rd == 30);
  CHECK(decode(sched.fetch(sched.queue.size() + 1)).rd == 31);
  CHECK(sched.fetch(sched.queue.size() + 2) == kNopWord);
}

TEST_CASE("golden conformance: pipeline matches the reference on random programs") {
  // straight-line random arithmetic, compared register by register
  Rng rng(0x901D);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Instr> program;
    for (int i = 0; i < 50; ++i) {
      Instr instr;
      Opcode pool[] = {Opcode::Add, Opcode::Sub, Opcode::Mul, Opcode::Mulh, Opcode::Mulhu,
                       Opcode::And, Opcode::Or, Opcode::Xor, Opcode::Slt, Opcode::Sltu,
                       Opcode::Addi, Opcode::Andi, Opcode::Xori, Opcode::Slli, Opcode::Sltiu,
                       Opcode::Lui, Opcode::Lw, Opcode::Sw};
      instr.op = pool[rng.below(18)];
      instr.rd = static_cast<uint8_t>(rng.below(30));  // keep x30/x31 free
      instr.rs1 = static_cast<uint8_t>(rng.below(30));
      instr.rs2 = static_cast<uint8_t>(rng.below(30));
      switch (instr.op) {
        case Opcode::Slli: instr.imm = static_cast<int32_t>(rng.below(32)); break;
        case Opcode::Lui: instr.imm = static_cast<int32_t>(rng.below(1 << 20)); break;
        default: instr.imm = static_cast<int32_t>(rng.below(4096)) - 2048; break;
      }
      program.push_back(instr);
    }
    program.push_back({Opcode::Addi, 31, 0, 0, 1});  // finish

    RefCore ref;
    RunOptions opts;
    for (uint8_t reg = 1; reg < 30; ++reg) {
      uint32_t v = static_cast<uint32_t>(rng.next());
      ref.regs[reg] = v;
      opts.init_regs[reg] = v;
    }
    for (const Instr& i : program) ref.exec(i);

    std::vector<uint32_t> queue;
    for (const Instr& i : program) queue.push_back(encode(i));
    RunResult r = run_queue(queue, {}, opts);
    REQUIRE(r.finished);
    for (int reg = 0; reg < 30; ++reg)
      REQUIRE_MESSAGE(r.state.regs[reg] == ref.regs[reg], "trial ", trial, " x", reg);
    for (int w = 0; w < 256; ++w) REQUIRE(r.state.mem[w] == ref.mem[w]);
  }
}

TEST_CASE("golden conformance holds on branchy compiled programs") {
  // run every compiled seed against the reference core, same inputs
  Rng rng(0xB4A7C);
  for (const auto& seed : builtin_seeds().seeds) {
    InstrSequence seq = compile_tautology(seed.formula, seed.name);
    for (int trial = 0; trial < 40; ++trial) {
      Assignment sigma;
      RefCore ref;
      RunOptions opts;
      for (const auto& [var, reg] : seq.input_regs) {
        uint32_t v = static_cast<uint32_t>(rng.next());
        sigma[var] = v;
        ref.regs[reg] = v;
        opts.init_regs[reg] = v;
      }
      while (ref.pc >= 0 && ref.pc < static_cast<int64_t>(seq.words.size()))
        ref.exec(decode(seq.words[static_cast<size_t>(ref.pc)]));
      RunResult r = run_to_finish(seq, sigma);
      REQUIRE(r.finished);
      for (int reg = 0; reg < 32; ++reg)
        if (reg != 31)  // the reference never runs the finish epilogue path
          REQUIRE_MESSAGE(r.state.regs[reg] == ref.regs[reg], seed.name, " x", reg);
    }
  }
}

TEST_CASE("in-order retirement: committed pcs strictly increase") {
  RunOptions opts;
  opts.record_trace = true;
  RunResult r = run_to_finish(compile_named("lt_antisym_s"), {{"x", 5}, {"y", 2}}, {}, opts);
  REQUIRE(r.finished);
  REQUIRE(r.state.committed.size() > 2);
  for (size_t i = 1; i < r.state.committed.size(); ++i)
    CHECK(r.state.committed[i - 1].pc < r.state.committed[i].pc);
  // nothing retires past the finish write
  CHECK(r.state.committed.back().word == 0x00100F93u);
}

TEST_CASE("taken branches squash the wrong path and the dump marks it") {
  RunOptions opts;
  opts.record_trace = true;
  // x >= y: the antecedent is false, the branch to the vacuous arm is taken
  RunResult r = run_to_finish(compile_named("lt_antisym_s"), {{"x", 5}, {"y", 2}}, {}, opts);
  bool saw_squashed = false;
  for (const auto& e : r.full_trace) saw_squashed |= e.squashed;
  CHECK(saw_squashed);
  std::string dump = format_trace(r.full_trace);
  CHECK(dump.find("[squashed]") != std::string::npos);
}

TEST_CASE("trace replay is deterministic") {
  RunOptions opts;
  opts.record_trace = true;
  Assignment sigma{{"x", 7}, {"y", 7}};
  RunResult a = run_to_finish(compile_named("lt_antisym_u"), sigma, inject("a05"), opts);
  RunResult b = run_to_finish(compile_named("lt_antisym_u"), sigma, inject("a05"), opts);
  REQUIRE(a.state.committed.size() == b.state.committed.size());
  for (size_t i = 0; i < a.state.committed.size(); ++i) {
    CHECK(a.state.committed[i].pc == b.state.committed[i].pc);
    CHECK(a.state.committed[i].value == b.state.committed[i].value);
    CHECK(a.state.committed[i].cycle == b.state.committed[i].cycle);
  }
}

TEST_CASE("a06 retains writes to GPR0") {
  std::vector<uint32_t> queue = {
      encode({Opcode::Addi, 0, 0, 0, 5}),   // x0 <- 5, discarded in golden
      encode({Opcode::Add, 5, 0, 0, 0}),    // x5 <- x0 + x0
      encode({Opcode::Addi, 31, 0, 0, 1}),  // finish
  };
  RunResult golden = run_queue(queue, {}, {});
  REQUIRE(golden.finished);
  CHECK(golden.state.regs[5] == 0);
  // under a06 even the finish write reads the corrupted x0, so the run hangs
  RunResult buggy = run_queue(queue, inject("a06"), {});
  CHECK(buggy.hang);
  CHECK(buggy.state.regs[0] == 5);
  CHECK(buggy.state.regs[5] == 10);
}

TEST_CASE("a17 forces the branch unit rs1 operand to zero") {
  // beq x5,x0 with x5=1 is not taken in golden but taken when rs1 reads 0
  std::vector<uint32_t> queue = {
      encode({Opcode::Addi, 5, 0, 0, 1}),
      encode({Opcode::Beq, 0, 5, 0, 12}),
      encode({Opcode::Addi, 6, 0, 0, 7}),   // skipped when the branch takes
      encode({Opcode::Addi, 31, 0, 0, 1}),
      encode({Opcode::Addi, 31, 0, 0, 1}),  // branch target
  };
  RunResult golden = run_queue(queue, {}, {});
  REQUIRE(golden.finished);
  CHECK(golden.state.regs[6] == 7);
  RunResult buggy = run_queue(queue, inject("a17"), {});
  REQUIRE(buggy.finished);
  CHECK(buggy.state.regs[6] == 0);
}

TEST_CASE("a10 with a negative delta makes a self-loop hang") {
  AnomalySpec spec = inject("a10");
  spec.target_delta = -3;
  std::vector<uint32_t> queue = {
      encode({Opcode::Addi, 5, 0, 0, 1}),
      encode({Opcode::Addi, 6, 0, 0, 2}),
      encode({Opcode::Addi, 7, 0, 0, 3}),
      encode({Opcode::Jal, 0, 0, 0, 4}),    // lands on itself under the delta
      encode({Opcode::Addi, 31, 0, 0, 1}),
  };
  RunResult r = run_queue(queue, spec, {});
  CHECK(r.hang);
  CHECK_FALSE(r.finished);
}

TEST_CASE("a13 and a14 corrupt the instruction after the first multiply") {
  InstrSequence seq = compile_named("mul2_add");
  Assignment sigma{{"x", 3}};
  CHECK(run_to_finish(seq, sigma).result_value == 1);
  // the add after the mul turns into a NOP: x+x reads as 0, 6 != 0
  RunResult r13 = run_to_finish(seq, sigma, inject("a13"));
  CHECK(r13.finished);
  CHECK(r13.result_value == 0);
  // the add's first operand reads as 0: x+x becomes 0+x, 6 != 3
  RunResult r14 = run_to_finish(seq, sigma, inject("a14"));
  CHECK(r14.finished);
  CHECK(r14.result_value == 0);
}

TEST_CASE("a12 corrupts the rs2 field after every multiply") {
  InstrSequence seq = compile_named("mul2_add");
  // add t2, x1, x1 becomes add t2, x1, x2; with y=x2=0 preset, 2x != x
  RunResult r = run_to_finish(seq, {{"x", 3}}, inject("a12"));
  CHECK(r.finished);
  CHECK(r.result_value == 0);
}

TEST_CASE("a15 late flush kills the branch target's first instruction") {
  // antecedent false at x >= y: golden lands on the vacuous-true load,
  // the late flush kills it, the join temp stays 0
  InstrSequence seq = compile_named("lt_antisym_s");
  Assignment sigma{{"x", 1}, {"y", 0}};
  CHECK(run_to_finish(seq, sigma).result_value == 1);
  RunResult r = run_to_finish(seq, sigma, inject("a15"));
  CHECK(r.finished);
  CHECK(r.finish_value == 1);
  CHECK(r.result_value == 0);
}

TEST_CASE("a11 inverted direction executes the consequent on a false antecedent") {
  InstrSequence seq = compile_named("lt_antisym_s");
  Assignment sigma{{"x", 1}, {"y", 0}};  // 1 < 0 is false; !(0 < 1) is false too
  RunResult r = run_to_finish(seq, sigma, inject("a11"));
  CHECK(r.finished);
  CHECK(r.result_value == 0);
}

TEST_CASE("a10 plus-one target skips the vacuous-true load") {
  InstrSequence seq = compile_named("lt_antisym_s");
  Assignment sigma{{"x", 1}, {"y", 0}};
  RunResult r = run_to_finish(seq, sigma, inject("a10"));
  CHECK(r.finished);
  CHECK(r.result_value == 0);
}

TEST_CASE("a06 on a jump-bearing tautology corrupts x0 and hangs the finish") {
  InstrSequence seq = compile_named("lt_antisym_s");
  Assignment sigma{{"x", 0}, {"y", 1}};  // antecedent true: the jal executes
  RunResult r = run_to_finish(seq, sigma, inject("a06"));
  CHECK(r.hang);  // finish reads the corrupted x0, never equals 1
}

TEST_CASE("a05 makes the unsigned comparator signed") {
  InstrSequence seq = compile_named("uge_zero");  // !(x <u 0)
  Assignment sigma{{"x", static_cast<uint32_t>(-1)}};
  CHECK(run_to_finish(seq, sigma).result_value == 1);
  RunResult r = run_to_finish(seq, sigma, inject("a05"));
  CHECK(r.finished);
  CHECK(r.result_value == 0);  // -1 <s 0 is true, so the negation fails
}

TEST_CASE("a16 computes the signed high product for mulhu") {
  InstrSequence seq = compile_named("mulhu_one");  // mulhu(x, 1) == 0
  Assignment sigma{{"x", static_cast<uint32_t>(-1)}};
  CHECK(run_to_finish(seq, sigma).result_value == 1);
  RunResult r = run_to_finish(seq, sigma, inject("a16"));
  CHECK(r.finished);
  CHECK(r.result_value == 0);  // high half of (-1 * 1) is all ones
}

TEST_CASE("a03 and a04 redirect register traffic") {
  InstrSequence seq = compile_named("assoc");
  Assignment sigma{{"x", 9}, {"y", 4}, {"z", 2}};
  RunResult r3 = run_to_finish(seq, sigma, inject("a03"));
  CHECK(r3.finished);
  CHECK(r3.result_value == 0);
  RunResult r4 = run_to_finish(seq, sigma, inject("a04"));
  CHECK(r4.finished);
  CHECK(r4.result_value == 0);
}

TEST_CASE("cycle cap reports a hang verdict") {
  RunOptions opts;
  opts.cycle_cap = 3;  // too tight for any sequence to finish
  RunResult r = run_to_finish(compile_named("eq_refl"), {{"x", 1}}, {}, opts);
  CHECK(r.hang);
}
