#include "doctest.h"
#include "test_helpers.hpp"
#include "tiup/campaign.hpp"
#include "tiup/checker.hpp"
#include "tiup/corpus.hpp"
#include "tiup/synth.hpp"

using namespace tiup;
using tiup_test::Rng;

namespace {

std::vector<InstrSequence> compile_seeds() {
  std::vector<InstrSequence> out;
  for (const auto& seed : builtin_seeds().seeds)
    out.push_back(compile_tautology(seed.formula, seed.name));
  return out;
}

SearchBudget small_budget() {
  SearchBudget b;
  b.grid_lo = -4;
  b.grid_hi = 3;
  b.random_samples = 64;
  return b;
}

}  // namespace

TEST_CASE("machine result equals the evaluator on random formulas") {
  // the central compiler/simulator equivalence: for arbitrary well-typed
  // boolean formulas (tautological or not), the retired Result_Reg equals
  // the evaluator's verdict and Finish_Reg is exactly 1
  Rng rng(0xD0D0);
  int compiled = 0;
  while (compiled < 150) {
    Formula f = rng.chance(75) ? tiup_test::random_bool_pure(rng, 3)
                               : tiup_test::random_bool(rng, 3);
    infer_type(f);
    InstrSequence seq;
    try {
      seq = compile_tautology(f, "fuzz");
    } catch (const CompileError&) {
      continue;
    }
    ++compiled;
    auto vars = free_variables(f);
    std::vector<Assignment> sigmas = assignment_grid(vars, -2, 2);
    uint64_t prng = 0xFACEu + compiled;
    for (int i = 0; i < 12; ++i) sigmas.push_back(random_assignment(vars, prng));
    for (const auto& sigma : sigmas) {
      uint32_t want = eval_formula(f, sigma);
      RunResult r = run_to_finish(seq, sigma);
      REQUIRE_MESSAGE(r.finished, print_formula(f));
      REQUIRE(r.finish_value == 1);
      REQUIRE_MESSAGE(r.result_value == want, print_formula(f), " sigma ",
                      format_assignment(sigma, 32));
    }
  }
}

TEST_CASE("golden configuration passes the whole seed corpus") {
  TiupReport report = verify_tiup(compile_seeds(), {}, small_budget(), 2);
  CHECK_FALSE(report.any_violation());
  for (const auto& v : report.verdicts) {
    CHECK(v.outcome == CheckOutcome::PassWithinBudget);
    CHECK(v.assignments_tried > 0);
  }
}

TEST_CASE("a18 is violated and the counterexample replays") {
  auto seqs = compile_seeds();
  TiupReport report = verify_tiup(seqs, inject("a18"), small_budget());
  REQUIRE(report.any_violation());
  const TautologyVerdict* v = report.first_violation();
  REQUIRE(v != nullptr);
  REQUIRE(v->counterexample.has_value());
  CHECK(v->outcome == CheckOutcome::Violated);
  const InstrSequence* seq = nullptr;
  for (const auto& s : seqs)
    if (s.name == v->name) seq = &s;
  REQUIRE(seq != nullptr);
  RunResult replay;
  CHECK(replay_counterexample(*seq, *v->counterexample, inject("a18"), &replay));
  CHECK(replay.finish_value == 1);
  CHECK(replay.result_value == 0);
  CHECK(replay.retired >= 3);
  CHECK(replay.retired == v->counterexample->retired);
}

TEST_CASE("per-tautology verdicts are independent of the batch") {
  auto seqs = compile_seeds();
  TiupReport batch = verify_tiup(seqs, inject("a16"), small_budget());
  for (size_t i = 0; i < seqs.size(); ++i) {
    TiupReport solo = verify_tiup({seqs[i]}, inject("a16"), small_budget());
    CHECK(solo.verdicts[0].outcome == batch.verdicts[i].outcome);
    if (solo.verdicts[0].counterexample && batch.verdicts[i].counterexample)
      CHECK(solo.verdicts[0].counterexample->sigma == batch.verdicts[i].counterexample->sigma);
  }
}

TEST_CASE("verdicts are deterministic across parallelism degrees") {
  auto seqs = compile_seeds();
  TiupReport a = verify_tiup(seqs, inject("a11"), small_budget(), 1);
  TiupReport b = verify_tiup(seqs, inject("a11"), small_budget(), 4);
  REQUIRE(a.verdicts.size() == b.verdicts.size());
  for (size_t i = 0; i < a.verdicts.size(); ++i) {
    CHECK(a.verdicts[i].outcome == b.verdicts[i].outcome);
    CHECK(a.verdicts[i].assignments_tried == b.verdicts[i].assignments_tried);
  }
}

TEST_CASE("eddiv transform: rename, checks, and the documented example") {
  // ADD x4, x1, x2 duplicates to ADD x20, x17, x18 with a BNE x4, x20 check
  InstrSequence seq;
  seq.name = "tiny";
  seq.words = {
      encode({Opcode::Addi, 30, 0, 0, 1}),
      encode({Opcode::Add, 4, 1, 2, 0}),
      encode({Opcode::And, 30, 30, 4, 0}),
      encode({Opcode::Addi, 31, 0, 0, 1}),
  };
  seq.input_regs = {{"x", 1}, {"y", 2}};
  REQUIRE(eddiv_eligible(seq));
  EddivProgram p = build_eddiv(seq);
  REQUIRE(p.queue.size() == 1 + 2 + 1 + 2 + 1);  // body, pad, dup, pad, one check
  Instr orig = decode(p.queue[0]);
  CHECK(orig.op == Opcode::Add);
  CHECK(orig.rd == 4);
  Instr dup = decode(p.queue[3]);
  CHECK(dup.op == Opcode::Add);
  CHECK(dup.rd == 20);
  CHECK(dup.rs1 == 17);
  CHECK(dup.rs2 == 18);
  Instr check = decode(p.queue[6]);
  CHECK(check.op == Opcode::Bne);
  CHECK(check.rs1 == 4);
  CHECK(check.rs2 == 20);
  CHECK(p.check_begin == 6);
  CHECK(p.check_end == 7);
}

TEST_CASE("eddiv of an empty body has no checks") {
  InstrSequence seq;
  seq.name = "empty";
  seq.words = {
      encode({Opcode::Addi, 30, 0, 0, 1}),
      encode({Opcode::Addi, 31, 0, 0, 1}),
  };
  EddivProgram p = build_eddiv(seq);
  CHECK(p.checked_regs.empty());
  CHECK(p.check_begin == p.check_end);
}

TEST_CASE("eligibility excludes bodies above the renameable range") {
  InstrSequence seq;
  seq.name = "wide";
  seq.words = {
      encode({Opcode::Addi, 30, 0, 0, 1}),
      encode({Opcode::Add, 14, 1, 2, 0}),  // x14 + 16 would hit x30
      encode({Opcode::And, 30, 30, 14, 0}),
      encode({Opcode::Addi, 31, 0, 0, 1}),
  };
  CHECK_FALSE(eddiv_eligible(seq));
  CHECK_THROWS_AS(build_eddiv(seq), EddivError);
}

TEST_CASE("every builtin seed body is eddiv-eligible") {
  for (const auto& seq : compile_seeds()) {
    CHECK_MESSAGE(eddiv_eligible(seq), seq.name);
    EddivProgram p = build_eddiv(seq);
    CHECK(p.check_end > p.check_begin);
  }
}

TEST_CASE("golden eddiv runs stay consistent; a18 corrupts both halves alike") {
  std::vector<EddivProgram> programs;
  for (const auto& seq : compile_seeds()) programs.push_back(build_eddiv(seq));

  SqedReport golden = verify_sqed(programs, {}, small_budget(), 2);
  CHECK_FALSE(golden.fired);
  CHECK_FALSE(golden.hang);

  SqedReport a18 = verify_sqed(programs, inject("a18"), small_budget(), 2);
  CHECK_FALSE(a18.fired);  // the false positive: identical flaws stay consistent
}

TEST_CASE("asymmetric corruption fires the self-consistency checks") {
  std::vector<EddivProgram> programs;
  for (const auto& seq : compile_seeds()) programs.push_back(build_eddiv(seq));
  SqedReport a03 = verify_sqed(programs, inject("a03"), small_budget());
  CHECK(a03.fired);
  SqedReport a17 = verify_sqed(programs, inject("a17"), small_budget());
  CHECK(a17.fired);
}

TEST_CASE("symmetric control corruption stays silent for the checks") {
  std::vector<EddivProgram> programs;
  for (const auto& seq : compile_seeds()) programs.push_back(build_eddiv(seq));
  CHECK_FALSE(verify_sqed(programs, inject("a11"), small_budget()).fired);
  CHECK_FALSE(verify_sqed(programs, inject("a10"), small_budget()).fired);
  CHECK_FALSE(verify_sqed(programs, inject("a15"), small_budget()).fired);
  CHECK_FALSE(verify_sqed(programs, inject("a05"), small_budget()).fired);
  CHECK_FALSE(verify_sqed(programs, inject("a16"), small_budget()).fired);
  CHECK_FALSE(verify_sqed(programs, inject("a12"), small_budget()).fired);
}

TEST_CASE("a17 misses for the universal property but fires the checks") {
  auto seqs = compile_seeds();
  TiupReport tiup = verify_tiup(seqs, inject("a17"), small_budget(), 2);
  CHECK_FALSE(tiup.any_violation());  // vacuous-true arms heal the property
}

TEST_CASE("detection matrix over the seed corpus matches expectations") {
  auto seqs = compile_seeds();
  std::vector<EddivProgram> programs;
  for (const auto& seq : seqs) programs.push_back(build_eddiv(seq));
  DetectionMatrix m = detection_matrix({"a05", "a17", "a18"}, seqs, programs, small_budget(), 2);
  REQUIRE(m.rows.size() == 3);
  CHECK(m.row("a05")->tiup.detected);
  CHECK_FALSE(m.row("a05")->sqed.detected);
  CHECK_FALSE(m.row("a17")->tiup.detected);
  CHECK(m.row("a17")->sqed.detected);
  CHECK(m.row("a18")->tiup.detected);
  CHECK_FALSE(m.row("a18")->sqed.detected);
  CHECK(m.row("a18")->category == "single");
}

TEST_CASE("assignment grid is lexicographic and complete") {
  auto grid = assignment_grid({"a", "b"}, -1, 1);
  REQUIRE(grid.size() == 9);
  CHECK(static_cast<int32_t>(grid[0].at("a")) == -1);
  CHECK(static_cast<int32_t>(grid[0].at("b")) == -1);
  CHECK(static_cast<int32_t>(grid[1].at("b")) == 0);   // last variable fastest
  CHECK(static_cast<int32_t>(grid[8].at("a")) == 1);
  CHECK(static_cast<int32_t>(grid[8].at("b")) == 1);
  CHECK(assignment_grid({}, -8, 7).size() == 1);
}

TEST_CASE("config files parse with overrides and defaults") {
  CampaignConfig cfg = parse_config_text(
      "# campaign\n"
      "width = 4\n"
      "grid_lo = -2\n"
      "grid_hi = 2\n"
      "samples = 10\n"
      "seed = 99\n"
      "anomalies = a05, a18\n"
      "jobs = 3\n",
      "<test>");
  CHECK(cfg.admission_width == 4);
  CHECK(cfg.budget.grid_lo == -2);
  CHECK(cfg.budget.random_samples == 10);
  CHECK(cfg.budget.seed == 99);
  REQUIRE(cfg.anomalies.size() == 2);
  CHECK(cfg.anomalies[1] == "a18");
  CHECK(cfg.jobs == 3);
  CHECK_THROWS_AS(parse_config_text("nope = 1\n", "<test>"), ConfigError);
}

TEST_CASE("campaign report rendering is byte-deterministic") {
  CampaignConfig cfg;
  cfg.budget = small_budget();
  cfg.anomalies = {"a18"};
  cfg.jobs = 2;
  CampaignResult r1 = run_campaign(cfg);
  CampaignResult r2 = run_campaign(cfg);
  CHECK(render_report_json(r1) == render_report_json(r2));
  CHECK(render_matrix_markdown(r1) == render_matrix_markdown(r2));
  CHECK_FALSE(r1.golden.tiup.detected);
  CHECK_FALSE(r1.golden.sqed.detected);
  CHECK(r1.matrix.rows[0].tiup.detected);
}

TEST_CASE("prepared corpus reports register-pressure casualties by name") {
  CampaignConfig cfg;
  PreparedCorpus corpus = prepare_corpus(cfg);
  CHECK(corpus.compiled.size() + corpus.compile_failures.size() ==
        corpus.seed_library.seeds.size() + corpus.instances.size());
  CHECK(!corpus.compile_failures.empty());
  for (const auto& [name, error] : corpus.compile_failures) {
    CHECK(error.find(name) != std::string::npos);
    CHECK(error.find("register pressure") != std::string::npos);
  }
  // the worst offender pairs the widest seed with itself through impl_intro
  bool found = false;
  for (const auto& [name, error] : corpus.compile_failures)
    found |= name == "impl_intro(demorgan_xor,demorgan_xor)";
  CHECK(found);
  CHECK(corpus.eddiv_programs.size() + corpus.eddiv_skipped.size() == corpus.compiled.size());
}

TEST_CASE("eddiv starts QED-consistent and stays consistent on golden runs") {
  InstrSequence seq = compile_tautology(builtin_seeds().find("assoc")->formula, "assoc");
  EddivProgram p = build_eddiv(seq);
  RunOptions opts;
  opts.record_trace = true;
  Assignment sigma{{"x", 11}, {"y", 3}, {"z", 40}};
  RunResult r = run_eddiv(p, sigma, {}, opts);
  REQUIRE(r.finished);  // through the scheduler epilogue
  CHECK_FALSE(r.check_fired);
  for (uint8_t reg : p.checked_regs)
    CHECK(r.state.regs[reg] == r.state.regs[reg + 16]);
  // and the halves saw the same inputs
  for (const auto& [var, reg] : p.input_regs)
    CHECK(r.state.regs[reg] == r.state.regs[reg + 16]);
}
