#include "doctest.h"
#include "test_helpers.hpp"
#include "tiup/oracle.hpp"
#include "tiup/synth.hpp"

using namespace tiup;

namespace {

SeedLibrary two_seeds() {
  return parse_seed_library(
      "s1 : x == x\n"
      "s2 : x ^ y == y ^ x\n",
      "<test>");
}

}  // namespace

TEST_CASE("two placeholders, two seeds: four instances in counting order") {
  TemplateLibrary tl = parse_template_library("and_elim : (P && Q) -> P\n", "<test>");
  auto out = synthesize(tl, two_seeds().seeds);
  REQUIRE(out.size() == 4);
  CHECK(out[0].seed_names == std::vector<std::string>{"s1", "s1"});
  CHECK(out[1].seed_names == std::vector<std::string>{"s1", "s2"});
  CHECK(out[2].seed_names == std::vector<std::string>{"s2", "s1"});
  CHECK(out[3].seed_names == std::vector<std::string>{"s2", "s2"});
  CHECK(out[1].name == "and_elim(s1,s2)");
}

TEST_CASE("single placeholder: excluded middle over one seed") {
  TemplateLibrary tl = parse_template_library("em : P || !P\n", "<test>");
  SeedLibrary sl = parse_seed_library("assoc : x - y - z == x - (y + z)\n", "<test>");
  auto out = synthesize(tl, sl.seeds);
  REQUIRE(out.size() == 1);
  Formula expected = Expr::binary(
      BinOp::LogOr, sl.seeds[0].formula,
      Expr::unary(UnOp::LogNot, sl.seeds[0].formula));
  CHECK(structurally_equal(out[0].formula, expected));
}

TEST_CASE("count law: templates with one and two placeholders over six seeds") {
  TemplateLibrary tl = parse_template_library(
      "em  : P || !P\n"
      "mp  : (P && (P -> Q)) -> Q\n",
      "<test>");
  CHECK(count_instances(tl, 6) == 6 + 36);
  CHECK(count_instances(TemplateLibrary{}, 6) == 0);
  Template degenerate;  // unrepresentable in the grammar, but the law still holds
  degenerate.name = "t0";
  degenerate.skeleton = parse_formula("x == x");
  TemplateLibrary dl;
  dl.templates.push_back(degenerate);
  CHECK(count_instances(dl, 6) == 1);
  auto out = synthesize(dl, two_seeds().seeds);
  REQUIRE(out.size() == 1);
  CHECK(structurally_equal(out[0].formula, degenerate.skeleton));
}

TEST_CASE("all placeholder occurrences take the same seed") {
  TemplateLibrary tl = parse_template_library("mp : (P && (P -> Q)) -> Q\n", "<test>");
  auto out = synthesize(tl, two_seeds().seeds);
  // (s2 && (s2 -> s1)) -> s1
  const auto& inst = out[2];
  REQUIRE(inst.seed_names == std::vector<std::string>{"s2", "s1"});
  const Expr& root = *inst.formula;
  const Expr& ante = *root.a;
  CHECK(structurally_equal(ante.a, two_seeds().seeds[1].formula));
  CHECK(structurally_equal(ante.b->a, two_seeds().seeds[1].formula));
  CHECK(structurally_equal(ante.b->b, two_seeds().seeds[0].formula));
  CHECK(structurally_equal(root.b, two_seeds().seeds[0].formula));
}

TEST_CASE("provenance reproduces the instance") {
  auto seeds = builtin_seeds().seeds;
  auto out = synthesize(builtin_templates(), seeds);
  tiup_test::Rng rng(0xABCD);
  for (int i = 0; i < 20; ++i) {
    const auto& inst = out[rng.below(static_cast<uint32_t>(out.size()))];
    const Template* t = nullptr;
    for (const auto& cand : builtin_templates().templates)
      if (cand.name == inst.template_name) t = &cand;
    REQUIRE(t != nullptr);
    std::vector<Seed> chosen;
    for (const auto& name : inst.seed_names) chosen.push_back(*builtin_seeds().find(name));
    CHECK(structurally_equal(instantiate(*t, chosen), inst.formula));
  }
}

TEST_CASE("synthesized count matches the law for random sub-corpora") {
  tiup_test::Rng rng(0xFEED);
  const auto& seeds = builtin_seeds().seeds;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Seed> subset;
    for (const auto& s : seeds)
      if (rng.chance(60)) subset.push_back(s);
    if (subset.empty()) subset.push_back(seeds[0]);
    auto out = synthesize(builtin_templates(), subset);
    CHECK(out.size() == count_instances(builtin_templates(), subset.size()));
  }
}

TEST_CASE("determinism: identical inputs give identical ordered output") {
  auto a = synthesize(builtin_templates(), builtin_seeds().seeds);
  auto b = synthesize(builtin_templates(), builtin_seeds().seeds);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(structurally_equal(a[i].formula, b[i].formula));
  }
}

TEST_CASE("instances over admitted seeds stay machine-valid at width 4") {
  // substitution of the same truth-valued formula for every occurrence of a
  // placeholder in a propositional tautology preserves validity
  auto out = synthesize(builtin_templates(), builtin_seeds().seeds);
  tiup_test::Rng rng(0xCAFE);
  for (int i = 0; i < 25; ++i) {
    const auto& inst = out[rng.below(static_cast<uint32_t>(out.size()))];
    OracleVerdict v = check_tautology(inst.formula, 4);
    CHECK_MESSAGE(v.valid, inst.name);
  }
}

TEST_CASE("empty seed list with placeholder-bearing templates is an error") {
  CHECK_THROWS_AS(synthesize(builtin_templates(), {}), SynthError);
}

TEST_CASE("instance cap aborts synthesis") {
  CHECK_THROWS_AS(synthesize(builtin_templates(), builtin_seeds().seeds, 10), SynthError);
}

TEST_CASE("template library rejects non-tautologies and non-propositional bodies") {
  CHECK_THROWS_AS(parse_template_library("bad : P -> Q\n", "<test>"), CorpusError);
  CHECK_THROWS_AS(parse_template_library("bad : (P + Q) -> P\n", "<test>"), CorpusError);
}

TEST_CASE("seed library rejects non-boolean seeds") {
  CHECK_THROWS_AS(parse_seed_library("arith : x + y\n", "<test>"), CorpusError);
}

TEST_CASE("shipped corpus files match the builtin corpora") {
  SeedLibrary seeds = load_seed_library(std::string(TIUP_SOURCE_DIR) + "/data/seeds.txt");
  REQUIRE(seeds.seeds.size() == builtin_seeds().seeds.size());
  for (size_t i = 0; i < seeds.seeds.size(); ++i) {
    CHECK(seeds.seeds[i].name == builtin_seeds().seeds[i].name);
    CHECK(structurally_equal(seeds.seeds[i].formula, builtin_seeds().seeds[i].formula));
  }
  TemplateLibrary templates =
      load_template_library(std::string(TIUP_SOURCE_DIR) + "/data/templates.txt");
  REQUIRE(templates.templates.size() == builtin_templates().templates.size());
  for (size_t i = 0; i < templates.templates.size(); ++i) {
    CHECK(templates.templates[i].name == builtin_templates().templates[i].name);
    CHECK(templates.templates[i].placeholders ==
          builtin_templates().templates[i].placeholders);
    CHECK(structurally_equal(templates.templates[i].skeleton,
                             builtin_templates().templates[i].skeleton));
  }
}
