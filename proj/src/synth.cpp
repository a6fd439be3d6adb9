#include "tiup/synth.hpp"

#include <map>

namespace tiup {

namespace {

Formula substitute(const Formula& f, const std::map<std::string, Formula>& env) {
  const Expr& e = *f;
  switch (e.kind) {
    case Expr::Kind::Var: {
      auto it = env.find(e.name);
      return it == env.end() ? f : it->second;
    }
    case Expr::Kind::Const:
      return f;
    case Expr::Kind::Unary:
      return Expr::unary(e.un_op, substitute(e.a, env));
    case Expr::Kind::Binary:
      return Expr::binary(e.bin_op, substitute(e.a, env), substitute(e.b, env));
    case Expr::Kind::MemLoad:
      return Expr::mem_load(substitute(e.a, env), substitute(e.b, env));
    case Expr::Kind::MemStore:
      return Expr::mem_store(substitute(e.a, env), substitute(e.b, env),
                             substitute(e.c, env));
  }
  return f;
}

uint64_t saturating_pow(uint64_t base, size_t exp) {
  uint64_t r = 1;
  for (size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

}  // namespace

Formula instantiate(const Template& t, const std::vector<Seed>& chosen) {
  if (chosen.size() != t.placeholders.size())
    throw SynthError("template '" + t.name + "': seed tuple size mismatch");
  std::map<std::string, Formula> env;
  for (size_t i = 0; i < chosen.size(); ++i) env[t.placeholders[i]] = chosen[i].formula;
  return substitute(t.skeleton, env);
}

uint64_t count_instances(const TemplateLibrary& templates, size_t seed_count) {
  uint64_t total = 0;
  for (const auto& t : templates.templates) {
    uint64_t c = saturating_pow(seed_count, t.placeholders.size());
    if (total > UINT64_MAX - c) return UINT64_MAX;
    total += c;
  }
  return total;
}

std::vector<InstantiatedTautology> synthesize(const TemplateLibrary& templates,
                                              const std::vector<Seed>& seeds,
                                              uint64_t max_instances) {
  uint64_t expected = count_instances(templates, seeds.size());
  if (expected > max_instances)
    throw SynthError("synthesis would produce " + std::to_string(expected) +
                     " instances, above the cap of " + std::to_string(max_instances));

  std::vector<InstantiatedTautology> out;
  out.reserve(expected);

  for (const auto& t : templates.templates) {
    size_t n = t.placeholders.size();
    if (n > 0 && seeds.empty())
      throw SynthError("template '" + t.name + "' has placeholders but the seed list is empty");

    // Explicit-stack DFS over partial seed choices. Each frame records how
    // many placeholders are bound; children are pushed in reverse seed order
    // so tuples pop in counting order.
    struct Frame {
      size_t bound;
      std::vector<size_t> choice;
    };
    std::vector<Frame> stack;
    stack.push_back({0, {}});
    while (!stack.empty()) {
      Frame frame = std::move(stack.back());
      stack.pop_back();
      if (frame.bound == n) {
        std::vector<Seed> chosen;
        std::string name = t.name;
        if (n > 0) {
          name += '(';
          for (size_t i = 0; i < n; ++i) {
            chosen.push_back(seeds[frame.choice[i]]);
            if (i) name += ',';
            name += seeds[frame.choice[i]].name;
          }
          name += ')';
        }
        InstantiatedTautology inst;
        inst.name = std::move(name);
        inst.formula = n > 0 ? instantiate(t, chosen) : t.skeleton;
        inst.template_name = t.name;
        for (size_t i = 0; i < n; ++i) inst.seed_names.push_back(seeds[frame.choice[i]].name);
        out.push_back(std::move(inst));
        continue;
      }
      for (size_t i = seeds.size(); i-- > 0;) {
        Frame child = frame;
        child.bound++;
        child.choice.push_back(i);
        stack.push_back(std::move(child));
      }
    }
  }
  return out;
}

}  // namespace tiup
