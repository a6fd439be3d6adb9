#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tiup/corpus.hpp"
#include "tiup/formula.hpp"

namespace tiup {

struct SynthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InstantiatedTautology {
  std::string name;  // "template(seedA,seedB)"
  Formula formula;
  std::string template_name;
  std::vector<std::string> seed_names;  // aligned with the template's placeholders
};

// Substitutes seeds for placeholders; every occurrence of one placeholder
// gets the same seed, so a propositional tautology skeleton stays valid.
Formula instantiate(const Template& t, const std::vector<Seed>& chosen);

// Depth-first instantiation of every template with every seed tuple.
// Deterministic: templates in input order, tuples counting up in seed order
// ((s1,s1),(s1,s2),...). A template with zero placeholders yields its
// skeleton once. Throws when a placeholder-bearing template meets an empty
// seed list, or when the total count exceeds max_instances.
std::vector<InstantiatedTautology> synthesize(const TemplateLibrary& templates,
                                              const std::vector<Seed>& seeds,
                                              uint64_t max_instances = 10000);

// Sum over templates of |seeds|^(distinct placeholders), saturating at
// UINT64_MAX; equals synthesize(...).size() without materialising anything.
uint64_t count_instances(const TemplateLibrary& templates, size_t seed_count);

}  // namespace tiup
