#pragma once

#include <string>
#include <vector>

#include "tiup/formula.hpp"

namespace tiup {

struct Seed {
  std::string name;
  Formula formula;  // boolean-valued, admitted separately by the oracle
};

// A propositional tautology skeleton. Placeholders are the skeleton's
// variables, listed in first-occurrence order; instantiation substitutes the
// same seed for every occurrence of a placeholder.
struct Template {
  std::string name;
  Formula skeleton;
  std::vector<std::string> placeholders;
};

struct SeedLibrary {
  std::vector<Seed> seeds;
  const Seed* find(const std::string& name) const;
};

struct TemplateLibrary {
  std::vector<Template> templates;
};

struct CorpusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Corpus file format: UTF-8, one "name : formula" entry per line, '#' starts
// a comment. Seeds must be boolean-valued; template skeletons must contain
// only logical connectives over placeholders and must be propositional
// tautologies (checked by 2^n truth-table enumeration).
SeedLibrary load_seed_library(const std::string& path);
SeedLibrary parse_seed_library(const std::string& text, const std::string& origin);
TemplateLibrary load_template_library(const std::string& path);
TemplateLibrary parse_template_library(const std::string& text, const std::string& origin);

Template make_template(std::string name, const Formula& skeleton);
bool is_propositional_tautology(const Template& t);

// The corpora shipped with the tool (also available as data/seeds.txt and
// data/templates.txt). The first seven seeds are the core arithmetic, logic,
// memory and comparison identities; uge_zero and mulhu_one pin down the
// unsigned comparator and the widening multiplier.
const SeedLibrary& builtin_seeds();
const TemplateLibrary& builtin_templates();
std::string builtin_seeds_text();
std::string builtin_templates_text();

}  // namespace tiup
