#include "tiup/corpus.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace tiup {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Shared "name : formula" line scanner for both library kinds.
void parse_lines(const std::string& text, const std::string& origin,
                 const std::function<void(std::string, std::string, int)>& entry) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw CorpusError(origin + ":" + std::to_string(lineno) + ": expected 'name : formula'");
    std::string name = trim(line.substr(0, colon));
    std::string body = trim(line.substr(colon + 1));
    if (name.empty() || body.empty())
      throw CorpusError(origin + ":" + std::to_string(lineno) + ": empty name or formula");
    entry(std::move(name), std::move(body), lineno);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void collect_placeholders(const Formula& f, std::vector<std::string>& order,
                          std::set<std::string>& seen, const std::string& tname) {
  const Expr& e = *f;
  switch (e.kind) {
    case Expr::Kind::Var:
      if (seen.insert(e.name).second) order.push_back(e.name);
      return;
    case Expr::Kind::Unary:
      if (e.un_op != UnOp::LogNot)
        throw CorpusError("template '" + tname + "': only logical connectives allowed");
      collect_placeholders(e.a, order, seen, tname);
      return;
    case Expr::Kind::Binary:
      if (e.bin_op != BinOp::LogAnd && e.bin_op != BinOp::LogOr && e.bin_op != BinOp::Implies)
        throw CorpusError("template '" + tname + "': only logical connectives allowed");
      collect_placeholders(e.a, order, seen, tname);
      collect_placeholders(e.b, order, seen, tname);
      return;
    default:
      throw CorpusError("template '" + tname + "': only placeholders allowed at the leaves");
  }
}

bool eval_prop(const Formula& f, const std::map<std::string, bool>& env) {
  const Expr& e = *f;
  switch (e.kind) {
    case Expr::Kind::Var:
      return env.at(e.name);
    case Expr::Kind::Unary:
      return !eval_prop(e.a, env);
    case Expr::Kind::Binary: {
      bool a = eval_prop(e.a, env);
      bool b = eval_prop(e.b, env);
      switch (e.bin_op) {
        case BinOp::LogAnd: return a && b;
        case BinOp::LogOr: return a || b;
        default: return !a || b;  // Implies
      }
    }
    default:
      return false;
  }
}

}  // namespace

const Seed* SeedLibrary::find(const std::string& name) const {
  for (const auto& s : seeds)
    if (s.name == name) return &s;
  return nullptr;
}

SeedLibrary parse_seed_library(const std::string& text, const std::string& origin) {
  SeedLibrary lib;
  std::set<std::string> names;
  parse_lines(text, origin, [&](std::string name, std::string body, int lineno) {
    if (!names.insert(name).second)
      throw CorpusError(origin + ":" + std::to_string(lineno) + ": duplicate seed '" + name + "'");
    Formula f;
    try {
      f = parse_formula(body);
    } catch (const std::exception& e) {
      throw CorpusError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (infer_type(f) != Ty::Bool)
      throw CorpusError(origin + ":" + std::to_string(lineno) + ": seed '" + name +
                        "' is not boolean-valued; placeholders are propositional");
    lib.seeds.push_back({std::move(name), std::move(f)});
  });
  return lib;
}

SeedLibrary load_seed_library(const std::string& path) {
  return parse_seed_library(read_file(path), path);
}

Template make_template(std::string name, const Formula& skeleton) {
  Template t;
  t.name = std::move(name);
  t.skeleton = skeleton;
  std::set<std::string> seen;
  collect_placeholders(skeleton, t.placeholders, seen, t.name);
  return t;
}

bool is_propositional_tautology(const Template& t) {
  size_t n = t.placeholders.size();
  if (n > 20) throw CorpusError("template '" + t.name + "': too many placeholders");
  for (uint64_t bits = 0; bits < (1ull << n); ++bits) {
    std::map<std::string, bool> env;
    for (size_t i = 0; i < n; ++i) env[t.placeholders[i]] = (bits >> i) & 1;
    if (!eval_prop(t.skeleton, env)) return false;
  }
  return true;
}

TemplateLibrary parse_template_library(const std::string& text, const std::string& origin) {
  TemplateLibrary lib;
  std::set<std::string> names;
  parse_lines(text, origin, [&](std::string name, std::string body, int lineno) {
    if (!names.insert(name).second)
      throw CorpusError(origin + ":" + std::to_string(lineno) + ": duplicate template '" + name + "'");
    Formula f;
    try {
      f = parse_expression(body);
    } catch (const std::exception& e) {
      throw CorpusError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
    Template t = make_template(std::move(name), f);
    if (!is_propositional_tautology(t))
      throw CorpusError(origin + ":" + std::to_string(lineno) + ": template '" + t.name +
                        "' is not a propositional tautology");
    lib.templates.push_back(std::move(t));
  });
  return lib;
}

TemplateLibrary load_template_library(const std::string& path) {
  return parse_template_library(read_file(path), path);
}

std::string builtin_seeds_text() {
  return
      "# Core seed corpus: machine-valid first-order identities.\n"
      "assoc           : x - y - z == x - (y + z)\n"
      "demorgan_xor    : x ^ y == ~((x & y) | (~x & ~y))\n"
      "ld_st           : ld(st(mem, x, y), x) == y\n"
      "lt_antisym_s    : (x < y) -> !(y < x)\n"
      "lt_antisym_u    : (x <u y) -> !(y <u x)\n"
      "mul2_add        : x * 2 == x + x\n"
      "eq_refl         : x == x\n"
      "# Signedness probes for the unsigned comparator and the widening multiplier.\n"
      "uge_zero        : !(x <u 0)\n"
      "mulhu_one       : mulhu(x, 1) == 0\n";
}

std::string builtin_templates_text() {
  return
      "# Propositional tautology skeletons; placeholders take whole seeds.\n"
      "and_elim        : (P && Q) -> P\n"
      "impl_intro      : (P -> Q) -> (!P || Q)\n"
      "excluded_middle : P || !P\n"
      "modus_ponens    : (P && (P -> Q)) -> Q\n";
}

const SeedLibrary& builtin_seeds() {
  static const SeedLibrary lib = parse_seed_library(builtin_seeds_text(), "<builtin>");
  return lib;
}

const TemplateLibrary& builtin_templates() {
  static const TemplateLibrary lib = parse_template_library(builtin_templates_text(), "<builtin>");
  return lib;
}

}  // namespace tiup
