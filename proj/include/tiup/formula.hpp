#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tiup {

// First-order expressions over fixed-width bitvectors. Arithmetic wraps at the
// evaluation width; ld/st act on a word-indexed memory. Immutable after
// construction, so trees may be shared freely between threads.

enum class UnOp { BitNot, LogNot, Neg };

enum class BinOp {
  Add, Sub, Mul, MulHU,
  And, Or, Xor,
  LtS, LtU, GtS, Eq, Ne,
  LogAnd, LogOr, Implies,
};

struct Expr;
using Formula = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Var, Const, Unary, Binary, MemLoad, MemStore };

  Kind kind;
  std::string name;    // Var
  uint32_t value = 0;  // Const, stored as 32-bit two's complement
  UnOp un_op{};
  BinOp bin_op{};
  Formula a, b, c;  // unary child / (lhs, rhs) / (mem, index, value)

  static Formula var(std::string name);
  static Formula num(uint32_t value);
  static Formula unary(UnOp op, Formula child);
  static Formula binary(BinOp op, Formula lhs, Formula rhs);
  static Formula mem_load(Formula mem, Formula index);
  static Formula mem_store(Formula mem, Formula index, Formula value);
};

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(std::string msg, int line, int column);
};

struct TypeError : std::runtime_error {
  std::string path;  // node path from the root, e.g. "root.lhs.rhs"
  TypeError(std::string msg, std::string path);
};

enum class Ty { Bits, Bool, Mem };

// Grammar (precedence low to high): implies (right assoc) < logor < logand <
// lognot < comparison < bitwise (& | ^) < add/sub < mul < unary (~ -) < atom.
// Atoms: ident, int (decimal or 0x hex, optionally negative), ld(m,i),
// st(m,i,v), mulhu(a,b), parenthesised expression.
Formula parse_formula(std::string_view text);

// Syntax only, no type check. Template skeletons need this: their leaves are
// boolean placeholders, not bitvector variables.
Formula parse_expression(std::string_view text);

// Inverse of parse_formula up to structural equality.
std::string print_formula(const Formula& f);

bool structurally_equal(const Formula& lhs, const Formula& rhs);

// Type of the whole expression; throws TypeError on ill-typed trees
// (logical connectives over non-boolean children, st outside a memory
// position, more than one distinct memory variable, ...).
Ty infer_type(const Formula& f);

// Free bitvector variables, sorted by name. Memory variables are reported
// separately by memory_variable().
std::vector<std::string> free_variables(const Formula& f);
std::optional<std::string> memory_variable(const Formula& f);

using Assignment = std::map<std::string, uint32_t>;

struct EvalOptions {
  unsigned width = 32;      // 1..32
  uint32_t mem_words = 256; // power of two; ld/st indices are masked to it
};

// Total on well-typed inputs. Boolean results are 0/1. Memory operations are
// operational: stores mutate a single memory image in left-to-right
// evaluation order, which matches the compiled-code semantics exactly.
// `initial_mem` defaults to all zeros.
uint32_t eval_formula(const Formula& f, const Assignment& sigma,
                      const EvalOptions& opts = {},
                      const std::vector<uint32_t>* initial_mem = nullptr);

uint32_t width_mask(unsigned width);
int64_t sign_extend(uint32_t value, unsigned width);

}  // namespace tiup
