#include "tiup/formula.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace tiup {

Formula Expr::var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->name = std::move(name);
  return e;
}

Formula Expr::num(uint32_t value) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Const;
  e->value = value;
  return e;
}

Formula Expr::unary(UnOp op, Formula child) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Unary;
  e->un_op = op;
  e->a = std::move(child);
  return e;
}

Formula Expr::binary(BinOp op, Formula lhs, Formula rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Binary;
  e->bin_op = op;
  e->a = std::move(lhs);
  e->b = std::move(rhs);
  return e;
}

Formula Expr::mem_load(Formula mem, Formula index) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::MemLoad;
  e->a = std::move(mem);
  e->b = std::move(index);
  return e;
}

Formula Expr::mem_store(Formula mem, Formula index, Formula value) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::MemStore;
  e->a = std::move(mem);
  e->b = std::move(index);
  e->c = std::move(value);
  return e;
}

ParseError::ParseError(std::string msg, int line, int column)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + msg),
      line(line),
      column(column) {}

TypeError::TypeError(std::string msg, std::string path)
    : std::runtime_error("type error at " + path + ": " + msg),
      path(std::move(path)) {}

uint32_t width_mask(unsigned width) {
  return width >= 32 ? 0xFFFFFFFFu : ((1u << width) - 1u);
}

int64_t sign_extend(uint32_t value, unsigned width) {
  uint32_t m = width_mask(width);
  value &= m;
  uint32_t sign_bit = 1u << (width - 1);
  if (value & sign_bit) return static_cast<int64_t>(value) - (static_cast<int64_t>(m) + 1);
  return static_cast<int64_t>(value);
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  Ident, Int,
  Plus, Minus, Star, Amp, Pipe, Caret, Tilde, Bang,
  Lt, LtU, Gt, EqEq, NotEq, AndAnd, OrOr, Arrow,
  LParen, RParen, Comma,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  uint32_t value = 0;
  int line = 1, column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { next(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    next();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

  char cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char at(size_t off) const { return pos_ + off < text_.size() ? text_[pos_ + off] : '\0'; }

  void advance() {
    if (cur() == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void next() {
    while (std::isspace(static_cast<unsigned char>(cur()))) advance();
    tok_ = Token{};
    tok_.line = line_;
    tok_.column = col_;
    char c = cur();
    if (c == '\0') {
      tok_.kind = Tok::End;
      return;
    }
    if (ident_start(c)) {
      std::string s;
      while (ident_char(cur())) {
        s += cur();
        advance();
      }
      tok_.kind = Tok::Ident;
      tok_.text = std::move(s);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      uint64_t v = 0;
      if (c == '0' && (at(1) == 'x' || at(1) == 'X')) {
        advance();
        advance();
        if (!std::isxdigit(static_cast<unsigned char>(cur()))) fail("expected hex digits after 0x");
        while (std::isxdigit(static_cast<unsigned char>(cur()))) {
          char d = cur();
          uint32_t digit = std::isdigit(static_cast<unsigned char>(d))
                               ? static_cast<uint32_t>(d - '0')
                               : static_cast<uint32_t>(std::tolower(d) - 'a' + 10);
          v = (v << 4) | digit;
          if (v > 0xFFFFFFFFull) fail("integer literal does not fit in 32 bits");
          advance();
        }
      } else {
        while (std::isdigit(static_cast<unsigned char>(cur()))) {
          v = v * 10 + static_cast<uint64_t>(cur() - '0');
          if (v > 0xFFFFFFFFull) fail("integer literal does not fit in 32 bits");
          advance();
        }
      }
      if (ident_start(cur())) fail("malformed integer literal");
      tok_.kind = Tok::Int;
      tok_.value = static_cast<uint32_t>(v);
      return;
    }
    switch (c) {
      case '+': advance(); tok_.kind = Tok::Plus; return;
      case '*': advance(); tok_.kind = Tok::Star; return;
      case '^': advance(); tok_.kind = Tok::Caret; return;
      case '~': advance(); tok_.kind = Tok::Tilde; return;
      case '(': advance(); tok_.kind = Tok::LParen; return;
      case ')': advance(); tok_.kind = Tok::RParen; return;
      case ',': advance(); tok_.kind = Tok::Comma; return;
      case '-':
        advance();
        if (cur() == '>') {
          advance();
          tok_.kind = Tok::Arrow;
        } else {
          tok_.kind = Tok::Minus;
        }
        return;
      case '&':
        advance();
        if (cur() == '&') {
          advance();
          tok_.kind = Tok::AndAnd;
        } else {
          tok_.kind = Tok::Amp;
        }
        return;
      case '|':
        advance();
        if (cur() == '|') {
          advance();
          tok_.kind = Tok::OrOr;
        } else {
          tok_.kind = Tok::Pipe;
        }
        return;
      case '<':
        advance();
        // "<u" is the unsigned comparison when the u is not part of an
        // identifier ("x <u y" yes, "x<uy" no).
        if (cur() == 'u' && !ident_char(at(1))) {
          advance();
          tok_.kind = Tok::LtU;
        } else {
          tok_.kind = Tok::Lt;
        }
        return;
      case '>': advance(); tok_.kind = Tok::Gt; return;
      case '=':
        advance();
        if (cur() != '=') fail("expected '==' (assignment is not an operator)");
        advance();
        tok_.kind = Tok::EqEq;
        return;
      case '!':
        advance();
        if (cur() == '=') {
          advance();
          tok_.kind = Tok::NotEq;
        } else {
          tok_.kind = Tok::Bang;
        }
        return;
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Formula parse() {
    Formula f = parse_implies();
    const Token& t = lex_.peek();
    if (t.kind != Tok::End) throw ParseError("trailing input", t.line, t.column);
    return f;
  }

 private:
  Formula parse_implies() {
    Formula lhs = parse_logor();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return Expr::binary(BinOp::Implies, std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_logor() {
    Formula lhs = parse_logand();
    while (lex_.peek().kind == Tok::OrOr) {
      lex_.take();
      lhs = Expr::binary(BinOp::LogOr, std::move(lhs), parse_logand());
    }
    return lhs;
  }

  Formula parse_logand() {
    Formula lhs = parse_lognot();
    while (lex_.peek().kind == Tok::AndAnd) {
      lex_.take();
      lhs = Expr::binary(BinOp::LogAnd, std::move(lhs), parse_lognot());
    }
    return lhs;
  }

  Formula parse_lognot() {
    if (lex_.peek().kind == Tok::Bang) {
      lex_.take();
      return Expr::unary(UnOp::LogNot, parse_lognot());
    }
    return parse_comparison();
  }

  Formula parse_comparison() {
    Formula lhs = parse_bitwise();
    BinOp op;
    switch (lex_.peek().kind) {
      case Tok::Lt: op = BinOp::LtS; break;
      case Tok::LtU: op = BinOp::LtU; break;
      case Tok::Gt: op = BinOp::GtS; break;
      case Tok::EqEq: op = BinOp::Eq; break;
      case Tok::NotEq: op = BinOp::Ne; break;
      default: return lhs;
    }
    lex_.take();
    return Expr::binary(op, std::move(lhs), parse_bitwise());
  }

  Formula parse_bitwise() {
    Formula lhs = parse_addsub();
    for (;;) {
      BinOp op;
      switch (lex_.peek().kind) {
        case Tok::Amp: op = BinOp::And; break;
        case Tok::Pipe: op = BinOp::Or; break;
        case Tok::Caret: op = BinOp::Xor; break;
        default: return lhs;
      }
      lex_.take();
      lhs = Expr::binary(op, std::move(lhs), parse_addsub());
    }
  }

  Formula parse_addsub() {
    Formula lhs = parse_mul();
    for (;;) {
      BinOp op;
      switch (lex_.peek().kind) {
        case Tok::Plus: op = BinOp::Add; break;
        case Tok::Minus: op = BinOp::Sub; break;
        default: return lhs;
      }
      lex_.take();
      lhs = Expr::binary(op, std::move(lhs), parse_mul());
    }
  }

  Formula parse_mul() {
    Formula lhs = parse_unary();
    while (lex_.peek().kind == Tok::Star) {
      lex_.take();
      lhs = Expr::binary(BinOp::Mul, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Tilde) {
      lex_.take();
      return Expr::unary(UnOp::BitNot, parse_unary());
    }
    if (t.kind == Tok::Minus) {
      lex_.take();
      // A minus glued to an integer literal folds into a negative constant;
      // everything else becomes a Neg node.
      if (lex_.peek().kind == Tok::Int) {
        Token lit = lex_.take();
        return Expr::num(static_cast<uint32_t>(0u - lit.value));
      }
      return Expr::unary(UnOp::Neg, parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Tok::Int:
        return Expr::num(t.value);
      case Tok::LParen: {
        Formula f = parse_implies();
        expect(Tok::RParen, ")");
        return f;
      }
      case Tok::Ident: {
        if (t.text == "ld") {
          expect(Tok::LParen, "( after ld");
          Formula mem = parse_implies();
          expect(Tok::Comma, ",");
          Formula idx = parse_implies();
          expect(Tok::RParen, ")");
          return Expr::mem_load(std::move(mem), std::move(idx));
        }
        if (t.text == "st") {
          expect(Tok::LParen, "( after st");
          Formula mem = parse_implies();
          expect(Tok::Comma, ",");
          Formula idx = parse_implies();
          expect(Tok::Comma, ",");
          Formula val = parse_implies();
          expect(Tok::RParen, ")");
          return Expr::mem_store(std::move(mem), std::move(idx), std::move(val));
        }
        if (t.text == "mulhu") {
          expect(Tok::LParen, "( after mulhu");
          Formula lhs = parse_implies();
          expect(Tok::Comma, ",");
          Formula rhs = parse_implies();
          expect(Tok::RParen, ")");
          return Expr::binary(BinOp::MulHU, std::move(lhs), std::move(rhs));
        }
        return Expr::var(t.text);
      }
      default:
        throw ParseError("expected an expression", t.line, t.column);
    }
  }

  void expect(Tok kind, const char* what) {
    Token t = lex_.take();
    if (t.kind != kind) throw ParseError(std::string("expected ") + what, t.line, t.column);
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// Printer

int binop_level(BinOp op) {
  switch (op) {
    case BinOp::Implies: return 0;
    case BinOp::LogOr: return 1;
    case BinOp::LogAnd: return 2;
    case BinOp::LtS: case BinOp::LtU: case BinOp::GtS:
    case BinOp::Eq: case BinOp::Ne: return 4;
    case BinOp::And: case BinOp::Or: case BinOp::Xor: return 5;
    case BinOp::Add: case BinOp::Sub: return 6;
    case BinOp::Mul: return 7;
    case BinOp::MulHU: return 9;  // function syntax, binds like an atom
  }
  return 9;
}

int node_level(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Binary: return binop_level(e.bin_op);
    case Expr::Kind::Unary: return e.un_op == UnOp::LogNot ? 3 : 8;
    default: return 9;
  }
}

const char* binop_token(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::And: return "&";
    case BinOp::Or: return "|";
    case BinOp::Xor: return "^";
    case BinOp::LtS: return "<";
    case BinOp::LtU: return "<u";
    case BinOp::GtS: return ">";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::LogAnd: return "&&";
    case BinOp::LogOr: return "||";
    case BinOp::Implies: return "->";
    case BinOp::MulHU: return "mulhu";
  }
  return "?";
}

void print_expr(const Expr& e, std::string& out);

// Wraps the child in parentheses when its precedence is too low, or when two
// different operators share a level ("x & y" under "|"), which keeps mixed
// bitwise chains unambiguous to the eye as well as to the parser.
void print_child(const Expr& parent, const Expr& child, int min_level, std::string& out) {
  bool parens = node_level(child) < min_level;
  if (!parens && child.kind == Expr::Kind::Binary && parent.kind == Expr::Kind::Binary &&
      node_level(child) == node_level(parent) && child.bin_op != parent.bin_op) {
    parens = true;
  }
  if (parens) out += '(';
  print_expr(child, out);
  if (parens) out += ')';
}

void print_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::Var:
      out += e.name;
      return;
    case Expr::Kind::Const: {
      out += std::to_string(static_cast<int32_t>(e.value));
      return;
    }
    case Expr::Kind::Unary: {
      if (e.un_op == UnOp::LogNot) {
        out += '!';
        // Parenthesise anything that is not an atom or another negation;
        // "!x < y" would round-trip but reads wrong.
        bool parens = node_level(*e.a) < 9 &&
                      !(e.a->kind == Expr::Kind::Unary && e.a->un_op == UnOp::LogNot);
        if (parens) out += '(';
        print_expr(*e.a, out);
        if (parens) out += ')';
        return;
      }
      out += (e.un_op == UnOp::BitNot) ? '~' : '-';
      bool parens = node_level(*e.a) < 8 ||
                    (e.un_op == UnOp::Neg && e.a->kind == Expr::Kind::Const);
      if (parens) out += '(';
      print_expr(*e.a, out);
      if (parens) out += ')';
      return;
    }
    case Expr::Kind::Binary: {
      if (e.bin_op == BinOp::MulHU) {
        out += "mulhu(";
        print_expr(*e.a, out);
        out += ", ";
        print_expr(*e.b, out);
        out += ')';
        return;
      }
      int level = binop_level(e.bin_op);
      bool right_assoc = e.bin_op == BinOp::Implies;
      int lhs_min = right_assoc ? level + 1 : level;
      int rhs_min = right_assoc ? level : level + 1;
      print_child(e, *e.a, lhs_min, out);
      out += ' ';
      out += binop_token(e.bin_op);
      out += ' ';
      print_child(e, *e.b, rhs_min, out);
      return;
    }
    case Expr::Kind::MemLoad:
      out += "ld(";
      print_expr(*e.a, out);
      out += ", ";
      print_expr(*e.b, out);
      out += ')';
      return;
    case Expr::Kind::MemStore:
      out += "st(";
      print_expr(*e.a, out);
      out += ", ";
      print_expr(*e.b, out);
      out += ", ";
      print_expr(*e.c, out);
      out += ')';
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Formula f = Parser(text).parse();
  infer_type(f);  // reject ill-typed input at the door
  return f;
}

Formula parse_expression(std::string_view text) { return Parser(text).parse(); }

std::string print_formula(const Formula& f) {
  std::string out;
  print_expr(*f, out);
  return out;
}

bool structurally_equal(const Formula& lhs, const Formula& rhs) {
  if (lhs == rhs) return true;
  if (!lhs || !rhs) return false;
  const Expr& a = *lhs;
  const Expr& b = *rhs;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Var: return a.name == b.name;
    case Expr::Kind::Const: return a.value == b.value;
    case Expr::Kind::Unary:
      return a.un_op == b.un_op && structurally_equal(a.a, b.a);
    case Expr::Kind::Binary:
      return a.bin_op == b.bin_op && structurally_equal(a.a, b.a) &&
             structurally_equal(a.b, b.b);
    case Expr::Kind::MemLoad:
      return structurally_equal(a.a, b.a) && structurally_equal(a.b, b.b);
    case Expr::Kind::MemStore:
      return structurally_equal(a.a, b.a) && structurally_equal(a.b, b.b) &&
             structurally_equal(a.c, b.c);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Typing

namespace {

struct TypeContext {
  std::map<std::string, Ty> vars;
};

Ty check(const Formula& f, TypeContext& ctx, const std::string& path);
void check_mem(const Formula& f, TypeContext& ctx, const std::string& path);

Ty check(const Formula& f, TypeContext& ctx, const std::string& path) {
  const Expr& e = *f;
  switch (e.kind) {
    case Expr::Kind::Var: {
      auto [it, inserted] = ctx.vars.emplace(e.name, Ty::Bits);
      if (!inserted && it->second == Ty::Mem)
        throw TypeError("memory variable '" + e.name + "' used as a bitvector", path);
      return it->second;
    }
    case Expr::Kind::Const:
      return Ty::Bits;
    case Expr::Kind::Unary: {
      Ty child = check(e.a, ctx, path + ".child");
      if (e.un_op == UnOp::LogNot) {
        if (child != Ty::Bool) throw TypeError("'!' needs a boolean operand", path);
        return Ty::Bool;
      }
      if (child != Ty::Bits) throw TypeError("unary operator needs a bitvector operand", path);
      return Ty::Bits;
    }
    case Expr::Kind::Binary: {
      Ty lhs = check(e.a, ctx, path + ".lhs");
      Ty rhs = check(e.b, ctx, path + ".rhs");
      switch (e.bin_op) {
        case BinOp::LogAnd:
        case BinOp::LogOr:
        case BinOp::Implies:
          if (lhs != Ty::Bool || rhs != Ty::Bool)
            throw TypeError("logical connective needs boolean operands", path);
          return Ty::Bool;
        case BinOp::LtS:
        case BinOp::LtU:
        case BinOp::GtS:
        case BinOp::Eq:
        case BinOp::Ne:
          if (lhs != Ty::Bits || rhs != Ty::Bits)
            throw TypeError("comparison needs bitvector operands", path);
          return Ty::Bool;
        default:
          if (lhs != Ty::Bits || rhs != Ty::Bits)
            throw TypeError("arithmetic operator needs bitvector operands", path);
          return Ty::Bits;
      }
    }
    case Expr::Kind::MemLoad: {
      check_mem(e.a, ctx, path + ".mem");
      if (check(e.b, ctx, path + ".index") != Ty::Bits)
        throw TypeError("ld index must be a bitvector", path);
      return Ty::Bits;
    }
    case Expr::Kind::MemStore:
      throw TypeError("st(...) only makes sense inside ld(...)", path);
  }
  throw TypeError("unreachable node kind", path);
}

void check_mem(const Formula& f, TypeContext& ctx, const std::string& path) {
  const Expr& e = *f;
  if (e.kind == Expr::Kind::Var) {
    auto it = ctx.vars.find(e.name);
    if (it != ctx.vars.end() && it->second == Ty::Bits)
      throw TypeError("bitvector variable '" + e.name + "' used as memory", path);
    ctx.vars[e.name] = Ty::Mem;
    return;
  }
  if (e.kind == Expr::Kind::MemStore) {
    check_mem(e.a, ctx, path + ".mem");
    if (check(e.b, ctx, path + ".index") != Ty::Bits)
      throw TypeError("st index must be a bitvector", path);
    if (check(e.c, ctx, path + ".value") != Ty::Bits)
      throw TypeError("st value must be a bitvector", path);
    return;
  }
  throw TypeError("expected a memory expression (variable or st)", path);
}

}  // namespace

Ty infer_type(const Formula& f) {
  TypeContext ctx;
  Ty t = check(f, ctx, "root");
  int mem_vars = 0;
  for (auto& [name, ty] : ctx.vars)
    if (ty == Ty::Mem) ++mem_vars;
  if (mem_vars > 1) throw TypeError("at most one memory variable is supported", "root");
  return t;
}

std::vector<std::string> free_variables(const Formula& f) {
  TypeContext ctx;
  check(f, ctx, "root");
  std::vector<std::string> out;
  for (auto& [name, ty] : ctx.vars)
    if (ty == Ty::Bits) out.push_back(name);
  return out;  // std::map iteration is already name-sorted
}

std::optional<std::string> memory_variable(const Formula& f) {
  TypeContext ctx;
  check(f, ctx, "root");
  for (auto& [name, ty] : ctx.vars)
    if (ty == Ty::Mem) return name;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Evaluator {
  const Assignment& sigma;
  unsigned width;
  uint32_t mask;
  std::vector<uint32_t> mem;

  uint32_t get_var(const std::string& name) {
    auto it = sigma.find(name);
    if (it == sigma.end()) throw std::runtime_error("unassigned variable: " + name);
    return it->second & mask;
  }

  uint32_t eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Var:
        return get_var(e.name);
      case Expr::Kind::Const:
        return e.value & mask;
      case Expr::Kind::Unary: {
        uint32_t v = eval(*e.a);
        switch (e.un_op) {
          case UnOp::BitNot: return ~v & mask;
          case UnOp::Neg: return (0u - v) & mask;
          case UnOp::LogNot: return v ? 0u : 1u;
        }
        return 0;
      }
      case Expr::Kind::Binary: {
        // No short-circuiting: operands are total, and the compiled code
        // evaluates both sides too.
        uint32_t a = eval(*e.a);
        uint32_t b = eval(*e.b);
        switch (e.bin_op) {
          case BinOp::Add: return (a + b) & mask;
          case BinOp::Sub: return (a - b) & mask;
          case BinOp::Mul:
            return static_cast<uint32_t>((static_cast<uint64_t>(a) * b)) & mask;
          case BinOp::MulHU:
            return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) >> width) & mask;
          case BinOp::And: return a & b;
          case BinOp::Or: return a | b;
          case BinOp::Xor: return a ^ b;
          case BinOp::LtS: return sign_extend(a, width) < sign_extend(b, width) ? 1u : 0u;
          case BinOp::LtU: return a < b ? 1u : 0u;
          case BinOp::GtS: return sign_extend(a, width) > sign_extend(b, width) ? 1u : 0u;
          case BinOp::Eq: return a == b ? 1u : 0u;
          case BinOp::Ne: return a != b ? 1u : 0u;
          case BinOp::LogAnd: return (a && b) ? 1u : 0u;
          case BinOp::LogOr: return (a || b) ? 1u : 0u;
          case BinOp::Implies: return (!a || b) ? 1u : 0u;
        }
        return 0;
      }
      case Expr::Kind::MemLoad: {
        eval_mem(*e.a);
        uint32_t idx = eval(*e.b) & (static_cast<uint32_t>(mem.size()) - 1);
        return mem[idx] & mask;
      }
      case Expr::Kind::MemStore:
        throw std::runtime_error("st outside ld");
    }
    return 0;
  }

  // Stores mutate the single memory image in evaluation order, mirroring the
  // compiled instruction sequence.
  void eval_mem(const Expr& e) {
    if (e.kind == Expr::Kind::Var) return;  // the ambient memory
    eval_mem(*e.a);
    uint32_t idx = eval(*e.b) & (static_cast<uint32_t>(mem.size()) - 1);
    uint32_t val = eval(*e.c);
    mem[idx] = val;
  }
};

}  // namespace

uint32_t eval_formula(const Formula& f, const Assignment& sigma, const EvalOptions& opts,
                      const std::vector<uint32_t>* initial_mem) {
  Evaluator ev{sigma, opts.width, width_mask(opts.width), {}};
  ev.mem.assign(opts.mem_words, 0);
  if (initial_mem) {
    for (size_t i = 0; i < ev.mem.size() && i < initial_mem->size(); ++i)
      ev.mem[i] = (*initial_mem)[i];
  }
  return ev.eval(*f);
}

}  // namespace tiup
