#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tiup/formula.hpp"

namespace tiup_test {

// Small deterministic generator for property-style tests.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  uint32_t below(uint32_t n) { return static_cast<uint32_t>(next() % n); }
  bool chance(uint32_t percent) { return below(100) < percent; }
};

inline const std::vector<std::string>& var_pool() {
  static const std::vector<std::string> pool = {"w", "x", "y", "z"};
  return pool;
}

inline tiup::Formula random_bits(Rng& rng, int depth);

inline tiup::Formula random_bool(Rng& rng, int depth) {
  using namespace tiup;
  if (depth <= 0 || rng.chance(35)) {
    BinOp cmp[] = {BinOp::LtS, BinOp::LtU, BinOp::GtS, BinOp::Eq, BinOp::Ne};
    return Expr::binary(cmp[rng.below(5)], random_bits(rng, depth - 1),
                        random_bits(rng, depth - 1));
  }
  switch (rng.below(4)) {
    case 0: return Expr::unary(UnOp::LogNot, random_bool(rng, depth - 1));
    case 1:
      return Expr::binary(BinOp::LogAnd, random_bool(rng, depth - 1), random_bool(rng, depth - 1));
    case 2:
      return Expr::binary(BinOp::LogOr, random_bool(rng, depth - 1), random_bool(rng, depth - 1));
    default:
      return Expr::binary(BinOp::Implies, random_bool(rng, depth - 1), random_bool(rng, depth - 1));
  }
}

inline tiup::Formula random_bits(Rng& rng, int depth) {
  using namespace tiup;
  if (depth <= 0 || rng.chance(30)) {
    if (rng.chance(40)) return Expr::num(static_cast<uint32_t>(rng.next()));
    return Expr::var(var_pool()[rng.below(static_cast<uint32_t>(var_pool().size()))]);
  }
  switch (rng.below(11)) {
    case 0: return Expr::unary(UnOp::BitNot, random_bits(rng, depth - 1));
    case 1: return Expr::unary(UnOp::Neg, random_bits(rng, depth - 1));
    case 2:
      return Expr::binary(BinOp::Add, random_bits(rng, depth - 1), random_bits(rng, depth - 1));
    case 3:
      return Expr::binary(BinOp::Sub, random_bits(rng, depth - 1), random_bits(rng, depth - 1));
    case 4:
      return Expr::binary(BinOp::Mul, random_bits(rng, depth - 1), random_bits(rng, depth - 1));
    case 5:
      return Expr::binary(BinOp::And, random_bits(rng, depth - 1), random_bits(rng, depth - 1));
    case 6:
      return Expr::binary(BinOp::Or, random_bits(rng, depth - 1), random_bits(rng, depth - 1));
    case 7:
      return Expr::binary(BinOp::Xor, random_bits(rng, depth - 1), random_bits(rng, depth - 1));
    case 8:
      return Expr::binary(BinOp::MulHU, random_bits(rng, depth - 1), random_bits(rng, depth - 1));
    case 9: {
      // a load, possibly through a store chain
      Formula mem = Expr::var("mem");
      if (rng.chance(60))
        mem = Expr::mem_store(mem, random_bits(rng, depth - 1), random_bits(rng, depth - 1));
      return Expr::mem_load(mem, random_bits(rng, depth - 1));
    }
    default:
      return Expr::binary(BinOp::Add, random_bits(rng, depth - 1), random_bits(rng, depth - 1));
  }
}

// All-bitvector variant for contexts where memory operations are unwanted.
inline tiup::Formula random_bits_pure(Rng& rng, int depth) {
  using namespace tiup;
  if (depth <= 0 || rng.chance(30)) {
    if (rng.chance(40)) return Expr::num(static_cast<uint32_t>(rng.next()));
    return Expr::var(var_pool()[rng.below(static_cast<uint32_t>(var_pool().size()))]);
  }
  BinOp ops[] = {BinOp::Add, BinOp::Sub, BinOp::Mul,   BinOp::And,
                 BinOp::Or,  BinOp::Xor, BinOp::MulHU};
  if (rng.chance(15)) {
    return Expr::unary(rng.chance(50) ? UnOp::BitNot : UnOp::Neg, random_bits_pure(rng, depth - 1));
  }
  return Expr::binary(ops[rng.below(7)], random_bits_pure(rng, depth - 1),
                      random_bits_pure(rng, depth - 1));
}

inline tiup::Formula random_bool_pure(Rng& rng, int depth) {
  using namespace tiup;
  if (depth <= 0 || rng.chance(35)) {
    BinOp cmp[] = {BinOp::LtS, BinOp::LtU, BinOp::GtS, BinOp::Eq, BinOp::Ne};
    return Expr::binary(cmp[rng.below(5)], random_bits_pure(rng, depth - 1),
                        random_bits_pure(rng, depth - 1));
  }
  switch (rng.below(4)) {
    case 0: return Expr::unary(UnOp::LogNot, random_bool_pure(rng, depth - 1));
    case 1:
      return Expr::binary(BinOp::LogAnd, random_bool_pure(rng, depth - 1),
                          random_bool_pure(rng, depth - 1));
    case 2:
      return Expr::binary(BinOp::LogOr, random_bool_pure(rng, depth - 1),
                          random_bool_pure(rng, depth - 1));
    default:
      return Expr::binary(BinOp::Implies, random_bool_pure(rng, depth - 1),
                          random_bool_pure(rng, depth - 1));
  }
}

inline tiup::Assignment random_sigma(Rng& rng, const std::vector<std::string>& vars) {
  tiup::Assignment sigma;
  for (const auto& v : vars) sigma[v] = static_cast<uint32_t>(rng.next());
  return sigma;
}

}  // namespace tiup_test
