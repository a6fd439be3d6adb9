#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tiup/corpus.hpp"
#include "tiup/formula.hpp"

namespace tiup {

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleVerdict {
  bool valid = false;
  std::optional<Assignment> counterexample;  // first falsifier, lexicographic
  unsigned width = 0;
  uint64_t assignments_checked = 0;
};

// Exhaustively evaluates f over every assignment of W-bit values to its free
// variables (sorted by name, last variable fastest). Memory formulas run
// against an all-zero 8-word memory; validity of the shipped ld/st identity
// does not depend on memory contents. Throws OracleError when the state
// space exceeds `limit` or the formula is not boolean-valued.
OracleVerdict check_tautology(const Formula& f, unsigned width,
                              uint64_t limit = 1ull << 24);

struct AdmissionReport {
  struct Rejection {
    std::string name;
    OracleVerdict verdict;
  };
  std::vector<Seed> admitted;
  std::vector<Rejection> rejected;
  unsigned width = 0;
};

// Partitions a seed library by oracle verdict at the given width.
AdmissionReport admit_seeds(const SeedLibrary& library, unsigned width,
                            uint64_t limit = 1ull << 24);

// "x=1 y=-3" with values printed as signed decimal at the verdict width.
std::string format_assignment(const Assignment& sigma, unsigned width);

}  // namespace tiup
