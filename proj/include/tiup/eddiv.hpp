#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tiup/anomaly.hpp"
#include "tiup/compiler.hpp"
#include "tiup/simulator.hpp"

namespace tiup {

struct EddivError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Self-consistency baseline program: the tautology body (bookkeeping
// stripped), a register-renamed duplicate (+16), and a BNE check per
// destination-register pair. A fired check is a divergence between the
// halves. Sections are NOP-padded so control anomalies at a section's edge
// corrupt both halves alike.
struct EddivProgram {
  std::string name;
  std::vector<uint32_t> queue;
  size_t check_begin = 0, check_end = 0;           // queue indices of the checks
  std::vector<uint8_t> checked_regs;               // original-half destinations
  std::map<std::string, uint8_t> input_regs;       // original-half inputs
};

// Bodies must stay within x0..x13 so the +16 rename cannot collide with the
// result/finish registers.
bool eddiv_eligible(const InstrSequence& seq);
EddivProgram build_eddiv(const InstrSequence& original);

// QED-consistent start: every input register pair (r, r+16) holds the same
// value. The run ends through the scheduler epilogue.
RunResult run_eddiv(const EddivProgram& program, const Assignment& sigma,
                    const AnomalySpec& anomaly = {}, RunOptions options = {});

}  // namespace tiup
