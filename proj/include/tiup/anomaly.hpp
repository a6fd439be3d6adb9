#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiup {

// Injectable microarchitectural defects. Exactly one mutation is active per
// spec; golden (None) is the defect-free reference configuration.
enum class AnomalyId {
  None,
  A03,  // register target redirection: writes aimed at one GPR land in another
  A04,  // register source redirection: reads of one GPR return another
  A05,  // SLTU compares signed
  A06,  // GPR0 is assignable
  A10,  // taken control transfers land one slot past their target
  A11,  // conditional branch directions inverted
  A12,  // instruction after every multiply decodes with rs2 field +1
  A13,  // instruction after the first multiply decodes as NOP
  A14,  // instruction after the first multiply reads rs1 as 0
  A15,  // mispredict flush arrives one cycle late
  A16,  // MULHU executes as MULH
  A17,  // branch unit reads its rs1 operand as 0
  A18,  // ALU executes SUB when the opcode says ADD
};

struct AnomalySpec {
  AnomalyId id = AnomalyId::None;
  uint8_t redirect_from = 5;  // a03/a04
  uint8_t redirect_to = 6;
  int target_delta = 1;       // a10, in instruction slots

  bool golden() const { return id == AnomalyId::None; }
};

struct AnomalyInfo {
  std::string name;      // "a03"
  std::string synopsis;  // catalog row text
  std::string category;  // "single" | "multiple"
  std::string stage;     // hook point
};

struct AnomalyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<AnomalyInfo>& anomaly_catalog();
const AnomalyInfo& anomaly_info(AnomalyId id);

// "golden"/"none" or a catalog id such as "a18".
AnomalySpec inject(const std::string& name);
std::string anomaly_name(AnomalyId id);

}  // namespace tiup
