#include "tiup/anomaly.hpp"

namespace tiup {

const std::vector<AnomalyInfo>& anomaly_catalog() {
  static const std::vector<AnomalyInfo> catalog = {
      {"a03", "Register target redirection", "multiple", "writeback"},
      {"a04", "Register source redirection", "multiple", "decode"},
      {"a05", "Incorrect unsigned operand less-than compare", "single", "execute"},
      {"a06", "GPR0 can be assigned", "multiple", "writeback"},
      {"a10", "Erroneous branch addresses", "single", "branch-unit"},
      {"a11", "Erroneous branch directions", "single", "branch-unit"},
      {"a12", "Error in decoding next instruction's operand", "single", "decode"},
      {"a13", "Processor incorrectly decodes the next instruction to a NOP instruction",
       "multiple", "decode"},
      {"a14", "The value of the next register read is corrupted to all 0's", "multiple",
       "decode"},
      {"a15", "Erroneous speculative instruction aren't flushed", "single", "branch-unit"},
      {"a16", "Unsigned multiply operand converts to signed", "single", "execute"},
      {"a17", "Source operand is misidentified as 0", "multiple", "branch-unit"},
      {"a18", "ALU opcode does not match with the actual circuit", "single", "execute"},
  };
  return catalog;
}

std::string anomaly_name(AnomalyId id) {
  switch (id) {
    case AnomalyId::None: return "golden";
    case AnomalyId::A03: return "a03";
    case AnomalyId::A04: return "a04";
    case AnomalyId::A05: return "a05";
    case AnomalyId::A06: return "a06";
    case AnomalyId::A10: return "a10";
    case AnomalyId::A11: return "a11";
    case AnomalyId::A12: return "a12";
    case AnomalyId::A13: return "a13";
    case AnomalyId::A14: return "a14";
    case AnomalyId::A15: return "a15";
    case AnomalyId::A16: return "a16";
    case AnomalyId::A17: return "a17";
    case AnomalyId::A18: return "a18";
  }
  return "?";
}

const AnomalyInfo& anomaly_info(AnomalyId id) {
  for (const auto& info : anomaly_catalog())
    if (info.name == anomaly_name(id)) return info;
  throw AnomalyError("no catalog entry for " + anomaly_name(id));
}

AnomalySpec inject(const std::string& name) {
  AnomalySpec spec;
  if (name == "golden" || name == "none" || name.empty()) return spec;
  if (name == "a03") spec.id = AnomalyId::A03;
  else if (name == "a04") spec.id = AnomalyId::A04;
  else if (name == "a05") spec.id = AnomalyId::A05;
  else if (name == "a06") spec.id = AnomalyId::A06;
  else if (name == "a10") spec.id = AnomalyId::A10;
  else if (name == "a11") spec.id = AnomalyId::A11;
  else if (name == "a12") spec.id = AnomalyId::A12;
  else if (name == "a13") spec.id = AnomalyId::A13;
  else if (name == "a14") spec.id = AnomalyId::A14;
  else if (name == "a15") spec.id = AnomalyId::A15;
  else if (name == "a16") spec.id = AnomalyId::A16;
  else if (name == "a17") spec.id = AnomalyId::A17;
  else if (name == "a18") spec.id = AnomalyId::A18;
  else throw AnomalyError("unknown anomaly id: " + name);
  return spec;
}

}  // namespace tiup
