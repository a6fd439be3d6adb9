#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tiup/checker.hpp"
#include "tiup/corpus.hpp"
#include "tiup/oracle.hpp"
#include "tiup/synth.hpp"

namespace tiup {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fully determines every report byte together with the tool version;
// wall-clock data goes to a sidecar metadata file.
struct CampaignConfig {
  std::string seeds_path;      // empty: builtin corpus
  std::string templates_path;  // empty: builtin corpus
  unsigned admission_width = 4;
  unsigned confirm_width = 5;
  uint64_t oracle_limit = 1ull << 24;
  SearchBudget budget;
  std::vector<std::string> anomalies;  // default: full implemented catalog
  std::vector<std::string> methods = {"tiup", "sqed"};
  std::string out_dir = "campaign_out";
  int jobs = 1;
  uint64_t max_instances = 10000;
};

// key = value lines, '#' comments. Keys: seeds, templates, width,
// confirm_width, grid_lo, grid_hi, samples, seed, anomalies (comma list or
// "all"), methods, out, jobs, max_instances, oracle_limit.
CampaignConfig parse_config_text(const std::string& text, const std::string& origin);
CampaignConfig load_config(const std::string& path);

// The verified corpus: admitted seeds plus every synthesized instance, with
// compile-pressure casualties reported rather than silently dropped.
struct PreparedCorpus {
  SeedLibrary seed_library;
  TemplateLibrary template_library;
  std::vector<InstantiatedTautology> instances;
  std::vector<InstrSequence> compiled;  // seeds first, then instances
  std::vector<std::pair<std::string, std::string>> compile_failures;  // name, error
  std::vector<EddivProgram> eddiv_programs;
  std::vector<std::string> eddiv_skipped;
  uint64_t instance_count = 0;
};

// Loads corpora, admits seeds at admission and confirm widths (throws
// ConfigError with the counterexample when a seed fails), synthesizes, and
// compiles. Bare seeds are part of the verified set: template instances are
// insensitive to uniform seed-value corruption, the seeds themselves are
// not.
PreparedCorpus prepare_corpus(const CampaignConfig& config);

struct CampaignResult {
  CampaignConfig config;
  DetectionMatrix matrix;           // anomaly rows
  MatrixRow golden;                 // reference row, expected all-pass
  PreparedCorpus corpus_stats;      // counts only by the time we return
  uint64_t seed_count = 0;
  uint64_t tautology_count = 0;
  uint64_t eddiv_count = 0;
};

CampaignResult run_campaign(const CampaignConfig& config);

std::string render_matrix_markdown(const CampaignResult& result);
std::string render_report_json(const CampaignResult& result);  // byte-deterministic

const std::vector<std::string>& implemented_anomalies();

}  // namespace tiup
