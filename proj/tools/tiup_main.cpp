// tiup: synthesize machine-valid tautologies, compile them to RV32I, execute
// them on a configurable pipelined ISS, and check Finish_Reg -> Result_Reg
// against a self-consistency baseline.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tiup/campaign.hpp"

namespace fs = std::filesystem;
using namespace tiup;

namespace {

int exit_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

Assignment parse_inputs(const std::string& text) {
  Assignment sigma;
  if (text.empty()) return sigma;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad input assignment: " + item);
    std::string key = item.substr(0, eq);
    int64_t value = std::stoll(item.substr(eq + 1), nullptr, 0);
    sigma[key] = static_cast<uint32_t>(value);
  }
  return sigma;
}

int cmd_synth(const std::string& seeds_path, const std::string& templates_path,
              unsigned width, unsigned confirm_width, const std::string& out_path,
              uint64_t max_instances) {
  SeedLibrary seeds = seeds_path.empty() ? builtin_seeds() : load_seed_library(seeds_path);
  TemplateLibrary templates =
      templates_path.empty() ? builtin_templates() : load_template_library(templates_path);

  for (unsigned w : {width, confirm_width}) {
    AdmissionReport report = admit_seeds(seeds, w);
    for (const auto& r : report.rejected) {
      std::cerr << "seed '" << r.name << "' rejected at width " << w;
      if (r.verdict.counterexample)
        std::cerr << ": counterexample " << format_assignment(*r.verdict.counterexample, w);
      std::cerr << "\n";
    }
    if (!report.rejected.empty()) return 2;
  }

  uint64_t expected = count_instances(templates, seeds.seeds.size());
  std::vector<InstantiatedTautology> instances = synthesize(templates, seeds.seeds, max_instances);
  std::cout << "templates: " << templates.templates.size() << "  seeds: " << seeds.seeds.size()
            << "  instances: " << instances.size() << " (sum over templates of |E|^n = "
            << expected << ")\n";

  std::ostringstream body;
  body << "# synthesized tautology instances\n";
  for (const auto& inst : instances)
    body << inst.name << " : " << print_formula(inst.formula) << "\n";
  if (!out_path.empty()) {
    write_file(out_path, body.str());
    std::cout << "wrote " << out_path << "\n";
  } else {
    std::cout << body.str();
  }
  return 0;
}

int cmd_oracle(const std::string& formula_text, const std::string& corpus_path, unsigned width,
               uint64_t limit) {
  std::vector<std::pair<std::string, Formula>> targets;
  if (!formula_text.empty()) {
    targets.emplace_back("<formula>", parse_formula(formula_text));
  } else if (!corpus_path.empty()) {
    for (const auto& seed : load_seed_library(corpus_path).seeds)
      targets.emplace_back(seed.name, seed.formula);
  } else {
    for (const auto& seed : builtin_seeds().seeds) targets.emplace_back(seed.name, seed.formula);
  }

  bool falsified = false;
  for (const auto& [name, f] : targets) {
    OracleVerdict v = check_tautology(f, width, limit);
    if (v.valid) {
      std::cout << name << ": valid at width " << width << " (" << v.assignments_checked
                << " assignments)\n";
    } else {
      falsified = true;
      std::cout << name << ": falsified at width " << width << " by "
                << format_assignment(*v.counterexample, width) << "\n";
    }
  }
  return falsified ? 1 : 0;
}

int cmd_compile(const std::string& corpus_path, const std::string& formula_text,
                const std::string& out_dir) {
  std::vector<std::pair<std::string, Formula>> targets;
  if (!formula_text.empty()) targets.emplace_back("formula", parse_formula(formula_text));
  if (!corpus_path.empty())
    for (const auto& seed : load_seed_library(corpus_path).seeds)
      targets.emplace_back(seed.name, seed.formula);

  fs::create_directories(out_dir);
  for (const auto& [name, f] : targets) {
    IrProgram ir = lower_to_ir(f, name);
    InstrSequence seq = emit_rv32i(ir);
    seq.source_text = print_formula(f);
    write_file(fs::path(out_dir) / (name + ".ir"), print_ir(ir));
    write_file(fs::path(out_dir) / (name + ".s"), format_assembly(seq));
    write_binary((fs::path(out_dir) / (name + ".bin")).string(), seq.words);
    std::cout << name << ": " << seq.words.size() << " instructions -> " << out_dir << "/"
              << name << ".{ir,s,bin}\n";
  }
  return 0;
}

int cmd_run(const std::string& binary_path, const std::string& formula_text,
            const std::string& inputs, const std::string& anomaly_name,
            const std::string& trace_path, uint64_t cycle_cap, int target_delta) {
  AnomalySpec anomaly = inject(anomaly_name);
  anomaly.target_delta = target_delta;
  RunOptions opts;
  opts.record_trace = true;
  opts.cycle_cap = cycle_cap;

  RunResult r;
  if (!formula_text.empty()) {
    InstrSequence seq = compile_tautology(parse_formula(formula_text), "formula");
    r = run_to_finish(seq, parse_inputs(inputs), anomaly, opts);
  } else if (!binary_path.empty()) {
    // inputs name architectural registers directly: "x1=3,x2=-1"
    for (const auto& [key, value] : parse_inputs(inputs)) {
      if (key.size() < 2 || key[0] != 'x')
        throw std::runtime_error("binary runs take register inputs like x1=3");
      opts.init_regs[static_cast<uint8_t>(std::stoi(key.substr(1)))] = value;
    }
    r = run_queue(read_binary(binary_path), anomaly, opts);
  } else {
    return exit_error("run needs --binary or --formula");
  }

  if (!trace_path.empty()) {
    write_file(trace_path, format_trace(r.full_trace));
    std::cout << "trace: " << trace_path << "\n";
  }
  if (r.hang) {
    std::cout << "HANG: cycle cap " << r.cycles << " reached, Finish_Reg=" << r.finish_value
              << "\n";
    return 1;
  }
  std::cout << "Result_Reg=" << r.result_value << " Finish_Reg=" << r.finish_value
            << " retired=" << r.retired << " cycles=" << r.cycles << "\n";
  return r.result_value == 1 ? 0 : 1;
}

int cmd_campaign(CampaignConfig cfg) {
  auto t0 = std::chrono::steady_clock::now();
  CampaignResult result = run_campaign(cfg);
  auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();

  fs::create_directories(cfg.out_dir);
  fs::create_directories(fs::path(cfg.out_dir) / "traces");
  write_file(fs::path(cfg.out_dir) / "report.md", render_matrix_markdown(result));
  write_file(fs::path(cfg.out_dir) / "report.json", render_report_json(result));

  // wall time and timestamp live here so report.json stays byte-deterministic
  nlohmann::json meta;
  meta["wall_ms"] = wall_ms;
  meta["unix_time"] = static_cast<int64_t>(std::time(nullptr));
  write_file(fs::path(cfg.out_dir) / "meta.json", meta.dump(2) + "\n");

  // replay the TIUP witnesses into trace files
  PreparedCorpus corpus = prepare_corpus(cfg);
  for (const auto& row : result.matrix.rows) {
    if (!row.tiup.detected || !row.tiup.witness_sigma) continue;
    for (const auto& seq : corpus.compiled) {
      if (seq.name != row.tiup.witness) continue;
      Counterexample cex{*row.tiup.witness_sigma, row.tiup.witness, row.tiup.retired,
                         row.tiup.outcome == "hang"};
      RunResult rr;
      replay_counterexample(seq, cex, inject(row.anomaly), &rr);
      write_file(fs::path(cfg.out_dir) / "traces" / (row.anomaly + "_tiup.trace"),
                 format_trace(rr.state.committed));
      break;
    }
  }

  std::cout << render_matrix_markdown(result);
  std::cout << "\nreports: " << cfg.out_dir << "/report.{md,json}\n";

  bool any = result.golden.tiup.detected || result.golden.sqed.detected;
  for (const auto& row : result.matrix.rows) any = any || row.tiup.detected || row.sqed.detected;
  return any ? 1 : 0;
}

int cmd_list_anomalies() {
  for (const auto& info : anomaly_catalog())
    std::cout << info.name << "  [" << info.category << ", " << info.stage << "]  "
              << info.synopsis << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tautology-driven processor verification sandbox"};
  app.require_subcommand(1);

  auto* synth = app.add_subcommand("synth", "instantiate templates with admitted seeds");
  std::string seeds_path, templates_path, out_path;
  unsigned width = 4, confirm_width = 5;
  uint64_t max_instances = 10000;
  synth->add_option("--seeds", seeds_path, "seed corpus file (default: builtin)");
  synth->add_option("--templates", templates_path, "template corpus file (default: builtin)");
  synth->add_option("--width", width, "admission width");
  synth->add_option("--confirm-width", confirm_width, "confirmation width");
  synth->add_option("--out", out_path, "output corpus file");
  synth->add_option("--max-instances", max_instances, "instantiation cap");

  auto* oracle = app.add_subcommand("oracle", "exhaustive tautology check at a small width");
  std::string oracle_formula, oracle_corpus;
  unsigned oracle_width = 4;
  uint64_t oracle_limit = 1ull << 24;
  oracle->add_option("--formula", oracle_formula, "formula text");
  oracle->add_option("--corpus", oracle_corpus, "seed corpus file");
  oracle->add_option("--width", oracle_width, "bit width");
  oracle->add_option("--limit", oracle_limit, "assignment budget");

  auto* compile = app.add_subcommand("compile", "lower tautologies to IR, assembly and binary");
  std::string compile_corpus, compile_formula, compile_out = "compiled";
  compile->add_option("--corpus", compile_corpus, "tautology corpus file");
  compile->add_option("--formula", compile_formula, "single formula text");
  compile->add_option("--out-dir", compile_out, "artifact directory");

  auto* run = app.add_subcommand("run", "execute one program on the simulator");
  std::string run_binary, run_formula, run_inputs, run_anomaly = "golden", run_trace;
  uint64_t run_cap = 0;
  int run_delta = 1;
  run->add_option("--binary", run_binary, "little-endian instruction words");
  run->add_option("--formula", run_formula, "compile and run this formula");
  run->add_option("--inputs", run_inputs, "x=3,y=-1 (vars) or x1=3 (registers)");
  run->add_option("--anomaly", run_anomaly, "anomaly id or 'golden'");
  run->add_option("--trace", run_trace, "write the committed trace here");
  run->add_option("--cycle-cap", run_cap, "override the cycle cap");
  run->add_option("--target-delta", run_delta, "a10 target corruption, in slots");

  auto* campaign = app.add_subcommand("campaign", "full detection-matrix campaign");
  std::string config_path, c_seeds, c_templates, c_out, c_anomalies, c_methods;
  int c_jobs = 0, c_samples = -1;
  int64_t c_seed = -1;
  campaign->add_option("--config", config_path, "key = value config file");
  campaign->add_option("--seeds", c_seeds, "seed corpus override");
  campaign->add_option("--templates", c_templates, "template corpus override");
  campaign->add_option("--out", c_out, "output directory override");
  campaign->add_option("--anomalies", c_anomalies, "comma list or 'all'");
  campaign->add_option("--methods", c_methods, "tiup,sqed");
  campaign->add_option("--jobs", c_jobs, "parallel verification jobs");
  campaign->add_option("--samples", c_samples, "random assignments per tautology");
  campaign->add_option("--seed", c_seed, "search PRNG seed");

  auto* list = app.add_subcommand("list-anomalies", "print the anomaly catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed())
      return cmd_synth(seeds_path, templates_path, width, confirm_width, out_path, max_instances);
    if (oracle->parsed())
      return cmd_oracle(oracle_formula, oracle_corpus, oracle_width, oracle_limit);
    if (compile->parsed()) return cmd_compile(compile_corpus, compile_formula, compile_out);
    if (run->parsed())
      return cmd_run(run_binary, run_formula, run_inputs, run_anomaly, run_trace, run_cap,
                     run_delta);
    if (campaign->parsed()) {
      CampaignConfig cfg = config_path.empty() ? CampaignConfig{} : load_config(config_path);
      if (!c_seeds.empty()) cfg.seeds_path = c_seeds;
      if (!c_templates.empty()) cfg.templates_path = c_templates;
      if (!c_out.empty()) cfg.out_dir = c_out;
      if (!c_anomalies.empty()) {
        if (c_anomalies == "all") {
          cfg.anomalies = implemented_anomalies();
        } else {
          cfg.anomalies.clear();
          std::istringstream in(c_anomalies);
          std::string item;
          while (std::getline(in, item, ',')) cfg.anomalies.push_back(item);
        }
      }
      if (!c_methods.empty()) {
        cfg.methods.clear();
        std::istringstream in(c_methods);
        std::string item;
        while (std::getline(in, item, ',')) cfg.methods.push_back(item);
      }
      if (c_jobs > 0) cfg.jobs = c_jobs;
      if (c_samples >= 0) cfg.budget.random_samples = c_samples;
      if (c_seed >= 0) cfg.budget.seed = static_cast<uint64_t>(c_seed);
      return cmd_campaign(std::move(cfg));
    }
    if (list->parsed()) return cmd_list_anomalies();
  } catch (const std::exception& e) {
    return exit_error(e.what());
  }
  return 2;
}
