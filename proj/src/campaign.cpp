#include "tiup/campaign.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tiup {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int64_t parse_int(const std::string& value, const std::string& key, const std::string& origin) {
  try {
    size_t pos = 0;
    int64_t v = std::stoll(value, &pos, 0);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(origin + ": bad integer for '" + key + "': " + value);
  }
}

std::pair<bool, bool> methods_enabled(const CampaignConfig& config) {
  bool tiup = false, sqed = false;
  for (std::string m : config.methods) {
    if (m.size() > 5 && m.substr(m.size() - 5) == "-only") m = m.substr(0, m.size() - 5);
    if (m == "tiup") tiup = true;
    else if (m == "sqed") sqed = true;
    else throw ConfigError("unknown method '" + m + "'");
  }
  return {tiup, sqed};
}

}  // namespace

const std::vector<std::string>& implemented_anomalies() {
  static const std::vector<std::string> ids = {"a03", "a04", "a05", "a06", "a10", "a11",
                                               "a12", "a13", "a14", "a15", "a16", "a17",
                                               "a18"};
  return ids;
}

CampaignConfig parse_config_text(const std::string& text, const std::string& origin) {
  CampaignConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!value.empty() && value.front() == '"' && value.back() == '"' && value.size() >= 2)
      value = value.substr(1, value.size() - 2);

    if (key == "seeds") cfg.seeds_path = value;
    else if (key == "templates") cfg.templates_path = value;
    else if (key == "width") cfg.admission_width = static_cast<unsigned>(parse_int(value, key, origin));
    else if (key == "confirm_width") cfg.confirm_width = static_cast<unsigned>(parse_int(value, key, origin));
    else if (key == "oracle_limit") cfg.oracle_limit = static_cast<uint64_t>(parse_int(value, key, origin));
    else if (key == "grid_lo") cfg.budget.grid_lo = static_cast<int32_t>(parse_int(value, key, origin));
    else if (key == "grid_hi") cfg.budget.grid_hi = static_cast<int32_t>(parse_int(value, key, origin));
    else if (key == "samples") cfg.budget.random_samples = static_cast<int>(parse_int(value, key, origin));
    else if (key == "seed") cfg.budget.seed = static_cast<uint64_t>(parse_int(value, key, origin));
    else if (key == "anomalies") cfg.anomalies = (value == "all") ? implemented_anomalies() : split_list(value);
    else if (key == "methods") cfg.methods = split_list(value);
    else if (key == "out") cfg.out_dir = value;
    else if (key == "jobs") cfg.jobs = static_cast<int>(parse_int(value, key, origin));
    else if (key == "max_instances") cfg.max_instances = static_cast<uint64_t>(parse_int(value, key, origin));
    else throw ConfigError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

PreparedCorpus prepare_corpus(const CampaignConfig& config) {
  PreparedCorpus out;
  out.seed_library = config.seeds_path.empty() ? builtin_seeds()
                                               : load_seed_library(config.seeds_path);
  out.template_library = config.templates_path.empty()
                             ? builtin_templates()
                             : load_template_library(config.templates_path);

  for (unsigned width : {config.admission_width, config.confirm_width}) {
    AdmissionReport report = admit_seeds(out.seed_library, width, config.oracle_limit);
    if (!report.rejected.empty()) {
      const auto& r = report.rejected.front();
      std::string cex = r.verdict.counterexample
                            ? format_assignment(*r.verdict.counterexample, width)
                            : "";
      throw ConfigError("seed '" + r.name + "' rejected by the oracle at width " +
                        std::to_string(width) + " with counterexample: " + cex);
    }
  }

  out.instances = synthesize(out.template_library, out.seed_library.seeds, config.max_instances);
  out.instance_count = out.instances.size();

  auto try_compile = [&](const Formula& f, const std::string& name) {
    try {
      out.compiled.push_back(compile_tautology(f, name));
    } catch (const CompileError& e) {
      out.compile_failures.emplace_back(name, e.what());
    }
  };
  for (const auto& seed : out.seed_library.seeds) try_compile(seed.formula, seed.name);
  for (const auto& inst : out.instances) try_compile(inst.formula, inst.name);

  for (const auto& seq : out.compiled) {
    if (eddiv_eligible(seq))
      out.eddiv_programs.push_back(build_eddiv(seq));
    else
      out.eddiv_skipped.push_back(seq.name);
  }
  return out;
}

CampaignResult run_campaign(const CampaignConfig& config) {
  CampaignResult result;
  result.config = config;

  PreparedCorpus corpus = prepare_corpus(config);
  result.seed_count = corpus.seed_library.seeds.size();
  result.tautology_count = corpus.compiled.size();
  result.eddiv_count = corpus.eddiv_programs.size();

  auto [run_tiup, run_sqed] = methods_enabled(config);
  std::vector<InstrSequence> tiup_set = run_tiup ? corpus.compiled : std::vector<InstrSequence>{};
  std::vector<EddivProgram> sqed_set = run_sqed ? corpus.eddiv_programs : std::vector<EddivProgram>{};

  std::vector<std::string> anomalies =
      config.anomalies.empty() ? implemented_anomalies() : config.anomalies;

  DetectionMatrix golden =
      detection_matrix({"golden"}, tiup_set, sqed_set, config.budget, config.jobs);
  result.golden = golden.rows.front();
  result.matrix = detection_matrix(anomalies, tiup_set, sqed_set, config.budget, config.jobs);

  result.corpus_stats = std::move(corpus);
  return result;
}

namespace {

std::string cell_text(const MethodCell& c) {
  if (!c.detected) return "missed";
  return "detected (" + c.outcome + ")";
}

}  // namespace

std::string render_matrix_markdown(const CampaignResult& result) {
  auto [tiup_on, sqed_on] = methods_enabled(result.config);
  std::ostringstream out;
  out << "# Anomaly detection campaign\n\n";
  out << "Tautologies: " << result.tautology_count << " (" << result.seed_count
      << " seeds + " << result.corpus_stats.instance_count << " instances, "
      << result.corpus_stats.compile_failures.size() << " over register budget)\n";
  out << "Self-consistency programs: " << result.eddiv_count << "\n\n";
  out << "| No. | Synopsis | Category |";
  if (tiup_on) out << " TIUP |";
  if (sqed_on) out << " SQED |";
  out << "\n|-----|----------|----------|";
  if (tiup_on) out << "------|";
  if (sqed_on) out << "------|";
  out << "\n";
  for (const auto& row : result.matrix.rows) {
    out << "| " << row.anomaly << " | " << row.synopsis << " | " << row.category << " |";
    if (tiup_on) out << " " << cell_text(row.tiup) << " |";
    if (sqed_on) out << " " << cell_text(row.sqed) << " |";
    out << "\n";
  }
  out << "| golden | " << result.golden.synopsis << " | - |";
  if (tiup_on) out << (result.golden.tiup.detected ? " VIOLATION |" : " clean |");
  if (sqed_on) out << (result.golden.sqed.detected ? " VIOLATION |" : " clean |");
  out << "\n";
  return out.str();
}

std::string render_report_json(const CampaignResult& result) {
  using nlohmann::json;
  json j;
  j["config"] = {
      {"admission_width", result.config.admission_width},
      {"confirm_width", result.config.confirm_width},
      {"grid_lo", result.config.budget.grid_lo},
      {"grid_hi", result.config.budget.grid_hi},
      {"samples", result.config.budget.random_samples},
      {"seed", result.config.budget.seed},
      {"methods", result.config.methods},
  };
  j["corpus"] = {
      {"seeds", result.seed_count},
      {"instances", result.corpus_stats.instance_count},
      {"compiled", result.tautology_count},
      {"over_register_budget", result.corpus_stats.compile_failures.size()},
      {"eddiv_programs", result.eddiv_count},
  };
  auto cell_json = [](const MethodCell& c, const std::string& trace_ref) {
    json cj;
    cj["detected"] = c.detected;
    cj["outcome"] = c.outcome;
    cj["assignments_tried"] = c.assignments_tried;
    if (c.violated_count || c.hang_count || c.pass_count) {
      cj["tautologies"] = {{"violated", c.violated_count},
                           {"hang", c.hang_count},
                           {"pass_within_budget", c.pass_count}};
    }
    if (c.detected) {
      cj["witness"] = c.witness;
      if (c.witness_sigma) {
        json sj = json::object();
        for (const auto& [k, v] : *c.witness_sigma)
          sj[k] = static_cast<int64_t>(static_cast<int32_t>(v));
        cj["sigma"] = sj;
      }
      if (c.retired) cj["retired"] = c.retired;
      if (!trace_ref.empty()) cj["trace"] = trace_ref;
    }
    return cj;
  };
  json rows = json::array();
  for (const auto& row : result.matrix.rows) {
    json rj;
    rj["anomaly"] = row.anomaly;
    rj["synopsis"] = row.synopsis;
    rj["category"] = row.category;
    rj["tiup"] = cell_json(row.tiup, "traces/" + row.anomaly + "_tiup.trace");
    rj["sqed"] = cell_json(row.sqed, "");
    rows.push_back(rj);
  }
  j["matrix"] = rows;
  j["golden"] = {
      {"tiup", cell_json(result.golden.tiup, "")},
      {"sqed", cell_json(result.golden.sqed, "")},
  };
  return j.dump(2) + "\n";
}

}  // namespace tiup
