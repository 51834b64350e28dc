#include "cscp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "cscp/errors.hpp"
#include "cscp/ingest.hpp"
#include "cscp/io.hpp"
#include "cscp/mining.hpp"
#include "cscp/report.hpp"
#include "cscp/strata.hpp"

namespace cscp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GenOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

struct MiningOptions {
  std::string input;
  std::string minsup;
  std::size_t maxpass = 2;
  std::string min_conf = "0";
  std::string out_dir;
  unsigned threads = 1;
};

struct StratifyOptions {
  MiningOptions mining;
  std::string demographics;
  std::string by;
  std::string age_bands;
  std::string target;
};

json catalog_json(const GeneratorConfig& c) {
  json catalog = json::array();
  for (const auto& e : c.catalog) catalog.push_back({{"name", e.name.str()}, {"prevalence", e.prevalence}});
  json boosts = json::array();
  for (const auto& b : c.boosts) {
    boosts.push_back({{"given", b.given.str()}, {"target", b.target.str()}, {"multiplier", b.multiplier}});
  }
  return {{"patient_count", c.patient_count},
          {"seed", c.seed},
          {"catalog", catalog},
          {"boosts", boosts},
          {"age", {{"min", c.age_min}, {"max", c.age_max}}},
          {"sex", {{"female", c.p_female}, {"male", c.p_male}, {"other", c.p_other}}}};
}

void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> known, std::string_view where) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

MiningConfig mining_config(const MiningOptions& opts) {
  MiningConfig config;
  config.maxpass = opts.maxpass;
  config.minsup = parse_minsup(opts.minsup);
  try {
    config.min_conf = Ratio::parse_decimal(opts.min_conf);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("min-conf: ") + e.what());
  }
  config.validate();
  return config;
}

json mining_config_json(const MiningConfig& config, unsigned threads) {
  return {{"minsup", to_string(config.minsup)},
          {"minsup_kind", std::holds_alternative<AbsoluteSupport>(config.minsup) ? "absolute" : "relative"},
          {"maxpass", config.maxpass},
          {"min_conf", std::to_string(config.min_conf.num()) + "/" + std::to_string(config.min_conf.den())},
          {"threads", threads}};
}

class Manifest {
 public:
  Manifest(std::string command, const std::vector<std::string>& args) : doc_(json::object()) {
    doc_["tool"] = "cscp";
    doc_["version"] = kToolVersion;
    doc_["command"] = std::move(command);
    doc_["command_line"] = args;
    doc_["timestamp"] = io::utc_timestamp();
    doc_["inputs"] = json::array();
    doc_["outputs"] = json::array();
  }

  json& operator[](const char* key) { return doc_[key]; }

  void add_input(const std::string& path, std::string_view bytes) {
    doc_["inputs"].push_back({{"path", path}, {"sha256", io::sha256_hex(bytes)}});
  }

  // Writes a data file atomically and records it.
  void emit(const fs::path& dir, const std::string& name, const std::string& contents) {
    io::write_file_atomic(dir / name, contents);
    doc_["outputs"].push_back({{"file", name}, {"sha256", io::sha256_hex(contents)}});
  }

  void write(const fs::path& dir) const { io::write_file_atomic(dir / "manifest.json", doc_.dump(2) + "\n"); }

 private:
  json doc_;
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

void report_malformed(std::ostream& err, std::string_view file, const std::vector<MalformedRow>& rows) {
  for (const auto& row : rows) err << "warning: " << file << ":" << row.line << ": " << row.reason << "\n";
}

ParsedTransactions load_transactions(const std::string& path, Manifest& manifest, std::ostream& err) {
  const std::string bytes = io::read_file(path);
  manifest.add_input(path, bytes);
  std::istringstream in(bytes);
  auto parsed = parse_transactions(in);
  report_malformed(err, path, parsed.report.malformed_rows);
  if (parsed.report.duplicate_rows_dropped > 0) {
    err << "note: " << path << ": " << parsed.report.duplicate_rows_dropped << " duplicate rows dropped\n";
  }
  return parsed;
}

json ingest_json(const IngestReport& r) {
  return {{"rows_read", r.rows_read},
          {"duplicate_rows_dropped", r.duplicate_rows_dropped},
          {"malformed_rows", r.malformed_rows.size()},
          {"patients", r.patients},
          {"distinct_diseases", r.distinct_diseases}};
}

int cmd_gen(const GenOptions& opts, const std::vector<std::string>& args, std::ostream& err) {
  GeneratorConfig config;
  Manifest manifest("gen", args);
  if (!opts.config_path.empty()) {
    const std::string text = io::read_file(opts.config_path);
    manifest.add_input(opts.config_path, text);
    config = parse_generator_config(text);
  }
  if (opts.seed) config.seed = *opts.seed;
  config.validate();

  const auto data = generate(config);
  const fs::path dir(opts.out_dir);
  ensure_dir(dir);

  std::ostringstream transactions;
  write_transactions(transactions, data.table);
  std::ostringstream demographics;
  write_demographics(demographics, data.demographics);

  manifest["seed"] = config.seed;
  manifest["config"] = catalog_json(config);
  manifest.emit(dir, "transactions.csv", transactions.str());
  manifest.emit(dir, "demographics.csv", demographics.str());
  manifest.write(dir);
  err << "generated " << data.table.total_patients() << " patients into " << dir.string() << "\n";
  return kOk;
}

int cmd_mine(const MiningOptions& opts, const std::vector<std::string>& args, std::ostream& err) {
  const MiningConfig config = mining_config(opts);
  Manifest manifest("mine", args);
  const auto parsed = load_transactions(opts.input, manifest, err);

  const auto frequent = mine_frequent(parsed.table, config, opts.threads);
  const auto rules = derive_rules(frequent, parsed.table, config.min_conf);

  const fs::path dir(opts.out_dir);
  ensure_dir(dir);
  std::ostringstream itemsets_csv;
  report::write_itemsets(itemsets_csv, frequent);
  std::ostringstream rules_csv;
  report::write_rules(rules_csv, rules);

  manifest["config"] = mining_config_json(config, opts.threads);
  manifest["config"]["resolved_minsup"] = resolve_minsup(config.minsup, parsed.table.total_patients());
  manifest["ingest"] = ingest_json(parsed.report);
  manifest.emit(dir, "itemsets.csv", itemsets_csv.str());
  manifest.emit(dir, "rules.csv", rules_csv.str());
  manifest.write(dir);
  err << "mined " << frequent.size() << " frequent itemsets and " << rules.rules.size() << " rules from "
      << parsed.table.total_patients() << " patients\n";
  return kOk;
}

int cmd_stratify(const StratifyOptions& opts, const std::vector<std::string>& args, std::ostream& err) {
  const MiningConfig config = mining_config(opts.mining);

  StratumSpec spec;
  if (opts.by == "age") {
    spec = StratumSpec::by_age(opts.age_bands.empty() ? default_age_bands() : parse_age_bands(opts.age_bands));
  } else if (opts.by == "sex") {
    if (!opts.age_bands.empty()) throw ConfigError("--age-bands only applies to --by age");
    spec = StratumSpec::by_sex();
  } else {
    throw ConfigError("--by must be age or sex");
  }

  std::optional<std::vector<ItemSet>> targets;
  if (!opts.target.empty()) {
    std::vector<DiseaseName> names;
    std::string_view rest = opts.target;
    while (true) {
      const auto comma = rest.find(',');
      names.emplace_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    targets = std::vector<ItemSet>{canonicalize_itemset(std::move(names))};
  }

  Manifest manifest("stratify", args);
  const auto parsed = load_transactions(opts.mining.input, manifest, err);
  const std::string demo_bytes = io::read_file(opts.demographics);
  manifest.add_input(opts.demographics, demo_bytes);
  std::istringstream demo_in(demo_bytes);
  const auto demo = parse_demographics(demo_in);
  report_malformed(err, opts.demographics, demo.report.malformed_rows);

  const auto strata = stratify(demo.demographics, patient_ids(parsed.table), spec);
  const auto report = mine_strata(parsed.table, strata, spec, config, targets, opts.mining.threads);
  if (report.metric_row_count() == 0) {
    err << "warning: no stratum produced a rule"
        << (targets ? " for target " + targets->front().join() + "; it is not frequent in any stratum" : "") << "\n";
  }

  const fs::path dir(opts.mining.out_dir);
  ensure_dir(dir);
  std::ostringstream csv_out;
  report::write_stratified(csv_out, report);

  json strata_json = json::array();
  for (const auto& s : strata) strata_json.push_back({{"label", s.label}, {"patients", s.patients.size()}});
  manifest["config"] = mining_config_json(config, opts.mining.threads);
  manifest["config"]["by"] = opts.by;
  if (targets) manifest["config"]["target"] = targets->front().join();
  manifest["strata"] = strata_json;
  manifest["omitted_rows"] = report.omitted_rows;
  manifest["ingest"] = ingest_json(parsed.report);
  manifest["demographics"] = {{"rows_read", demo.report.rows_read},
                              {"overridden_rows", demo.report.overridden_rows},
                              {"malformed_rows", demo.report.malformed_rows.size()}};
  manifest.emit(dir, "stratified.csv", csv_out.str());
  manifest.write(dir);
  err << "wrote " << report.rows.size() << " rows over " << strata.size() << " strata\n";
  return kOk;
}

void add_mining_flags(CLI::App* sub, MiningOptions& opts, bool require_maxpass) {
  sub->add_option("--input", opts.input, "Transaction CSV (patient_id,disease)")->required();
  sub->add_option("--minsup", opts.minsup, "Minimum support: integer count or fraction with a decimal point")
      ->required();
  auto* maxpass = sub->add_option("--maxpass", opts.maxpass, "Largest itemset size to mine")->capture_default_str();
  if (require_maxpass) maxpass->required();
  sub->add_option("--min-conf", opts.min_conf, "Minimum confidence fraction in [0, 1]")->capture_default_str();
  sub->add_option("--out", opts.out_dir, "Output directory")->required();
  sub->add_option("--threads", opts.threads, "Worker threads for support counting / strata")
      ->capture_default_str()
      ->check(CLI::Range(1U, 256U));
}

}  // namespace

GeneratorConfig parse_generator_config(std::string_view json_text) {
  GeneratorConfig config;
  try {
    const json doc = json::parse(json_text);
    if (!doc.is_object()) throw ConfigError("generator config must be a JSON object");
    reject_unknown_keys(doc, {"patient_count", "seed", "catalog", "boosts", "age", "sex"}, "generator config");

    if (doc.contains("patient_count")) {
      const auto& n = doc.at("patient_count");
      if (!n.is_number_integer() || n.get<std::int64_t>() < 0) {
        throw ConfigError("patient_count must be a non-negative integer");
      }
      config.patient_count = n.get<std::uint64_t>();
    }
    if (doc.contains("seed")) {
      const auto& s = doc.at("seed");
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
        throw ConfigError("seed must be an unsigned 64-bit integer");
      }
      config.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("catalog")) {
      config.catalog.clear();
      for (const auto& entry : doc.at("catalog")) {
        reject_unknown_keys(entry, {"name", "prevalence"}, "catalog entry");
        config.catalog.push_back({DiseaseName(entry.at("name").get<std::string>()), entry.at("prevalence").get<double>()});
      }
    }
    if (doc.contains("boosts")) {
      for (const auto& entry : doc.at("boosts")) {
        reject_unknown_keys(entry, {"given", "target", "multiplier"}, "boost");
        config.boosts.push_back({DiseaseName(entry.at("given").get<std::string>()),
                                 DiseaseName(entry.at("target").get<std::string>()),
                                 entry.at("multiplier").get<double>()});
      }
    }
    if (doc.contains("age")) {
      const auto& age = doc.at("age");
      reject_unknown_keys(age, {"min", "max"}, "age");
      if (age.contains("min")) config.age_min = age.at("min").get<int>();
      if (age.contains("max")) config.age_max = age.at("max").get<int>();
    }
    if (doc.contains("sex")) {
      const auto& sex = doc.at("sex");
      reject_unknown_keys(sex, {"female", "male", "other"}, "sex");
      config.p_female = sex.value("female", 0.0);
      config.p_male = sex.value("male", 0.0);
      config.p_other = sex.value("other", 0.0);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("generator config: ") + e.what());
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("generator config: ") + e.what());
  }
  config.validate();
  return config;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mines disease co-occurrence rules from patient transaction data", "cscp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic patient/disease dataset");
  gen_cmd->add_option("--config", gen.config_path, "Generator config JSON (defaults when omitted)");
  gen_cmd->add_option("--out", gen.out_dir, "Output directory")->required();
  gen_cmd->add_option("--seed", gen.seed, "Seed override");

  MiningOptions mine;
  auto* mine_cmd = app.add_subcommand("mine", "Mine frequent itemsets and association rules");
  add_mining_flags(mine_cmd, mine, false);

  StratifyOptions strat;
  auto* strat_cmd = app.add_subcommand("stratify", "Mine per age band or sex");
  add_mining_flags(strat_cmd, strat.mining, false);
  strat_cmd->add_option("--demographics", strat.demographics, "Demographics CSV (patient_id,age,sex)")->required();
  strat_cmd->add_option("--by", strat.by, "Stratify by age or sex")->required();
  strat_cmd->add_option("--age-bands", strat.age_bands, "Half-open bands lo:hi,... covering 0:150");
  strat_cmd->add_option("--target", strat.target, "Comma-separated target itemset");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, args, err);
    if (mine_cmd->parsed()) return cmd_mine(mine, args, err);
    return cmd_stratify(strat, args, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace cscp::cli
