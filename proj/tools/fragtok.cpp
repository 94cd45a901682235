//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: train, dict, tokenize, hash, dataset, stats and
// analogues.
//

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fragtok/analogue.h"
#include "fragtok/corpus.h"
#include "fragtok/dictionary.h"
#include "fragtok/sequence.h"
#include "fragtok/smiles.h"
#include "fragtok/stats.h"
#include "fragtok/tokenizer.h"

namespace {

using namespace fragtok;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;

class ConfigError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string input;
  std::vector<std::string> smiles;
  std::string merges;
  std::string dict;
  std::optional<int> t;
  int num_iter = 100;
  double d0 = kDefaultD0;
  ZMode z_mode = ZMode::kAtomicSum;
  std::uint64_t seed = 0;
  int workers = default_workers();
  std::string out;
  std::string format = "jsonl";
  double max_failure_rate = 0.1;
  int wl_iterations = kDefaultWLIterations;
  bool inference = false;
  std::string scaffold;
  std::size_t max_mappings = 10000;
};

// Writes to --out, or stdout when it is empty.
class Output {
public:
  explicit Output(const std::string &path) {
    if (path.empty())
      return;
    file_.open(path, std::ios::binary);
    if (!file_)
      throw ConfigError("cannot open " + path + " for writing");
  }

  std::ostream &stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

std::vector<SmilesRecord> load_records(const Config &cfg) {
  if (!cfg.smiles.empty()) {
    std::vector<SmilesRecord> out;
    for (std::size_t i = 0; i < cfg.smiles.size(); ++i)
      out.push_back({ i + 1, cfg.smiles[i], "arg_" + std::to_string(i + 1) });
    return out;
  }
  if (cfg.input.empty())
    throw ConfigError("--input or --smiles is required");
  try {
    return read_smiles_file(cfg.input);
  } catch (const Error &e) {
    throw ConfigError(e.what());
  }
}

MergeTable load_merges(const Config &cfg) {
  if (cfg.merges.empty())
    throw ConfigError("--merges is required");
  try {
    return MergeTable::load(cfg.merges);
  } catch (const std::exception &e) {
    throw ConfigError(cfg.merges + ": " + e.what());
  }
}

TokenDictionary load_dict(const Config &cfg) {
  try {
    return TokenDictionary::load(cfg.dict);
  } catch (const std::exception &e) {
    throw ConfigError(cfg.dict + ": " + e.what());
  }
}

int resolve_t(const Config &cfg, const MergeTable &table) {
  const int t = cfg.t.value_or(table.size());
  if (t < 0 || t > table.size())
    throw ConfigError(GranularityOutOfRange(t, table.size()).what());
  return t;
}

ParsedCorpus parse_logged(std::vector<SmilesRecord> records, int workers) {
  ParsedCorpus pc = parse_corpus(std::move(records), workers);
  for (std::size_t i = 0; i < pc.records.size(); ++i)
    if (!pc.mols[i])
      log_event("warning", "parse_failed",
                { { "line", pc.records[i].line },
                  { "id", pc.records[i].id },
                  { "error", pc.errors[i] } });
  return pc;
}

void check_dict(const TokenDictionary &dict, const MergeTable &table, int t) {
  if (dict.t() != t)
    throw ConfigError("dictionary was built at t=" + std::to_string(dict.t())
                      + ", not t=" + std::to_string(t));
  if (dict.merges_fingerprint() != merges_fingerprint(table, t))
    throw ConfigError("dictionary was built from a different merge table");
}

int cmd_train(const Config &cfg) {
  if (cfg.out.empty())
    throw ConfigError("--out is required");
  ParsedCorpus pc = parse_logged(load_records(cfg), cfg.workers);
  const double rate = pc.records.empty()
                          ? 0.0
                          : static_cast<double>(pc.failures) / pc.records.size();
  if (rate > cfg.max_failure_rate) {
    log_event("error", "parse_failure_rate",
              { { "failures", pc.failures },
                { "records", pc.records.size() },
                { "rate", rate },
                { "threshold", cfg.max_failure_rate } });
    return kExitPartial;
  }

  const std::vector<MolGraph> mols = parsed_molecules(pc);
  const auto start = std::chrono::steady_clock::now();
  MergeTable table =
      train(mols, cfg.num_iter, cfg.workers, [](const TrainStep &s) {
        log_event("info", "merge",
                  { { "iteration", s.iteration },
                    { "left", s.pair.low },
                    { "right", s.pair.high },
                    { "order", bond_order_name(s.pair.order) },
                    { "score", s.score },
                    { "count", s.count },
                    { "new_label", s.new_label } });
      });
  table.save(cfg.out);
  const std::chrono::duration<double> secs =
      std::chrono::steady_clock::now() - start;
  log_event("info", "train_done",
            { { "molecules", mols.size() },
              { "rules", table.size() },
              { "seconds", secs.count() },
              { "out", cfg.out } });
  return pc.failures > 0 ? kExitPartial : kExitOk;
}

int cmd_dict(const Config &cfg) {
  if (cfg.out.empty())
    throw ConfigError("--out is required");
  const MergeTable table = load_merges(cfg);
  const int t = resolve_t(cfg, table);
  ParsedCorpus pc = parse_logged(load_records(cfg), cfg.workers);
  const TokenDictionary dict =
      build_dictionary(parsed_molecules(pc), table, t, cfg.workers);
  dict.save(cfg.out);
  log_event("info", "dict_done",
            { { "t", t }, { "entries", dict.size() }, { "out", cfg.out } });
  return pc.failures > 0 ? kExitPartial : kExitOk;
}

int cmd_tokenize(const Config &cfg) {
  const MergeTable table = load_merges(cfg);
  const int t = resolve_t(cfg, table);
  std::optional<TokenDictionary> dict;
  if (!cfg.dict.empty()) {
    dict = load_dict(cfg);
    check_dict(*dict, table, t);
  }
  const ParsedCorpus pc = parse_logged(load_records(cfg), cfg.workers);
  Output out(cfg.out);
  std::ostream &os = out.stream();
  const bool csv = cfg.format == "csv";
  if (csv)
    os << "mol_id,fragments,digests" << (dict ? ",token_ids" : "") << '\n';

  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> lines(pc.records.size());
  parallel_for(pc.records.size(), cfg.workers, [&](std::size_t i) {
    if (!pc.mols[i])
      return;
    const Fragmentation fr =
        fragmentize(*pc.mols[i], apply_merges(*pc.mols[i], table, t));
    json digests = json::array(), smiles = json::array(), ids = json::array();
    std::string digest_col, id_col;
    for (const Fragment &f: fr.fragments) {
      digests.push_back(f.digest.hex());
      digest_col += (digest_col.empty() ? "" : " ") + f.digest.hex();
      if (dict) {
        const int id = dict->lookup(f.digest);
        ids.push_back(id);
        id_col += (id_col.empty() ? "" : " ") + std::to_string(id);
      }
      if (!csv)
        smiles.push_back(write_smiles(f.graph));
    }
    if (csv) {
      lines[i] = pc.records[i].id + "," + std::to_string(fr.fragments.size())
                 + "," + digest_col + (dict ? "," + id_col : "");
      return;
    }
    json j { { "mol_id", pc.records[i].id },
             { "t", t },
             { "fragments", std::move(smiles) },
             { "digests", std::move(digests) } };
    if (dict)
      j["token_ids"] = std::move(ids);
    lines[i] = j.dump();
  });
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (pc.mols[i])
      os << lines[i] << '\n';

  const std::chrono::duration<double> secs =
      std::chrono::steady_clock::now() - start;
  log_event("info", "tokenize_done",
            { { "molecules", pc.records.size() - pc.failures },
              { "failures", pc.failures },
              { "seconds", secs.count() } });
  return pc.failures > 0 ? kExitPartial : kExitOk;
}

int cmd_hash(const Config &cfg) {
  const ParsedCorpus pc = parse_logged(load_records(cfg), cfg.workers);
  Output out(cfg.out);
  std::ostream &os = out.stream();
  const bool csv = cfg.format == "csv";
  if (csv)
    os << "mol_id,digest\n";
  for (std::size_t i = 0; i < pc.records.size(); ++i) {
    if (!pc.mols[i])
      continue;
    const std::string hex = wl_hash(*pc.mols[i], cfg.wl_iterations).hex();
    if (csv)
      os << pc.records[i].id << ',' << hex << '\n';
    else
      os << json { { "mol_id", pc.records[i].id },
                   { "smiles", pc.records[i].smiles },
                   { "digest", hex } }.dump()
         << '\n';
  }
  return pc.failures > 0 ? kExitPartial : kExitOk;
}

int cmd_dataset(const Config &cfg) {
  const MergeTable table = load_merges(cfg);
  if (cfg.dict.empty())
    throw ConfigError("--dict is required");
  const TokenDictionary dict = load_dict(cfg);
  const int t = cfg.t.value_or(dict.t());
  if (t < 0 || t > table.size())
    throw ConfigError(GranularityOutOfRange(t, table.size()).what());
  check_dict(dict, table, t);

  const std::vector<SmilesRecord> records = load_records(cfg);
  DatasetOptions opts;
  opts.sequence.d0 = cfg.d0;
  opts.sequence.z_mode = cfg.z_mode;
  opts.rng_seed = cfg.seed;
  opts.workers = cfg.workers;
  opts.mfm = !cfg.inference;

  Output out(cfg.out);
  const DatasetSummary s = emit_dataset(records, table, t, dict, out.stream(), opts);
  json fields = s.to_json();
  fields["t"] = t;
  log_event("info", "dataset_done", fields);
  return s.failed > 0 ? kExitPartial : kExitOk;
}

int cmd_stats(const Config &cfg) {
  if (cfg.out.empty())
    throw ConfigError("--out is required (used as a file prefix)");
  const MergeTable table = load_merges(cfg);
  const int t = resolve_t(cfg, table);
  const ParsedCorpus pc = parse_logged(load_records(cfg), cfg.workers);
  const CorpusStats s = corpus_stats(parsed_molecules(pc), table, t, cfg.workers);

  const std::string frag_path = cfg.out + "_fragments_per_molecule.csv";
  const std::string atoms_path = cfg.out + "_atoms_per_token.csv";
  Output frag_out(frag_path), atoms_out(atoms_path);
  s.write_fragments_csv(frag_out.stream());
  s.write_atoms_csv(atoms_out.stream());
  log_event("info", "stats_done",
            { { "t", t },
              { "molecules", s.molecules },
              { "mean_fragments", s.mean_fragments() },
              { "distinct_tokens", s.distinct_tokens },
              { "fragments_csv", frag_path },
              { "atoms_csv", atoms_path } });
  return pc.failures > 0 ? kExitPartial : kExitOk;
}

int cmd_analogues(const Config &cfg) {
  if (cfg.scaffold.empty())
    throw ConfigError("--scaffold is required");
  MolGraph scaffold;
  try {
    scaffold = parse_smiles(cfg.scaffold);
  } catch (const Error &e) {
    throw ConfigError(std::string("scaffold: ") + e.what());
  }

  std::vector<SmilesRecord> records = load_records(cfg);
  std::vector<MolGraph> candidates;
  std::vector<std::size_t> source;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      candidates.push_back(parse_smiles(records[i].smiles));
      source.push_back(i);
    } catch (const Error &e) {
      ++failures;
      log_event("warning", "parse_failed",
                { { "line", records[i].line }, { "error", e.what() } });
    }
  }

  AnalogueOptions opts;
  opts.max_mappings = cfg.max_mappings;
  opts.workers = cfg.workers;
  AnalogueSet set;
  try {
    set = generate_analogues(scaffold, candidates, opts);
  } catch (const NoAttachmentPoints &e) {
    throw ConfigError(e.what());
  }

  Output out(cfg.out);
  std::ostream &os = out.stream();
  for (const Analogue &a: set.results) {
    json mapping = json::array();
    for (auto [s, c]: a.mapping)
      mapping.push_back({ s, c });
    os << json { { "candidate_index", source[a.candidate_index] },
                 { "mapping", std::move(mapping) },
                 { "smiles", a.smiles },
                 { "digest", a.digest.hex() } }.dump()
       << '\n';
  }
  json summary = set.summary();
  summary["candidates"] = records.size();
  summary["parse_failures"] = failures;
  os << json { { "summary", summary } }.dump() << '\n';
  return failures > 0 ? kExitPartial : kExitOk;
}

void add_input(CLI::App *sub, Config &cfg) {
  sub->add_option("--input,-i", cfg.input, "SMILES file, one molecule per line");
  sub->add_option("--smiles", cfg.smiles, "SMILES given on the command line");
}

void add_workers(CLI::App *sub, Config &cfg) {
  sub->add_option("--workers,-j", cfg.workers, "worker threads")
      ->check(CLI::PositiveNumber);
}

void add_t(CLI::App *sub, Config &cfg) {
  sub->add_option("--t", cfg.t, "granularity (merge-table prefix length)");
}

}  // namespace

int main(int argc, char **argv) {
  Config cfg;
  CLI::App app { "Fragment tokenizer for molecular graphs" };
  app.require_subcommand(1);

  auto *train_cmd = app.add_subcommand("train", "learn a merge table");
  add_input(train_cmd, cfg);
  add_workers(train_cmd, cfg);
  train_cmd->add_option("--num-iter", cfg.num_iter, "number of merges")
      ->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--out,-o", cfg.out, "merge table JSON");
  train_cmd->add_option("--max-failure-rate", cfg.max_failure_rate,
                        "abort when more input lines fail to parse")
      ->check(CLI::Range(0.0, 1.0));

  auto *dict_cmd = app.add_subcommand("dict", "build a token dictionary");
  add_input(dict_cmd, cfg);
  add_workers(dict_cmd, cfg);
  add_t(dict_cmd, cfg);
  dict_cmd->add_option("--merges,-m", cfg.merges, "merge table JSON");
  dict_cmd->add_option("--out,-o", cfg.out, "dictionary JSON");

  auto *tok_cmd = app.add_subcommand("tokenize", "fragment molecules");
  add_input(tok_cmd, cfg);
  add_workers(tok_cmd, cfg);
  add_t(tok_cmd, cfg);
  tok_cmd->add_option("--merges,-m", cfg.merges, "merge table JSON");
  tok_cmd->add_option("--dict,-d", cfg.dict, "dictionary JSON (optional)");
  tok_cmd->add_option("--out,-o", cfg.out, "output file (default stdout)");
  tok_cmd->add_option("--format", cfg.format)
      ->check(CLI::IsMember({ "jsonl", "csv" }));

  auto *hash_cmd = app.add_subcommand("hash", "WL digest per molecule");
  add_input(hash_cmd, cfg);
  add_workers(hash_cmd, cfg);
  hash_cmd->add_option("--iterations", cfg.wl_iterations, "WL rounds")
      ->check(CLI::NonNegativeNumber);
  hash_cmd->add_option("--out,-o", cfg.out, "output file (default stdout)");
  hash_cmd->add_option("--format", cfg.format)
      ->check(CLI::IsMember({ "jsonl", "csv" }));

  auto *data_cmd = app.add_subcommand("dataset", "emit MFM training records");
  add_input(data_cmd, cfg);
  add_workers(data_cmd, cfg);
  add_t(data_cmd, cfg);
  data_cmd->add_option("--merges,-m", cfg.merges, "merge table JSON");
  data_cmd->add_option("--dict,-d", cfg.dict, "dictionary JSON");
  data_cmd->add_option("--d0", cfg.d0, "Coulomb distance unit")
      ->check(CLI::PositiveNumber);
  data_cmd->add_option("--z-mode", cfg.z_mode, "Coulomb Z source")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, ZMode> { { "atomic-sum", ZMode::kAtomicSum },
                                         { "gasteiger", ZMode::kGasteiger } },
          CLI::ignore_case));
  data_cmd->add_option("--seed", cfg.seed, "masking seed");
  data_cmd->add_flag("--inference", cfg.inference,
                     "keep every molecule and skip masking");
  data_cmd->add_option("--out,-o", cfg.out, "JSONL output (default stdout)");
  data_cmd->add_option("--format", cfg.format)
      ->check(CLI::IsMember({ "jsonl" }));

  auto *stats_cmd = app.add_subcommand("stats", "fragment size histograms");
  add_input(stats_cmd, cfg);
  add_workers(stats_cmd, cfg);
  add_t(stats_cmd, cfg);
  stats_cmd->add_option("--merges,-m", cfg.merges, "merge table JSON");
  stats_cmd->add_option("--out,-o", cfg.out, "output prefix for two CSVs");
  stats_cmd->add_option("--format", cfg.format)
      ->check(CLI::IsMember({ "csv" }));

  auto *ana_cmd = app.add_subcommand("analogues", "swap fragments on a scaffold");
  add_input(ana_cmd, cfg);
  add_workers(ana_cmd, cfg);
  ana_cmd->add_option("--scaffold", cfg.scaffold, "scaffold SMILES with '*'");
  ana_cmd->add_option("--max-mappings", cfg.max_mappings,
                      "bijections tried per candidate")
      ->check(CLI::PositiveNumber);
  ana_cmd->add_option("--out,-o", cfg.out, "JSONL output (default stdout)");
  ana_cmd->add_option("--format", cfg.format)
      ->check(CLI::IsMember({ "jsonl" }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*train_cmd) return cmd_train(cfg);
    if (*dict_cmd) return cmd_dict(cfg);
    if (*tok_cmd) return cmd_tokenize(cfg);
    if (*hash_cmd) return cmd_hash(cfg);
    if (*data_cmd) return cmd_dataset(cfg);
    if (*stats_cmd) return cmd_stats(cfg);
    if (*ana_cmd) return cmd_analogues(cfg);
  } catch (const ConfigError &e) {
    log_event("error", "config", { { "message", e.what() } });
    return kExitConfig;
  } catch (const std::exception &e) {
    log_event("error", "failed", { { "message", e.what() } });
    return kExitPartial;
  }
  return kExitConfig;
}
