//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <fstream>
#include <ostream>

#include "fragtok/sanitize.h"
#include "fragtok/sequence.h"
#include "fragtok/smiles.h"

namespace fragtok {

nlohmann::json DatasetSummary::to_json() const {
  return { { "records", records },
           { "skipped_single", skipped_single },
           { "skipped_unk", skipped_unk },
           { "failed", failed },
           { "tokens", tokens },
           { "unk_tokens", unk_tokens },
           { "unk_rate", unk_rate() } };
}

namespace {

enum class Outcome { kWritten, kSingle, kUnk, kFailed };

struct Item {
  Outcome outcome = Outcome::kFailed;
  std::string line;
  std::size_t tokens = 0;
  std::size_t unk = 0;
};

Item process(const SmilesRecord &rec, const MergeTable &table, int t,
             const TokenDictionary &dict, const DatasetOptions &opts) {
  Item item;
  try {
    MolGraph mol = parse_smiles(rec.smiles);
    sanitize_or_throw(mol);
    FragmentSequence seq = serialize(mol, table, t, dict, opts.sequence);
    seq.mol_id = rec.id;
    item.tokens = seq.token_ids.size();
    for (int id: seq.token_ids)
      item.unk += id == dict.specials().unk;

    if (!opts.mfm) {
      item.line = dump_line(sequence_to_json(seq));
      item.outcome = Outcome::kWritten;
    } else if (seq.size() < 2) {
      item.outcome = Outcome::kSingle;
    } else if (item.unk > 0) {
      item.outcome = Outcome::kUnk;
    } else {
      MFMRecord r =
          make_mfm_record(seq, kRandomPosition, opts.rng_seed, dict.specials());
      item.line = dump_line(record_to_json(r));
      item.outcome = Outcome::kWritten;
    }
  } catch (const std::exception &e) {
    item.outcome = Outcome::kFailed;
    item.line = e.what();
  }
  return item;
}

}  // namespace

DatasetSummary emit_dataset(std::span<const SmilesRecord> corpus,
                            const MergeTable &table, int t,
                            const TokenDictionary &dict, std::ostream &out,
                            const DatasetOptions &opts) {
  if (t < 0 || t > table.size())
    throw GranularityOutOfRange(t, table.size());

  constexpr std::size_t kBlock = 4096;
  DatasetSummary summary;
  std::vector<Item> items;
  for (std::size_t begin = 0; begin < corpus.size(); begin += kBlock) {
    const std::size_t end = std::min(corpus.size(), begin + kBlock);
    items.assign(end - begin, Item {});
    parallel_for(items.size(), opts.workers, [&](std::size_t i) {
      items[i] = process(corpus[begin + i], table, t, dict, opts);
    });

    for (std::size_t i = 0; i < items.size(); ++i) {
      const Item &item = items[i];
      summary.tokens += item.tokens;
      summary.unk_tokens += item.unk;
      switch (item.outcome) {
      case Outcome::kWritten:
        out << item.line << '\n';
        ++summary.records;
        break;
      case Outcome::kSingle: ++summary.skipped_single; break;
      case Outcome::kUnk: ++summary.skipped_unk; break;
      case Outcome::kFailed:
        ++summary.failed;
        log_event("warning", "molecule_failed",
                  { { "line", corpus[begin + i].line },
                    { "id", corpus[begin + i].id },
                    { "error", item.line } });
        break;
      }
    }
    if (!out)
      throw std::runtime_error("write failed");
  }
  return summary;
}

DatasetSummary emit_dataset(std::span<const SmilesRecord> corpus,
                            const MergeTable &table, int t,
                            const TokenDictionary &dict,
                            const std::filesystem::path &out_path,
                            const DatasetOptions &opts) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open " + out_path.string()
                             + " for writing");
  DatasetSummary s;
  try {
    s = emit_dataset(corpus, table, t, dict, out, opts);
  } catch (const Error &) {
    throw;
  } catch (const std::runtime_error &e) {
    throw std::runtime_error(out_path.string() + ": " + e.what());
  }
  out.close();
  if (!out)
    throw std::runtime_error(out_path.string() + ": write failed");
  return s;
}

}  // namespace fragtok
