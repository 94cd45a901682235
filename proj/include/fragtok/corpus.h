//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_CORPUS_H_
#define FRAGTOK_CORPUS_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fragtok/molgraph.h"

namespace fragtok {

struct SmilesRecord {
  std::size_t line = 0;  // 1-based source line
  std::string smiles;
  std::string id;        // second column, or "mol_<line>"
};

// One SMILES per line, optional whitespace-separated id. Blank lines and
// lines starting with '#' are skipped; CRLF endings are accepted.
std::vector<SmilesRecord> read_smiles(std::istream &in);
std::vector<SmilesRecord> read_smiles_file(const std::filesystem::path &path);

struct ParsedCorpus {
  std::vector<SmilesRecord> records;
  std::vector<std::optional<MolGraph>> mols;
  std::vector<std::string> errors;  // parallel to mols; empty when parsed
  std::size_t failures = 0;
};

// Parses and sanitizes; rejected lines keep their error message.
ParsedCorpus parse_corpus(std::vector<SmilesRecord> records, int workers);

// Successfully parsed molecules only, in input order.
std::vector<MolGraph> parsed_molecules(const ParsedCorpus &corpus);

// FRAGTOK_WORKERS if set and positive, else hardware concurrency.
int default_workers();

// Runs fn(i) for i in [0, n) over `workers` threads pulling fixed-size
// chunks from a shared counter. fn must be safe to call concurrently.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn &&fn) {
  workers = std::max(1, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }

  const std::size_t kChunk = std::clamp<std::size_t>(
      n / (static_cast<std::size_t>(workers) * 8), 1, 32);
  std::atomic<std::size_t> next { 0 };
  auto worker = [&] {
    for (;;) {
      std::size_t begin = next.fetch_add(kChunk);
      if (begin >= n)
        return;
      std::size_t end = std::min(n, begin + kChunk);
      for (std::size_t i = begin; i < end; ++i)
        fn(i);
    }
  };

  std::vector<std::jthread> pool;
  const int extra = static_cast<int>(
      std::min<std::size_t>(workers, (n + kChunk - 1) / kChunk)) - 1;
  for (int w = 0; w < extra; ++w)
    pool.emplace_back(worker);
  worker();
}

// Structured log line on stderr: {"level": ..., "event": ..., ...fields}.
void log_event(std::string_view level, std::string_view event,
               nlohmann::json fields = nlohmann::json::object());

}  // namespace fragtok

#endif  // FRAGTOK_CORPUS_H_
