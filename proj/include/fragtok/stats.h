//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_STATS_H_
#define FRAGTOK_STATS_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <span>

#include "fragtok/tokenizer.h"

namespace fragtok {

struct CorpusStats {
  std::size_t molecules = 0;
  // fragments per molecule -> molecules
  std::map<int, std::int64_t> fragments_per_molecule;
  // real (non-dummy) atoms per distinct token -> tokens
  std::map<int, std::int64_t> atoms_per_token;
  std::size_t distinct_tokens = 0;

  double mean_fragments() const;
  void write_fragments_csv(std::ostream &out) const;
  void write_atoms_csv(std::ostream &out) const;
};

CorpusStats corpus_stats(std::span<const MolGraph> corpus,
                         const MergeTable &table, int t, int workers = 1);

}  // namespace fragtok

#endif  // FRAGTOK_STATS_H_
