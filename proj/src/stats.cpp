//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/stats.h"

#include "fragtok/corpus.h"
#include "fragtok/fragment.h"

namespace fragtok {

double CorpusStats::mean_fragments() const {
  if (molecules == 0)
    return 0.0;
  double total = 0.0;
  for (auto [k, n]: fragments_per_molecule)
    total += static_cast<double>(k) * static_cast<double>(n);
  return total / static_cast<double>(molecules);
}

void CorpusStats::write_fragments_csv(std::ostream &out) const {
  out << "fragments,molecules\n";
  for (auto [k, n]: fragments_per_molecule)
    out << k << ',' << n << '\n';
}

void CorpusStats::write_atoms_csv(std::ostream &out) const {
  out << "atoms,tokens\n";
  for (auto [k, n]: atoms_per_token)
    out << k << ',' << n << '\n';
}

CorpusStats corpus_stats(std::span<const MolGraph> corpus,
                         const MergeTable &table, int t, int workers) {
  if (t < 0 || t > table.size())
    throw GranularityOutOfRange(t, table.size());

  struct PerMol {
    int fragments = 0;
    std::vector<std::pair<MolDigest, int>> tokens;
  };
  std::vector<PerMol> per(corpus.size());
  parallel_for(corpus.size(), workers, [&](std::size_t i) {
    const Fragmentation fr =
        fragmentize(corpus[i], apply_merges(corpus[i], table, t));
    per[i].fragments = static_cast<int>(fr.fragments.size());
    for (const Fragment &f: fr.fragments)
      per[i].tokens.emplace_back(f.digest,
                                 static_cast<int>(f.atom_map.size()));
  });

  CorpusStats s;
  s.molecules = corpus.size();
  std::map<MolDigest, int> seen;
  for (const PerMol &p: per) {
    ++s.fragments_per_molecule[p.fragments];
    for (const auto &[d, atoms]: p.tokens)
      seen.emplace(d, atoms);
  }
  for (auto [d, atoms]: seen)
    ++s.atoms_per_token[atoms];
  s.distinct_tokens = seen.size();
  return s;
}

}  // namespace fragtok
