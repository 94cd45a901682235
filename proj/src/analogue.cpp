//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/analogue.h"

#include <algorithm>

#include "fragtok/corpus.h"
#include "fragtok/sanitize.h"
#include "fragtok/smiles.h"

namespace fragtok {

std::string AttachmentSignature::str() const {
  std::string out;
  for (auto [order, n]: counts) {
    if (!out.empty())
      out += ',';
    out += bond_order_name(order) + ":" + std::to_string(n);
  }
  return out;
}

namespace {

// Dummy atoms grouped by the order of their single bond.
std::map<BondOrder, std::vector<int>> dummies_by_order(const MolGraph &mol) {
  std::map<BondOrder, std::vector<int>> out;
  for (int i = 0; i < mol.num_atoms(); ++i) {
    if (!mol.atom(i).is_dummy())
      continue;
    for (int b: mol.bonds_of(i))
      out[mol.bond(b).order].push_back(i);
  }
  return out;
}

struct CandidateResult {
  std::vector<Analogue> products;
  std::map<std::string, std::size_t> rejected;
  bool truncated = false;
};

CandidateResult try_candidate(const MolGraph &scaffold,
                              const AttachmentSignature &sig,
                              const MolGraph &cand, std::size_t index,
                              std::size_t max_mappings) {
  CandidateResult r;
  const AttachmentSignature cs = attachment_signature(cand);
  bool same_keys = cs.counts.size() == sig.counts.size();
  for (auto [order, n]: sig.counts)
    same_keys = same_keys && cs.counts.contains(order);
  if (!same_keys) {
    ++r.rejected["signature_keys"];
    return r;
  }
  if (cs != sig) {
    ++r.rejected["signature_counts"];
    return r;
  }

  const auto sd = dummies_by_order(scaffold);
  std::vector<std::vector<int>> fixed, perm;
  for (auto &[order, ds]: dummies_by_order(cand)) {
    fixed.push_back(sd.at(order));
    perm.push_back(ds);
  }

  std::size_t enumerated = 0;
  for (;;) {
    if (enumerated == max_mappings) {
      r.truncated = true;
      break;
    }
    ++enumerated;

    DummyMapping mapping;
    for (std::size_t g = 0; g < fixed.size(); ++g)
      for (std::size_t k = 0; k < fixed[g].size(); ++k)
        mapping.emplace_back(fixed[g][k], perm[g][k]);

    try {
      MolGraph product = weld(scaffold, cand, mapping);
      if (is_sane(product)) {
        Analogue a;
        a.candidate_index = index;
        a.mapping = std::move(mapping);
        a.digest = wl_hash(product);
        a.smiles = write_smiles(product);
        a.product = std::move(product);
        r.products.push_back(std::move(a));
      } else {
        ++r.rejected["sanitize"];
      }
    } catch (const Error &) {
      ++r.rejected["weld_error"];
    }

    // Odometer over the per-order permutations.
    std::size_t g = 0;
    while (g < perm.size()
           && !std::next_permutation(perm[g].begin(), perm[g].end()))
      ++g;
    if (g == perm.size())
      break;
  }
  return r;
}

}  // namespace

AttachmentSignature attachment_signature(const MolGraph &structure) {
  AttachmentSignature sig;
  for (auto &[order, ds]: dummies_by_order(structure))
    sig.counts[order] = static_cast<int>(ds.size());
  return sig;
}

MolGraph weld(const MolGraph &a, const MolGraph &b,
              const DummyMapping &mapping) {
  const MolGraph u = disjoint_union(a, b);
  std::vector<DummyJoin> joins;
  for (auto [da, db]: mapping) {
    if (da < 0 || da >= a.num_atoms() || db < 0 || db >= b.num_atoms())
      throw InvalidGraph("mapping refers to a missing atom");
    DummyJoin j;
    j.dummy_a = da;
    j.dummy_b = a.num_atoms() + db;
    joins.push_back(j);
  }
  return join_dummies(u, joins);
}

nlohmann::json AnalogueSet::summary() const {
  return { { "products", results.size() },
           { "rejected", rejected },
           { "truncated", truncated } };
}

AnalogueSet generate_analogues(const MolGraph &scaffold,
                               std::span<const MolGraph> candidates,
                               const AnalogueOptions &opts) {
  const AttachmentSignature sig = attachment_signature(scaffold);
  if (sig.empty())
    throw NoAttachmentPoints("scaffold has no dummy atoms");

  std::vector<CandidateResult> per(candidates.size());
  parallel_for(candidates.size(), opts.workers, [&](std::size_t i) {
    per[i] = try_candidate(scaffold, sig, candidates[i], i, opts.max_mappings);
  });

  AnalogueSet out;
  out.scaffold = scaffold;
  std::map<MolDigest, Analogue> unique;
  for (std::size_t i = 0; i < per.size(); ++i) {
    for (auto &[reason, n]: per[i].rejected)
      out.rejected[reason] += n;
    if (per[i].truncated)
      out.truncated.push_back(i);
    for (Analogue &a: per[i].products) {
      if (unique.contains(a.digest))
        ++out.rejected["duplicate"];
      else
        unique.emplace(a.digest, std::move(a));
    }
  }
  for (auto &[d, a]: unique)
    out.results.push_back(std::move(a));
  return out;
}

}  // namespace fragtok
