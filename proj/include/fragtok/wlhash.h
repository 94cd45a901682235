//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_WLHASH_H_
#define FRAGTOK_WLHASH_H_

#include <vector>

#include "fragtok/digest.h"
#include "fragtok/molgraph.h"

namespace fragtok {

using MolDigest = Digest128;

inline constexpr int kDefaultWLIterations = 3;

struct WLLabels {
  std::vector<Digest128> per_node;
  int iteration = 0;
};

// Seed label over (Z, hybridization, radicals, total H, charge, aromatic,
// dummy).
Digest128 atom_seed_label(const Atom &atom);

// Label over (order, conjugated, stereo, ring membership). Ring membership
// is encoded as the smallest ring size through the bond, 0 when acyclic.
Digest128 bond_label(const Bond &bond);
Digest128 bond_label(const Bond &bond, BondStereo stereo);

// Double-bond configuration restated against a reference neighbour chosen
// by label at each end (the highest stereo-free WL label), so that it does
// not depend on which substituent the input happened to name. kNone when an
// end has two equally labelled substituents.
std::vector<BondStereo> canonical_stereo(const MolGraph &mol);

// bond_label for every bond, with canonical stereo.
std::vector<Digest128> bond_labels(const MolGraph &mol);

// Iteration t label of node i hashes its iteration t-1 label with the sorted
// multiset of (bond label, neighbour label) pairs.
WLLabels wl_refine(const MolGraph &mol, int iterations);

// Digest of the sorted multiset of refined node labels. Throws
// InvalidGraph on an empty graph.
MolDigest wl_hash(const MolGraph &mol, int iterations = kDefaultWLIterations);

// Digest over a multiset of digests (order-independent).
Digest128 multiset_digest(std::vector<Digest128> items, std::uint8_t tag);

}  // namespace fragtok

#endif  // FRAGTOK_WLHASH_H_
