//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_FRAGMENT_H_
#define FRAGTOK_FRAGMENT_H_

#include <span>
#include <vector>

#include "fragtok/error.h"
#include "fragtok/molgraph.h"
#include "fragtok/tokenizer.h"
#include "fragtok/wlhash.h"

namespace fragtok {

class OrderMismatch: public Error {
public:
  using Error::Error;
};

// Connected piece of a molecule. Every broken bond is capped with a dummy
// atom (atomic number 0) bonded with the original order; dummies follow the
// real atoms in the graph.
struct Fragment {
  MolGraph graph;
  MolDigest digest;
  std::vector<int> atom_map;  // original index of each non-dummy atom
};

// Pairs the two dummy atoms that replaced one broken bond. When the broken
// bond was a stereo double bond, the configuration is kept here relative to
// one reference neighbour on each side (atom indices inside the fragments).
struct FragmentLink {
  int frag_a = -1;
  int dummy_a = -1;
  int frag_b = -1;
  int dummy_b = -1;
  BondOrder order = BondOrder::kSingle;
  BondStereo stereo = BondStereo::kNone;
  int ref_a = -1;
  int ref_b = -1;
};

struct Fragmentation {
  std::vector<Fragment> fragments;
  std::vector<FragmentLink> links;
};

Fragmentation fragmentize(const MolGraph &mol, const Partition &part);

// Atoms of b follow those of a.
MolGraph disjoint_union(const MolGraph &a, const MolGraph &b);

struct DummyJoin {
  int dummy_a = -1;
  int dummy_b = -1;
  BondStereo stereo = BondStereo::kNone;
  int ref_a = -1;  // neighbour of dummy_a's partner atom
  int ref_b = -1;
};

// Replaces each pair of dummies and their bonds with a single bond between
// the two exposed atoms. Stereo references that pointed at a removed dummy
// are moved to the atom it stood for. Remaining atoms keep their relative
// order. Throws OrderMismatch when paired dummy bonds differ in order and
// InvalidGraph when the result is not a simple graph.
MolGraph join_dummies(const MolGraph &mol, std::span<const DummyJoin> joins);

}  // namespace fragtok

#endif  // FRAGTOK_FRAGMENT_H_
