//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_SMILES_H_
#define FRAGTOK_SMILES_H_

#include <string>
#include <string_view>

#include "fragtok/molgraph.h"

namespace fragtok {

// Parses the supported SMILES subset: organic-subset and bracket atoms,
// aromatic lowercase atoms, the dummy atom '*', bonds - = # : / \,
// branches, ring closures (digits and %nn), and '.' separated components.
// Tetrahedral marks are recorded on atoms; directional bonds resolve to
// double-bond stereo. Isotopes and atom classes are accepted and dropped.
//
// Throws SmilesSyntaxError on malformed input and UnsupportedFeature for
// constructs outside the subset (reactions, quadruple bonds, extended
// chirality classes).
MolGraph parse_smiles(std::string_view text);

// Deterministic SMILES. Traversal starts from the atom with the smallest
// refined WL label, ties broken by atom index, and visits neighbours in the
// same order. Stereo double bonds are written with directional bonds;
// tetrahedral marks are not written.
std::string write_smiles(const MolGraph &mol);

}  // namespace fragtok

#endif  // FRAGTOK_SMILES_H_
