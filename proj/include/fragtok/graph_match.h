//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_GRAPH_MATCH_H_
#define FRAGTOK_GRAPH_MATCH_H_

#include <optional>
#include <vector>

#include "fragtok/molgraph.h"

namespace fragtok {

// Finds an attribute- and stereo-preserving isomorphism from `from` onto
// `to`; result[i] is the image of atom i. Candidates are pruned by refined
// WL labels, so this is only practical for molecule-sized graphs.
std::optional<std::vector<int>> find_isomorphism(const MolGraph &from,
                                                 const MolGraph &to);

// Configuration of a stereo bond in `mol` re-expressed against other
// reference neighbours of its two ends.
BondStereo stereo_relative_to(const MolGraph &mol, int bond, int begin_ref,
                              int end_ref);

}  // namespace fragtok

#endif  // FRAGTOK_GRAPH_MATCH_H_
