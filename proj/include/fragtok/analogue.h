//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_ANALOGUE_H_
#define FRAGTOK_ANALOGUE_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fragtok/error.h"
#include "fragtok/fragment.h"

namespace fragtok {

class NoAttachmentPoints: public Error {
public:
  using Error::Error;
};

// Bond order -> number of dummy atoms attached with that order.
struct AttachmentSignature {
  std::map<BondOrder, int> counts;

  bool empty() const { return counts.empty(); }
  // "SINGLE:2,DOUBLE:1", keys in enum order.
  std::string str() const;
  bool operator==(const AttachmentSignature &) const = default;
};

AttachmentSignature attachment_signature(const MolGraph &structure);

// (dummy in a, dummy in b)
using DummyMapping = std::vector<std::pair<int, int>>;

// Joins a and b through the mapped dummy pairs; unmapped dummies stay.
// Atoms of a come first. Throws OrderMismatch.
MolGraph weld(const MolGraph &a, const MolGraph &b,
              const DummyMapping &mapping);

struct Analogue {
  std::size_t candidate_index = 0;
  DummyMapping mapping;
  MolGraph product;
  MolDigest digest;
  std::string smiles;
};

struct AnalogueOptions {
  std::size_t max_mappings = 10000;
  int workers = 1;
};

struct AnalogueSet {
  MolGraph scaffold;
  std::vector<Analogue> results;  // unique digests, sorted by digest
  // "signature_keys", "signature_counts", "sanitize", "duplicate",
  // "weld_error"
  std::map<std::string, std::size_t> rejected;
  std::vector<std::size_t> truncated;  // candidates that hit max_mappings

  nlohmann::json summary() const;
};

// Throws NoAttachmentPoints when the scaffold has no dummy atom.
AnalogueSet generate_analogues(const MolGraph &scaffold,
                               std::span<const MolGraph> candidates,
                               const AnalogueOptions &opts = {});

}  // namespace fragtok

#endif  // FRAGTOK_ANALOGUE_H_
