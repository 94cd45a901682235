//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_SEQUENCE_H_
#define FRAGTOK_SEQUENCE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fragtok/corpus.h"
#include "fragtok/dictionary.h"
#include "fragtok/posenc.h"

namespace fragtok {

class UnreconstructableUNK: public Error {
public:
  explicit UnreconstructableUNK(int position)
      : Error("position " + std::to_string(position)
              + " holds a token without a graph"),
        position_(position) { }

  int position() const { return position_; }

private:
  int position_;
};

class LinkMismatch: public Error {
public:
  using Error::Error;
};

class SequenceTooShort: public Error {
public:
  SequenceTooShort(): Error("masking needs at least two fragments") { }
};

// heavy atoms, molecular weight, ring count, aromatic atoms, H-bond donors,
// H-bond acceptors, rotatable bonds, net charge, sp3 carbon fraction,
// halogens.
inline constexpr int kDescriptorCount = 10;
using DescriptorVector = std::array<double, kDescriptorCount>;

extern const std::array<const char *, kDescriptorCount> kDescriptorNames;

DescriptorVector descriptors(const MolGraph &mol);

struct SequenceOptions {
  double d0 = kDefaultD0;
  ZMode z_mode = ZMode::kAtomicSum;
};

// Links refer to atom indices of the dictionary graphs of the two tokens
// (or of the fragment itself when the token is UNK).
struct FragmentSequence {
  std::string mol_id;
  int t = 0;
  std::vector<int> token_ids;
  std::vector<MolDigest> digests;
  FragmentGraph fragment_graph;
  std::vector<FragmentLink> links;
  HopMatrix hop;
  std::vector<int> roles;
  CoulombFeatures coulomb;
  std::vector<double> charges;
  DescriptorVector descriptors {};

  int size() const { return static_cast<int>(token_ids.size()); }
  bool has_unk(const SpecialTokens &sp) const;
};

// Fragments appear in ascending order of their lowest original atom index.
FragmentSequence serialize(const MolGraph &mol, const MergeTable &table, int t,
                           const TokenDictionary &dict,
                           const SequenceOptions &opts = {});

// Throws UnreconstructableUNK and LinkMismatch.
MolGraph reconstruct(const FragmentSequence &seq, const TokenDictionary &dict);

struct MFMRecord {
  FragmentSequence sequence;  // token at masked_position replaced by MASK
  int masked_position = -1;
  int target_token_id = -1;
  MolDigest target_digest;
};

// position < 0 picks a position from a generator seeded with rng_seed and
// the molecule id. Throws SequenceTooShort for N < 2 and std::out_of_range
// for a position outside the sequence.
MFMRecord make_mfm_record(const FragmentSequence &seq, int position,
                          std::uint64_t rng_seed, const SpecialTokens &sp);

inline constexpr int kRandomPosition = -1;

nlohmann::json record_to_json(const MFMRecord &rec);
// Inference form: no masking, target fields null.
nlohmann::json sequence_to_json(const FragmentSequence &seq);

// "%.9g"
std::string format_real(double v);
// One JSON object on one line, reals printed with 9 significant digits.
std::string dump_line(const nlohmann::json &j);

struct DatasetOptions {
  SequenceOptions sequence;
  std::uint64_t rng_seed = 0;
  int workers = 1;
  // Training records skip singletons and UNK-bearing molecules; inference
  // records keep every parsed molecule and carry no mask.
  bool mfm = true;
};

struct DatasetSummary {
  std::size_t records = 0;
  std::size_t skipped_single = 0;
  std::size_t skipped_unk = 0;
  std::size_t failed = 0;
  std::size_t unk_tokens = 0;
  std::size_t tokens = 0;

  double unk_rate() const {
    return tokens == 0 ? 0.0 : static_cast<double>(unk_tokens) / tokens;
  }
  nlohmann::json to_json() const;
};

DatasetSummary emit_dataset(std::span<const SmilesRecord> corpus,
                            const MergeTable &table, int t,
                            const TokenDictionary &dict, std::ostream &out,
                            const DatasetOptions &opts = {});

// Opens the file and reports I/O errors with the path.
DatasetSummary emit_dataset(std::span<const SmilesRecord> corpus,
                            const MergeTable &table, int t,
                            const TokenDictionary &dict,
                            const std::filesystem::path &out_path,
                            const DatasetOptions &opts = {});

}  // namespace fragtok

#endif  // FRAGTOK_SEQUENCE_H_
