//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_DICTIONARY_H_
#define FRAGTOK_DICTIONARY_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fragtok/fragment.h"
#include "fragtok/tokenizer.h"

namespace fragtok {

struct SpecialTokens {
  int pad = 0;
  int unk = 1;
  int mask = 2;
  int cls = 3;

  static constexpr int kCount = 4;
};

struct DictEntry {
  MolDigest digest;
  int token_id = -1;
  std::string smiles;
  MolGraph graph;  // parsed back from `smiles`
  std::int64_t count = 0;
};

class TokenDictionary {
public:
  static constexpr int kVersion = 1;

  TokenDictionary() = default;

  // Assigns token ids after the special ids: descending count, then
  // ascending digest.
  static TokenDictionary from_entries(std::vector<DictEntry> entries, int t,
                                      Digest128 merges_fingerprint,
                                      Digest128 corpus_fingerprint);

  // Stored id, or the UNK id when the digest is absent.
  int lookup(const MolDigest &digest) const;
  const DictEntry *find(const MolDigest &digest) const;
  const DictEntry *by_token(int token_id) const;

  const SpecialTokens &specials() const { return specials_; }
  int t() const { return t_; }
  // Number of fragment entries, specials excluded.
  int size() const { return static_cast<int>(entries_.size()); }
  int vocab_size() const { return size() + SpecialTokens::kCount; }
  std::span<const DictEntry> entries() const { return entries_; }
  const Digest128 &merges_fingerprint() const { return merges_fp_; }
  const Digest128 &corpus_fingerprint() const { return corpus_fp_; }

  nlohmann::json to_json() const;
  static TokenDictionary from_json(const nlohmann::json &j);
  void save(const std::filesystem::path &path) const;
  static TokenDictionary load(const std::filesystem::path &path);

private:
  void index();

  SpecialTokens specials_;
  int t_ = 0;
  Digest128 merges_fp_;
  Digest128 corpus_fp_;
  std::vector<DictEntry> entries_;  // ordered by token id
  std::map<MolDigest, int> by_digest_;
};

// Digest of the merge table's rule list.
Digest128 merges_fingerprint(const MergeTable &table, int t);

// Tokenizes every molecule at granularity t and records each distinct
// fragment digest with its SMILES, graph and occurrence count. When one
// digest arrives with different SMILES, the later one wins and a warning is
// logged.
TokenDictionary build_dictionary(std::span<const MolGraph> corpus,
                                 const MergeTable &table, int t,
                                 int workers = 1);

int lookup(const TokenDictionary &dict, const Fragment &frag);

nlohmann::json graph_to_json(const MolGraph &mol);
MolGraph graph_from_json(const nlohmann::json &atoms,
                         const nlohmann::json &bonds);

}  // namespace fragtok

#endif  // FRAGTOK_DICTIONARY_H_
