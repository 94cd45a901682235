//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_TOKENIZER_H_
#define FRAGTOK_TOKENIZER_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fragtok/digest.h"
#include "fragtok/error.h"
#include "fragtok/molgraph.h"

namespace fragtok {

class EmptyCorpus: public Error {
public:
  EmptyCorpus(): Error("training corpus is empty") { }
};

class GranularityOutOfRange: public Error {
public:
  GranularityOutOfRange(int t, int size)
      : Error("granularity " + std::to_string(t)
              + " outside merge table of length " + std::to_string(size)) { }
};

class FormatError: public Error {
public:
  using Error::Error;
};

// Unordered pair of super-node labels joined by a bond of a given order,
// canonicalized so that low <= high. Orders compare by enum value.
struct PairKey {
  int low = 0;
  int high = 0;
  BondOrder order = BondOrder::kSingle;

  static PairKey make(int a, int b, BondOrder order) {
    return a <= b ? PairKey { a, b, order } : PairKey { b, a, order };
  }

  auto operator<=>(const PairKey &) const = default;
};

struct PairCounts {
  std::map<PairKey, std::int64_t> pair_count;
  std::map<int, std::int64_t> node_count;

  void merge(const PairCounts &other);
};

struct MergeRule {
  int left = 0;   // smaller label
  int right = 0;  // larger label
  BondOrder order = BondOrder::kSingle;
  int new_label = 0;

  PairKey key() const { return { left, right, order }; }
  bool operator==(const MergeRule &) const = default;
};

struct MergeTable {
  static constexpr int kVersion = 1;

  std::vector<MergeRule> rules;
  Digest128 corpus_fingerprint;
  int max_initial_label = 0;
  int version = kVersion;

  int size() const { return static_cast<int>(rules.size()); }

  nlohmann::json to_json() const;
  static MergeTable from_json(const nlohmann::json &j);
  void save(const std::filesystem::path &path) const;
  static MergeTable load(const std::filesystem::path &path);
};

// A molecule as seen by the merge learner: atoms grouped into super-nodes,
// each carrying an integer label. Initial labels are atomic numbers; atoms
// heavier than the table's largest initial label get a label no rule can
// match.
class LabeledGraph {
public:
  LabeledGraph(const MolGraph &mol, int max_initial_label);

  // One increment per inter-group bond; each endpoint label counted once.
  void count_into(PairCounts &counts) const;

  // fn(key, label_a, label_b) for every bond joining two distinct groups.
  template <class Fn>
  void for_each_pair(Fn &&fn) const {
    for (const Edge &e: edges_) {
      const int gu = group_of(e.u), gv = group_of(e.v);
      if (gu != gv)
        fn(PairKey::make(label_[gu], label_[gv], e.order), label_[gu],
           label_[gv]);
    }
  }

  // One replacement pass for `rule`: bonds are scanned in ascending
  // (atom, atom) order and a super-node merged in this pass is not merged
  // again. Returns the number of merges.
  int apply(const MergeRule &rule);

  int group_of(int atom) const;
  int label_of_atom(int atom) const { return label_[group_of(atom)]; }

  // Fragment index per atom, fragments numbered by lowest atom index.
  std::vector<int> fragment_ids() const;

private:
  struct Edge {
    int u;
    int v;
    BondOrder order;
  };

  std::vector<Edge> edges_;
  mutable std::vector<int> parent_;
  std::vector<int> label_;
  std::vector<int> stamp_;
  int pass_ = 0;
};

PairCounts count_pairs(std::span<const LabeledGraph> corpus);

// score = pair_count / sqrt(node_count[low] * node_count[high]); only
// observed pairs receive a score.
std::map<PairKey, double> score_pairs(const PairCounts &counts);

// Highest score wins; ties go to the lexicographically smallest key.
std::optional<PairKey> best_pair(const std::map<PairKey, double> &scores);
// Same rule on exact integer arithmetic, so that mathematically equal scores
// always fall back to the key order.
std::optional<PairKey> best_pair(const PairCounts &counts);

struct TrainStep {
  int iteration = 0;
  PairKey pair;
  double score = 0.0;
  std::int64_t count = 0;
  int new_label = 0;
};

using TrainObserver = std::function<void(const TrainStep &)>;

// Order-independent fingerprint: multiset digest of molecule WL digests.
Digest128 corpus_fingerprint(std::span<const MolGraph> corpus, int workers = 1);

// Iterative pairwise merging. Throws EmptyCorpus; stops early when no
// inter-group bonds remain.
MergeTable train(std::span<const MolGraph> corpus, int num_iter,
                 int workers = 1, const TrainObserver &observer = {});

struct Partition {
  std::vector<int> fragment_of;
  int fragment_count = 0;
};

// Replays the first t rules. Throws GranularityOutOfRange.
Partition apply_merges(const MolGraph &mol, const MergeTable &table, int t);

}  // namespace fragtok

#endif  // FRAGTOK_TOKENIZER_H_
