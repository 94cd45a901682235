//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "fragtok/dictionary.h"
#include "fragtok/fragment.h"
#include "fragtok/smiles.h"
#include "fragtok/tokenizer.h"
#include "fragtok/wlhash.h"
#include "oracles.h"
#include "synthetic.h"

namespace fragtok {
namespace {

constexpr BondOrder S = BondOrder::kSingle;
constexpr BondOrder D = BondOrder::kDouble;

std::vector<MolGraph> mols(std::initializer_list<const char *> smiles) {
  std::vector<MolGraph> out;
  for (const char *s: smiles)
    out.push_back(parse_smiles(s));
  return out;
}

PairCounts counts_of(const std::vector<MolGraph> &corpus) {
  int max_label = 0;
  for (const MolGraph &m: corpus)
    for (const Atom &a: m.atoms())
      max_label = std::max(max_label, a.atomic_number);
  std::vector<LabeledGraph> g;
  for (const MolGraph &m: corpus)
    g.emplace_back(m, max_label);
  return count_pairs(g);
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(CountPairs, DemoCorpus) {
  const PairCounts c = counts_of(mols({ "CO", "CO", "CC" }));
  const std::map<PairKey, std::int64_t> pairs { { { 6, 8, S }, 2 }, { { 6, 6, S }, 1 } };
  const std::map<int, std::int64_t> nodes { { 6, 4 }, { 8, 2 } };
  EXPECT_EQ(c.pair_count, pairs);
  EXPECT_EQ(c.node_count, nodes);
}

TEST(CountPairs, EmptyCorpus) {
  const PairCounts c = counts_of({});
  EXPECT_TRUE(c.pair_count.empty());
  EXPECT_TRUE(c.node_count.empty());
}

TEST(CountPairs, CarbonDioxide) {
  const PairCounts c = counts_of(mols({ "O=C=O" }));
  const std::map<PairKey, std::int64_t> pairs { { { 6, 8, D }, 2 } };
  const std::map<int, std::int64_t> nodes { { 6, 2 }, { 8, 2 } };
  EXPECT_EQ(c.pair_count, pairs);
  EXPECT_EQ(c.node_count, nodes);
}

TEST(CountPairs, MergeIsAdditive) {
  PairCounts a = counts_of(mols({ "CO" })), b = counts_of(mols({ "CO", "CC" }));
  a.merge(b);
  const PairCounts all = counts_of(mols({ "CO", "CO", "CC" }));
  EXPECT_EQ(a.pair_count, all.pair_count);
  EXPECT_EQ(a.node_count, all.node_count);
}

TEST(Score, DemoCorpus) {
  const auto scores = score_pairs(counts_of(mols({ "CO", "CO", "CC" })));
  ASSERT_EQ(scores.size(), 2u);
  EXPECT_NEAR(scores.at({ 6, 8, S }), 2.0 / std::sqrt(8.0), 1e-12);
  EXPECT_NEAR(scores.at({ 6, 6, S }), 0.25, 1e-12);
}

TEST(Score, SinglePair) {
  PairCounts c;
  c.pair_count[{ 1, 2, S }] = 1;
  c.node_count[1] = 1;
  c.node_count[2] = 1;
  EXPECT_DOUBLE_EQ(score_pairs(c).at({ 1, 2, S }), 1.0);
  EXPECT_EQ(score_pairs(c).count({ 1, 1, S }), 0u);
}

TEST(BestPair, TiesGoToSmallestKey) {
  PairCounts c;
  c.pair_count[{ 7, 8, S }] = 2;
  c.pair_count[{ 6, 9, S }] = 2;
  for (int l: { 6, 7, 8, 9 })
    c.node_count[l] = 2;
  const auto best = best_pair(c);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(*best, (PairKey { 6, 9, S }));
  EXPECT_FALSE(best_pair(PairCounts {}).has_value());
}

TEST(BestPair, ExactComparisonAgreesWithScores) {
  // 3/sqrt(18) and 1/sqrt(2) are equal; the first key wins.
  PairCounts c;
  c.pair_count[{ 6, 7, S }] = 1;
  c.pair_count[{ 8, 9, S }] = 3;
  c.node_count[6] = 1;
  c.node_count[7] = 2;
  c.node_count[8] = 3;
  c.node_count[9] = 6;
  EXPECT_EQ(*best_pair(c), (PairKey { 6, 7, S }));
}

TEST(Train, DemoCorpus) {
  const auto corpus = mols({ "CO", "CO", "CC" });
  std::vector<TrainStep> steps;
  const MergeTable t = train(corpus, 1, 1, [&](const TrainStep &s) { steps.push_back(s); });
  ASSERT_EQ(t.size(), 1);
  EXPECT_EQ(t.rules[0], (MergeRule { 6, 8, S, 9 }));
  EXPECT_EQ(t.max_initial_label, 8);
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_NEAR(steps[0].score, 2.0 / std::sqrt(8.0), 1e-12);
  EXPECT_EQ(steps[0].count, 2);
}

TEST(Train, ZeroIterations) {
  EXPECT_EQ(train(mols({ "CC" }), 0).size(), 0);
}

TEST(Train, StopsWhenNoPairsRemain) {
  const MergeTable t = train(mols({ "CC" }), 2);
  ASSERT_EQ(t.size(), 1);
  EXPECT_EQ(t.rules[0], (MergeRule { 6, 6, S, 7 }));
}

TEST(Train, EmptyCorpusThrows) {
  EXPECT_THROW(train(std::vector<MolGraph> {}, 3), EmptyCorpus);
}

TEST(Train, LabelsAreDenseAndMonotone) {
  const MergeTable t = train(testing::sample_molecules(300, 2), 40);
  ASSERT_EQ(t.size(), 40);
  for (int k = 0; k < t.size(); ++k) {
    EXPECT_EQ(t.rules[k].new_label, t.max_initial_label + 1 + k);
    EXPECT_LT(t.rules[k].right, t.rules[k].new_label);
    EXPECT_LE(t.rules[k].left, t.rules[k].right);
  }
}

TEST(Train, MatchesOracleOnRandomMiniCorpora) {
  const std::vector<MolGraph> pool = testing::sample_molecules(400, 9);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MolGraph> corpus;
    const int n = std::uniform_int_distribution<int>(1, 20)(rng);
    for (int i = 0; i < n; ++i)
      corpus.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
    const int iters = std::uniform_int_distribution<int>(0, 5)(rng);
    const MergeTable t = train(corpus, iters, 1 + trial % 3);
    const auto oracle = testing::oracle_train(corpus, iters);
    ASSERT_EQ(t.size(), static_cast<int>(oracle.size())) << trial;
    for (int k = 0; k < t.size(); ++k) {
      EXPECT_EQ(t.rules[k].left, oracle[k].low) << trial << ":" << k;
      EXPECT_EQ(t.rules[k].right, oracle[k].high) << trial << ":" << k;
      EXPECT_EQ(static_cast<int>(t.rules[k].order), oracle[k].order) << trial << ":" << k;
      EXPECT_EQ(t.rules[k].new_label, oracle[k].new_label) << trial << ":" << k;
    }
  }
}

TEST(Train, IndependentOfWorkerCountAndInputOrder) {
  std::vector<MolGraph> corpus = testing::sample_molecules(400, 4);
  const MergeTable a = train(corpus, 30, 1);
  const MergeTable b = train(corpus, 30, 4);
  std::reverse(corpus.begin(), corpus.end());
  const MergeTable c = train(corpus, 30, 3);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  EXPECT_EQ(a.to_json().dump(), c.to_json().dump());
}

TEST(MergeTableFile, RoundTripIsByteIdentical) {
  const MergeTable t = train(testing::sample_molecules(200, 5), 20);
  const auto dir = std::filesystem::temp_directory_path() / "fragtok_test_merges";
  std::filesystem::create_directories(dir);
  t.save(dir / "a.json");
  MergeTable::load(dir / "a.json").save(dir / "b.json");
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  EXPECT_EQ(MergeTable::load(dir / "a.json").rules, t.rules);
  std::filesystem::remove_all(dir);
}

TEST(MergeTableFile, RejectsUnknownVersion) {
  nlohmann::json j = MergeTable {}.to_json();
  j["version"] = 99;
  EXPECT_THROW(MergeTable::from_json(j), FormatError);
  EXPECT_THROW(MergeTable::from_json(nlohmann::json::array()), FormatError);
}

TEST(ApplyMerges, ZeroMergesIsSingletons) {
  const MergeTable t = train(mols({ "CO", "CO", "CC" }), 1);
  const Partition p = apply_merges(parse_smiles("CC(=O)O"), t, 0);
  EXPECT_EQ(p.fragment_count, 4);
}

TEST(ApplyMerges, Ethanol) {
  MergeTable t;
  t.max_initial_label = 8;
  t.rules = { { 6, 8, S, 9 } };
  const Partition p = apply_merges(parse_smiles("CCO"), t, 1);
  EXPECT_EQ(p.fragment_count, 2);
  EXPECT_EQ(p.fragment_of[1], p.fragment_of[2]);
  EXPECT_NE(p.fragment_of[0], p.fragment_of[1]);
}

TEST(ApplyMerges, OutOfRange) {
  MergeTable t;
  EXPECT_THROW(apply_merges(parse_smiles("C"), t, 1), GranularityOutOfRange);
  EXPECT_THROW(apply_merges(parse_smiles("C"), t, -1), GranularityOutOfRange);
}

TEST(ApplyMerges, MatchesOraclePartition) {
  const auto corpus = testing::sample_molecules(300, 6);
  const MergeTable t = train(corpus, 60, 4);
  std::vector<testing::OracleMerge> om;
  for (const MergeRule &r: t.rules)
    om.push_back({ r.left, r.right, static_cast<int>(r.order), 0, r.new_label });
  for (const MolGraph &m: corpus) {
    const Partition p = apply_merges(m, t, t.size());
    const auto g = testing::oracle_partition(m, om, t.max_initial_label);
    for (int i = 0; i < m.num_atoms(); ++i)
      for (int j = 0; j < m.num_atoms(); ++j)
        ASSERT_EQ(p.fragment_of[i] == p.fragment_of[j], g[i] == g[j]) << write_smiles(m);
  }
}

bool connected_fragments(const MolGraph &m, const Partition &p) {
  std::vector<int> parent(m.num_atoms());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const Bond &b: m.bonds())
    if (p.fragment_of[b.begin] == p.fragment_of[b.end])
      parent[find(b.begin)] = find(b.end);
  std::map<int, int> root_of_fragment;
  for (int i = 0; i < m.num_atoms(); ++i) {
    auto [it, inserted] = root_of_fragment.emplace(p.fragment_of[i], find(i));
    if (!inserted && it->second != find(i))
      return false;
  }
  return static_cast<int>(root_of_fragment.size()) == p.fragment_count;
}

TEST(ApplyMerges, PrefixCoarseningAndConnectivity) {
  const auto corpus = testing::sample_molecules(1000, 7);
  const MergeTable t = train(corpus, 100, 8);
  ASSERT_EQ(t.size(), 100);
  for (const MolGraph &m: corpus) {
    std::vector<Partition> parts;
    for (int k = 0; k <= t.size(); ++k) {
      parts.push_back(apply_merges(m, t, k));
      ASSERT_TRUE(connected_fragments(m, parts.back()));
    }
    // Checking consecutive prefixes suffices: coarsening is transitive.
    for (int k = 0; k < t.size(); ++k) {
      std::map<int, int> image;
      for (int i = 0; i < m.num_atoms(); ++i) {
        auto [it, inserted] = image.emplace(parts[k].fragment_of[i], parts[k + 1].fragment_of[i]);
        ASSERT_EQ(it->second, parts[k + 1].fragment_of[i]) << write_smiles(m) << " t=" << k;
      }
    }
  }
}

TEST(Fragmentize, Ethanol) {
  MergeTable t;
  t.max_initial_label = 8;
  t.rules = { { 6, 8, S, 9 } };
  const MolGraph m = parse_smiles("CCO");
  const Fragmentation f = fragmentize(m, apply_merges(m, t, 1));
  ASSERT_EQ(f.fragments.size(), 2u);
  ASSERT_EQ(f.links.size(), 1u);
  EXPECT_EQ(f.links[0].order, S);
  std::multiset<MolDigest> got, want { wl_hash(parse_smiles("*CO")), wl_hash(parse_smiles("C*")) };
  for (const Fragment &fr: f.fragments)
    got.insert(fr.digest);
  EXPECT_EQ(got, want);
}

TEST(Fragmentize, CarbonDioxideSingletons) {
  const MolGraph m = parse_smiles("O=C=O");
  const Fragmentation f = fragmentize(m, apply_merges(m, MergeTable {}, 0));
  ASSERT_EQ(f.fragments.size(), 3u);
  EXPECT_EQ(f.links.size(), 2u);
  const MolDigest middle = wl_hash(parse_smiles("*=C=*"));
  int found = 0;
  for (const Fragment &fr: f.fragments)
    found += fr.digest == middle;
  EXPECT_EQ(found, 1);
}

TEST(Fragmentize, WholeMolecule) {
  const MolGraph m = parse_smiles("CCO");
  Partition p { { 0, 0, 0 }, 1 };
  const Fragmentation f = fragmentize(m, p);
  ASSERT_EQ(f.fragments.size(), 1u);
  EXPECT_TRUE(f.links.empty());
  EXPECT_FALSE(f.fragments[0].graph.has_dummy_atoms());
  EXPECT_EQ(f.fragments[0].digest, wl_hash(m));
}

TEST(Fragmentize, InvariantsOverCorpus) {
  const auto corpus = testing::sample_molecules(500, 8);
  const MergeTable t = train(corpus, 50, 4);
  for (const MolGraph &m: corpus) {
    const Fragmentation f = fragmentize(m, apply_merges(m, t, t.size()));
    int dummies = 0;
    std::size_t real = 0;
    for (const Fragment &fr: f.fragments) {
      EXPECT_EQ(fr.digest, wl_hash(fr.graph, 3));
      for (int i = 0; i < fr.graph.num_atoms(); ++i)
        if (fr.graph.atom(i).is_dummy()) {
          ++dummies;
          EXPECT_EQ(fr.graph.degree(i), 1);
        }
      real += fr.atom_map.size();
    }
    EXPECT_EQ(real, static_cast<std::size_t>(m.num_atoms()));
    EXPECT_EQ(dummies, 2 * static_cast<int>(f.links.size()));
  }
}

TEST(Dictionary, DanglingBondCasesAreDistinctEntries) {
  // The carbon in each molecule is cut away from all its neighbours.
  const auto corpus = mols({ "CO", "OCO", "C=O" });
  const TokenDictionary d = build_dictionary(corpus, MergeTable {}, 0);
  std::set<int> ids;
  for (const char *frag: { "*C", "*C*", "*=C" }) {
    const DictEntry *e = d.find(wl_hash(parse_smiles(frag)));
    ASSERT_NE(e, nullptr) << frag;
    ids.insert(e->token_id);
  }
  EXPECT_EQ(ids.size(), 3u);
}

TEST(Dictionary, SpecialsAndDenseIds) {
  const auto corpus = testing::sample_molecules(200, 12);
  const MergeTable t = train(corpus, 30);
  const TokenDictionary d = build_dictionary(corpus, t, 30, 4);
  EXPECT_EQ(d.specials().pad, 0);
  EXPECT_EQ(d.specials().unk, 1);
  EXPECT_EQ(d.specials().mask, 2);
  EXPECT_EQ(d.specials().cls, 3);
  std::int64_t prev = std::numeric_limits<std::int64_t>::max();
  for (int k = 0; k < d.size(); ++k) {
    const DictEntry &e = d.entries()[k];
    EXPECT_EQ(e.token_id, SpecialTokens::kCount + k);
    EXPECT_LE(e.count, prev);
    prev = e.count;
    EXPECT_EQ(wl_hash(parse_smiles(e.smiles)), e.digest) << "SMILES " << e.smiles;
    EXPECT_EQ(wl_hash(e.graph), e.digest);
    EXPECT_EQ(d.by_token(e.token_id), &e);
  }
}

TEST(Dictionary, EmptyCorpusHasOnlySpecials) {
  const TokenDictionary d = build_dictionary(std::vector<MolGraph> {}, MergeTable {}, 0);
  EXPECT_EQ(d.size(), 0);
  EXPECT_EQ(d.vocab_size(), SpecialTokens::kCount);
}

TEST(Dictionary, LookupKnownNovelAndRespelled) {
  const auto corpus = mols({ "CCO", "CCN" });
  MergeTable t;
  t.max_initial_label = 8;
  t.rules = { { 6, 8, S, 9 } };
  const TokenDictionary d = build_dictionary(corpus, t, 1);
  const MolGraph m = parse_smiles("OCC");
  const Fragmentation f = fragmentize(m, apply_merges(m, t, 1));
  for (const Fragment &fr: f.fragments)
    EXPECT_NE(lookup(d, fr), d.specials().unk);

  const MolGraph novel = parse_smiles("CS");
  const Fragmentation g = fragmentize(novel, apply_merges(novel, t, 1));
  int unk = 0;
  for (const Fragment &fr: g.fragments)
    unk += lookup(d, fr) == d.specials().unk;
  EXPECT_EQ(unk, 1);

  EXPECT_EQ(d.lookup(wl_hash(parse_smiles("*CO"))), d.lookup(wl_hash(parse_smiles("OC*"))));
}

TEST(Dictionary, FileRoundTrip) {
  const auto corpus = testing::sample_molecules(150, 13);
  const MergeTable t = train(corpus, 25);
  const TokenDictionary d = build_dictionary(corpus, t, 25, 2);
  const auto dir = std::filesystem::temp_directory_path() / "fragtok_test_dict";
  std::filesystem::create_directories(dir);
  d.save(dir / "a.json");
  const TokenDictionary back = TokenDictionary::load(dir / "a.json");
  back.save(dir / "b.json");
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  EXPECT_EQ(back.size(), d.size());
  EXPECT_EQ(back.t(), 25);
  EXPECT_EQ(back.merges_fingerprint(), merges_fingerprint(t, 25));
  for (const DictEntry &e: d.entries())
    EXPECT_EQ(back.lookup(e.digest), e.token_id);
  std::filesystem::remove_all(dir);
}

TEST(Dictionary, WorkerCountDoesNotChangeContent) {
  const auto corpus = testing::sample_molecules(300, 14);
  const MergeTable t = train(corpus, 30);
  EXPECT_EQ(build_dictionary(corpus, t, 30, 1).to_json().dump(),
            build_dictionary(corpus, t, 30, 6).to_json().dump());
}

}  // namespace
}  // namespace fragtok
