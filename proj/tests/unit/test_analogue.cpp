//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include <gtest/gtest.h>

#include "fragtok/analogue.h"
#include "fragtok/sanitize.h"
#include "fragtok/smiles.h"
#include "fragtok/tokenizer.h"
#include "fragtok/wlhash.h"
#include "synthetic.h"
#include "weld_back.h"

namespace fragtok {
namespace {

constexpr BondOrder S = BondOrder::kSingle;
constexpr BondOrder D = BondOrder::kDouble;

std::vector<MolGraph> graphs(std::initializer_list<const char *> smiles) {
  std::vector<MolGraph> out;
  for (const char *s: smiles)
    out.push_back(parse_smiles(s));
  return out;
}

std::set<MolDigest> digests_of(const AnalogueSet &set) {
  std::set<MolDigest> out;
  for (const Analogue &a: set.results)
    out.insert(a.digest);
  return out;
}

TEST(Signature, Examples) {
  EXPECT_EQ(attachment_signature(parse_smiles("*=O")).counts, (std::map<BondOrder, int> { { D, 1 } }));
  EXPECT_EQ(attachment_signature(parse_smiles("*N(*)*")).counts, (std::map<BondOrder, int> { { S, 3 } }));
  EXPECT_EQ(attachment_signature(parse_smiles("*C=*")).counts,
            (std::map<BondOrder, int> { { S, 1 }, { D, 1 } }));
  EXPECT_EQ(attachment_signature(parse_smiles("*C=*")).str(), "SINGLE:1,DOUBLE:1");
  EXPECT_TRUE(attachment_signature(parse_smiles("CCO")).empty());
}

TEST(Weld, Minimal) {
  const MolGraph a = parse_smiles("C*"), b = parse_smiles("*O");
  const MolGraph p = weld(a, b, { { 1, 0 } });
  EXPECT_EQ(wl_hash(p), wl_hash(parse_smiles("CO")));
}

TEST(Weld, TwoPartnersSaturate) {
  // *C=* takes a methyl on the single side and a methylene on the double side.
  const MolGraph core = parse_smiles("*C=*");
  const MolGraph left = weld(core, parse_smiles("*C"), { { 0, 0 } });
  ASSERT_EQ(attachment_signature(left).counts, (std::map<BondOrder, int> { { D, 1 } }));
  int dummy = -1;
  for (int i = 0; i < left.num_atoms(); ++i)
    if (left.atom(i).is_dummy())
      dummy = i;
  const MolGraph p = weld(left, parse_smiles("*=C"), { { dummy, 0 } });
  EXPECT_EQ(wl_hash(p), wl_hash(parse_smiles("CC=C")));
  EXPECT_FALSE(p.has_dummy_atoms());
  EXPECT_TRUE(is_sane(p));
}

TEST(Weld, OrderMismatch) {
  EXPECT_THROW(weld(parse_smiles("*=C"), parse_smiles("*O"), { { 0, 0 } }), OrderMismatch);
}

TEST(Weld, UnmappedDummiesAreKept) {
  const MolGraph p = weld(parse_smiles("*C*"), parse_smiles("*O"), { { 0, 0 } });
  EXPECT_EQ(wl_hash(p), wl_hash(parse_smiles("*CO")));
}

TEST(Weld, BadMappingThrows) {
  EXPECT_THROW(weld(parse_smiles("*C"), parse_smiles("*O"), { { 5, 0 } }), InvalidGraph);
  EXPECT_THROW(weld(parse_smiles("*C"), parse_smiles("*O"), { { 1, 0 } }), InvalidGraph);
}

TEST(Analogues, IbuprofenGolden) {
  // Ibuprofen with its CH(CH3)COOH group cut away.
  const MolGraph scaffold = parse_smiles("CC(C)Cc1ccc(*)cc1");
  const auto candidates = graphs({ "*Cl", "*C(=O)O", "*=O", "*N(*)*" });
  const AnalogueSet set = generate_analogues(scaffold, candidates);
  const auto got = digests_of(set);
  EXPECT_TRUE(got.count(wl_hash(parse_smiles("CC(C)Cc1ccc(Cl)cc1"))));
  EXPECT_TRUE(got.count(wl_hash(parse_smiles("CC(C)Cc1ccc(cc1)C(=O)O"))));
  EXPECT_EQ(set.results.size(), 2u);
  EXPECT_EQ(set.rejected.at("signature_keys"), 1u);
  EXPECT_EQ(set.rejected.at("signature_counts"), 1u);
}

TEST(Analogues, DiazepamGolden) {
  // The chlorophenyl ring is cut from the lactam carbon.
  const MolGraph scaffold = parse_smiles("CN1C(=O)c2ccccc2C1*");
  const auto candidates = graphs({ "*c1ccc(Cl)cc1", "*c1ccccc1Cl" });
  const AnalogueSet set = generate_analogues(scaffold, candidates);
  const auto got = digests_of(set);
  EXPECT_TRUE(got.count(wl_hash(parse_smiles("CN1C(=O)c2ccccc2C1c1ccc(Cl)cc1"))));
  EXPECT_TRUE(got.count(wl_hash(parse_smiles("CN1C(=O)c2ccccc2C1c3ccccc3Cl"))));
  for (const Analogue &a: set.results)
    EXPECT_TRUE(is_sane(a.product));
}

TEST(Analogues, CountGuard) {
  const AnalogueSet set = generate_analogues(parse_smiles("*CC*"), graphs({ "*O" }));
  EXPECT_TRUE(set.results.empty());
  EXPECT_EQ(set.rejected.at("signature_counts"), 1u);
}

TEST(Analogues, NoAttachmentPoints) {
  EXPECT_THROW(generate_analogues(parse_smiles("CC"), graphs({ "*O" })), NoAttachmentPoints);
}

TEST(Analogues, SanitizeRejectsAreCounted) {
  // The double-bond partner would make a pentavalent carbon.
  const AnalogueSet set = generate_analogues(parse_smiles("CC(C)(C)C=*"), graphs({ "*=C(C)(C)C", "*=O" }));
  EXPECT_EQ(set.results.size(), 1u);
  EXPECT_EQ(set.rejected.at("sanitize"), 1u);
}

TEST(Analogues, SymmetricMappingsCollapse) {
  const AnalogueSet set = generate_analogues(parse_smiles("*CC*"), graphs({ "*OCO*" }));
  ASSERT_EQ(set.results.size(), 1u);
  EXPECT_EQ(set.results[0].digest, wl_hash(parse_smiles("C1COCO1")));
  EXPECT_EQ(set.rejected.at("duplicate"), 1u);
}

TEST(Analogues, AllBijectionsAreTried) {
  // Two distinguishable single attachments on each side: two products.
  const AnalogueSet set = generate_analogues(parse_smiles("*CCN*"), graphs({ "*OCCS*" }));
  EXPECT_EQ(set.results.size(), 2u);
}

TEST(Analogues, TruncationIsFlagged) {
  AnalogueOptions opts;
  opts.max_mappings = 3;
  const AnalogueSet set = generate_analogues(parse_smiles("*C(*)(*)*"), graphs({ "*C(*)(*)*" }), opts);
  ASSERT_EQ(set.truncated.size(), 1u);
  EXPECT_EQ(set.truncated[0], 0u);
}

TEST(Analogues, CandidateOrderDoesNotMatter) {
  auto candidates = graphs({ "*Cl", "*C(=O)O", "*OC", "*N", "*C#N", "*c1ccccc1", "*=O" });
  const MolGraph scaffold = parse_smiles("CC(C)Cc1ccc(*)cc1");
  AnalogueOptions opts;
  opts.workers = 3;
  const AnalogueSet a = generate_analogues(scaffold, candidates, opts);
  std::reverse(candidates.begin(), candidates.end());
  const AnalogueSet b = generate_analogues(scaffold, candidates);
  EXPECT_EQ(digests_of(a), digests_of(b));
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i)
    EXPECT_EQ(a.results[i].smiles, b.results[i].smiles);
  EXPECT_TRUE(std::is_sorted(a.results.begin(), a.results.end(),
                             [](const Analogue &x, const Analogue &y) { return x.digest < y.digest; }));
}

TEST(Weld, InvertsFragmentizeOverSuite) {
  const std::vector<MolGraph> corpus = testing::sample_molecules(1000, 1);
  const MergeTable table = train(corpus, 100, 8);
  for (int t: { 0, 25, 100 }) {
    std::vector<int> ok(corpus.size(), 0);
    parallel_for(corpus.size(), 8, [&](std::size_t i) {
      const Fragmentation fr = fragmentize(corpus[i], apply_merges(corpus[i], table, t));
      ok[i] = wl_hash(testing::weld_back(fr)) == wl_hash(corpus[i]);
    });
    for (std::size_t i = 0; i < corpus.size(); ++i)
      EXPECT_TRUE(ok[i]) << "t=" << t << " " << write_smiles(corpus[i]);
  }
}

}  // namespace
}  // namespace fragtok
