//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
// and exits non-zero when any of them fails.
//

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fragtok/analogue.h"
#include "fragtok/corpus.h"
#include "fragtok/dictionary.h"
#include "fragtok/fragment.h"
#include "fragtok/posenc.h"
#include "fragtok/sequence.h"
#include "fragtok/smiles.h"
#include "fragtok/tokenizer.h"
#include "fragtok/wlhash.h"
#include "oracles.h"
#include "synthetic.h"
#include "weld_back.h"

namespace fragtok {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      if (pass)
        detail = what;
      pass = false;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int workers() {
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

std::vector<MolGraph> parse_all(std::initializer_list<const char *> smiles) {
  std::vector<MolGraph> out;
  for (const char *s: smiles)
    out.push_back(parse_smiles(s));
  return out;
}

std::vector<MolGraph> graphs_of(const std::vector<SmilesRecord> &records) {
  std::vector<MolGraph> out;
  for (const SmilesRecord &r: records)
    out.push_back(parse_smiles(r.smiles));
  return out;
}

std::string fmt(const char *format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto start = Clock::now();
  const std::vector<MolGraph> pool = testing::sample_molecules(400, 101);
  std::mt19937_64 rng(2026);
  int rounds = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MolGraph> corpus;
    const int n = std::uniform_int_distribution<int>(1, 20)(rng);
    for (int i = 0; i < n; ++i)
      corpus.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
    const int iters = std::uniform_int_distribution<int>(1, 5)(rng);
    const MergeTable table = train(corpus, iters);
    const auto oracle = testing::oracle_train(corpus, iters);
    bool same = table.size() == static_cast<int>(oracle.size());
    for (int k = 0; same && k < table.size(); ++k) {
      const MergeRule &r = table.rules[k];
      same = r.left == oracle[k].low && r.right == oracle[k].high
             && static_cast<int>(r.order) == oracle[k].order
             && r.new_label == oracle[k].new_label;
    }
    o.require(same, fmt("corpus %d diverges from the recount oracle", trial));
    rounds += table.size();
  }
  const double secs = seconds_since(start);
  o.require(secs < 10.0, fmt("took %.2f s", secs));
  if (o.pass)
    o.detail = fmt("50 corpora, %d rounds identical, %.2f s", rounds, secs);
  return o;
}

Outcome score_formula() {
  Outcome o;
  const auto corpus = parse_all({ "CO", "CO", "CC" });
  double score = NAN;
  PairKey pair;
  train(corpus, 1, 1, [&](const TrainStep &s) {
    score = s.score;
    pair = s.pair;
  });
  const double want = 2.0 / std::sqrt(8.0);
  o.require(pair == PairKey { 6, 8, BondOrder::kSingle }, "best pair is not (C, O, SINGLE)");
  o.require(std::abs(score - want) <= 1e-12, fmt("score %.17g, want %.17g", score, want));
  if (o.pass)
    o.detail = fmt("score(C,O,SINGLE) = %.15f", score);
  return o;
}

Outcome isomer_discrimination() {
  Outcome o;
  const auto start = Clock::now();
  o.require(wl_hash(parse_smiles("C/C=C/C")) != wl_hash(parse_smiles("C/C=C\\C")),
            "butene isomers share a digest");
  o.require(wl_hash(parse_smiles("CCO")) == wl_hash(parse_smiles("OCC")),
            "CCO and OCC differ");
  const std::vector<MolGraph> classes = testing::enumerate_small_molecules(6);
  std::map<MolDigest, std::size_t> seen;
  std::size_t collisions = 0;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (!seen.emplace(wl_hash(classes[i]), i).second) {
      if (collisions == 0)
        o.require(false, "collision: " + write_smiles(classes[seen[wl_hash(classes[i])]])
                             + " vs " + write_smiles(classes[i]));
      ++collisions;
    }
  const double secs = seconds_since(start);
  o.require(secs < 60.0, fmt("took %.2f s", secs));
  if (o.pass)
    o.detail = fmt("%zu classes up to 6 atoms, 0 collisions, %.2f s", classes.size(), secs);
  return o;
}

Outcome dangling_bonds() {
  Outcome o;
  const TokenDictionary dict = build_dictionary(parse_all({ "CO", "OCO", "C=O" }), MergeTable {}, 0);
  std::set<int> ids;
  for (const char *frag: { "*C", "*C*", "*=C" }) {
    const DictEntry *e = dict.find(wl_hash(parse_smiles(frag)));
    o.require(e != nullptr, std::string("no entry for ") + frag);
    if (e)
      ids.insert(e->token_id);
  }
  o.require(ids.size() == 3, fmt("%zu distinct ids", ids.size()));
  if (o.pass)
    o.detail = "*C, *C*, *=C are three entries";
  return o;
}

Outcome round_trip(const std::vector<MolGraph> &suite, const MergeTable &table) {
  Outcome o;
  const auto start = Clock::now();
  const int nw = workers();
  for (int t: { 0, 25, 100 }) {
    const TokenDictionary dict = build_dictionary(suite, table, t, nw);
    std::vector<int> ok(suite.size(), 0);
    parallel_for(suite.size(), nw, [&](std::size_t i) {
      const FragmentSequence seq = serialize(suite[i], table, t, dict);
      ok[i] = !seq.has_unk(dict.specials())
              && wl_hash(reconstruct(seq, dict)) == wl_hash(suite[i]);
    });
    for (std::size_t i = 0; i < suite.size(); ++i)
      o.require(ok[i], fmt("t=%d fails on ", t) + write_smiles(suite[i]));
  }

  // Each prefix refines into the next; consecutive pairs cover all pairs.
  std::vector<int> coarse(suite.size(), 1);
  parallel_for(suite.size(), nw, [&](std::size_t m) {
    std::vector<int> prev = apply_merges(suite[m], table, 0).fragment_of;
    for (int t = 1; t <= table.size() && coarse[m]; ++t) {
      const std::vector<int> next = apply_merges(suite[m], table, t).fragment_of;
      std::map<int, int> image;
      for (std::size_t i = 0; i < prev.size(); ++i)
        if (image.emplace(prev[i], next[i]).first->second != next[i])
          coarse[m] = 0;
      prev = next;
    }
  });
  o.require(std::all_of(coarse.begin(), coarse.end(), [](int c) { return c; }),
            "a longer prefix splits a fragment");

  const double secs = seconds_since(start);
  o.require(secs < 120.0, fmt("took %.1f s", secs));
  if (o.pass)
    o.detail = fmt("%zu public molecules, t in {0,25,100}, prefixes 0..%d, %.1f s",
                   suite.size(), table.size(), secs);
  return o;
}

Outcome coulomb_examples() {
  Outcome o;
  auto graph = [](int n, bool bonded) {
    FragmentGraph g;
    g.node_count = n;
    if (bonded)
      g.edges.push_back({ 0, 1, BondOrder::kSingle });
    g.digests.assign(n, MolDigest {});
    g.charges.assign(n, 0.0);
    return g;
  };
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9; };

  o.require(near(coulomb_features(graph(1, false), { 1.0 }, 3.0).values[0][0], 0.5),
            "single node is not 0.5");
  const auto uniform = coulomb_features(graph(2, true), { 1.0, 1.0 }, 1.0);
  for (const auto &row: uniform.values)
    for (double v: row)
      o.require(near(v, 0.75), "uniform pair is not 0.75");
  const auto unequal = coulomb_features(graph(2, true), { 2.0, 1.0 }, 1.0);
  for (const auto &row: unequal.values) {
    o.require(near(row[0], (0.5 * std::pow(2.0, 2.4) + 2.0) / 2.0), "unequal pair, column 0");
    o.require(near(row[1], 1.25), "unequal pair, column 1");
  }
  if (o.pass)
    o.detail = "single node, uniform pair and unequal pair within 1e-9";
  return o;
}

Outcome charge_conservation() {
  Outcome o;
  std::size_t checked = 0, skipped = 0;
  double worst = 0.0;
  for (const MolGraph &m: testing::sample_molecules(700, 77)) {
    if (checked == 500)
      break;
    PartialCharges q;
    try {
      q = gasteiger_charges(m);
    } catch (const MissingParameters &) {
      ++skipped;
      continue;
    }
    int net = 0;
    for (const Atom &a: m.atoms())
      net += a.formal_charge;
    worst = std::max(worst, std::abs(q.sum() - net));
    ++checked;
  }
  o.require(checked == 500, fmt("only %zu parameterised molecules", checked));
  o.require(worst <= 1e-6, fmt("charge drift %.3g", worst));

  const MolGraph methane = parse_smiles("C");
  const PartialCharges q = gasteiger_charges(methane);
  const auto ref = testing::peoe_oracle(methane);
  o.require(q.atom[0] < 0 && q.hydrogens[0] > 0, "library CH4 signs");
  o.require(ref.heavy[0] < 0 && ref.per_hydrogen[0] > 0, "oracle CH4 signs");
  if (o.pass)
    o.detail = fmt("500 molecules, max |sum q - net| %.2g (%zu skipped for missing "
                   "parameters), CH4 C %.4f H %+.4f",
                   worst, skipped, q.atom[0], q.hydrogens[0] / 4);
  return o;
}

Outcome analogue_goldens(const std::vector<MolGraph> &suite, const MergeTable &table) {
  Outcome o;
  auto has = [](const AnalogueSet &set, const char *smiles) {
    const MolDigest want = wl_hash(parse_smiles(smiles));
    return std::any_of(set.results.begin(), set.results.end(),
                       [&](const Analogue &a) { return a.digest == want; });
  };

  const auto ibu = generate_analogues(parse_smiles("CC(C)Cc1ccc(*)cc1"),
                                      parse_all({ "*Cl", "*C(=O)O" }));
  o.require(has(ibu, "CC(C)Cc1ccc(Cl)cc1"), "ibuprofen chloro product missing");
  o.require(has(ibu, "CC(C)Cc1ccc(cc1)C(=O)O"), "ibuprofen acid product missing");

  const auto dzp = generate_analogues(parse_smiles("CN1C(=O)c2ccccc2C1*"),
                                      parse_all({ "*c1ccc(Cl)cc1" }));
  o.require(has(dzp, "CN1C(=O)c2ccccc2C1c1ccc(Cl)cc1"), "diazepam product missing");

  const int nw = workers();
  std::size_t checks = 0;
  for (int t: { 0, 25, 100 }) {
    std::vector<int> ok(suite.size(), 0);
    parallel_for(suite.size(), nw, [&](std::size_t i) {
      const Fragmentation fr = fragmentize(suite[i], apply_merges(suite[i], table, t));
      ok[i] = wl_hash(testing::weld_back(fr)) == wl_hash(suite[i]);
    });
    for (std::size_t i = 0; i < suite.size(); ++i)
      o.require(ok[i], fmt("weld(fragmentize) differs at t=%d: ", t) + write_smiles(suite[i]));
    checks += suite.size();
  }
  if (o.pass)
    o.detail = fmt("goldens found; weld(fragmentize) identity on %zu molecule/t pairs", checks);
  return o;
}

Outcome mfm_emission() {
  Outcome o;
  const std::vector<SmilesRecord> corpus = testing::sample_corpus(1000, 31);
  const std::vector<MolGraph> mols = graphs_of(corpus);
  const int nw = workers();
  const MergeTable table = train(mols, 50, nw);
  const TokenDictionary dict = build_dictionary(mols, table, 50, nw);

  DatasetOptions opts;
  opts.rng_seed = 12345;
  opts.workers = 1;
  std::ostringstream first, second, parallel;
  const DatasetSummary summary = emit_dataset(corpus, table, 50, dict, first, opts);
  emit_dataset(corpus, table, 50, dict, second, opts);
  opts.workers = nw;
  emit_dataset(corpus, table, 50, dict, parallel, opts);
  o.require(first.str() == second.str(), "re-emission differs");
  o.require(first.str() == parallel.str(), "emission depends on the worker count");

  const int mask = dict.specials().mask;
  std::istringstream in(first.str());
  std::string line;
  std::size_t records = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    ++records;
    const int pos = j.at("masked_position");
    const auto &ids = j.at("token_ids");
    o.require(std::count(ids.begin(), ids.end(), mask) == 1, "record without exactly one MASK");
    o.require(ids.at(pos) == mask, "MASK not at masked_position");
    o.require(ids.at(pos) != j.at("target_token_id"), "target token visible");
    o.require(j.at("digests").at(pos) != j.at("target_digest"), "target digest visible");
  }
  o.require(records == summary.records && records > 0, "record count mismatch");
  if (o.pass)
    o.detail = fmt("%zu records, one MASK each, no leakage, byte-identical", records);
  return o;
}

Outcome statistics_band(const MergeTable &table10k, const std::vector<MolGraph> &sample10k,
                        std::size_t public10k) {
  Outcome o;
  const int nw = workers();
  std::vector<int> counts(sample10k.size());
  parallel_for(sample10k.size(), nw, [&](std::size_t i) {
    counts[i] = apply_merges(sample10k[i], table10k, 100).fragment_count;
  });
  const double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / counts.size();
  o.require(mean >= 4.0 && mean <= 12.0, fmt("mean fragments %.2f outside [4, 12]", mean));

  const std::vector<MolGraph> sample17k = testing::sample_molecules(17000, 2026);
  const MergeTable table17k = train(sample17k, 100, nw);
  const int d0 = build_dictionary(sample17k, table17k, 0, nw).size();
  const int d100 = build_dictionary(sample17k, table17k, 100, nw).size();
  auto within = [](double got, double want) { return got >= want / 10 && got <= want * 10; };
  o.require(within(d0, 98), fmt("t=0 dictionary %d not within 10x of 98", d0));
  o.require(within(d100, 8737), fmt("t=100 dictionary %d not within 10x of 8737", d100));
  o.detail = fmt("mean fragments %.2f on %zu molecules (%zu public); 17k dictionary "
                 "t=0 %d, t=100 %d",
                 mean, sample10k.size(), public10k, d0, d100) + (o.pass ? "" : "; " + o.detail);
  return o;
}

Outcome throughput(const MergeTable &table, const std::vector<MolGraph> &train_set) {
  Outcome o;
  const TokenDictionary dict = build_dictionary(train_set, table, 100, workers());
  std::vector<std::string> smiles;
  for (const SmilesRecord &r: testing::sample_corpus(5000, 404, 60))
    smiles.push_back(r.smiles);

  // Single thread: parse, partition at t=100, cut into fragments and look
  // up token ids.
  std::size_t tokens = 0;
  const auto start = Clock::now();
  for (const std::string &s: smiles) {
    const MolGraph m = parse_smiles(s);
    const Fragmentation fr = fragmentize(m, apply_merges(m, table, 100));
    for (const Fragment &f: fr.fragments)
      tokens += lookup(dict, f) >= 0;
  }
  const double rate = smiles.size() / seconds_since(start);
  o.require(rate >= 1000.0, fmt("%.0f molecules/s", rate));
  o.detail = fmt("%.0f molecules/s on one core (%zu molecules, %zu tokens)", rate,
                 smiles.size(), tokens);
  return o;
}

}  // namespace
}  // namespace fragtok

int main() {
  using namespace fragtok;
  std::vector<std::pair<int, std::function<Outcome()>>> checks;

  // Shared inputs: the first 1000 usable public molecules for the
  // round-trip suite, and a 10k sample for the statistics band.
  std::vector<SmilesRecord> pub = testing::public_records(1);
  pub.resize(std::min<std::size_t>(pub.size(), 1000));
  const std::vector<MolGraph> suite = graphs_of(pub);
  const MergeTable suite_table = train(suite, 100, workers());

  const std::vector<SmilesRecord> records10k = testing::sample_corpus(10000, 2026);
  const std::size_t public10k = std::count_if(records10k.begin(), records10k.end(),
                                              [](const SmilesRecord &r) {
                                                return r.id.rfind("syn_", 0) != 0;
                                              });
  const std::vector<MolGraph> sample10k = graphs_of(records10k);
  const MergeTable table10k = train(sample10k, 100, workers());

  checks.emplace_back(1, oracle_equivalence);
  checks.emplace_back(2, score_formula);
  checks.emplace_back(3, isomer_discrimination);
  checks.emplace_back(4, dangling_bonds);
  checks.emplace_back(5, [&] { return round_trip(suite, suite_table); });
  checks.emplace_back(6, coulomb_examples);
  checks.emplace_back(7, charge_conservation);
  checks.emplace_back(8, [&] { return analogue_goldens(suite, suite_table); });
  checks.emplace_back(9, mfm_emission);
  checks.emplace_back(10, [&] { return statistics_band(table10k, sample10k, public10k); });
  checks.emplace_back(11, [&] { return throughput(table10k, sample10k); });

  int failed = 0;
  for (auto &[id, run]: checks) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
