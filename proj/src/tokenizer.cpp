//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/tokenizer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include "fragtok/corpus.h"
#include "fragtok/wlhash.h"

namespace fragtok {
namespace {

struct PairKeyHash {
  std::size_t operator()(const PairKey &k) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(k.low);
    h = h * 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint32_t>(k.high);
    h = h * 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint8_t>(k.order);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

struct FastCounts {
  std::unordered_map<PairKey, std::int64_t, PairKeyHash> pairs;
  std::unordered_map<int, std::int64_t> nodes;

  void add(const FastCounts &o) {
    for (const auto &[k, v]: o.pairs)
      pairs[k] += v;
    for (const auto &[k, v]: o.nodes)
      nodes[k] += v;
  }

  PairCounts ordered() const {
    PairCounts pc;
    for (const auto &[k, v]: pairs)
      pc.pair_count.emplace(k, v);
    for (const auto &[k, v]: nodes)
      pc.node_count.emplace(k, v);
    return pc;
  }
};

FastCounts count_parallel(const std::vector<LabeledGraph> &graphs,
                          int workers) {
  workers = std::max(1, workers);
  const std::size_t n = graphs.size();
  const std::size_t shards =
      std::min<std::size_t>(workers, std::max<std::size_t>(1, n / 256));
  std::vector<FastCounts> partial(shards);
  parallel_for(shards, static_cast<int>(shards), [&](std::size_t s) {
    FastCounts &fc = partial[s];
    const std::size_t begin = n * s / shards, end = n * (s + 1) / shards;
    for (std::size_t i = begin; i < end; ++i)
      graphs[i].for_each_pair([&](const PairKey &k, int la, int lb) {
        ++fc.pairs[k];
        ++fc.nodes[la];
        ++fc.nodes[lb];
      });
  });
  FastCounts total;
  for (const FastCounts &fc: partial)
    total.add(fc);
  return total;
}

}  // namespace

void PairCounts::merge(const PairCounts &other) {
  for (const auto &[k, v]: other.pair_count)
    pair_count[k] += v;
  for (const auto &[k, v]: other.node_count)
    node_count[k] += v;
}

LabeledGraph::LabeledGraph(const MolGraph &mol, int max_initial_label)
    : parent_(mol.num_atoms()), label_(mol.num_atoms()),
      stamp_(mol.num_atoms(), 0) {
  std::iota(parent_.begin(), parent_.end(), 0);
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const int z = mol.atom(i).atomic_number;
    label_[i] = z <= max_initial_label ? z : -z;
  }

  edges_.reserve(mol.num_bonds());
  for (const Bond &b: mol.bonds())
    edges_.push_back({ std::min(b.begin, b.end), std::max(b.begin, b.end),
                       b.order });
  std::sort(edges_.begin(), edges_.end(), [](const Edge &a, const Edge &b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
}

int LabeledGraph::group_of(int atom) const {
  int r = atom;
  while (parent_[r] != r)
    r = parent_[r];
  while (parent_[atom] != r) {
    int next = parent_[atom];
    parent_[atom] = r;
    atom = next;
  }
  return r;
}

void LabeledGraph::count_into(PairCounts &counts) const {
  for_each_pair([&](const PairKey &k, int la, int lb) {
    ++counts.pair_count[k];
    ++counts.node_count[la];
    ++counts.node_count[lb];
  });
}

int LabeledGraph::apply(const MergeRule &rule) {
  ++pass_;
  int merged = 0;
  const PairKey want = rule.key();
  for (const Edge &e: edges_) {
    if (e.order != want.order)
      continue;
    const int gu = group_of(e.u), gv = group_of(e.v);
    if (gu == gv || stamp_[gu] == pass_ || stamp_[gv] == pass_)
      continue;
    if (PairKey::make(label_[gu], label_[gv], e.order) != want)
      continue;
    parent_[gv] = gu;
    label_[gu] = rule.new_label;
    stamp_[gu] = pass_;
    ++merged;
  }
  return merged;
}

std::vector<int> LabeledGraph::fragment_ids() const {
  const int n = static_cast<int>(parent_.size());
  std::vector<int> root_id(n, -1), out(n);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const int g = group_of(i);
    if (root_id[g] < 0)
      root_id[g] = next++;
    out[i] = root_id[g];
  }
  return out;
}

PairCounts count_pairs(std::span<const LabeledGraph> corpus) {
  PairCounts pc;
  for (const LabeledGraph &g: corpus)
    g.count_into(pc);
  return pc;
}

std::map<PairKey, double> score_pairs(const PairCounts &counts) {
  std::map<PairKey, double> scores;
  for (const auto &[key, count]: counts.pair_count) {
    if (count <= 0)
      continue;
    const double nl = static_cast<double>(counts.node_count.at(key.low));
    const double nh = static_cast<double>(counts.node_count.at(key.high));
    scores.emplace(key, static_cast<double>(count) / std::sqrt(nl * nh));
  }
  return scores;
}

std::optional<PairKey> best_pair(const std::map<PairKey, double> &scores) {
  std::optional<PairKey> best;
  double best_score = 0.0;
  // Iteration is in key order, so strict '>' keeps the smallest key on ties.
  for (const auto &[key, score]: scores) {
    if (!best || score > best_score) {
      best = key;
      best_score = score;
    }
  }
  return best;
}

std::optional<PairKey> best_pair(const PairCounts &counts) {
  using Wide = unsigned __int128;
  std::optional<PairKey> best;
  Wide best_num = 0, best_den = 1;
  for (const auto &[key, count]: counts.pair_count) {
    if (count <= 0)
      continue;
    // score^2 = count^2 / (n_low * n_high), compared by cross-multiplying.
    const Wide num = static_cast<Wide>(count) * static_cast<Wide>(count);
    const Wide den = static_cast<Wide>(counts.node_count.at(key.low))
                     * static_cast<Wide>(counts.node_count.at(key.high));
    if (!best || num * best_den > best_num * den) {
      best = key;
      best_num = num;
      best_den = den;
    }
  }
  return best;
}

Digest128 corpus_fingerprint(std::span<const MolGraph> corpus, int workers) {
  std::vector<Digest128> digests(corpus.size());
  parallel_for(corpus.size(), workers,
               [&](std::size_t i) { digests[i] = wl_hash(corpus[i]); });
  return multiset_digest(std::move(digests), 'C');
}

MergeTable train(std::span<const MolGraph> corpus, int num_iter, int workers,
                 const TrainObserver &observer) {
  if (corpus.empty())
    throw EmptyCorpus();

  MergeTable table;
  for (const MolGraph &m: corpus)
    for (const Atom &a: m.atoms())
      table.max_initial_label =
          std::max(table.max_initial_label, a.atomic_number);
  table.corpus_fingerprint = corpus_fingerprint(corpus, workers);

  std::vector<LabeledGraph> graphs;
  graphs.reserve(corpus.size());
  for (const MolGraph &m: corpus)
    graphs.emplace_back(m, table.max_initial_label);

  for (int it = 0; it < num_iter; ++it) {
    const PairCounts counts = count_parallel(graphs, workers).ordered();
    const auto scores = score_pairs(counts);
    const auto best = best_pair(counts);
    if (!best)
      break;

    MergeRule rule { best->low, best->high, best->order,
                     table.max_initial_label + 1 + it };
    table.rules.push_back(rule);
    parallel_for(graphs.size(), workers,
                 [&](std::size_t i) { graphs[i].apply(rule); });

    if (observer)
      observer(TrainStep { it, *best, scores.at(*best),
                           counts.pair_count.at(*best), rule.new_label });
  }
  return table;
}

Partition apply_merges(const MolGraph &mol, const MergeTable &table, int t) {
  if (t < 0 || t > table.size())
    throw GranularityOutOfRange(t, table.size());

  LabeledGraph g(mol, table.max_initial_label);
  for (int k = 0; k < t; ++k)
    g.apply(table.rules[k]);

  Partition p;
  p.fragment_of = g.fragment_ids();
  p.fragment_count =
      p.fragment_of.empty()
          ? 0
          : *std::max_element(p.fragment_of.begin(), p.fragment_of.end()) + 1;
  return p;
}

nlohmann::json MergeTable::to_json() const {
  nlohmann::json rules_json = nlohmann::json::array();
  for (const MergeRule &r: rules)
    rules_json.push_back({ { "left", r.left },
                           { "right", r.right },
                           { "order", bond_order_name(r.order) },
                           { "new", r.new_label } });
  return { { "format", "fragtok-merges" },
           { "version", version },
           { "corpus_fingerprint", corpus_fingerprint.hex() },
           { "max_initial_label", max_initial_label },
           { "rules", rules_json } };
}

MergeTable MergeTable::from_json(const nlohmann::json &j) {
  try {
    MergeTable t;
    t.version = j.at("version").get<int>();
    if (t.version != kVersion)
      throw FormatError("unsupported merge table version "
                        + std::to_string(t.version));
    auto fp = Digest128::from_hex(j.at("corpus_fingerprint").get<std::string>());
    if (!fp)
      throw FormatError("bad corpus_fingerprint");
    t.corpus_fingerprint = *fp;
    t.max_initial_label = j.at("max_initial_label").get<int>();

    int expect = t.max_initial_label + 1;
    for (const auto &r: j.at("rules")) {
      MergeRule rule { r.at("left").get<int>(), r.at("right").get<int>(),
                       bond_order_from_name(r.at("order").get<std::string>()),
                       r.at("new").get<int>() };
      if (rule.new_label != expect++ || rule.left > rule.right
          || rule.right >= rule.new_label)
        throw FormatError("merge rules are not densely ordered");
      t.rules.push_back(rule);
    }
    return t;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("malformed merge table: ") + e.what());
  }
}

void MergeTable::save(const std::filesystem::path &path) const {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
  if (!out)
    throw Error("write failed for " + path.string());
}

MergeTable MergeTable::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace fragtok
