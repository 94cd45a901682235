//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/dictionary.h"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "fragtok/corpus.h"
#include "fragtok/graph_match.h"
#include "fragtok/smiles.h"

namespace fragtok {
namespace {

const char *stereo_name(BondStereo s) {
  switch (s) {
  case BondStereo::kCis: return "CIS";
  case BondStereo::kTrans: return "TRANS";
  default: return "NONE";
  }
}

BondStereo stereo_from_name(const std::string &s) {
  if (s == "CIS")
    return BondStereo::kCis;
  if (s == "TRANS")
    return BondStereo::kTrans;
  if (s == "NONE")
    return BondStereo::kNone;
  throw FormatError("unknown stereo '" + s + "'");
}

}  // namespace

nlohmann::json graph_to_json(const MolGraph &mol) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Atom &a: mol.atoms())
    atoms.push_back({ { "z", a.atomic_number },
                      { "charge", a.formal_charge },
                      { "explicit_h", a.explicit_h },
                      { "implicit_h", a.implicit_h },
                      { "aromatic", a.aromatic },
                      { "radicals", a.radical_electrons } });
  nlohmann::json bonds = nlohmann::json::array();
  for (const Bond &b: mol.bonds()) {
    nlohmann::json jb = { { "begin", b.begin },
                          { "end", b.end },
                          { "order", bond_order_name(b.order) } };
    if (b.stereo != BondStereo::kNone) {
      jb["stereo"] = stereo_name(b.stereo);
      jb["stereo_atoms"] = { b.stereo_atoms[0], b.stereo_atoms[1] };
    }
    bonds.push_back(std::move(jb));
  }
  return { { "atoms", atoms }, { "bonds", bonds } };
}

MolGraph graph_from_json(const nlohmann::json &atoms_json,
                         const nlohmann::json &bonds_json) {
  std::vector<Atom> atoms;
  for (const auto &ja: atoms_json) {
    Atom a;
    a.atomic_number = ja.at("z").get<int>();
    a.formal_charge = ja.value("charge", 0);
    a.explicit_h = ja.value("explicit_h", 0);
    a.implicit_h = ja.value("implicit_h", 0);
    a.aromatic = ja.value("aromatic", false);
    a.radical_electrons = ja.value("radicals", 0);
    atoms.push_back(a);
  }
  std::vector<Bond> bonds;
  for (const auto &jb: bonds_json) {
    Bond b;
    b.begin = jb.at("begin").get<int>();
    b.end = jb.at("end").get<int>();
    b.order = bond_order_from_name(jb.at("order").get<std::string>());
    if (jb.contains("stereo")) {
      b.stereo = stereo_from_name(jb.at("stereo").get<std::string>());
      b.stereo_atoms = { jb.at("stereo_atoms").at(0).get<int>(),
                         jb.at("stereo_atoms").at(1).get<int>() };
    }
    bonds.push_back(b);
  }
  return MolGraph(std::move(atoms), std::move(bonds));
}

TokenDictionary TokenDictionary::from_entries(std::vector<DictEntry> entries,
                                              int t,
                                              Digest128 merges_fingerprint,
                                              Digest128 corpus_fingerprint) {
  std::sort(entries.begin(), entries.end(),
            [](const DictEntry &a, const DictEntry &b) {
              if (a.count != b.count)
                return a.count > b.count;
              return a.digest < b.digest;
            });
  TokenDictionary d;
  d.t_ = t;
  d.merges_fp_ = merges_fingerprint;
  d.corpus_fp_ = corpus_fingerprint;
  int next = SpecialTokens::kCount;
  for (DictEntry &e: entries)
    e.token_id = next++;
  d.entries_ = std::move(entries);
  d.index();
  return d;
}

void TokenDictionary::index() {
  by_digest_.clear();
  for (std::size_t i = 0; i < entries_.size(); ++i)
    by_digest_.emplace(entries_[i].digest, static_cast<int>(i));
}

int TokenDictionary::lookup(const MolDigest &digest) const {
  const DictEntry *e = find(digest);
  return e != nullptr ? e->token_id : specials_.unk;
}

const DictEntry *TokenDictionary::find(const MolDigest &digest) const {
  auto it = by_digest_.find(digest);
  return it == by_digest_.end() ? nullptr : &entries_[it->second];
}

const DictEntry *TokenDictionary::by_token(int token_id) const {
  const int idx = token_id - SpecialTokens::kCount;
  if (idx < 0 || idx >= size())
    return nullptr;
  return &entries_[idx];
}

nlohmann::json TokenDictionary::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const DictEntry &e: entries_) {
    nlohmann::json g = graph_to_json(e.graph);
    entries.push_back({ { "digest", e.digest.hex() },
                        { "token_id", e.token_id },
                        { "smiles", e.smiles },
                        { "count", e.count },
                        { "atoms", g["atoms"] },
                        { "bonds", g["bonds"] } });
  }
  return { { "format", "fragtok-dictionary" },
           { "version", kVersion },
           { "t", t_ },
           { "merges_fingerprint", merges_fp_.hex() },
           { "corpus_fingerprint", corpus_fp_.hex() },
           { "specials",
             { { "PAD", specials_.pad },
               { "UNK", specials_.unk },
               { "MASK", specials_.mask },
               { "CLS", specials_.cls } } },
           { "entries", entries } };
}

TokenDictionary TokenDictionary::from_json(const nlohmann::json &j) {
  try {
    const int version = j.at("version").get<int>();
    if (version != kVersion)
      throw FormatError("unsupported dictionary version "
                        + std::to_string(version));
    TokenDictionary d;
    d.t_ = j.at("t").get<int>();
    auto mfp = Digest128::from_hex(j.at("merges_fingerprint").get<std::string>());
    auto cfp = Digest128::from_hex(j.at("corpus_fingerprint").get<std::string>());
    if (!mfp || !cfp)
      throw FormatError("bad fingerprint");
    d.merges_fp_ = *mfp;
    d.corpus_fp_ = *cfp;
    const auto &sp = j.at("specials");
    d.specials_ = { sp.at("PAD").get<int>(), sp.at("UNK").get<int>(),
                    sp.at("MASK").get<int>(), sp.at("CLS").get<int>() };

    int expect = SpecialTokens::kCount;
    for (const auto &je: j.at("entries")) {
      DictEntry e;
      auto dg = Digest128::from_hex(je.at("digest").get<std::string>());
      if (!dg)
        throw FormatError("bad entry digest");
      e.digest = *dg;
      e.token_id = je.at("token_id").get<int>();
      if (e.token_id != expect++)
        throw FormatError("token ids are not dense");
      e.smiles = je.at("smiles").get<std::string>();
      e.count = je.at("count").get<std::int64_t>();
      e.graph = graph_from_json(je.at("atoms"), je.at("bonds"));
      d.entries_.push_back(std::move(e));
    }
    d.index();
    return d;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("malformed dictionary: ") + e.what());
  }
}

void TokenDictionary::save(const std::filesystem::path &path) const {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write " + path.string());
  out << to_json().dump(1) << '\n';
  if (!out)
    throw Error("write failed for " + path.string());
}

TokenDictionary TokenDictionary::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Digest128 merges_fingerprint(const MergeTable &table, int t) {
  DigestBuilder db;
  db.u8('T').u32(static_cast<std::uint32_t>(t))
      .i32(table.max_initial_label);
  for (int k = 0; k < t && k < table.size(); ++k) {
    const MergeRule &r = table.rules[k];
    db.i32(r.left).i32(r.right).u8(static_cast<std::uint8_t>(r.order))
        .i32(r.new_label);
  }
  return db.finish();
}

TokenDictionary build_dictionary(std::span<const MolGraph> corpus,
                                 const MergeTable &table, int t,
                                 int workers) {
  if (t < 0 || t > table.size())
    throw GranularityOutOfRange(t, table.size());

  std::vector<std::vector<Fragment>> per_mol(corpus.size());
  std::vector<std::vector<std::string>> per_smiles(corpus.size());
  parallel_for(corpus.size(), workers, [&](std::size_t i) {
    Fragmentation fr = fragmentize(corpus[i], apply_merges(corpus[i], table, t));
    for (Fragment &f: fr.fragments)
      per_smiles[i].push_back(write_smiles(f.graph));
    per_mol[i] = std::move(fr.fragments);
  });

  struct Acc {
    std::string smiles;
    const MolGraph *graph;
    std::int64_t count = 0;
  };
  std::map<MolDigest, Acc> acc;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t k = 0; k < per_mol[i].size(); ++k) {
      const Fragment &f = per_mol[i][k];
      auto [it, fresh] = acc.try_emplace(f.digest);
      Acc &a = it->second;
      // Symmetric atoms can make one graph print two ways, so only a
      // failed isomorphism counts as a collision.
      if (!fresh && a.smiles != per_smiles[i][k]
          && !find_isomorphism(f.graph, *a.graph)) {
        log_event("warning", "digest_collision",
                  { { "digest", f.digest.hex() },
                    { "kept", per_smiles[i][k] },
                    { "dropped", a.smiles } });
        a.smiles = per_smiles[i][k];
        a.graph = &f.graph;
      }
      if (fresh) {
        a.smiles = per_smiles[i][k];
        a.graph = &f.graph;
      }
      ++a.count;
    }
  }

  std::vector<DictEntry> entries;
  entries.reserve(acc.size());
  for (auto &[digest, a]: acc) {
    DictEntry e;
    e.digest = digest;
    e.smiles = a.smiles;
    e.count = a.count;
    e.graph = parse_smiles(a.smiles);
    if (wl_hash(e.graph) != digest) {
      log_event("warning", "smiles_digest_mismatch",
                { { "digest", digest.hex() }, { "smiles", a.smiles } });
      e.graph = *a.graph;
    }
    entries.push_back(std::move(e));
  }
  return TokenDictionary::from_entries(std::move(entries), t,
                                       merges_fingerprint(table, t),
                                       corpus_fingerprint(corpus, workers));
}

int lookup(const TokenDictionary &dict, const Fragment &frag) {
  return dict.lookup(frag.digest);
}

}  // namespace fragtok
