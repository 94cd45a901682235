//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/sequence.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "fragtok/graph_match.h"

namespace fragtok {

bool FragmentSequence::has_unk(const SpecialTokens &sp) const {
  for (int id: token_ids)
    if (id == sp.unk)
      return true;
  return false;
}

FragmentSequence serialize(const MolGraph &mol, const MergeTable &table, int t,
                           const TokenDictionary &dict,
                           const SequenceOptions &opts) {
  const Fragmentation fr = fragmentize(mol, apply_merges(mol, table, t));
  const int n = static_cast<int>(fr.fragments.size());

  FragmentSequence seq;
  seq.t = t;
  std::vector<std::vector<int>> to_dict(n);
  for (int i = 0; i < n; ++i) {
    const Fragment &f = fr.fragments[i];
    seq.digests.push_back(f.digest);
    seq.token_ids.push_back(dict.lookup(f.digest));
    const DictEntry *e = dict.find(f.digest);
    if (e == nullptr) {
      to_dict[i].resize(f.graph.num_atoms());
      for (int a = 0; a < f.graph.num_atoms(); ++a)
        to_dict[i][a] = a;
      continue;
    }
    auto m = find_isomorphism(f.graph, e->graph);
    if (!m)
      throw InvalidGraph("fragment " + f.digest.hex()
                         + " does not match its dictionary graph");
    to_dict[i] = std::move(*m);
  }

  auto map_atom = [&](int frag, int atom) {
    return atom < 0 ? -1 : to_dict[frag][atom];
  };
  for (FragmentLink l: fr.links) {
    l.ref_a = map_atom(l.frag_a, l.ref_a);
    l.ref_b = map_atom(l.frag_b, l.ref_b);
    l.dummy_a = map_atom(l.frag_a, l.dummy_a);
    l.dummy_b = map_atom(l.frag_b, l.dummy_b);
    seq.links.push_back(l);
  }

  seq.fragment_graph = FragmentGraph::from_fragmentation(fr);
  seq.charges = fragment_charges(gasteiger_charges_or_nan(mol), fr);
  seq.fragment_graph.charges = seq.charges;
  seq.hop = hop_matrix(seq.fragment_graph);
  seq.roles = wl_role_ids(seq.fragment_graph);
  seq.coulomb =
      coulomb_features(seq.fragment_graph,
                       fragment_z(fr, seq.charges, opts.z_mode), opts.d0);
  seq.descriptors = descriptors(mol);
  return seq;
}

MolGraph reconstruct(const FragmentSequence &seq, const TokenDictionary &dict) {
  const int n = seq.size();
  if (n == 0)
    throw LinkMismatch("empty sequence");

  std::vector<const MolGraph *> graphs;
  std::vector<int> offset;
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  for (int i = 0; i < n; ++i) {
    const DictEntry *e = seq.token_ids[i] == dict.specials().unk
                             ? nullptr
                             : dict.by_token(seq.token_ids[i]);
    if (e == nullptr)
      throw UnreconstructableUNK(i);
    const int off = static_cast<int>(atoms.size());
    offset.push_back(off);
    graphs.push_back(&e->graph);
    atoms.insert(atoms.end(), e->graph.atoms().begin(), e->graph.atoms().end());
    for (Bond b: e->graph.bonds()) {
      b.begin += off;
      b.end += off;
      if (b.stereo != BondStereo::kNone)
        b.stereo_atoms = { b.stereo_atoms[0] + off, b.stereo_atoms[1] + off };
      bonds.push_back(b);
    }
  }
  const MolGraph joined(std::move(atoms), std::move(bonds));

  auto global = [&](int frag, int atom, bool allow_none) {
    if (frag < 0 || frag >= n)
      throw LinkMismatch("link refers to fragment " + std::to_string(frag));
    if (atom < 0 && allow_none)
      return -1;
    if (atom < 0 || atom >= graphs[frag]->num_atoms())
      throw LinkMismatch("link refers to atom " + std::to_string(atom)
                         + " of fragment " + std::to_string(frag));
    return offset[frag] + atom;
  };

  std::vector<DummyJoin> joins;
  for (const FragmentLink &l: seq.links) {
    DummyJoin j;
    j.dummy_a = global(l.frag_a, l.dummy_a, false);
    j.dummy_b = global(l.frag_b, l.dummy_b, false);
    j.stereo = l.stereo;
    j.ref_a = global(l.frag_a, l.ref_a, true);
    j.ref_b = global(l.frag_b, l.ref_b, true);
    const int ba = joined.bonds_of(j.dummy_a).empty()
                       ? -1
                       : joined.bonds_of(j.dummy_a)[0];
    if (ba >= 0 && joined.bond(ba).order != l.order)
      throw LinkMismatch("link order " + bond_order_name(l.order)
                         + " differs from its attachment bond");
    joins.push_back(j);
  }

  try {
    return join_dummies(joined, joins);
  } catch (const OrderMismatch &e) {
    throw LinkMismatch(e.what());
  } catch (const InvalidGraph &e) {
    throw LinkMismatch(e.what());
  }
}

MFMRecord make_mfm_record(const FragmentSequence &seq, int position,
                          std::uint64_t rng_seed, const SpecialTokens &sp) {
  const int n = seq.size();
  if (n < 2)
    throw SequenceTooShort();
  if (position < 0) {
    const Digest128 d =
        DigestBuilder().u8('S').u64(rng_seed).str(seq.mol_id).finish();
    std::mt19937_64 gen(d.low64());
    position = static_cast<int>(gen() % static_cast<std::uint64_t>(n));
  }
  if (position >= n)
    throw std::out_of_range("masked position " + std::to_string(position)
                            + " outside sequence of length "
                            + std::to_string(n));

  MFMRecord rec;
  rec.sequence = seq;
  rec.masked_position = position;
  rec.target_token_id = seq.token_ids[position];
  rec.target_digest = seq.digests[position];
  rec.sequence.token_ids[position] = sp.mask;
  rec.sequence.digests[position] = MolDigest {};
  return rec;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

double round_real(double v) {
  return std::isfinite(v) ? std::strtod(format_real(v).c_str(), nullptr) : v;
}

void round_reals(nlohmann::json &j) {
  if (j.is_number_float())
    j = round_real(j.get<double>());
  else if (j.is_structured())
    for (auto &v: j)
      round_reals(v);
}

nlohmann::json base_json(const FragmentSequence &seq, int hidden) {
  nlohmann::json j;
  j["mol_id"] = seq.mol_id;
  j["t"] = seq.t;
  j["token_ids"] = seq.token_ids;
  auto digests = nlohmann::json::array();
  for (int i = 0; i < seq.size(); ++i)
    digests.push_back(i == hidden ? std::string() : seq.digests[i].hex());
  j["digests"] = std::move(digests);
  auto edges = nlohmann::json::array();
  for (const FragmentEdge &e: seq.fragment_graph.edges)
    edges.push_back({ e.a, e.b, static_cast<int>(e.order) });
  j["edges"] = std::move(edges);
  j["hop"] = seq.hop;
  j["roles"] = seq.roles;
  j["coulomb_row_means"] = seq.coulomb.row_means();
  j["charges"] = seq.charges;
  j["descriptors"] = seq.descriptors;
  j["coulomb_bucket_width"] = kCoulombBucketWidth;
  j["coulomb_buckets"] = seq.coulomb.buckets(kCoulombBucketWidth);
  return j;
}

}  // namespace

nlohmann::json record_to_json(const MFMRecord &rec) {
  nlohmann::json j = base_json(rec.sequence, rec.masked_position);
  j["masked_position"] = rec.masked_position;
  j["masked_positions"] = { rec.masked_position };
  j["target_token_id"] = rec.target_token_id;
  j["target_digest"] = rec.target_digest.hex();
  return j;
}

nlohmann::json sequence_to_json(const FragmentSequence &seq) {
  nlohmann::json j = base_json(seq, -1);
  j["masked_position"] = nullptr;
  j["masked_positions"] = nlohmann::json::array();
  j["target_token_id"] = nullptr;
  j["target_digest"] = nullptr;
  return j;
}

std::string dump_line(const nlohmann::json &j) {
  nlohmann::json copy = j;
  round_reals(copy);
  return copy.dump();
}

}  // namespace fragtok
