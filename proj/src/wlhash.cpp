//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/wlhash.h"

#include <algorithm>
#include <array>

#include "fragtok/error.h"

namespace fragtok {

Digest128 atom_seed_label(const Atom &atom) {
  return DigestBuilder()
      .u8('A')
      .u32(static_cast<std::uint32_t>(atom.atomic_number))
      .u8(static_cast<std::uint8_t>(atom.hybridization))
      .u32(static_cast<std::uint32_t>(atom.radical_electrons))
      .u32(static_cast<std::uint32_t>(atom.total_h()))
      .i32(atom.formal_charge)
      .u8(atom.aromatic ? 1 : 0)
      .u8(atom.is_dummy() ? 1 : 0)
      .finish();
}

Digest128 bond_label(const Bond &bond, BondStereo stereo) {
  return DigestBuilder()
      .u8('B')
      .u8(static_cast<std::uint8_t>(bond.order))
      .u8(bond.conjugated ? 1 : 0)
      .u8(static_cast<std::uint8_t>(stereo))
      .u32(static_cast<std::uint32_t>(bond.ring_size))
      .finish();
}

Digest128 bond_label(const Bond &bond) {
  return bond_label(bond, bond.stereo);
}

namespace {

std::vector<Digest128> refine(const MolGraph &mol,
                              const std::vector<Digest128> &blabels,
                              int iterations) {
  std::vector<Digest128> cur;
  cur.reserve(mol.num_atoms());
  for (const Atom &a: mol.atoms())
    cur.push_back(atom_seed_label(a));

  std::vector<Digest128> next(mol.num_atoms());
  std::vector<std::array<std::uint8_t, 32>> nbrs;
  for (int t = 1; t <= iterations; ++t) {
    for (int i = 0; i < mol.num_atoms(); ++i) {
      nbrs.clear();
      for (int bi: mol.bonds_of(i)) {
        std::array<std::uint8_t, 32> pair;
        const Digest128 &nl = cur[mol.bond(bi).other(i)];
        std::copy(blabels[bi].bytes.begin(), blabels[bi].bytes.end(),
                  pair.begin());
        std::copy(nl.bytes.begin(), nl.bytes.end(), pair.begin() + 16);
        nbrs.push_back(pair);
      }
      std::sort(nbrs.begin(), nbrs.end());

      DigestBuilder db;
      db.u8('N').digest(cur[i]).u32(static_cast<std::uint32_t>(nbrs.size()));
      for (const auto &p: nbrs)
        db.bytes(p);
      next[i] = db.finish();
    }
    cur.swap(next);
  }
  return cur;
}

BondStereo flip(BondStereo s) {
  return s == BondStereo::kCis ? BondStereo::kTrans : BondStereo::kCis;
}

}  // namespace

std::vector<BondStereo> canonical_stereo(const MolGraph &mol) {
  std::vector<BondStereo> out(mol.num_bonds(), BondStereo::kNone);
  bool any = false;
  for (const Bond &b: mol.bonds())
    any = any || b.stereo != BondStereo::kNone;
  if (!any)
    return out;

  std::vector<Digest128> plain;
  for (const Bond &b: mol.bonds())
    plain.push_back(bond_label(b, BondStereo::kNone));
  const std::vector<Digest128> labels =
      refine(mol, plain, kDefaultWLIterations);

  // Highest-labelled neighbour of `atom` other than `partner`; -1 when the
  // top label is shared and the reference is therefore not unique.
  auto pick = [&](int atom, int partner) {
    int best = -1;
    bool tied = false;
    for (int bi: mol.bonds_of(atom)) {
      const int w = mol.bond(bi).other(atom);
      if (w == partner)
        continue;
      if (best < 0 || labels[best] < labels[w]) {
        best = w;
        tied = false;
      } else if (labels[w] == labels[best]) {
        tied = true;
      }
    }
    return tied ? -1 : best;
  };

  for (int bi = 0; bi < mol.num_bonds(); ++bi) {
    const Bond &b = mol.bond(bi);
    if (b.stereo == BondStereo::kNone)
      continue;
    const int ra = pick(b.begin, b.end), rb = pick(b.end, b.begin);
    if (ra < 0 || rb < 0)
      continue;
    BondStereo s = b.stereo;
    if (ra != b.stereo_atoms[0])
      s = flip(s);
    if (rb != b.stereo_atoms[1])
      s = flip(s);
    out[bi] = s;
  }
  return out;
}

std::vector<Digest128> bond_labels(const MolGraph &mol) {
  const std::vector<BondStereo> stereo = canonical_stereo(mol);
  std::vector<Digest128> out;
  out.reserve(mol.num_bonds());
  for (int bi = 0; bi < mol.num_bonds(); ++bi)
    out.push_back(bond_label(mol.bond(bi), stereo[bi]));
  return out;
}

WLLabels wl_refine(const MolGraph &mol, int iterations) {
  WLLabels out;
  out.per_node = refine(mol, bond_labels(mol), iterations);
  out.iteration = iterations;
  return out;
}

Digest128 multiset_digest(std::vector<Digest128> items, std::uint8_t tag) {
  std::sort(items.begin(), items.end());
  DigestBuilder db;
  db.u8(tag).u32(static_cast<std::uint32_t>(items.size()));
  for (const Digest128 &d: items)
    db.digest(d);
  return db.finish();
}

MolDigest wl_hash(const MolGraph &mol, int iterations) {
  if (mol.empty())
    throw InvalidGraph("cannot hash an empty graph");
  return multiset_digest(wl_refine(mol, iterations).per_node, 'M');
}

}  // namespace fragtok
