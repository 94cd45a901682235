//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/fragment.h"

#include <algorithm>
#include <string>

namespace fragtok {

Fragmentation fragmentize(const MolGraph &mol, const Partition &part) {
  const int n = mol.num_atoms();
  if (static_cast<int>(part.fragment_of.size()) != n)
    throw InvalidGraph("partition does not match molecule");

  const int nf = part.fragment_count;
  std::vector<std::vector<int>> members(nf);
  std::vector<int> local(n);
  for (int i = 0; i < n; ++i) {
    const int f = part.fragment_of[i];
    local[i] = static_cast<int>(members[f].size());
    members[f].push_back(i);
  }

  std::vector<std::vector<Atom>> atoms(nf);
  std::vector<std::vector<Bond>> bonds(nf);
  for (int f = 0; f < nf; ++f)
    for (int a: members[f])
      atoms[f].push_back(mol.atom(a));

  // dummy_for[b][0]: dummy in begin's fragment standing for end, [1] the
  // reverse.
  std::vector<std::array<int, 2>> dummy_for(mol.num_bonds(), { -1, -1 });
  std::vector<int> bond_local(mol.num_bonds(), -1);

  Fragmentation out;
  for (int bi = 0; bi < mol.num_bonds(); ++bi) {
    const Bond &b = mol.bond(bi);
    const int fa = part.fragment_of[b.begin], fb = part.fragment_of[b.end];
    if (fa == fb) {
      Bond nb;
      nb.begin = local[b.begin];
      nb.end = local[b.end];
      nb.order = b.order;
      bond_local[bi] = static_cast<int>(bonds[fa].size());
      bonds[fa].push_back(nb);
      continue;
    }

    const int da = static_cast<int>(atoms[fa].size());
    atoms[fa].push_back(Atom::dummy());
    bonds[fa].push_back(Bond { local[b.begin], da, b.order });
    const int db = static_cast<int>(atoms[fb].size());
    atoms[fb].push_back(Atom::dummy());
    bonds[fb].push_back(Bond { local[b.end], db, b.order });
    dummy_for[bi] = { da, db };
    out.links.push_back({ fa, da, fb, db, b.order });
  }

  // Position of `nbr`, seen from `atom`, inside atom's fragment.
  auto represent = [&](int atom, int nbr) {
    if (part.fragment_of[atom] == part.fragment_of[nbr])
      return local[nbr];
    const int bi = mol.find_bond(atom, nbr);
    return mol.bond(bi).begin == atom ? dummy_for[bi][0] : dummy_for[bi][1];
  };

  std::size_t link_idx = 0;
  for (int bi = 0; bi < mol.num_bonds(); ++bi) {
    const Bond &b = mol.bond(bi);
    const bool cut = bond_local[bi] < 0;
    if (b.stereo != BondStereo::kNone) {
      const int ra = represent(b.begin, b.stereo_atoms[0]);
      const int rb = represent(b.end, b.stereo_atoms[1]);
      if (cut) {
        FragmentLink &l = out.links[link_idx];
        l.stereo = b.stereo;
        l.ref_a = ra;
        l.ref_b = rb;
      } else {
        Bond &nb = bonds[part.fragment_of[b.begin]][bond_local[bi]];
        nb.stereo = b.stereo;
        nb.stereo_atoms = { ra, rb };
      }
    }
    if (cut)
      ++link_idx;
  }

  out.fragments.reserve(nf);
  for (int f = 0; f < nf; ++f) {
    Fragment frag;
    frag.graph = MolGraph(std::move(atoms[f]), std::move(bonds[f]));
    frag.digest = wl_hash(frag.graph);
    frag.atom_map = std::move(members[f]);
    out.fragments.push_back(std::move(frag));
  }
  return out;
}

MolGraph disjoint_union(const MolGraph &a, const MolGraph &b) {
  std::vector<Atom> atoms(a.atoms().begin(), a.atoms().end());
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  std::vector<Bond> bonds(a.bonds().begin(), a.bonds().end());
  const int off = a.num_atoms();
  for (Bond bb: b.bonds()) {
    bb.begin += off;
    bb.end += off;
    if (bb.stereo != BondStereo::kNone)
      bb.stereo_atoms = { bb.stereo_atoms[0] + off, bb.stereo_atoms[1] + off };
    bonds.push_back(bb);
  }
  return MolGraph(std::move(atoms), std::move(bonds));
}

MolGraph join_dummies(const MolGraph &mol, std::span<const DummyJoin> joins) {
  const int n = mol.num_atoms();
  std::vector<int> stands_for(n, -1);
  std::vector<bool> drop_bond(mol.num_bonds(), false);

  auto sole_bond = [&](int d) {
    if (d < 0 || d >= n || !mol.atom(d).is_dummy() || mol.degree(d) != 1)
      throw InvalidGraph("atom " + std::to_string(d)
                         + " is not a dummy with exactly one bond");
    return mol.bonds_of(d)[0];
  };

  struct NewBond {
    int a, b;
    BondOrder order;
    BondStereo stereo;
    int ra, rb;
  };
  std::vector<NewBond> added;

  for (const DummyJoin &j: joins) {
    const int ba = sole_bond(j.dummy_a), bb = sole_bond(j.dummy_b);
    if (stands_for[j.dummy_a] >= 0 || stands_for[j.dummy_b] >= 0
        || j.dummy_a == j.dummy_b)
      throw InvalidGraph("dummy atom paired twice");
    if (mol.bond(ba).order != mol.bond(bb).order)
      throw OrderMismatch("cannot join a "
                          + bond_order_name(mol.bond(ba).order)
                          + " attachment to a "
                          + bond_order_name(mol.bond(bb).order) + " one");
    const int na = mol.bond(ba).other(j.dummy_a);
    const int nb = mol.bond(bb).other(j.dummy_b);
    stands_for[j.dummy_a] = nb;
    stands_for[j.dummy_b] = na;
    drop_bond[ba] = drop_bond[bb] = true;
    added.push_back({ na, nb, mol.bond(ba).order, j.stereo, j.ref_a, j.ref_b });
  }

  std::vector<int> new_index(n, -1);
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) {
    if (stands_for[i] >= 0)
      continue;
    new_index[i] = static_cast<int>(atoms.size());
    atoms.push_back(mol.atom(i));
  }
  auto remap = [&](int atom) {
    if (stands_for[atom] >= 0)
      atom = stands_for[atom];
    return new_index[atom];
  };

  std::vector<Bond> bonds;
  for (int bi = 0; bi < mol.num_bonds(); ++bi) {
    if (drop_bond[bi])
      continue;
    Bond b = mol.bond(bi);
    b.begin = new_index[b.begin];
    b.end = new_index[b.end];
    if (b.begin < 0 || b.end < 0)
      throw InvalidGraph("joined dummy atom still bonded");
    if (b.stereo != BondStereo::kNone)
      b.stereo_atoms = { remap(b.stereo_atoms[0]), remap(b.stereo_atoms[1]) };
    bonds.push_back(b);
  }
  for (const NewBond &nb: added) {
    Bond b;
    b.begin = new_index[nb.a];
    b.end = new_index[nb.b];
    if (b.begin < 0 || b.end < 0)
      throw InvalidGraph("dummy atom joined to another dummy");
    b.order = nb.order;
    if (nb.stereo != BondStereo::kNone && nb.ra >= 0 && nb.rb >= 0) {
      b.stereo = nb.stereo;
      b.stereo_atoms = { remap(nb.ra), remap(nb.rb) };
    }
    bonds.push_back(b);
  }
  return MolGraph(std::move(atoms), std::move(bonds));
}

}  // namespace fragtok
