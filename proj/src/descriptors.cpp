//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/element.h"
#include "fragtok/sequence.h"

namespace fragtok {

const std::array<const char *, kDescriptorCount> kDescriptorNames {
  "heavy_atoms",  "molecular_weight", "ring_count",     "aromatic_atoms",
  "hbond_donors", "hbond_acceptors",  "rotatable_bonds", "net_charge",
  "fraction_sp3_carbon", "halogens",
};

namespace {

bool is_heavy(const Atom &a) {
  return a.atomic_number > 1;
}

bool is_halogen(int z) {
  return z == 9 || z == 17 || z == 35 || z == 53 || z == 85;
}

}  // namespace

DescriptorVector descriptors(const MolGraph &mol) {
  const int n = mol.num_atoms();
  std::vector<int> heavy_degree(n, 0);
  std::vector<int> h_neighbours(n, 0);
  for (const Bond &b: mol.bonds()) {
    for (auto [u, v]: { std::pair { b.begin, b.end },
                        std::pair { b.end, b.begin } }) {
      if (is_heavy(mol.atom(v)))
        ++heavy_degree[u];
      else if (mol.atom(v).atomic_number == 1)
        ++h_neighbours[u];
    }
  }

  double heavy = 0, weight = 0, aromatic = 0, donors = 0, acceptors = 0;
  double charge = 0, carbons = 0, sp3_carbons = 0, halogens = 0;
  for (int i = 0; i < n; ++i) {
    const Atom &a = mol.atom(i);
    if (a.is_dummy())
      continue;
    if (const Element *e = find_element(a.atomic_number))
      weight += e->atomic_weight;
    weight += a.total_h() * kHydrogenWeight;
    charge += a.formal_charge;
    if (!is_heavy(a))
      continue;
    ++heavy;
    if (a.aromatic)
      ++aromatic;
    if (a.atomic_number == 7 || a.atomic_number == 8) {
      ++acceptors;
      if (a.total_h() + h_neighbours[i] > 0)
        ++donors;
    }
    if (a.atomic_number == 6) {
      ++carbons;
      if (a.hybridization == Hybridization::kSP3)
        ++sp3_carbons;
    }
    if (is_halogen(a.atomic_number))
      ++halogens;
  }

  // Acyclic single bonds between two non-terminal heavy atoms.
  double rotatable = 0;
  for (const Bond &b: mol.bonds())
    if (b.order == BondOrder::kSingle && !b.in_ring
        && is_heavy(mol.atom(b.begin)) && is_heavy(mol.atom(b.end))
        && heavy_degree[b.begin] >= 2 && heavy_degree[b.end] >= 2)
      ++rotatable;

  const double rings = static_cast<double>(mol.num_bonds()) - n
                       + mol.num_components();

  return { heavy,     weight,    rings,
           aromatic,  donors,    acceptors,
           rotatable, charge,    carbons > 0 ? sp3_carbons / carbons : 0.0,
           halogens };
}

}  // namespace fragtok
