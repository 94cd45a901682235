//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/sanitize.h"

#include <algorithm>
#include <sstream>

#include "fragtok/element.h"

namespace fragtok {

std::string ValenceProblem::message() const {
  std::ostringstream os;
  if (aromatic_bond >= 0) {
    os << "aromatic bond " << aromatic_bond
       << " is not part of an aromatic ring";
    return os.str();
  }
  os << "atom " << atom << " has valence " << observed_valence
     << ", allowed {";
  for (std::size_t i = 0; i < allowed.size(); ++i)
    os << (i ? "," : "") << allowed[i];
  os << "}";
  return os.str();
}

std::optional<ValenceProblem> sanitize(const MolGraph &mol) {
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom &a = mol.atom(i);
    if (a.is_dummy())
      continue;

    std::vector<int> allowed =
        allowed_valences(a.atomic_number, a.formal_charge);
    if (allowed.empty())
      continue;

    int plain = 0, aromatic = 0;
    for (int bi: mol.bonds_of(i)) {
      BondOrder o = mol.bond(bi).order;
      if (o == BondOrder::kAromatic)
        ++aromatic;
      else
        plain += static_cast<int>(o);
    }
    const int base = plain + aromatic + a.total_h() + a.radical_electrons;
    auto ok = [&](int v) {
      return std::find(allowed.begin(), allowed.end(), v) != allowed.end();
    };
    // An aromatic atom either donates one pi electron or a lone pair.
    const bool valid = (a.aromatic && aromatic > 0) ? ok(base) || ok(base + 1)
                                                    : ok(base);
    if (!valid)
      return ValenceProblem { i, base, allowed };
  }

  // Aromatic bonds must join aromatic (or dummy) atoms and lie on a ring,
  // unless their aromatic system was cut at an attachment point.
  const int nb = mol.num_bonds();
  std::vector<int> sys(mol.num_atoms(), -1);
  std::vector<bool> touches_dummy;
  int nsys = 0;
  for (int root = 0; root < mol.num_atoms(); ++root) {
    if (sys[root] >= 0)
      continue;
    bool any = false;
    for (int bi: mol.bonds_of(root))
      any |= mol.bond(bi).order == BondOrder::kAromatic;
    if (!any)
      continue;
    bool dummy = false;
    std::vector<int> stack { root };
    sys[root] = nsys;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      dummy |= mol.atom(u).is_dummy();
      for (int bi: mol.bonds_of(u)) {
        if (mol.bond(bi).order != BondOrder::kAromatic)
          continue;
        int v = mol.bond(bi).other(u);
        if (sys[v] < 0) {
          sys[v] = nsys;
          stack.push_back(v);
        }
      }
    }
    touches_dummy.push_back(dummy);
    ++nsys;
  }

  for (int bi = 0; bi < nb; ++bi) {
    const Bond &b = mol.bond(bi);
    if (b.order != BondOrder::kAromatic)
      continue;
    const Atom &x = mol.atom(b.begin), &y = mol.atom(b.end);
    const bool endpoints_ok =
        (x.aromatic || x.is_dummy()) && (y.aromatic || y.is_dummy());
    const bool placed = b.in_ring || touches_dummy[sys[b.begin]];
    if (!endpoints_ok || !placed) {
      ValenceProblem p;
      p.atom = b.begin;
      p.aromatic_bond = bi;
      return p;
    }
  }

  // Aromatic atoms need at least one aromatic bond.
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom &a = mol.atom(i);
    if (!a.aromatic)
      continue;
    bool any = false;
    for (int bi: mol.bonds_of(i))
      any |= mol.bond(bi).order == BondOrder::kAromatic;
    if (!any) {
      ValenceProblem p;
      p.atom = i;
      p.observed_valence = explicit_valence_floor(mol, i);
      p.allowed = allowed_valences(a.atomic_number, a.formal_charge);
      return p;
    }
  }
  return std::nullopt;
}

void sanitize_or_throw(const MolGraph &mol) {
  if (auto p = sanitize(mol))
    throw ValenceError(*p);
}

}  // namespace fragtok
