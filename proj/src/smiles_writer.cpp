//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string>
#include <vector>

#include "fragtok/element.h"
#include "fragtok/graph_match.h"
#include "fragtok/smiles.h"
#include "fragtok/wlhash.h"

namespace fragtok {
namespace {

// Union-find with parity over bond direction variables.
class ParityUnion {
public:
  explicit ParityUnion(int n): parent_(n), parity_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::pair<int, int> find(int x) {
    int p = 0;
    int r = x;
    while (parent_[r] != r) {
      p ^= parity_[r];
      r = parent_[r];
    }
    // path compression
    int cur = x, acc = p;
    while (parent_[cur] != cur) {
      int next = parent_[cur];
      int next_acc = acc ^ parity_[cur];
      parent_[cur] = r;
      parity_[cur] = acc;
      cur = next;
      acc = next_acc;
    }
    return { r, p };
  }

  // Requires value(a) ^ value(b) == rel. Returns false on contradiction.
  bool unite(int a, int b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb)
      return (pa ^ pb) == rel;
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ rel;
    return true;
  }

private:
  std::vector<int> parent_;
  std::vector<int> parity_;
};

class SmilesWriter {
public:
  explicit SmilesWriter(const MolGraph &mol): mol_(mol) { }

  std::string write();

private:
  bool ranks_before(int a, int b) const {
    if (labels_[a] != labels_[b])
      return labels_[a] < labels_[b];
    return a < b;
  }

  void assign_directions();
  void plan(int atom, int parent_bond);
  void emit(int atom, int parent_bond);
  void emit_atom(int atom);
  std::string bond_symbol(int bond, int from, int to) const;

  const MolGraph &mol_;
  std::vector<Digest128> labels_;

  // 1: bond end is up relative to begin, 0: down, -1: plain.
  std::vector<int> direction_;

  std::vector<int> preorder_;
  int next_preorder_ = 0;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> closures_;
  std::vector<bool> closure_seen_;

  std::vector<int> ring_digit_;
  std::vector<bool> digit_used_;
  std::string out_;
};

void SmilesWriter::assign_directions() {
  direction_.assign(mol_.num_bonds(), -1);

  bool any = false;
  for (const Bond &b: mol_.bonds())
    any |= b.stereo != BondStereo::kNone;
  if (!any)
    return;

  ParityUnion uf(mol_.num_bonds());
  std::vector<bool> involved(mol_.num_bonds(), false);

  auto flip = [&](int bond, int atom) { return mol_.bond(bond).begin != atom ? 1 : 0; };

  // Marking a bond that also touches a double bond without stereo would
  // give that bond a configuration on re-reading when its far side is
  // marked too, so such bonds are used only when there is no other choice.
  auto touches_plain_double = [&](int e, int from, int skip) {
    const int x = mol_.bond(e).other(from);
    for (int f: mol_.bonds_of(x))
      if (f != skip && mol_.bond(f).order == BondOrder::kDouble
          && mol_.bond(f).stereo == BondStereo::kNone)
        return true;
    return false;
  };

  for (int d = 0; d < mol_.num_bonds(); ++d) {
    const Bond &db = mol_.bond(d);
    if (db.stereo == BondStereo::kNone)
      continue;

    const int ends[2] = { db.begin, db.end };
    int ref_bond[2] = { -1, -1 };
    int ref_atom[2] = { -1, -1 };
    for (int k = 0; k < 2; ++k) {
      int best_rank = 4;
      for (int e: mol_.bonds_of(ends[k])) {
        if (e == d || mol_.bond(e).order != BondOrder::kSingle)
          continue;
        const int other = mol_.bond(e).other(ends[k]);
        const int rank = (touches_plain_double(e, ends[k], d) ? 2 : 0)
                         + (other == db.stereo_atoms[k] ? 0 : 1);
        if (rank < best_rank) {
          best_rank = rank;
          ref_bond[k] = e;
          ref_atom[k] = other;
        }
      }
    }
    if (ref_bond[0] < 0 || ref_bond[1] < 0)
      continue;

    involved[ref_bond[0]] = involved[ref_bond[1]] = true;
    const BondStereo s = stereo_relative_to(mol_, d, ref_atom[0], ref_atom[1]);
    const int rel = s == BondStereo::kCis ? 0 : 1;
    uf.unite(ref_bond[0], ref_bond[1],
             flip(ref_bond[0], ends[0]) ^ flip(ref_bond[1], ends[1]) ^ rel);
  }

  for (int e = 0; e < mol_.num_bonds(); ++e)
    if (involved[e])
      direction_[e] = uf.find(e).second == 0 ? 1 : 0;
}

void SmilesWriter::plan(int atom, int parent_bond) {
  preorder_[atom] = next_preorder_++;

  std::vector<int> nbr_bonds(mol_.bonds_of(atom).begin(),
                             mol_.bonds_of(atom).end());
  std::sort(nbr_bonds.begin(), nbr_bonds.end(), [&](int x, int y) {
    return ranks_before(mol_.bond(x).other(atom), mol_.bond(y).other(atom));
  });

  for (int bi: nbr_bonds) {
    if (bi == parent_bond)
      continue;
    const int v = mol_.bond(bi).other(atom);
    if (preorder_[v] < 0) {
      children_[atom].push_back(bi);
      plan(v, bi);
    } else if (!closure_seen_[bi]) {
      closure_seen_[bi] = true;
      closures_[atom].push_back(bi);
      closures_[v].push_back(bi);
    }
  }
}

std::string SmilesWriter::bond_symbol(int bond, int from, int to) const {
  const Bond &b = mol_.bond(bond);
  if (direction_[bond] >= 0) {
    const bool end_up = direction_[bond] == 1;
    const bool to_up = b.begin == from ? end_up : !end_up;
    return to_up ? "/" : "\\";
  }

  const bool both_aromatic =
      mol_.atom(from).aromatic && mol_.atom(to).aromatic;
  switch (b.order) {
  case BondOrder::kSingle: return both_aromatic ? "-" : "";
  case BondOrder::kDouble: return "=";
  case BondOrder::kTriple: return "#";
  case BondOrder::kAromatic: return both_aromatic && b.in_ring ? "" : ":";
  }
  return "";
}

void SmilesWriter::emit_atom(int idx) {
  const Atom &a = mol_.atom(idx);
  if (a.is_dummy()) {
    out_ += '*';
    return;
  }

  const Element *el = find_element(a.atomic_number);
  std::string sym(el != nullptr ? el->symbol : "*");
  if (a.aromatic)
    sym[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(sym[0])));

  const bool aromatic_ok = !a.aromatic || a.atomic_number == 5
                           || a.atomic_number == 6 || a.atomic_number == 7
                           || a.atomic_number == 8 || a.atomic_number == 15
                           || a.atomic_number == 16;
  const bool bare = in_organic_subset(a.atomic_number) && aromatic_ok
                    && a.formal_charge == 0 && a.radical_electrons == 0
                    && a.total_h() == default_implicit_h(mol_, idx);
  if (bare) {
    out_ += sym;
    return;
  }

  out_ += '[';
  out_ += sym;
  if (a.total_h() > 0) {
    out_ += 'H';
    if (a.total_h() > 1)
      out_ += std::to_string(a.total_h());
  }
  if (a.formal_charge != 0) {
    out_ += a.formal_charge > 0 ? '+' : '-';
    if (std::abs(a.formal_charge) > 1)
      out_ += std::to_string(std::abs(a.formal_charge));
  }
  out_ += ']';
}

void SmilesWriter::emit(int atom, int parent_bond) {
  if (parent_bond >= 0) {
    const int parent = mol_.bond(parent_bond).other(atom);
    out_ += bond_symbol(parent_bond, parent, atom);
  }
  emit_atom(atom);

  std::vector<int> rings = closures_[atom];
  std::sort(rings.begin(), rings.end(), [&](int x, int y) {
    return preorder_[mol_.bond(x).other(atom)]
           < preorder_[mol_.bond(y).other(atom)];
  });

  auto digit_text = [](int d) {
    return d < 10 ? std::string(1, static_cast<char>('0' + d))
                  : "%" + std::to_string(d);
  };

  // closings first so their digits can be reused by openings here
  for (int bi: rings) {
    const int v = mol_.bond(bi).other(atom);
    if (preorder_[v] < preorder_[atom]) {
      out_ += digit_text(ring_digit_[bi]);
      digit_used_[ring_digit_[bi]] = false;
    }
  }
  for (int bi: rings) {
    const int v = mol_.bond(bi).other(atom);
    if (preorder_[v] > preorder_[atom]) {
      int d = 1;
      while (digit_used_[d])
        ++d;
      digit_used_[d] = true;
      ring_digit_[bi] = d;
      out_ += bond_symbol(bi, atom, v);
      out_ += digit_text(d);
    }
  }

  const std::vector<int> &kids = children_[atom];
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const int child = mol_.bond(kids[i]).other(atom);
    const bool last = i + 1 == kids.size();
    if (!last)
      out_ += '(';
    emit(child, kids[i]);
    if (!last)
      out_ += ')';
  }
}

std::string SmilesWriter::write() {
  const int n = mol_.num_atoms();
  if (n == 0)
    return "";

  labels_ = wl_refine(mol_, kDefaultWLIterations).per_node;
  assign_directions();

  preorder_.assign(n, -1);
  children_.assign(n, {});
  closures_.assign(n, {});
  closure_seen_.assign(mol_.num_bonds(), false);
  ring_digit_.assign(mol_.num_bonds(), 0);
  digit_used_.assign(100, false);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ranks_before(a, b); });

  bool first = true;
  for (int root: order) {
    if (preorder_[root] >= 0)
      continue;
    plan(root, -1);
    if (!first)
      out_ += '.';
    first = false;
    emit(root, -1);
  }
  return out_;
}

}  // namespace

std::string write_smiles(const MolGraph &mol) {
  return SmilesWriter(mol).write();
}

}  // namespace fragtok
