//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/molgraph.h"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>

#include "fragtok/element.h"
#include "fragtok/error.h"

namespace fragtok {
namespace {

bool is_multiple(BondOrder o) {
  return o == BondOrder::kDouble || o == BondOrder::kTriple
         || o == BondOrder::kAromatic;
}

void mark_bridges(int num_atoms, const std::vector<std::vector<std::pair<int, int>>> &adj,
                  std::vector<bool> &is_bridge) {
  std::vector<int> disc(num_atoms, -1), low(num_atoms, 0);
  int timer = 0;

  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };

  for (int root = 0; root < num_atoms; ++root) {
    if (disc[root] >= 0)
      continue;

    std::vector<Frame> stack { { root, -1, 0 } };
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame &f = stack.back();
      if (f.next < adj[f.atom].size()) {
        auto [nbr, bond] = adj[f.atom][f.next++];
        if (bond == f.parent_bond)
          continue;
        if (disc[nbr] >= 0) {
          low[f.atom] = std::min(low[f.atom], disc[nbr]);
        } else {
          disc[nbr] = low[nbr] = timer++;
          stack.push_back({ nbr, bond, 0 });
        }
        continue;
      }

      Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        Frame &parent = stack.back();
        low[parent.atom] = std::min(low[parent.atom], low[done.atom]);
        if (low[done.atom] > disc[parent.atom])
          is_bridge[done.parent_bond] = true;
      }
    }
  }
}

int shortest_cycle_through(int src, int dst, int skip_bond,
                           const std::vector<std::vector<std::pair<int, int>>> &adj,
                           std::vector<int> &dist) {
  std::fill(dist.begin(), dist.end(), -1);
  std::queue<int> q;
  q.push(src);
  dist[src] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (auto [v, b]: adj[u]) {
      if (b == skip_bond || dist[v] >= 0)
        continue;
      dist[v] = dist[u] + 1;
      if (v == dst)
        return dist[v] + 1;
      q.push(v);
    }
  }
  return 0;
}

}  // namespace

double bond_order_value(BondOrder order) {
  switch (order) {
  case BondOrder::kSingle: return 1.0;
  case BondOrder::kDouble: return 2.0;
  case BondOrder::kTriple: return 3.0;
  case BondOrder::kAromatic: return 1.5;
  }
  return 0.0;
}

std::string bond_order_name(BondOrder order) {
  switch (order) {
  case BondOrder::kSingle: return "SINGLE";
  case BondOrder::kDouble: return "DOUBLE";
  case BondOrder::kTriple: return "TRIPLE";
  case BondOrder::kAromatic: return "AROMATIC";
  }
  return "?";
}

BondOrder bond_order_from_name(const std::string &name) {
  if (name == "SINGLE") return BondOrder::kSingle;
  if (name == "DOUBLE") return BondOrder::kDouble;
  if (name == "TRIPLE") return BondOrder::kTriple;
  if (name == "AROMATIC") return BondOrder::kAromatic;
  throw InvalidGraph("unknown bond order '" + name + "'");
}

void compute_ring_info(int num_atoms, std::vector<Bond> &bonds) {
  std::vector<std::vector<std::pair<int, int>>> adj(num_atoms);
  for (int i = 0; i < static_cast<int>(bonds.size()); ++i) {
    adj[bonds[i].begin].emplace_back(bonds[i].end, i);
    adj[bonds[i].end].emplace_back(bonds[i].begin, i);
  }

  std::vector<bool> is_bridge(bonds.size(), false);
  mark_bridges(num_atoms, adj, is_bridge);

  std::vector<int> dist(num_atoms);
  for (int i = 0; i < static_cast<int>(bonds.size()); ++i) {
    Bond &b = bonds[i];
    b.in_ring = !is_bridge[i];
    b.ring_size =
        b.in_ring ? shortest_cycle_through(b.begin, b.end, i, adj, dist) : 0;
  }
}

MolGraph::MolGraph(std::vector<Atom> atoms, std::vector<Bond> bonds)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  const int n = num_atoms();

  std::set<std::pair<int, int>> seen;
  std::vector<int> deg(n, 0);
  for (const Bond &b: bonds_) {
    if (b.begin < 0 || b.begin >= n || b.end < 0 || b.end >= n)
      throw InvalidGraph("bond endpoint out of range");
    if (b.begin == b.end)
      throw InvalidGraph("bond endpoints must be distinct");
    if (!seen.emplace(std::minmax(b.begin, b.end)).second)
      throw InvalidGraph("duplicate bond between atoms "
                         + std::to_string(b.begin) + " and "
                         + std::to_string(b.end));
    ++deg[b.begin];
    ++deg[b.end];
  }

  adj_offset_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i)
    adj_offset_[i + 1] = adj_offset_[i] + deg[i];
  adj_data_.resize(adj_offset_[n]);
  std::vector<int> fill(adj_offset_.begin(), adj_offset_.end() - 1);
  for (int i = 0; i < num_bonds(); ++i) {
    adj_data_[fill[bonds_[i].begin]++] = i;
    adj_data_[fill[bonds_[i].end]++] = i;
  }

  for (const Bond &b: bonds_) {
    if (b.stereo == BondStereo::kNone)
      continue;
    if (b.order != BondOrder::kDouble)
      throw InvalidGraph("stereo is only allowed on double bonds");
    auto [ra, rb] = b.stereo_atoms;
    if (ra < 0 || rb < 0 || ra >= n || rb >= n || ra == b.end || rb == b.begin
        || find_bond(b.begin, ra) < 0 || find_bond(b.end, rb) < 0)
      throw InvalidGraph("stereo reference atoms must neighbour the double "
                         "bond");
  }

  compute_ring_info(n, bonds_);

  // Conjugation: aromatic bonds, single bonds flanked by multiple bonds on
  // both sides, and multiple bonds touching such a single bond.
  auto has_other_multiple = [&](int atom, int except) {
    for (int bi: bonds_of(atom))
      if (bi != except && is_multiple(bonds_[bi].order))
        return true;
    return false;
  };
  for (int i = 0; i < num_bonds(); ++i) {
    Bond &b = bonds_[i];
    b.conjugated = b.order == BondOrder::kAromatic
                   || (b.order == BondOrder::kSingle
                       && has_other_multiple(b.begin, i)
                       && has_other_multiple(b.end, i));
  }
  for (int i = 0; i < num_bonds(); ++i) {
    Bond &b = bonds_[i];
    if (b.order != BondOrder::kDouble && b.order != BondOrder::kTriple)
      continue;
    for (int end: { b.begin, b.end })
      for (int bi: bonds_of(end))
        if (bonds_[bi].order == BondOrder::kSingle && bonds_[bi].conjugated)
          b.conjugated = true;
  }

  for (int i = 0; i < n; ++i) {
    Atom &a = atoms_[i];
    if (a.is_dummy() || a.atomic_number == 1) {
      a.hybridization = Hybridization::kUnspecified;
      continue;
    }
    int doubles = 0, triples = 0;
    for (int bi: bonds_of(i)) {
      doubles += bonds_[bi].order == BondOrder::kDouble;
      triples += bonds_[bi].order == BondOrder::kTriple;
    }
    if (triples > 0 || doubles >= 2)
      a.hybridization = Hybridization::kSP;
    else if (a.aromatic || doubles == 1)
      a.hybridization = Hybridization::kSP2;
    else
      a.hybridization = Hybridization::kSP3;
  }
}

int MolGraph::find_bond(int a, int b) const {
  for (int bi: bonds_of(a))
    if (bonds_[bi].other(a) == b)
      return bi;
  return -1;
}

std::vector<int> MolGraph::component_ids() const {
  std::vector<int> comp(num_atoms(), -1);
  int next = 0;
  std::vector<int> stack;
  for (int root = 0; root < num_atoms(); ++root) {
    if (comp[root] >= 0)
      continue;
    comp[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int bi: bonds_of(u)) {
        int v = bonds_[bi].other(u);
        if (comp[v] < 0) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

int MolGraph::num_components() const {
  std::vector<int> comp = component_ids();
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

bool MolGraph::has_dummy_atoms() const {
  return std::any_of(atoms_.begin(), atoms_.end(),
                     [](const Atom &a) { return a.is_dummy(); });
}

int explicit_valence_floor(const MolGraph &mol, int atom) {
  int sum = 0;
  for (int bi: mol.bonds_of(atom)) {
    BondOrder o = mol.bond(bi).order;
    sum += o == BondOrder::kAromatic ? 1 : static_cast<int>(o);
  }
  return sum;
}

int default_implicit_h(const Atom &atom, std::span<const BondOrder> orders) {
  if (atom.is_dummy())
    return 0;
  std::vector<int> allowed =
      allowed_valences(atom.atomic_number, atom.formal_charge);
  if (allowed.empty())
    return 0;

  int plain = 0, aromatic = 0;
  for (BondOrder o: orders) {
    if (o == BondOrder::kAromatic)
      ++aromatic;
    else
      plain += static_cast<int>(o);
  }

  if (atom.aromatic && aromatic > 0)
    return std::max(0, allowed.front() - (plain + aromatic + 1));

  const int used = plain + aromatic;
  for (int v: allowed)
    if (v >= used)
      return v - used;
  return 0;
}

int default_implicit_h(const MolGraph &mol, int atom) {
  std::vector<BondOrder> orders;
  orders.reserve(mol.degree(atom));
  for (int bi: mol.bonds_of(atom))
    orders.push_back(mol.bond(bi).order);
  return default_implicit_h(mol.atom(atom), orders);
}

}  // namespace fragtok
