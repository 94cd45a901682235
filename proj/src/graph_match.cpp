//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/graph_match.h"

#include <algorithm>
#include <queue>

#include "fragtok/wlhash.h"

namespace fragtok {
namespace {

BondStereo flipped(BondStereo s) {
  switch (s) {
  case BondStereo::kCis: return BondStereo::kTrans;
  case BondStereo::kTrans: return BondStereo::kCis;
  default: return s;
  }
}

class Matcher {
public:
  Matcher(const MolGraph &g, const MolGraph &h): g_(g), h_(h) { }

  std::optional<std::vector<int>> run();

private:
  bool extend(std::size_t depth);
  bool feasible(int u, int v) const;
  bool stereo_consistent() const;

  const MolGraph &g_;
  const MolGraph &h_;
  std::vector<Digest128> gl_, hl_;
  std::vector<Digest128> gb_, hb_;
  std::vector<int> order_;
  std::vector<int> map_, used_by_;
};

bool Matcher::feasible(int u, int v) const {
  if (gl_[u] != hl_[v] || g_.degree(u) != h_.degree(v))
    return false;
  for (int bi: g_.bonds_of(u)) {
    const int w = g_.bond(bi).other(u);
    if (map_[w] < 0)
      continue;
    const int hbi = h_.find_bond(v, map_[w]);
    if (hbi < 0 || gb_[bi] != hb_[hbi])
      return false;
  }
  return true;
}

bool Matcher::stereo_consistent() const {
  for (int bi = 0; bi < g_.num_bonds(); ++bi) {
    const Bond &b = g_.bond(bi);
    if (b.stereo == BondStereo::kNone)
      continue;
    const int hbi = h_.find_bond(map_[b.begin], map_[b.end]);
    const Bond &hb = h_.bond(hbi);
    int begin_ref = map_[b.stereo_atoms[0]];
    int end_ref = map_[b.stereo_atoms[1]];
    if (hb.begin != map_[b.begin])
      std::swap(begin_ref, end_ref);
    if (stereo_relative_to(h_, hbi, begin_ref, end_ref) != b.stereo)
      return false;
  }
  return true;
}

bool Matcher::extend(std::size_t depth) {
  if (depth == order_.size())
    return stereo_consistent();

  const int u = order_[depth];
  for (int v = 0; v < h_.num_atoms(); ++v) {
    if (used_by_[v] >= 0 || !feasible(u, v))
      continue;
    map_[u] = v;
    used_by_[v] = u;
    if (extend(depth + 1))
      return true;
    map_[u] = -1;
    used_by_[v] = -1;
  }
  return false;
}

std::optional<std::vector<int>> Matcher::run() {
  if (g_.num_atoms() != h_.num_atoms() || g_.num_bonds() != h_.num_bonds())
    return std::nullopt;

  gl_ = wl_refine(g_, kDefaultWLIterations).per_node;
  hl_ = wl_refine(h_, kDefaultWLIterations).per_node;
  {
    auto a = gl_, b = hl_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      return std::nullopt;
  }
  gb_ = bond_labels(g_);
  hb_ = bond_labels(h_);

  // BFS order keeps each new atom adjacent to a mapped one.
  std::vector<bool> seen(g_.num_atoms(), false);
  for (int root = 0; root < g_.num_atoms(); ++root) {
    if (seen[root])
      continue;
    std::queue<int> q;
    q.push(root);
    seen[root] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      order_.push_back(u);
      for (int bi: g_.bonds_of(u)) {
        int w = g_.bond(bi).other(u);
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
      }
    }
  }

  map_.assign(g_.num_atoms(), -1);
  used_by_.assign(h_.num_atoms(), -1);
  if (!extend(0))
    return std::nullopt;
  return map_;
}

}  // namespace

BondStereo stereo_relative_to(const MolGraph &mol, int bond, int begin_ref,
                              int end_ref) {
  const Bond &b = mol.bond(bond);
  BondStereo s = b.stereo;
  if (s == BondStereo::kNone)
    return s;
  if (begin_ref != b.stereo_atoms[0])
    s = flipped(s);
  if (end_ref != b.stereo_atoms[1])
    s = flipped(s);
  return s;
}

std::optional<std::vector<int>> find_isomorphism(const MolGraph &from,
                                                 const MolGraph &to) {
  return Matcher(from, to).run();
}

}  // namespace fragtok
