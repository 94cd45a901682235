//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/posenc.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace fragtok {

FragmentGraph FragmentGraph::from_fragmentation(const Fragmentation &fr) {
  FragmentGraph fg;
  fg.node_count = static_cast<int>(fr.fragments.size());
  for (const Fragment &f: fr.fragments)
    fg.digests.push_back(f.digest);
  for (const FragmentLink &l: fr.links)
    fg.edges.push_back({ l.frag_a, l.frag_b, l.order });
  fg.charges.assign(fg.node_count, 0.0);
  return fg;
}

HopMatrix hop_matrix(const FragmentGraph &fg) {
  const int n = fg.node_count;
  std::vector<std::vector<int>> adj(n);
  for (const FragmentEdge &e: fg.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }

  HopMatrix h(n, std::vector<int>(n, 0));
  std::vector<int> dist(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> q;
    q.push(s);
    dist[s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v: adj[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
    }
    for (int t = 0; t < n; ++t)
      h[s][t] = std::max(dist[t], 0);
  }
  return h;
}

std::vector<int> wl_role_ids(const FragmentGraph &fg) {
  const int n = fg.node_count;
  std::vector<std::vector<std::pair<int, BondOrder>>> adj(n);
  for (const FragmentEdge &e: fg.edges) {
    adj[e.a].emplace_back(e.b, e.order);
    adj[e.b].emplace_back(e.a, e.order);
  }

  auto classes = [](const std::vector<Digest128> &labels) {
    return std::set<Digest128>(labels.begin(), labels.end()).size();
  };

  std::vector<Digest128> labels(n);
  for (int i = 0; i < n; ++i)
    labels[i] = DigestBuilder().u8('R').digest(fg.digests[i]).finish();

  std::vector<Digest128> next(n);
  std::vector<std::array<std::uint8_t, 17>> nbrs;
  for (int it = 0; it < kMaxRoleIterations; ++it) {
    for (int i = 0; i < n; ++i) {
      nbrs.clear();
      for (auto [j, order]: adj[i]) {
        std::array<std::uint8_t, 17> item;
        item[0] = static_cast<std::uint8_t>(order);
        std::copy(labels[j].bytes.begin(), labels[j].bytes.end(),
                  item.begin() + 1);
        nbrs.push_back(item);
      }
      std::sort(nbrs.begin(), nbrs.end());
      DigestBuilder db;
      db.u8('W').digest(labels[i]).u32(static_cast<std::uint32_t>(nbrs.size()));
      for (const auto &item: nbrs)
        db.bytes(item);
      next[i] = db.finish();
    }
    if (classes(next) == classes(labels))
      break;
    labels.swap(next);
  }

  std::map<Digest128, int> dense;
  for (const Digest128 &d: labels)
    dense.emplace(d, 0);
  int id = 0;
  for (auto &[d, v]: dense)
    v = id++;
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = dense[labels[i]];
  return out;
}

std::vector<double> CoulombFeatures::row_means() const {
  std::vector<double> out;
  for (const auto &row: values) {
    double s = 0.0;
    for (double v: row)
      s += v;
    out.push_back(row.empty() ? 0.0 : s / static_cast<double>(row.size()));
  }
  return out;
}

std::vector<std::vector<int>> CoulombFeatures::buckets(double width) const {
  std::vector<std::vector<int>> out;
  for (const auto &row: values) {
    std::vector<int> r;
    for (double v: row)
      r.push_back(static_cast<int>(std::floor(v / width)));
    out.push_back(std::move(r));
  }
  return out;
}

CoulombFeatures coulomb_features(const FragmentGraph &fg,
                                 const std::vector<double> &z, double d0) {
  const int n = fg.node_count;
  if (!(d0 > 0.0) || !std::isfinite(d0))
    throw std::invalid_argument("d0 must be positive and finite");
  if (static_cast<int>(z.size()) != n)
    throw std::invalid_argument("one Z value per fragment required");
  for (double v: z) {
    if (!std::isfinite(v))
      throw std::invalid_argument("Z must be finite");
    if (v < 0.0)
      throw NegativeBase("negative Z with a fractional exponent");
  }

  CoulombFeatures cf;
  cf.z = z;
  cf.d0 = d0;
  double total = 0.0;
  for (double v: z)
    total += v;

  std::vector<double> column(n);
  const double inv_d2 = 1.0 / (d0 * d0);
  for (int j = 0; j < n; ++j) {
    const double self = 0.5 * std::pow(z[j], 2.4);
    const double pair = z[j] * (total - z[j]) * inv_d2;
    column[j] = (self + pair) / static_cast<double>(n);
  }
  cf.values.assign(n, column);
  return cf;
}

std::vector<double> fragment_z(const Fragmentation &fr,
                               const std::vector<double> &fragment_charges,
                               ZMode mode) {
  std::vector<double> z;
  if (mode == ZMode::kAtomicSum) {
    for (const Fragment &f: fr.fragments) {
      double s = 0.0;
      for (const Atom &a: f.graph.atoms())
        s += a.atomic_number;
      z.push_back(s);
    }
    return z;
  }

  double lo = 0.0;
  if (!fragment_charges.empty())
    lo = *std::min_element(fragment_charges.begin(), fragment_charges.end());
  for (double q: fragment_charges)
    z.push_back(q + std::abs(lo) + 1.0);
  return z;
}

}  // namespace fragtok
