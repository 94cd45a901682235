//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <limits>
#include <optional>

#include "fragtok/corpus.h"
#include "fragtok/posenc.h"

namespace fragtok {

namespace {

struct Coefficients {
  double a, b, c;

  double chi(double q) const { return a + b * q + c * q * q; }
  double cation() const { return a + b + c; }
};

constexpr double kHydrogenCation = 20.02;

std::optional<Coefficients> coefficients(int z, Hybridization hyb) {
  const bool sp = hyb == Hybridization::kSP;
  const bool sp2 = hyb == Hybridization::kSP2;
  switch (z) {
  case 1: return Coefficients { 7.17, 6.24, -0.56 };
  case 5: return Coefficients { 5.98, 6.82, 1.605 };
  case 6:
    if (sp) return Coefficients { 10.39, 9.45, 0.73 };
    if (sp2) return Coefficients { 8.79, 9.32, 1.51 };
    return Coefficients { 7.98, 9.18, 1.88 };
  case 7:
    if (sp) return Coefficients { 15.68, 11.70, -0.27 };
    if (sp2) return Coefficients { 12.87, 11.15, 0.85 };
    return Coefficients { 11.54, 10.82, 1.36 };
  case 8:
    if (sp || sp2) return Coefficients { 17.07, 13.79, 0.47 };
    return Coefficients { 14.18, 12.92, 1.39 };
  case 9: return Coefficients { 14.66, 13.85, 2.31 };
  case 14: return Coefficients { 7.3, 6.567, 0.657 };
  case 15: return Coefficients { 8.90, 8.24, 0.96 };
  case 16:
    if (sp || sp2) return Coefficients { 10.88, 9.485, 1.325 };
    return Coefficients { 10.14, 9.13, 1.38 };
  case 17: return Coefficients { 11.00, 9.69, 1.35 };
  case 35: return Coefficients { 10.08, 8.47, 1.16 };
  case 53: return Coefficients { 9.90, 7.96, 0.96 };
  default: return std::nullopt;
  }
}

struct Node {
  Coefficients k;
  double cation;
  int owner;  // molecule atom this node belongs to
  bool hydrogen_of_owner;
};

}  // namespace

double PartialCharges::sum() const {
  double s = 0.0;
  for (std::size_t i = 0; i < atom.size(); ++i)
    s += atom[i] + hydrogens[i];
  return s;
}

PartialCharges gasteiger_charges(const MolGraph &mol) {
  const int n = mol.num_atoms();
  std::vector<Node> nodes;
  std::vector<double> q;
  std::vector<int> node_of(n, -1);
  std::vector<std::pair<int, int>> edges;

  for (int i = 0; i < n; ++i) {
    const Atom &a = mol.atom(i);
    if (a.is_dummy())
      continue;
    auto k = coefficients(a.atomic_number, a.hybridization);
    if (!k)
      throw MissingParameters(a.atomic_number);
    const double cation =
        a.atomic_number == 1 ? kHydrogenCation : k->cation();
    node_of[i] = static_cast<int>(nodes.size());
    nodes.push_back({ *k, cation, i, false });
    q.push_back(static_cast<double>(a.formal_charge));
  }

  const Coefficients h = *coefficients(1, Hybridization::kUnspecified);
  for (int i = 0; i < n; ++i) {
    if (node_of[i] < 0)
      continue;
    for (int c = 0; c < mol.atom(i).total_h(); ++c) {
      edges.emplace_back(node_of[i], static_cast<int>(nodes.size()));
      nodes.push_back({ h, kHydrogenCation, i, true });
      q.push_back(0.0);
    }
  }
  for (const Bond &b: mol.bonds())
    if (node_of[b.begin] >= 0 && node_of[b.end] >= 0)
      edges.emplace_back(node_of[b.begin], node_of[b.end]);

  const std::size_t m = nodes.size();
  std::vector<double> chi(m), dq(m);
  double damp = 1.0;
  for (int it = 0; it < kPeoeIterations; ++it) {
    damp *= 0.5;
    for (std::size_t i = 0; i < m; ++i)
      chi[i] = nodes[i].k.chi(q[i]);
    std::fill(dq.begin(), dq.end(), 0.0);
    for (auto [u, v]: edges) {
      // Charge flows from the less electronegative atom, scaled by its
      // cation electronegativity.
      const double dx = chi[v] - chi[u];
      const double denom = dx > 0.0 ? nodes[u].cation : nodes[v].cation;
      const double t = dx / denom;
      dq[u] += t;
      dq[v] -= t;
    }
    for (std::size_t i = 0; i < m; ++i)
      q[i] += damp * dq[i];
  }

  PartialCharges out;
  out.atom.assign(n, 0.0);
  out.hydrogens.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (nodes[i].hydrogen_of_owner)
      out.hydrogens[nodes[i].owner] += q[i];
    else
      out.atom[nodes[i].owner] = q[i];
  }
  return out;
}

PartialCharges gasteiger_charges_or_nan(const MolGraph &mol) {
  try {
    return gasteiger_charges(mol);
  } catch (const MissingParameters &e) {
    log_event("warning", "gasteiger_missing_parameters",
              { { "atomic_number", e.atomic_number() } });
    PartialCharges out;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.atom.assign(mol.num_atoms(), nan);
    out.hydrogens.assign(mol.num_atoms(), nan);
    out.complete = false;
    out.missing_element = e.atomic_number();
    return out;
  }
}

std::vector<double> fragment_charges(const PartialCharges &q,
                                     const Fragmentation &fr) {
  std::vector<double> out;
  for (const Fragment &f: fr.fragments) {
    double s = 0.0;
    for (int orig: f.atom_map)
      s += q.total(orig);
    out.push_back(std::isfinite(s) ? s : 0.0);
  }
  return out;
}

}  // namespace fragtok
