//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_POSENC_H_
#define FRAGTOK_POSENC_H_

#include <string>
#include <vector>

#include "fragtok/error.h"
#include "fragtok/fragment.h"

namespace fragtok {

class NegativeBase: public Error {
public:
  using Error::Error;
};

class MissingParameters: public Error {
public:
  explicit MissingParameters(int atomic_number)
      : Error("no Gasteiger parameters for atomic number "
              + std::to_string(atomic_number)),
        atomic_number_(atomic_number) { }

  int atomic_number() const { return atomic_number_; }

private:
  int atomic_number_;
};

struct FragmentEdge {
  int a = -1;
  int b = -1;
  BondOrder order = BondOrder::kSingle;
};

// Fragment-level graph: one node per fragment, one edge per link.
struct FragmentGraph {
  int node_count = 0;
  std::vector<FragmentEdge> edges;
  std::vector<MolDigest> digests;
  std::vector<double> charges;

  static FragmentGraph from_fragmentation(const Fragmentation &fr);
};

// H[i][j]: shortest-path length, 0 on the diagonal and when unreachable.
using HopMatrix = std::vector<std::vector<int>>;

HopMatrix hop_matrix(const FragmentGraph &fg);

// Dense 0-based role ids from WL refinement seeded with the fragment
// digests; refinement stops once the partition no longer splits or after
// kMaxRoleIterations rounds. Ids follow sorted label order.
inline constexpr int kMaxRoleIterations = 8;
std::vector<int> wl_role_ids(const FragmentGraph &fg);

struct CoulombFeatures {
  std::vector<std::vector<double>> values;  // C[i][j]
  std::vector<double> z;
  double d0 = 1.0;

  std::vector<double> row_means() const;
  // floor(C / width) per entry.
  std::vector<std::vector<int>> buckets(double width) const;
};

inline constexpr double kDefaultD0 = 1.0;
inline constexpr double kCoulombBucketWidth = 0.05;

// C[i][j] = (1/N) sum_k (0.5 Z_j^2.4 d_jk + Z_j Z_k / d0^2 (1 - d_jk)).
// The right-hand side does not depend on i, so all rows are equal.
// Throws NegativeBase for a negative Z and std::invalid_argument for
// d0 <= 0, a size mismatch or a non-finite Z.
CoulombFeatures coulomb_features(const FragmentGraph &fg,
                                 const std::vector<double> &z,
                                 double d0 = kDefaultD0);

enum class ZMode {
  kAtomicSum,  // sum of atomic numbers of the fragment's real atoms
  kGasteiger,  // fragment charge shifted by |min| + 1
};

std::vector<double> fragment_z(const Fragmentation &fr,
                               const std::vector<double> &fragment_charges,
                               ZMode mode);

// Gasteiger-Marsili PEOE charges. `atom` holds each atom's own charge and
// `hydrogens` the summed charge of its implicit and bracket hydrogens, so
// that the per-atom totals add up to the net formal charge. Dummy atoms are
// excluded and carry 0.
struct PartialCharges {
  std::vector<double> atom;
  std::vector<double> hydrogens;
  bool complete = true;
  int missing_element = -1;

  double total(int i) const { return atom[i] + hydrogens[i]; }
  double sum() const;
};

inline constexpr int kPeoeIterations = 6;

// Throws MissingParameters when an element has no coefficients.
PartialCharges gasteiger_charges(const MolGraph &mol);

// Like gasteiger_charges, but reports missing parameters by returning NaN
// charges with complete = false and logging a warning.
PartialCharges gasteiger_charges_or_nan(const MolGraph &mol);

// Per-fragment sums over real atoms; non-finite totals become 0.
std::vector<double> fragment_charges(const PartialCharges &q,
                                     const Fragmentation &fr);

}  // namespace fragtok

#endif  // FRAGTOK_POSENC_H_
