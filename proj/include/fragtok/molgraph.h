//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_MOLGRAPH_H_
#define FRAGTOK_MOLGRAPH_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fragtok {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

enum class Hybridization : std::uint8_t {
  kUnspecified = 0,
  kSP = 1,
  kSP2 = 2,
  kSP3 = 3,
};

// Double-bond configuration, relative to Bond::stereo_atoms.
enum class BondStereo : std::uint8_t {
  kNone = 0,
  kCis = 1,
  kTrans = 2,
};

// Tetrahedral marks are kept as annotations only; they take no part in
// hashing or output.
enum class Chirality : std::uint8_t {
  kNone = 0,
  kCounterClockwise = 1,  // @
  kClockwise = 2,         // @@
};

struct Atom {
  int atomic_number = 6;
  int formal_charge = 0;
  int explicit_h = 0;
  int implicit_h = 0;
  bool aromatic = false;
  int radical_electrons = 0;
  Hybridization hybridization = Hybridization::kUnspecified;
  Chirality chirality = Chirality::kNone;

  bool is_dummy() const { return atomic_number == 0; }
  int total_h() const { return explicit_h + implicit_h; }

  static Atom dummy() {
    Atom a;
    a.atomic_number = 0;
    return a;
  }
};

struct Bond {
  int begin = -1;
  int end = -1;
  BondOrder order = BondOrder::kSingle;
  bool in_ring = false;
  // Size of the smallest ring through this bond; 0 when acyclic.
  int ring_size = 0;
  bool conjugated = false;
  BondStereo stereo = BondStereo::kNone;
  // Reference neighbours of begin and end for stereo != kNone.
  std::array<int, 2> stereo_atoms { -1, -1 };

  int other(int atom) const { return atom == begin ? end : begin; }
};

double bond_order_value(BondOrder order);

// "SINGLE", "DOUBLE", "TRIPLE", "AROMATIC".
std::string bond_order_name(BondOrder order);
// Throws InvalidGraph on an unknown name.
BondOrder bond_order_from_name(const std::string &name);

// An attributed molecular graph. Construction validates the topology and
// derives ring membership, conjugation and hybridization; the value is
// immutable afterwards.
class MolGraph {
public:
  MolGraph() = default;
  MolGraph(std::vector<Atom> atoms, std::vector<Bond> bonds);

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }
  bool empty() const { return atoms_.empty(); }

  const Atom &atom(int i) const { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }
  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Bond> bonds() const { return bonds_; }

  // Bond indices incident to an atom, in ascending bond index order.
  std::span<const int> bonds_of(int atom) const {
    return { adj_data_.data() + adj_offset_[atom],
             adj_data_.data() + adj_offset_[atom + 1] };
  }
  int degree(int atom) const {
    return adj_offset_[atom + 1] - adj_offset_[atom];
  }

  // -1 if the atoms are not bonded.
  int find_bond(int a, int b) const;

  int num_components() const;
  // Component index per atom, numbered in order of lowest atom index.
  std::vector<int> component_ids() const;

  bool has_dummy_atoms() const;

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<int> adj_offset_ { 0 };
  std::vector<int> adj_data_;
};

// Sum of bond orders around an atom, aromatic bonds counted as 1 each.
int explicit_valence_floor(const MolGraph &mol, int atom);

// Hydrogen count an organic-subset atom would carry from the valence model
// given its incident bond orders. Aromatic atoms count one extra unit for
// their pi contribution.
int default_implicit_h(const Atom &atom, std::span<const BondOrder> orders);
int default_implicit_h(const MolGraph &mol, int atom);

// Bridge-based ring flags and smallest-ring sizes for a bond list.
void compute_ring_info(int num_atoms, std::vector<Bond> &bonds);

}  // namespace fragtok

#endif  // FRAGTOK_MOLGRAPH_H_
