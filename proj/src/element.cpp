//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "fragtok/element.h"

#include <algorithm>
#include <array>

namespace fragtok {
namespace {

// clang-format off
constexpr std::array kElements = {
  Element{0, "*", 0.0, 0, 0},
  Element{1, "H", 1.008, 1, 1},
  Element{2, "He", 4.0026, 0, 1},
  Element{3, "Li", 6.94, 0, 2},
  Element{4, "Be", 9.0122, 0, 2},
  Element{5, "B", 10.81, 3, 2},
  Element{6, "C", 12.011, 4, 2},
  Element{7, "N", 14.007, 5, 2},
  Element{8, "O", 15.999, 6, 2},
  Element{9, "F", 18.998, 7, 2},
  Element{10, "Ne", 20.180, 0, 2},
  Element{11, "Na", 22.990, 0, 3},
  Element{12, "Mg", 24.305, 0, 3},
  Element{13, "Al", 26.982, 0, 3},
  Element{14, "Si", 28.085, 4, 3},
  Element{15, "P", 30.974, 5, 3},
  Element{16, "S", 32.06, 6, 3},
  Element{17, "Cl", 35.45, 7, 3},
  Element{18, "Ar", 39.948, 0, 3},
  Element{19, "K", 39.098, 0, 4},
  Element{20, "Ca", 40.078, 0, 4},
  Element{21, "Sc", 44.956, 0, 4},
  Element{22, "Ti", 47.867, 0, 4},
  Element{23, "V", 50.942, 0, 4},
  Element{24, "Cr", 51.996, 0, 4},
  Element{25, "Mn", 54.938, 0, 4},
  Element{26, "Fe", 55.845, 0, 4},
  Element{27, "Co", 58.933, 0, 4},
  Element{28, "Ni", 58.693, 0, 4},
  Element{29, "Cu", 63.546, 0, 4},
  Element{30, "Zn", 65.38, 0, 4},
  Element{31, "Ga", 69.723, 0, 4},
  Element{32, "Ge", 72.630, 0, 4},
  Element{33, "As", 74.922, 5, 4},
  Element{34, "Se", 78.971, 6, 4},
  Element{35, "Br", 79.904, 7, 4},
  Element{36, "Kr", 83.798, 0, 4},
  Element{37, "Rb", 85.468, 0, 5},
  Element{38, "Sr", 87.62, 0, 5},
  Element{39, "Y", 88.906, 0, 5},
  Element{40, "Zr", 91.224, 0, 5},
  Element{41, "Nb", 92.906, 0, 5},
  Element{42, "Mo", 95.95, 0, 5},
  Element{43, "Tc", 98.0, 0, 5},
  Element{44, "Ru", 101.07, 0, 5},
  Element{45, "Rh", 102.91, 0, 5},
  Element{46, "Pd", 106.42, 0, 5},
  Element{47, "Ag", 107.87, 0, 5},
  Element{48, "Cd", 112.41, 0, 5},
  Element{49, "In", 114.82, 0, 5},
  Element{50, "Sn", 118.71, 0, 5},
  Element{51, "Sb", 121.76, 0, 5},
  Element{52, "Te", 127.60, 0, 5},
  Element{53, "I", 126.90, 7, 5},
  Element{54, "Xe", 131.29, 0, 5},
  Element{55, "Cs", 132.91, 0, 6},
  Element{56, "Ba", 137.33, 0, 6},
};
// clang-format on

struct HeavyEntry {
  int atomic_number;
  std::string_view symbol;
  double atomic_weight;
};

constexpr std::array kHeavyElements = {
  HeavyEntry{78, "Pt", 195.08}, HeavyEntry{79, "Au", 196.97},
  HeavyEntry{80, "Hg", 200.59}, HeavyEntry{81, "Tl", 204.38},
  HeavyEntry{82, "Pb", 207.2},  HeavyEntry{83, "Bi", 208.98},
};

const Element *find_heavy(int z) {
  static const std::array<Element, kHeavyElements.size()> table = [] {
    std::array<Element, kHeavyElements.size()> out {};
    for (std::size_t i = 0; i < kHeavyElements.size(); ++i)
      out[i] = Element { kHeavyElements[i].atomic_number,
                         kHeavyElements[i].symbol,
                         kHeavyElements[i].atomic_weight, 0, 6 };
    return out;
  }();
  for (const Element &e: table)
    if (e.atomic_number == z)
      return &e;
  return nullptr;
}

}  // namespace

const Element *find_element(int atomic_number) {
  if (atomic_number >= 0
      && atomic_number < static_cast<int>(kElements.size()))
    return &kElements[atomic_number];
  return find_heavy(atomic_number);
}

std::optional<int> atomic_number_from_symbol(std::string_view symbol) {
  for (const Element &e: kElements)
    if (e.symbol == symbol)
      return e.atomic_number;
  for (const HeavyEntry &e: kHeavyElements)
    if (e.symbol == symbol)
      return e.atomic_number;
  return std::nullopt;
}

bool in_organic_subset(int z) {
  switch (z) {
  case 5: case 6: case 7: case 8: case 9:
  case 15: case 16: case 17: case 35: case 53:
    return true;
  default:
    return false;
  }
}

bool can_be_aromatic(int z) {
  switch (z) {
  case 5: case 6: case 7: case 8: case 15: case 16: case 33: case 34:
    return true;
  default:
    return false;
  }
}

std::vector<int> allowed_valences(int atomic_number, int formal_charge) {
  const Element *e = find_element(atomic_number);
  if (e == nullptr || e->valence_electrons == 0)
    return {};

  const int electrons = e->valence_electrons - formal_charge;
  if (e->period == 1)
    return { electrons == 1 ? 1 : 0 };

  switch (electrons) {
  case 1: return { 1 };
  case 2: return { 2 };
  case 3: return { 3 };
  case 4: return { 4 };
  case 5: return { 3, 5 };
  case 6: return e->period == 2 ? std::vector<int> { 2 }
                                : std::vector<int> { 2, 4, 6 };
  case 7: return { 1 };
  case 8: return { 0 };
  default: return { -1 };  // no legal valence
  }
}

}  // namespace fragtok
