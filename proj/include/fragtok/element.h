//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_ELEMENT_H_
#define FRAGTOK_ELEMENT_H_

#include <optional>
#include <string_view>
#include <vector>

namespace fragtok {

struct Element {
  int atomic_number;
  std::string_view symbol;
  double atomic_weight;
  // Valence-shell electron count for main-group elements that take part in
  // valence checks; 0 means "no valence model" (metals, noble gases).
  int valence_electrons;
  int period;
};

// Atomic number 0 is the dummy atom "*".
const Element *find_element(int atomic_number);
std::optional<int> atomic_number_from_symbol(std::string_view symbol);

bool in_organic_subset(int atomic_number);
bool can_be_aromatic(int atomic_number);

// Allowed total valences for an element at a given formal charge. Charged
// atoms take the valences of the isoelectronic element of the same period
// (N+ behaves like C, O- like F, C- like N). An empty result means the
// element has no valence model and is not checked.
std::vector<int> allowed_valences(int atomic_number, int formal_charge);

constexpr double kHydrogenWeight = 1.008;

}  // namespace fragtok

#endif  // FRAGTOK_ELEMENT_H_
