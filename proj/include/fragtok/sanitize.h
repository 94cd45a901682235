//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_SANITIZE_H_
#define FRAGTOK_SANITIZE_H_

#include <optional>
#include <string>
#include <vector>

#include "fragtok/error.h"
#include "fragtok/molgraph.h"

namespace fragtok {

struct ValenceProblem {
  int atom = -1;
  int observed_valence = 0;
  std::vector<int> allowed;
  // Set for aromatic bonds that sit on no aromatic ring and reach no
  // attachment point; -1 otherwise.
  int aromatic_bond = -1;

  std::string message() const;
};

class ValenceError: public Error {
public:
  explicit ValenceError(ValenceProblem problem)
      : Error(problem.message()), problem_(std::move(problem)) { }

  const ValenceProblem &problem() const { return problem_; }

private:
  ValenceProblem problem_;
};

// Valence and aromatic-consistency check. Dummy atoms are skipped, and
// aromatic bonds whose aromatic system reaches a dummy atom are accepted so
// that fragments with cut rings validate. Returns the first problem found.
std::optional<ValenceProblem> sanitize(const MolGraph &mol);

inline bool is_sane(const MolGraph &mol) {
  return !sanitize(mol).has_value();
}

// Throws ValenceError.
void sanitize_or_throw(const MolGraph &mol);

}  // namespace fragtok

#endif  // FRAGTOK_SANITIZE_H_
