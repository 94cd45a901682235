//
// FragTok - Copyright 2026 The FragTok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fragtok/element.h"
#include "fragtok/error.h"
#include "fragtok/smiles.h"

namespace fragtok {
namespace {

struct PendingBond {
  int begin;
  int end;
  BondOrder order;
  // 1: end is "up" relative to begin, 0: down, -1: not directional.
  int up = -1;
  bool implicit = false;
};

struct RingOpening {
  int atom;
  char bond_char;
  std::size_t pos;
};

struct ParsedAtom {
  Atom atom;
  bool bracket = false;
};

class SmilesParser {
public:
  explicit SmilesParser(std::string_view text): s_(text) { }

  MolGraph parse();

private:
  [[noreturn]] void fail(const std::string &msg) const {
    throw SmilesSyntaxError(pos_, msg);
  }
  [[noreturn]] void fail_at(std::size_t pos, const std::string &msg) const {
    throw SmilesSyntaxError(pos, msg);
  }

  bool done() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }

  void add_atom(ParsedAtom atom);
  void add_bond(int a, int b, char bond_char, std::size_t at,
                bool closing_side = false);
  void ring_closure(int number, std::size_t at);
  ParsedAtom parse_bracket();
  ParsedAtom parse_organic();

  std::string_view s_;
  std::size_t pos_ = 0;

  std::vector<ParsedAtom> atoms_;
  std::vector<PendingBond> bonds_;
  std::set<std::pair<int, int>> bonded_;
  std::map<int, RingOpening> rings_;
  std::vector<int> branches_;
  int prev_ = -1;
  char pending_ = '\0';
  std::size_t pending_pos_ = 0;
};

BondOrder order_for(char c, bool both_aromatic) {
  switch (c) {
  case '=': return BondOrder::kDouble;
  case '#': return BondOrder::kTriple;
  case ':': return BondOrder::kAromatic;
  case '-': case '/': case '\\': return BondOrder::kSingle;
  default:
    return both_aromatic ? BondOrder::kAromatic : BondOrder::kSingle;
  }
}

bool is_directional(char c) {
  return c == '/' || c == '\\';
}

void SmilesParser::add_bond(int a, int b, char bond_char, std::size_t at,
                            bool closing_side) {
  if (a == b)
    fail_at(at, "ring closure bonds an atom to itself");
  if (!bonded_.emplace(std::minmax(a, b)).second)
    fail_at(at, "duplicate bond");

  const bool both_aromatic =
      atoms_[a].atom.aromatic && atoms_[b].atom.aromatic;
  PendingBond pb { a, b, order_for(bond_char, both_aromatic) };
  pb.implicit = bond_char == '\0';
  if (is_directional(bond_char)) {
    // Written as "a / b" unless the mark sits on the closing ring digit,
    // in which case it was written from b towards a.
    const bool slash = bond_char == '/';
    pb.up = closing_side ? !slash : slash;
  }
  bonds_.push_back(pb);
}

void SmilesParser::add_atom(ParsedAtom atom) {
  const int idx = static_cast<int>(atoms_.size());
  atoms_.push_back(std::move(atom));
  if (prev_ >= 0) {
    add_bond(prev_, idx, pending_, pending_pos_);
  } else if (pending_ != '\0') {
    fail_at(pending_pos_, "bond without a preceding atom");
  }
  pending_ = '\0';
  prev_ = idx;
}

void SmilesParser::ring_closure(int number, std::size_t at) {
  if (prev_ < 0)
    fail_at(at, "ring closure without a preceding atom");

  auto it = rings_.find(number);
  if (it == rings_.end()) {
    rings_.emplace(number, RingOpening { prev_, pending_, at });
    pending_ = '\0';
    return;
  }

  RingOpening open = it->second;
  rings_.erase(it);
  char c = open.bond_char;
  bool closing_side = false;
  if (pending_ != '\0') {
    if (c != '\0' && c != pending_
        && !(is_directional(c) && is_directional(pending_)))
      fail_at(at, "conflicting ring closure bond symbols");
    if (c == '\0') {
      c = pending_;
      closing_side = true;
    }
  }
  add_bond(open.atom, prev_, c, at, closing_side);
  pending_ = '\0';
}

ParsedAtom SmilesParser::parse_organic() {
  ParsedAtom pa;
  const char c = peek();
  int z = -1;
  bool aromatic = false;
  std::size_t width = 1;

  switch (c) {
  case '*': z = 0; break;
  case 'B':
    if (peek(1) == 'r') {
      z = 35;
      width = 2;
    } else {
      z = 5;
    }
    break;
  case 'C':
    if (peek(1) == 'l') {
      z = 17;
      width = 2;
    } else {
      z = 6;
    }
    break;
  case 'N': z = 7; break;
  case 'O': z = 8; break;
  case 'P': z = 15; break;
  case 'S': z = 16; break;
  case 'F': z = 9; break;
  case 'I': z = 53; break;
  case 'b': z = 5; aromatic = true; break;
  case 'c': z = 6; aromatic = true; break;
  case 'n': z = 7; aromatic = true; break;
  case 'o': z = 8; aromatic = true; break;
  case 'p': z = 15; aromatic = true; break;
  case 's': z = 16; aromatic = true; break;
  default:
    if (std::isalpha(static_cast<unsigned char>(c)))
      fail("element '" + std::string(1, c)
           + "' must be written in brackets");
    fail("unexpected character '" + std::string(1, c) + "'");
  }
  pos_ += width;
  pa.atom.atomic_number = z;
  pa.atom.aromatic = aromatic;
  return pa;
}

ParsedAtom SmilesParser::parse_bracket() {
  const std::size_t open = pos_;
  ++pos_;  // '['
  ParsedAtom pa;
  pa.bracket = true;

  while (std::isdigit(static_cast<unsigned char>(peek())))
    ++pos_;  // isotope, ignored

  const char c = peek();
  int z = -1;
  bool aromatic = false;
  if (c == '*') {
    z = 0;
    ++pos_;
  } else if (std::islower(static_cast<unsigned char>(c))) {
    const std::string two { c, peek(1) };
    if (two == "se" || two == "as") {
      z = two == "se" ? 34 : 33;
      pos_ += 2;
    } else {
      std::string one(1, static_cast<char>(std::toupper(c)));
      auto found = atomic_number_from_symbol(one);
      if (!found)
        fail("unknown aromatic element");
      z = *found;
      ++pos_;
    }
    aromatic = true;
    if (!can_be_aromatic(z))
      fail_at(pos_ - 1, "element cannot be aromatic");
  } else if (std::isupper(static_cast<unsigned char>(c))) {
    std::optional<int> found;
    if (std::islower(static_cast<unsigned char>(peek(1)))) {
      found = atomic_number_from_symbol(std::string { c, peek(1) });
      if (found)
        pos_ += 2;
    }
    if (!found) {
      found = atomic_number_from_symbol(std::string(1, c));
      if (!found)
        fail("unknown element symbol");
      ++pos_;
    }
    z = *found;
  } else {
    fail("expected element symbol in bracket atom");
  }

  pa.atom.atomic_number = z;
  pa.atom.aromatic = aromatic;

  if (peek() == '@') {
    ++pos_;
    if (peek() == '@') {
      ++pos_;
      pa.atom.chirality = Chirality::kClockwise;
    } else {
      pa.atom.chirality = Chirality::kCounterClockwise;
    }
    if (std::isupper(static_cast<unsigned char>(peek())) && peek() != 'H')
      throw UnsupportedFeature("extended chirality classes are not supported");
  }

  if (peek() == 'H') {
    ++pos_;
    int h = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      h = peek() - '0';
      ++pos_;
    }
    pa.atom.explicit_h = h;
  }

  if (peek() == '+' || peek() == '-') {
    const char sign = peek();
    ++pos_;
    int mag = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      mag = 0;
      while (std::isdigit(static_cast<unsigned char>(peek())))
        mag = mag * 10 + (s_[pos_++] - '0');
    } else {
      while (peek() == sign) {
        ++mag;
        ++pos_;
      }
    }
    pa.atom.formal_charge = sign == '+' ? mag : -mag;
  }

  if (peek() == ':') {
    ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected atom class number");
    while (std::isdigit(static_cast<unsigned char>(peek())))
      ++pos_;
  }

  if (peek() != ']')
    fail_at(done() ? open : pos_, "unterminated bracket atom");
  ++pos_;

  if (z == 0) {
    pa.atom.explicit_h = 0;
    pa.atom.formal_charge = 0;
    pa.atom.aromatic = false;
  }
  return pa;
}

MolGraph SmilesParser::parse() {
  if (s_.empty())
    throw SmilesSyntaxError(0, "empty SMILES");

  while (!done()) {
    const char c = peek();
    switch (c) {
    case '(':
      if (prev_ < 0)
        fail("branch without a preceding atom");
      branches_.push_back(prev_);
      ++pos_;
      break;
    case ')':
      if (branches_.empty())
        fail("unbalanced ')'");
      if (pending_ != '\0')
        fail("bond symbol before ')'");
      prev_ = branches_.back();
      branches_.pop_back();
      ++pos_;
      break;
    case '-': case '=': case '#': case ':': case '/': case '\\':
      if (pending_ != '\0')
        fail("consecutive bond symbols");
      pending_ = c;
      pending_pos_ = pos_;
      ++pos_;
      break;
    case '$':
      throw UnsupportedFeature("quadruple bonds are not supported");
    case '>':
      throw UnsupportedFeature("reaction SMILES are not supported");
    case '.':
      if (pending_ != '\0')
        fail("bond symbol before '.'");
      if (!branches_.empty())
        fail("'.' inside a branch");
      prev_ = -1;
      ++pos_;
      break;
    case '%': {
      const std::size_t at = pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek(1)))
          || !std::isdigit(static_cast<unsigned char>(peek(2))))
        fail("'%' must be followed by two digits");
      const int num = (peek(1) - '0') * 10 + (peek(2) - '0');
      pos_ += 3;
      ring_closure(num, at);
      break;
    }
    case '[':
      add_atom(parse_bracket());
      break;
    default:
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ring_closure(c - '0', pos_);
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        fail("whitespace inside SMILES");
      } else {
        add_atom(parse_organic());
      }
    }
  }

  if (!branches_.empty())
    fail_at(s_.size(), "unclosed branch");
  if (!rings_.empty())
    fail_at(rings_.begin()->second.pos, "unclosed ring");
  if (pending_ != '\0')
    fail_at(pending_pos_, "dangling bond symbol");
  if (atoms_.empty())
    throw SmilesSyntaxError(0, "no atoms");

  const int n = static_cast<int>(atoms_.size());

  // An unmarked bond between aromatic atoms is aromatic only inside a
  // ring, so biaryl links come out single.
  {
    std::vector<Bond> probe;
    for (const PendingBond &pb: bonds_)
      probe.push_back(Bond { pb.begin, pb.end, pb.order });
    compute_ring_info(n, probe);
    for (std::size_t i = 0; i < bonds_.size(); ++i)
      if (bonds_[i].implicit && bonds_[i].order == BondOrder::kAromatic
          && !probe[i].in_ring)
        bonds_[i].order = BondOrder::kSingle;
  }

  std::vector<std::vector<int>> incident(n);
  for (int i = 0; i < static_cast<int>(bonds_.size()); ++i) {
    incident[bonds_[i].begin].push_back(i);
    incident[bonds_[i].end].push_back(i);
  }

  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (int i = 0; i < n; ++i) {
    Atom a = atoms_[i].atom;
    std::vector<BondOrder> orders;
    for (int bi: incident[i])
      orders.push_back(bonds_[bi].order);
    if (!atoms_[i].bracket) {
      a.implicit_h = default_implicit_h(a, orders);
    } else if (!a.aromatic && !a.is_dummy()) {
      std::vector<int> allowed =
          allowed_valences(a.atomic_number, a.formal_charge);
      int used = a.explicit_h;
      for (BondOrder o: orders)
        used += o == BondOrder::kAromatic ? 1 : static_cast<int>(o);
      if (!allowed.empty() && allowed.front() > used)
        a.radical_electrons = allowed.front() - used;
    }
    atoms.push_back(a);
  }

  auto up_relative_to = [&](int bond, int atom) {
    const PendingBond &pb = bonds_[bond];
    return pb.begin == atom ? pb.up == 1 : pb.up == 0;
  };
  auto directional_neighbor = [&](int atom, int except) -> int {
    for (int bi: incident[atom])
      if (bi != except && bonds_[bi].up >= 0)
        return bi;
    return -1;
  };

  std::vector<Bond> bonds;
  bonds.reserve(bonds_.size());
  for (int i = 0; i < static_cast<int>(bonds_.size()); ++i) {
    const PendingBond &pb = bonds_[i];
    Bond b;
    b.begin = pb.begin;
    b.end = pb.end;
    b.order = pb.order;
    if (pb.order == BondOrder::kDouble) {
      const int da = directional_neighbor(pb.begin, i);
      const int db = directional_neighbor(pb.end, i);
      if (da >= 0 && db >= 0) {
        const bool same = up_relative_to(da, pb.begin)
                          == up_relative_to(db, pb.end);
        b.stereo = same ? BondStereo::kCis : BondStereo::kTrans;
        b.stereo_atoms = {
          bonds_[da].begin == pb.begin ? bonds_[da].end : bonds_[da].begin,
          bonds_[db].begin == pb.end ? bonds_[db].end : bonds_[db].begin,
        };
      }
    }
    bonds.push_back(b);
  }

  return MolGraph(std::move(atoms), std::move(bonds));
}

}  // namespace

MolGraph parse_smiles(std::string_view text) {
  return SmilesParser(text).parse();
}

}  // namespace fragtok
