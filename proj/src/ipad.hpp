#pragma once

#include <string>
#include <vector>

#include "group.hpp"

namespace pcg {

// Abelianization of a group together with the abelianizations of its
// maximal subgroups ("index p abelianization data").
struct Ipad {
  AbelianType top;
  std::vector<AbelianType> layer;  // sorted ascending

  std::string str() const;  // e.g. "[[3,3]; [3,3]^3 [3,9]]"
  bool operator==(const Ipad& o) const { return top == o.top && layer == o.layer; }
  bool operator!=(const Ipad& o) const { return !(*this == o); }
};

Ipad ipad_of(const Group& g);

// Partial order: tops compare as quotient types and the layers admit a
// matching in which every left entry is a quotient type of its partner.
bool ipad_le(const Ipad& a, const Ipad& b);

inline bool stable_edge(const Ipad& parent, const Ipad& child) { return parent == child; }

// Parse the canonical string form back into an Ipad (validation for CLI and
// census input). Throws ValidationError on malformed strings.
Ipad parse_ipad(const std::string& text, int p);

}  // namespace pcg
