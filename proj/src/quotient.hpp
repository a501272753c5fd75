#pragma once

#include <vector>

#include "group.hpp"

namespace pcg {

// Coset structure of a quotient F/N for a normal subgroup N, on top of the
// parent's tables. Coset representatives are the minimal member ids.
struct CosetSpace {
  const Group* parent = nullptr;
  std::vector<int32_t> rep;       // coset id -> representative element
  std::vector<int32_t> coset_of;  // element -> coset id
  int32_t size = 0;

  int32_t mul(int32_t a, int32_t b) const {
    return coset_of[parent->mul(rep[a], rep[b])];
  }
  int32_t inv(int32_t a) const { return coset_of[parent->inv(rep[a])]; }
  int32_t pow(int32_t a, long long e) const;
  int32_t comm(int32_t a, int32_t b) const {
    return coset_of[parent->comm(rep[a], rep[b])];
  }
};

CosetSpace coset_space(const Group& parent, const std::vector<int32_t>& normal_sorted);

// Weighted pc presentation of F/N, with generator definitions. Deterministic:
// generators are picked greedily in representative order, definition
// candidates scanned powers-first.
PcPresentation quotient_pcp(const Group& parent, const std::vector<int32_t>& normal_sorted);

}  // namespace pcg
