#pragma once

#include <optional>
#include <vector>

#include "fpmat.hpp"
#include "group.hpp"
#include "hom.hpp"

namespace pcg {

// The p-covering group of a base presentation, with the multiplicator
// identified inside it. The base embeds as the first generators (in a
// weight-compatible reordering recorded in old_index).
struct CoverData {
  PcPresentation base;   // copy of the input, with definitions
  PcPresentation cover;  // G*, with definitions
  std::vector<int> old_index;    // base generator -> cover index
  std::vector<int> mult_index;   // multiplicator basis -> cover index (ascending)
  std::vector<int> mult_weight;  // weight of each multiplicator generator
  std::vector<int> nuc_coords;   // multiplicator coordinates of weight class+1

  int r() const { return static_cast<int>(mult_index.size()); }
  int nuc_dim() const { return static_cast<int>(nuc_coords.size()); }
  int h() const { return r() - nuc_dim(); }
  bool is_terminal() const { return nuc_dim() == 0; }

  // Split a cover element into its base part and multiplicator coordinates.
  std::vector<uint8_t> mult_coords(const Elt& cover_elt) const;
  Elt embed_base(const Elt& base_elt) const;
};

CoverData p_cover(const PcPresentation& base);

// Lift an automorphism of the base (given by images of the weight-1
// generators) through the cover; returns its matrix on the multiplicator.
// Checks that the lift is a homomorphism of the cover and that it stabilizes
// the nucleus.
FpMat lift_to_multiplicator(const CoverData& cd, const std::vector<Elt>& w1_images);

// One immediate descendant per orbit of allowable subgroups.
struct Descendant {
  PcPresentation pres;
  FpMat allowable;        // RREF rows in multiplicator coordinates
  long long orbit_size = 0;
  int step_width = 0;     // r - dim M
  long long aut_order = 0;  // |Aut(D)| via the stabilizer and kernel sizes
};

std::vector<Descendant> immediate_descendants(const Group& base, const CoverData& cd,
                                              const AutData& aut);

// Allowable subgroups as canonical RREF matrices (no orbit folding).
std::vector<FpMat> allowable_subspaces(const CoverData& cd);

// Quotient of the cover by an allowable subgroup.
PcPresentation descendant_pcp(const CoverData& cd, const FpMat& allowable);

}  // namespace pcg
