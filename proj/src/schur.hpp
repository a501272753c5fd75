#pragma once

#include <optional>
#include <string>

#include "cover.hpp"
#include "tower.hpp"

namespace pcg {

enum class SchurClass { kSchurPlus1Group, kAncestorOnly, kPseudoSchurPlus1, kNone };

std::string schur_class_name(SchurClass c);

// A chosen GI-automorphism with the cached sigma statistics.
struct SigmaData {
  Homomorphism sigma;
  long long x_size = 0;
  long long y_size = 0;
  long long aut_sigma_order = 0;
};

// aut_order may come from the parent's orbit data; pass 0 to compute it here.
std::optional<SigmaData> sigma_stats(const Group& g, long long aut_order = 0);

struct Classification {
  SchurClass cls = SchurClass::kNone;
  bool has_gi = false;
  int r = 0, h = 0;
  bool inverts_mult = false;          // sigma acts as inversion on the multiplicator
  bool inverts_mult_mod_nuc = false;  // ... on multiplicator / nucleus
  bool ancestor = false;
  bool group = false;                 // Schur+1 sigma-group conditions hold
};

// Classification through the cover: a group is a Schur+1 sigma-ancestor iff
// it has a GI-automorphism acting as inversion on multiplicator/nucleus with
// h <= g+1, and a Schur+1 sigma-group iff the inversion holds on the whole
// multiplicator with r in {g, g+1}.
Classification classify(const Group& g, const CoverData& cd);
Classification classify(const Group& g);

// Kernel-witnessed ancestor test over an explicit free quotient: some
// sigma-equivariant epimorphism F_c -> G has a kernel R with dim R/R* <= g+1
// on which sigma acts as inversion. Desk scale only.
struct AncestorWitness {
  std::vector<int32_t> epi_images;  // images of the free generators
  std::vector<int32_t> kernel;      // sorted element ids in F_c
  int kernel_rank = 0;              // dim R/R*
};

std::optional<AncestorWitness> ancestor_witness(const Group& g, const Homomorphism& sigma,
                                                const FreeQuotient& fq);

}  // namespace pcg
