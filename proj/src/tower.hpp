#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "cover.hpp"
#include "group.hpp"
#include "hom.hpp"

namespace pcg {

// Maximal class-c quotient of the free pro-p group of rank g, with the
// generator-inverting automorphism and the anti-fixed sets used by the
// relator-tuple measures.
class FreeQuotient {
 public:
  static FreeQuotient build(int p, int g, int c);

  int p() const { return pres_.p(); }
  int g() const { return g_; }
  int c() const { return c_; }
  const PcPresentation& pres() const { return pres_; }
  int order_exp() const { return pres_.ngens(); }
  long long phi_size() const;

  // sigma as images of every generator (collector level, any size)
  const std::vector<Elt>& sigma_images() const { return sigma_images_; }
  Elt apply_sigma(const Elt& x) const;
  Elt phi_map_elt(const Elt& t) const;  // t^{-1} sigma(t)

  // Enumerated machinery; throws BoundError beyond the enumeration bound.
  const GroupPtr& group() const;
  const Homomorphism& sigma() const;
  const std::vector<int32_t>& x_set() const;  // sorted, subset of Phi
  long long x_size() const { return static_cast<long long>(x_set().size()); }
  long long y_size() const;
  long long x_of_whole_group() const;  // |X(F_c, sigma)|
  int32_t phi_map(int32_t t) const;

  // Independent uniform draws from X_c via the phi map; deterministic.
  std::vector<Elt> sample_x_tuple(int k, uint64_t seed) const;

 private:
  PcPresentation pres_{3, {1}};
  int g_ = 0, c_ = 0;
  std::vector<Elt> sigma_images_;
  mutable GroupPtr grp_;
  mutable std::unique_ptr<Homomorphism> sigma_;
  mutable std::vector<int32_t> x_set_;
  mutable long long y_size_ = -1, x_whole_ = -1;
};

}  // namespace pcg
