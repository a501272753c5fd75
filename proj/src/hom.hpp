#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fpmat.hpp"
#include "group.hpp"

namespace pcg {

// Homomorphism between enumerated groups, stored as images of every source
// generator (images of deeper generators are induced from the weight-1 ones).
struct Homomorphism {
  const Group* src = nullptr;
  const Group* dst = nullptr;
  std::vector<int32_t> images;

  int32_t apply(int32_t x) const;
  Elt apply_elt(const Elt& x) const;
  bool is_identity() const;
  bool is_epimorphism() const;
  // h(g(x)); src of g must match dst of g == src of h etc.
  static Homomorphism compose(const Homomorphism& h, const Homomorphism& g);
};

// Builds the homomorphism with the given weight-1 generator images, or
// nothing if some defining relation is violated.
std::optional<Homomorphism> hom_from_images(const Group& src, const Group& dst,
                                            const std::vector<int32_t>& w1_images);

std::vector<int32_t> kernel_of(const Homomorphism& h);

// Whole automorphism group, organised along the action on G/Phi(G):
// every automorphism is (lift of an invertible matrix) * (Frattini-kernel
// automorphism), and all fibers share the kernel's size.
struct AutData {
  long long order = 0;
  long long kernel_size = 0;
  int gl_part = 0;  // number of matrices in GL(g,p) admitting a lift
  std::vector<Homomorphism> gens;
};

AutData compute_aut(const Group& g);

// Streams every automorphism exactly once (fiber by fiber, lexicographic);
// stop early by returning false. Returns the number visited.
extern long long aut_stream_bound;
long long stream_automorphisms(const Group& g,
                               const std::function<bool(const Homomorphism&)>& fn);

// GI-automorphisms: order 2 and inversion on G/Phi(G).
std::optional<Homomorphism> find_gi(const Group& g);
long long count_gi(const Group& g);

std::optional<Homomorphism> find_isomorphism(const Group& a, const Group& b);
bool isomorphic(const Group& a, const Group& b);

}  // namespace pcg
