#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"
#include "ipad.hpp"
#include "rational.hpp"
#include "tower.hpp"

namespace pcg {

// eta_j(p) = prod_{k=1}^j (1 - p^{-k})
Rat eta(int j, int p);

struct MeasValue {
  Rat value;
  bool in_range = true;  // false when the dimension argument exceeds g+1
};

// Measure of a class-c ancestor among random (g+1)-relator quotients of F_c:
// y/(aut_sigma*order) * p^{g(g+1)} * eta_g eta_{g+1} / eta_{g+1-h}.
MeasValue meas_c_formula(long long y, long long aut_sigma, const Int& order, int g, int h,
                         int p);
// Stable measure; nonzero only for r in {g, g+1}.
MeasValue meas_formula(long long y, long long aut_sigma, const Int& order, int g, int r,
                       int p);

// Abelian measure; at_class empty means the stable value.
Rat meas_ab_formula(const AbelianType& a, std::optional<int> at_class);

// |Aut| of a finite abelian p-group in closed form.
Int abelian_aut_order(const AbelianType& a);

std::string make_fingerprint(int order_exp, int p_class, const AbelianType& ab,
                             const Ipad& ipad, long long y);

// --- exhaustive relator-tuple oracle -------------------------------------
struct BruteClass {
  GroupPtr rep;
  std::string fingerprint;
  long long tuples = 0;
  Rat freq;
};
struct BruteResult {
  long long total_tuples = 0;
  std::vector<BruteClass> classes;  // sorted by descending frequency
};
BruteResult brute_force_meas_c(const FreeQuotient& fq, long long tuple_bound = 10000000);

// --- seeded sampling oracle ----------------------------------------------
struct McClass {
  std::string fingerprint;
  long long hits = 0;
  double estimate = 0, stderr_ = 0;
};
struct McResult {
  long long n = 0;
  std::vector<McClass> classes;  // sorted by descending hits
};
McResult monte_carlo_meas_c(const FreeQuotient& fq, long long n, uint64_t seed,
                            int threads = 1);

// Classifier used by the sampling oracle: fingerprints a quotient of the
// free quotient straight from its kernel, without building a presentation.
class McOracle {
 public:
  explicit McOracle(const FreeQuotient& fq);
  ~McOracle();
  std::string fingerprint(const std::vector<int32_t>& kernel_elems,
                          const std::vector<int32_t>& kernel_gens) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  friend McResult monte_carlo_meas_c(const FreeQuotient&, long long, uint64_t, int);
};

// Exact Meas_c(G) = Meas_{c+1}(G) + sum over ancestor children.
bool recursion_check(const Rat& parent_meas_c, const Rat& parent_meas_next,
                     const std::vector<Rat>& children_meas_next);

// Exhaustive census of (g+1)-tuples over Phi(F_c^{ab}): abelian quotient
// type -> exact frequency.
std::map<AbelianType, Rat> abelian_tuple_census(int p, int g, int c);

}  // namespace pcg
