#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pcpres.hpp"
#include "rational.hpp"

namespace pcg {

// Multiset of prime-power cyclic orders, e.g. [3,9]. exps ascending.
struct AbelianType {
  int p = 3;
  std::vector<int> exps;

  int rank() const { return static_cast<int>(exps.size()); }
  int p_class() const;                  // max exponent (0 for trivial)
  int u_below(int c) const;             // #factors with e_i < c
  std::string str() const;              // "[3,9]"
  bool operator==(const AbelianType& o) const { return p == o.p && exps == o.exps; }
  bool operator<(const AbelianType& o) const { return exps < o.exps; }
  // True iff this type arises as a quotient of b.
  bool quotient_of(const AbelianType& b) const;
};

struct SubgroupSet {
  std::vector<int32_t> elems;  // sorted element ids
  std::vector<int32_t> gens;   // generating set that was used to build it
};

inline constexpr long long kDefaultEnumBound = 59049LL * 59049LL;  // placeholder, see Group

// A finite p-group given by a consistent weighted pc presentation, together
// with the enumerated machinery (index tables) that the search and subgroup
// routines run on. Immutable after construction.
class Group {
 public:
  explicit Group(PcPresentation pres);

  const PcPresentation& pres() const { return pres_; }
  int p() const { return pres_.p(); }
  int order_exp() const { return pres_.ngens(); }
  int p_class() const { return pres_.p_class(); }
  int rank() const { return pres_.rank(); }
  long long size() const { return size_; }

  // --- element indexing (lexicographic on exponent vectors) ---------------
  int32_t idx_of(const Elt& e) const;
  Elt elt_of(int32_t x) const;
  int32_t mul_by_gen(int32_t x, int g) const { return rmul_[g][x]; }
  int32_t mul(int32_t a, int32_t b) const;
  int32_t inv(int32_t a) const { return inv_[a]; }
  int32_t conj(int32_t a, int32_t b) const;        // b^-1 a b
  int32_t comm(int32_t a, int32_t b) const;        // [a,b]
  int32_t pow(int32_t a, long long e) const;
  int32_t apply_images(const Elt& x, const std::vector<int32_t>& gen_images) const;

  int elt_order(int32_t a) const;
  // Series depth: largest m with x in P_m(G); equals class for the identity.
  int fdepth(int32_t a) const;
  uint32_t profile(int32_t a) const;  // isomorphism-invariant bucket id
  const std::vector<int32_t>& profile_bucket(uint32_t profile_id) const;

  bool in_frattini(int32_t a) const;
  std::vector<uint8_t> frattini_residue(int32_t a) const;  // coords of weight-1 gens
  const std::vector<int32_t>& frattini_elems() const;      // sorted
  std::vector<int32_t> series_subgroup(int m) const;       // P_m(G), sorted

  // Word over the weight-1 generators evaluating to generator k.
  const Word& gen_word(int k) const;

  // --- subgroup machinery --------------------------------------------------
  SubgroupSet closure(std::vector<int32_t> gens) const;
  SubgroupSet normal_closure(std::vector<int32_t> gens) const;
  bool is_subgroup(const std::vector<int32_t>& elems) const;
  SubgroupSet derived_subgroup(const SubgroupSet& h) const;
  SubgroupSet power_subgroup(const SubgroupSet& h, long long k) const;  // gen by x^k
  AbelianType abelian_invariants(const SubgroupSet& h) const;
  AbelianType abelianization() const;
  std::vector<SubgroupSet> maximal_subgroups() const;
  std::vector<int32_t> center() const;

  // Small generating set of a subgroup (greedy by closure growth).
  std::vector<int32_t> small_generating_set(const std::vector<int32_t>& elems) const;

  static long long enum_bound;  // elements; default p^10 for p = 3

 private:
  void build_tables();
  void build_profiles() const;

  PcPresentation pres_;
  long long size_ = 0;
  std::vector<int64_t> radix_;
  std::vector<std::vector<int32_t>> rmul_;  // rmul_[g][x] = x * a_g
  std::vector<uint8_t> digits_;             // exponent vectors, n per element
  std::vector<int32_t> powp_;               // x -> x^p
  std::vector<int32_t> inv_;
  mutable std::vector<int> order_;
  mutable std::vector<int> fdepth_;
  mutable std::vector<uint32_t> profile_;
  mutable std::vector<std::vector<int32_t>> buckets_;
  mutable std::vector<Word> gen_words_;
  mutable std::vector<int32_t> frattini_;
};

using GroupPtr = std::shared_ptr<Group>;

}  // namespace pcg
