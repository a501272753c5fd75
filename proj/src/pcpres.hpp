#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcg {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Normalized exponent vector; entries in [0, p). Unique per group element.
using Elt = std::vector<uint8_t>;

struct Factor {
  int gen = 0;  // 0-based
  long long exp = 0;
};
using Word = std::vector<Factor>;

Word word_from_elt(const Elt& e);
Word word_inverse(const Word& w);

// How a generator beyond the minimal generating set arises. Used when a
// homomorphism has to be induced without enumerating the group.
struct GenDef {
  enum Kind { kNone, kPower, kCommutator } kind = kNone;
  int j = -1, i = -1;  // kPower: a_j^p;  kCommutator: [a_j, a_i], j > i
};

// Weighted power-commutator presentation of a finite p-group of order p^n.
// Right-hand sides are normal-form words over strictly deeper generators.
class PcPresentation {
 public:
  PcPresentation() : PcPresentation(3, {1}) {}
  PcPresentation(int p, std::vector<int> weights);

  int p() const { return p_; }
  int ngens() const { return n_; }
  int weight(int i) const { return weights_[i]; }
  const std::vector<int>& weights() const { return weights_; }
  int p_class() const { return class_; }
  int rank() const { return rank_; }  // number of weight-1 generators

  const Word& power(int i) const { return power_[i]; }
  const Word& comm(int j, int i) const { return comm_[j][i]; }
  void set_power(int i, Word w);
  void set_comm(int j, int i, Word w);  // j > i

  const std::vector<GenDef>& defs() const { return defs_; }
  void set_defs(std::vector<GenDef> d) { defs_ = std::move(d); }
  bool has_defs() const;
  // Definitions solvable in index order: every defining relation isolates
  // its generator with exponent one after letters of smaller index.
  bool defs_triangular() const;
  // Recover definitions from the relations (last resort for parsed files).
  void derive_defs();

  // --- collection ---------------------------------------------------------
  Elt identity() const { return Elt(n_, 0); }
  Elt gen_elt(int i) const;
  void mul_gen(Elt& u, int g, long long e) const;
  void mul_word(Elt& u, const Word& w) const;
  void mul(Elt& u, const Elt& v) const;
  Elt collect(const Word& w) const;
  Elt multiply(const Elt& a, const Elt& b) const;
  Elt inverse(const Elt& u) const;
  Elt power_elt(const Elt& u, long long e) const;
  Elt commutator(const Elt& a, const Elt& b) const;  // a^-1 b^-1 a b
  Elt conjugate(const Elt& a, const Elt& b) const;   // b^-1 a b

  // All standard associativity and power overlap checks.
  bool is_consistent() const;

  // --- text format ---------------------------------------------------------
  // line 1: "<p> <n>"; then "w i <weight>" per generator; "p i : <word>" and
  // "c j i : <word>" with 1-based indices and factors like "g3^2".
  static PcPresentation parse(const std::string& text);
  std::string format() const;

 private:
  void mul_one(Elt& u, int g) const;
  void validate_word(const Word& w, int min_gen, int min_weight) const;

  int p_ = 3;
  int n_ = 0;
  int class_ = 1;
  int rank_ = 0;
  std::vector<int> weights_;
  std::vector<Word> power_;
  std::vector<std::vector<Word>> comm_;
  std::vector<GenDef> defs_;
  long long exponent_bound_ = 3;  // p^class
};

}  // namespace pcg
