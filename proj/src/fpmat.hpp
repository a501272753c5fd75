#pragma once

#include <cstdint>
#include <vector>

namespace pcg {

// Dense row-major matrix over the field with p elements. Entries live in
// [0, p). Small dimensions only (multiplicator work is <= ~8 columns).
struct FpMat {
  int p = 0;
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> a;

  FpMat() = default;
  FpMat(int p_, int rows_, int cols_)
      : p(p_), rows(rows_), cols(cols_), a(static_cast<size_t>(rows_) * cols_, 0) {}

  uint8_t& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  uint8_t at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static FpMat identity(int p, int n);
  static FpMat neg_identity(int p, int n);

  FpMat mul(const FpMat& other) const;
  std::vector<uint8_t> apply(const std::vector<uint8_t>& v) const;  // row vector * matrix
  bool operator==(const FpMat& other) const {
    return p == other.p && rows == other.rows && cols == other.cols && a == other.a;
  }
};

// Reduced row echelon form in place. Returns pivot column list (rank =
// list size). Zero rows are removed.
std::vector<int> rref(FpMat& m);

// Canonical representation of the row space: RREF with zero rows dropped.
FpMat row_space_canon(const FpMat& m);

// Reduce v modulo the row space of an RREF matrix (pivots as returned by
// rref). Leaves the unique representative supported off the pivot columns.
std::vector<uint8_t> reduce_mod_rows(const FpMat& rr, const std::vector<int>& pivots,
                                     std::vector<uint8_t> v);

bool in_row_space(const FpMat& rr, const std::vector<int>& pivots,
                  const std::vector<uint8_t>& v);

// Solve x = a^{-1} mod p by scanning (p is tiny).
int fp_inv(int a, int p);

// All invertible g x g matrices over F_p in lexicographic order of their
// row-major entry vectors. Intended for tiny g.
std::vector<FpMat> all_invertible(int p, int g);

// Does a linear map with prescribed values exist?  pairs of (input, output)
// row vectors; consistent iff every dependency among inputs is matched by
// the outputs.
bool linear_map_exists(int p, const std::vector<std::vector<uint8_t>>& in,
                       const std::vector<std::vector<uint8_t>>& out);

}  // namespace pcg
