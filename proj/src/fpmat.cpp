#include "fpmat.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcg {

FpMat FpMat::identity(int p, int n) {
  FpMat m(p, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMat FpMat::neg_identity(int p, int n) {
  FpMat m(p, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = static_cast<uint8_t>(p - 1);
  return m;
}

FpMat FpMat::mul(const FpMat& other) const {
  if (cols != other.rows || p != other.p) throw std::invalid_argument("shape");
  FpMat r(p, rows, other.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      int v = at(i, k);
      if (!v) continue;
      for (int j = 0; j < other.cols; ++j)
        r.at(i, j) = static_cast<uint8_t>((r.at(i, j) + v * other.at(k, j)) % p);
    }
  return r;
}

std::vector<uint8_t> FpMat::apply(const std::vector<uint8_t>& v) const {
  if (static_cast<int>(v.size()) != rows) throw std::invalid_argument("shape");
  std::vector<uint8_t> r(cols, 0);
  for (int i = 0; i < rows; ++i) {
    int c = v[i];
    if (!c) continue;
    for (int j = 0; j < cols; ++j)
      r[j] = static_cast<uint8_t>((r[j] + c * at(i, j)) % p);
  }
  return r;
}

std::vector<int> rref(FpMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    int inv = fp_inv(m.at(r, c), m.p);
    for (int j = 0; j < m.cols; ++j)
      m.at(r, j) = static_cast<uint8_t>(m.at(r, j) * inv % m.p);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || !m.at(i, c)) continue;
      int f = m.at(i, c);
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = static_cast<uint8_t>((m.at(i, j) + (m.p - f) * m.at(r, j)) % m.p);
    }
    pivots.push_back(c);
    ++r;
  }
  m.a.resize(static_cast<size_t>(r) * m.cols);
  m.rows = r;
  return pivots;
}

FpMat row_space_canon(const FpMat& m) {
  FpMat c = m;
  rref(c);
  return c;
}

std::vector<uint8_t> reduce_mod_rows(const FpMat& rr, const std::vector<int>& pivots,
                                     std::vector<uint8_t> v) {
  for (size_t k = 0; k < pivots.size(); ++k) {
    int c = pivots[k];
    int f = v[c];
    if (!f) continue;
    for (int j = 0; j < rr.cols; ++j)
      v[j] = static_cast<uint8_t>((v[j] + (rr.p - f) * rr.at(static_cast<int>(k), j)) % rr.p);
  }
  return v;
}

bool in_row_space(const FpMat& rr, const std::vector<int>& pivots,
                  const std::vector<uint8_t>& v) {
  auto red = reduce_mod_rows(rr, pivots, v);
  return std::all_of(red.begin(), red.end(), [](uint8_t x) { return x == 0; });
}

int fp_inv(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw std::invalid_argument("not invertible");
}

std::vector<FpMat> all_invertible(int p, int g) {
  std::vector<FpMat> out;
  long long total = 1;
  for (int i = 0; i < g * g; ++i) total *= p;
  for (long long code = 0; code < total; ++code) {
    FpMat m(p, g, g);
    long long c = code;
    for (int i = g * g - 1; i >= 0; --i) {
      m.a[i] = static_cast<uint8_t>(c % p);
      c /= p;
    }
    FpMat t = m;
    if (static_cast<int>(rref(t).size()) == g) out.push_back(m);
  }
  return out;
}

bool linear_map_exists(int p, const std::vector<std::vector<uint8_t>>& in,
                       const std::vector<std::vector<uint8_t>>& out) {
  if (in.size() != out.size()) throw std::invalid_argument("shape");
  if (in.empty()) return true;
  int ic = static_cast<int>(in[0].size());
  int oc = static_cast<int>(out[0].size());
  // Row reduce [in | out]; inconsistent iff a zero input row has nonzero output.
  FpMat m(p, static_cast<int>(in.size()), ic + oc);
  for (size_t i = 0; i < in.size(); ++i) {
    for (int j = 0; j < ic; ++j) m.at(static_cast<int>(i), j) = in[i][j];
    for (int j = 0; j < oc; ++j) m.at(static_cast<int>(i), ic + j) = out[i][j];
  }
  // Gaussian elimination restricted to the input columns.
  int r = 0;
  for (int c = 0; c < ic && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    int inv = fp_inv(m.at(r, c), p);
    for (int j = 0; j < m.cols; ++j)
      m.at(r, j) = static_cast<uint8_t>(m.at(r, j) * inv % p);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || !m.at(i, c)) continue;
      int f = m.at(i, c);
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = static_cast<uint8_t>((m.at(i, j) + (p - f) * m.at(r, j)) % p);
    }
    ++r;
  }
  for (int i = r; i < m.rows; ++i)
    for (int j = ic; j < m.cols; ++j)
      if (m.at(i, j)) return false;
  return true;
}

}  // namespace pcg
