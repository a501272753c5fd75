#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pcg {

// Exact arithmetic everywhere; floating point appears only in report
// formatting.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Int n(static_cast<long>(num));
  Int d(static_cast<long>(den));
  Rat q(n, d);
  q.canonicalize();
  return q;
}

inline Int int_pow(long long base, long long exp) {
  if (exp < 0) throw std::invalid_argument("negative exponent");
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exp));
  return r;
}

inline Rat rat_pow(const Rat& base, long long exp) {
  Rat r = 1;
  Rat b = base;
  long long e = exp;
  if (e < 0) {
    if (base == 0) throw std::invalid_argument("zero to negative power");
    b = 1 / base;
    e = -e;
  }
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline std::string fraction_string(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Round-half-even rendering with four digits after the point.
inline std::string decimal4(const Rat& q) {
  bool neg = q < 0;
  Int num = abs(q.get_num());
  Int den = q.get_den();
  Int scaled = num * 10000;
  Int quo, rem;
  mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(),
              den.get_mpz_t());
  Int twice = rem * 2;
  int c = cmp(twice, den);
  if (c > 0 || (c == 0 && mpz_odd_p(quo.get_mpz_t()))) quo += 1;
  Int ipart = quo / 10000;
  Int fpart = quo % 10000;
  std::string frac = fpart.get_str();
  frac.insert(frac.begin(), 4 - frac.size(), '0');
  std::string out = (neg ? "-" : "") + ipart.get_str() + "." + frac;
  return out;
}

inline double to_double(const Rat& q) { return q.get_d(); }

}  // namespace pcg
