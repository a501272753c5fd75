#include "tower.hpp"

#include <algorithm>

namespace pcg {

namespace {

// sigma images at collector level: x_i -> x_i^{-1} on the weight-1
// generators, everything deeper induced through the definitions.
std::vector<Elt> invert_generators(const PcPresentation& P) {
  std::vector<Elt> images(P.ngens(), P.identity());
  std::vector<bool> known(P.ngens(), false);
  for (int i = 0; i < P.ngens() && P.weight(i) == 1; ++i) {
    images[i] = P.inverse(P.gen_elt(i));
    known[i] = true;
  }
  // induce deeper generators in dependency order: repeat passes until done
  bool progress = true;
  while (progress) {
    progress = false;
    for (int k = 0; k < P.ngens(); ++k) {
      if (known[k] || P.defs()[k].kind == GenDef::kNone) continue;
      const GenDef& d = P.defs()[k];
      const Word& rhs = d.kind == GenDef::kPower ? P.power(d.j) : P.comm(d.j, d.i);
      bool ready = known[d.j] && (d.kind == GenDef::kPower || known[d.i]);
      for (const auto& f : rhs)
        if (f.gen != k && !known[f.gen]) ready = false;
      if (!ready) continue;
      Word prefix, suffix;
      bool seen = false;
      for (const auto& f : rhs) {
        if (f.gen == k) {
          seen = true;
          continue;
        }
        (seen ? suffix : prefix).push_back(f);
      }
      Elt lhs = d.kind == GenDef::kPower ? P.power_elt(images[d.j], P.p())
                                         : P.commutator(images[d.j], images[d.i]);
      Elt val = P.identity();
      for (const auto& f : prefix) {
        Elt b = P.power_elt(images[f.gen], f.exp);
        P.mul(val, b);
      }
      val = P.inverse(val);
      P.mul(val, lhs);
      Elt sfx = P.identity();
      for (const auto& f : suffix) {
        Elt b = P.power_elt(images[f.gen], f.exp);
        P.mul(sfx, b);
      }
      P.mul(val, P.inverse(sfx));
      images[k] = std::move(val);
      known[k] = true;
      progress = true;
    }
  }
  for (bool k : known)
    if (!k) throw std::logic_error("could not induce the inverting automorphism");
  return images;
}

}  // namespace

FreeQuotient FreeQuotient::build(int p, int g, int c) {
  if (g < 1 || c < 1) throw ValidationError("rank and class must be positive");
  PcPresentation pres(p, std::vector<int>(g, 1));  // elementary abelian
  for (int level = 2; level <= c; ++level) {
    CoverData cd = p_cover(pres);
    pres = cd.cover;
  }
  FreeQuotient fq;
  fq.pres_ = std::move(pres);
  fq.g_ = g;
  fq.c_ = c;
  if (!fq.pres_.has_defs() && fq.pres_.ngens() > g) fq.pres_.derive_defs();
  fq.sigma_images_ = invert_generators(fq.pres_);
  // sigma is an involution
  for (int i = 0; i < fq.pres_.ngens(); ++i) {
    Elt twice = fq.apply_sigma(fq.sigma_images_[i]);
    if (twice != fq.pres_.gen_elt(i))
      throw std::logic_error("generator inversion did not square to the identity");
  }
  return fq;
}

long long FreeQuotient::phi_size() const {
  long long s = 1;
  for (int i = g_; i < pres_.ngens(); ++i) s *= pres_.p();
  return s;
}

Elt FreeQuotient::apply_sigma(const Elt& x) const {
  Elt r = pres_.identity();
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i]) {
      Elt b = pres_.power_elt(sigma_images_[i], x[i]);
      pres_.mul(r, b);
    }
  return r;
}

Elt FreeQuotient::phi_map_elt(const Elt& t) const {
  for (int i = 0; i < g_; ++i)
    if (t[i]) throw ValidationError("argument of the phi map must lie in Phi");
  Elt r = pres_.inverse(t);
  Elt s = apply_sigma(t);
  pres_.mul(r, s);
  return r;
}

const GroupPtr& FreeQuotient::group() const {
  if (!grp_) grp_ = std::make_shared<Group>(pres_);
  return grp_;
}

const Homomorphism& FreeQuotient::sigma() const {
  if (!sigma_) {
    const GroupPtr& G = group();
    std::vector<int32_t> w1;
    for (int i = 0; i < g_; ++i) w1.push_back(G->idx_of(sigma_images_[i]));
    auto h = hom_from_images(*G, *G, w1);
    if (!h) throw std::logic_error("sigma is not a homomorphism");
    sigma_ = std::make_unique<Homomorphism>(std::move(*h));
  }
  return *sigma_;
}

const std::vector<int32_t>& FreeQuotient::x_set() const {
  if (x_set_.empty()) {
    const GroupPtr& G = group();
    const Homomorphism& s = sigma();
    for (int32_t t : G->frattini_elems())
      if (s.apply(t) == G->inv(t)) x_set_.push_back(t);
  }
  return x_set_;
}

long long FreeQuotient::y_size() const {
  if (y_size_ < 0) {
    const GroupPtr& G = group();
    const Homomorphism& s = sigma();
    long long y = 0, xw = 0;
    for (long long t = 0; t < G->size(); ++t) {
      int32_t ti = static_cast<int32_t>(t);
      if (s.apply(ti) == ti) ++y;
      if (s.apply(ti) == G->inv(ti)) ++xw;
    }
    y_size_ = y;
    x_whole_ = xw;
  }
  return y_size_;
}

long long FreeQuotient::x_of_whole_group() const {
  y_size();
  return x_whole_;
}

int32_t FreeQuotient::phi_map(int32_t t) const {
  const GroupPtr& G = group();
  if (!G->in_frattini(t)) throw ValidationError("argument of the phi map must lie in Phi");
  return G->mul(G->inv(t), sigma().apply(t));
}

std::vector<Elt> FreeQuotient::sample_x_tuple(int k, uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::vector<Elt> out;
  out.reserve(k);
  int n = pres_.ngens();
  for (int q = 0; q < k; ++q) {
    Elt t(n, 0);
    for (int i = g_; i < n; ++i)
      t[i] = static_cast<uint8_t>(rng() % static_cast<uint64_t>(pres_.p()));
    out.push_back(phi_map_elt(t));
  }
  return out;
}

}  // namespace pcg
