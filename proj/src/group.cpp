#include "group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace pcg {

long long Group::enum_bound = 59049;  // 3^10

int AbelianType::p_class() const { return exps.empty() ? 0 : exps.back(); }

int AbelianType::u_below(int c) const {
  int u = 0;
  for (int e : exps)
    if (e < c) ++u;
  return u;
}

std::string AbelianType::str() const {
  std::ostringstream out;
  out << '[';
  for (size_t i = 0; i < exps.size(); ++i) {
    if (i) out << ',';
    long long v = 1;
    for (int k = 0; k < exps[i]; ++k) v *= p;
    out << v;
  }
  out << ']';
  return out.str();
}

bool AbelianType::quotient_of(const AbelianType& b) const {
  // Align largest factors: quotient iff desc-sorted exponents dominate.
  if (exps.size() > b.exps.size()) return false;
  for (size_t i = 0; i < exps.size(); ++i) {
    int a_e = exps[exps.size() - 1 - i];
    int b_e = b.exps[b.exps.size() - 1 - i];
    if (a_e > b_e) return false;
  }
  return true;
}

Group::Group(PcPresentation pres) : pres_(std::move(pres)) {
  size_ = 1;
  for (int i = 0; i < pres_.ngens(); ++i) {
    size_ *= pres_.p();
    if (size_ > enum_bound)
      throw BoundError("group of order p^" + std::to_string(pres_.ngens()) +
                       " exceeds the enumeration bound");
  }
  if (!pres_.is_consistent())
    throw ValidationError("presentation fails the consistency test");
  build_tables();
}

void Group::build_tables() {
  int n = pres_.ngens();
  int p = pres_.p();
  radix_.assign(n, 1);
  for (int i = n - 2; i >= 0; --i) radix_[i] = radix_[i + 1] * p;
  rmul_.assign(n, std::vector<int32_t>(size_));
  digits_.assign(static_cast<size_t>(size_) * n, 0);
  Elt e(n, 0);
  for (long long x = 0; x < size_; ++x) {
    long long t = x;
    for (int i = 0; i < n; ++i) {
      e[i] = static_cast<uint8_t>(t / radix_[i]);
      digits_[x * n + i] = e[i];
      t %= radix_[i];
    }
    for (int g = 0; g < n; ++g) {
      Elt u = e;
      pres_.mul_gen(u, g, 1);
      rmul_[g][x] = idx_of(u);
    }
  }
  inv_.assign(size_, 0);
  for (long long x = 0; x < size_; ++x) {
    // clear coordinates from the top
    int32_t v = 0;
    int32_t acc = static_cast<int32_t>(x);
    for (int i = 0; i < n; ++i) {
      int c = digits_[static_cast<size_t>(acc) * n + i];
      if (!c) continue;
      for (int k = 0; k < p - c; ++k) {
        v = rmul_[i][v];
        acc = rmul_[i][acc];
      }
    }
    inv_[x] = v;
  }
  powp_.assign(size_, 0);
  for (long long x = 0; x < size_; ++x) {
    int32_t r = static_cast<int32_t>(x);
    for (int k = 1; k < p; ++k) r = mul(r, static_cast<int32_t>(x));
    powp_[x] = r;
  }
}

int32_t Group::idx_of(const Elt& e) const {
  long long x = 0;
  for (size_t i = 0; i < e.size(); ++i) x += e[i] * radix_[i];
  return static_cast<int32_t>(x);
}

Elt Group::elt_of(int32_t x) const {
  int n = pres_.ngens();
  Elt e(n, 0);
  long long t = x;
  for (int i = 0; i < n; ++i) {
    e[i] = static_cast<uint8_t>(t / radix_[i]);
    t %= radix_[i];
  }
  return e;
}

int32_t Group::mul(int32_t a, int32_t b) const {
  int n = pres_.ngens();
  const uint8_t* d = &digits_[static_cast<size_t>(b) * n];
  int32_t r = a;
  for (int i = 0; i < n; ++i) {
    const int32_t* tab = rmul_[i].data();
    for (int k = 0; k < d[i]; ++k) r = tab[r];
  }
  return r;
}

int32_t Group::conj(int32_t a, int32_t b) const { return mul(mul(inv_[b], a), b); }

int32_t Group::comm(int32_t a, int32_t b) const {
  return mul(mul(inv_[a], inv_[b]), mul(a, b));
}

int32_t Group::pow(int32_t a, long long e) const {
  if (e == pres_.p() && !powp_.empty()) return powp_[a];
  long long m = size_;  // element order divides p^class <= |G|
  e %= m;
  if (e < 0) e += m;
  if (e == 0) return 0;
  if (e == 1) return a;
  int32_t r = 0, b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

int32_t Group::apply_images(const Elt& x, const std::vector<int32_t>& gen_images) const {
  int32_t r = 0;
  for (size_t i = 0; i < x.size(); ++i)
    for (int k = 0; k < x[i]; ++k) r = mul(r, gen_images[i]);
  return r;
}

void Group::build_profiles() const {
  if (!order_.empty()) return;
  int p = pres_.p();
  order_.assign(size_, 1);
  for (long long x = 1; x < size_; ++x) {
    int32_t y = static_cast<int32_t>(x);
    int o = 1;
    while (y != 0) {
      y = pow(y, p);
      o *= p;
    }
    order_[x] = o;
  }
  fdepth_.assign(size_, 0);
  int n = pres_.ngens();
  for (long long x = 0; x < size_; ++x) {
    if (x == 0) {
      fdepth_[x] = pres_.p_class();
      continue;
    }
    Elt e = elt_of(static_cast<int32_t>(x));
    int minw = pres_.p_class() + 1;
    for (int i = 0; i < n; ++i)
      if (e[i]) minw = std::min(minw, pres_.weight(i));
    fdepth_[x] = minw - 1;
  }
  // conjugacy class sizes via orbit partition
  std::vector<int32_t> class_of(size_, -1);
  std::vector<int> class_size;
  for (long long x = 0; x < size_; ++x) {
    if (class_of[x] >= 0) continue;
    int32_t cid = static_cast<int32_t>(class_size.size());
    std::vector<int32_t> orbit{static_cast<int32_t>(x)};
    class_of[x] = cid;
    for (size_t q = 0; q < orbit.size(); ++q)
      for (int g = 0; g < n; ++g) {
        int32_t y = conj(orbit[q], mul_by_gen(0, g));
        if (class_of[y] < 0) {
          class_of[y] = cid;
          orbit.push_back(y);
        }
      }
    class_size.push_back(static_cast<int>(orbit.size()));
  }
  // bucket by (order, depth, order of p-th power, class size)
  std::map<std::tuple<int, int, int, int>, uint32_t> ids;
  profile_.assign(size_, 0);
  for (long long x = 0; x < size_; ++x) {
    int32_t xp = pow(static_cast<int32_t>(x), p);
    auto key = std::make_tuple(order_[x], fdepth_[x], fdepth_[xp], class_size[class_of[x]]);
    auto [it, fresh] = ids.insert({key, static_cast<uint32_t>(ids.size())});
    profile_[x] = it->second;
  }
  buckets_.assign(ids.size(), {});
  for (long long x = 0; x < size_; ++x) buckets_[profile_[x]].push_back(static_cast<int32_t>(x));
}

int Group::elt_order(int32_t a) const {
  build_profiles();
  return order_[a];
}

int Group::fdepth(int32_t a) const {
  build_profiles();
  return fdepth_[a];
}

uint32_t Group::profile(int32_t a) const {
  build_profiles();
  return profile_[a];
}

const std::vector<int32_t>& Group::profile_bucket(uint32_t id) const {
  build_profiles();
  return buckets_[id];
}

bool Group::in_frattini(int32_t a) const {
  Elt e = elt_of(a);
  for (int i = 0; i < pres_.rank(); ++i)
    if (e[i]) return false;
  return true;
}

std::vector<uint8_t> Group::frattini_residue(int32_t a) const {
  Elt e = elt_of(a);
  return std::vector<uint8_t>(e.begin(), e.begin() + pres_.rank());
}

const std::vector<int32_t>& Group::frattini_elems() const {
  if (frattini_.empty()) {
    std::vector<int32_t> out;
    for (long long x = 0; x < size_; ++x)
      if (in_frattini(static_cast<int32_t>(x))) out.push_back(static_cast<int32_t>(x));
    frattini_ = std::move(out);
  }
  return frattini_;
}

std::vector<int32_t> Group::series_subgroup(int m) const {
  std::vector<int32_t> out;
  int n = pres_.ngens();
  for (long long x = 0; x < size_; ++x) {
    Elt e = elt_of(static_cast<int32_t>(x));
    bool ok = true;
    for (int i = 0; i < n; ++i)
      if (e[i] && pres_.weight(i) <= m) {
        ok = false;
        break;
      }
    if (ok) out.push_back(static_cast<int32_t>(x));
  }
  return out;
}

const Word& Group::gen_word(int k) const {
  if (gen_words_.empty()) {
    int n = pres_.ngens();
    int g = pres_.rank();
    std::vector<std::pair<int32_t, int>> parent(size_, {-1, -1});
    std::queue<int32_t> q;
    q.push(0);
    parent[0] = {0, -1};
    while (!q.empty()) {
      int32_t x = q.front();
      q.pop();
      for (int i = 0; i < g; ++i) {
        int32_t y = rmul_[i][x];
        if (parent[y].first < 0) {
          parent[y] = {x, i};
          q.push(y);
        }
      }
    }
    gen_words_.resize(n);
    for (int k2 = 0; k2 < n; ++k2) {
      Elt e = pres_.gen_elt(k2);
      int32_t x = idx_of(e);
      std::vector<int> letters;
      while (x != 0) {
        letters.push_back(parent[x].second);
        x = parent[x].first;
      }
      Word w;
      for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        if (!w.empty() && w.back().gen == *it)
          w.back().exp += 1;
        else
          w.push_back({*it, 1});
      }
      gen_words_[k2] = std::move(w);
    }
  }
  return gen_words_[k];
}

SubgroupSet Group::closure(std::vector<int32_t> gens) const {
  // incremental: only keep generators that enlarge the subgroup
  std::vector<bool> in(size_, false);
  std::vector<int32_t> elems{0};
  in[0] = true;
  std::vector<int32_t> kept;
  for (int32_t g : gens) {
    if (in[g]) continue;
    kept.push_back(g);
    in[g] = true;
    elems.push_back(g);
    for (size_t q = 0; q < elems.size(); ++q)
      for (int32_t k : kept) {
        int32_t y = mul(elems[q], k);
        if (!in[y]) {
          in[y] = true;
          elems.push_back(y);
        }
      }
  }
  std::sort(elems.begin(), elems.end());
  return SubgroupSet{std::move(elems), std::move(kept)};
}

SubgroupSet Group::normal_closure(std::vector<int32_t> gens) const {
  int n = pres_.ngens();
  std::vector<int32_t> work = std::move(gens);
  while (true) {
    SubgroupSet h = closure(work);
    std::vector<bool> in(size_, false);
    for (int32_t x : h.elems) in[x] = true;
    bool grew = false;
    for (int32_t x : h.gens)
      for (int g = 0; g < n; ++g) {
        int32_t y = conj(x, mul_by_gen(0, g));
        if (!in[y]) {
          work = h.gens;
          work.push_back(y);
          grew = true;
          break;
        }
        y = conj(x, inv(mul_by_gen(0, g)));
        if (!in[y]) {
          work = h.gens;
          work.push_back(y);
          grew = true;
          break;
        }
      }
    if (!grew) return h;
  }
}

bool Group::is_subgroup(const std::vector<int32_t>& elems) const {
  std::vector<int32_t> sorted = elems;
  std::sort(sorted.begin(), sorted.end());
  return closure(elems).elems == sorted;
}

SubgroupSet Group::derived_subgroup(const SubgroupSet& h) const {
  std::vector<int32_t> gens = small_generating_set(h.elems);
  std::vector<int32_t> cs;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j) cs.push_back(comm(gens[i], gens[j]));
  // normal closure inside h: close under conjugation by h's generators
  std::vector<int32_t> work = cs;
  while (true) {
    SubgroupSet d = closure(work);
    std::vector<bool> in(size_, false);
    for (int32_t x : d.elems) in[x] = true;
    bool grew = false;
    for (int32_t x : d.gens)
      for (int32_t g : gens) {
        int32_t y = conj(x, g);
        if (!in[y]) {
          work = d.gens;
          work.push_back(y);
          grew = true;
          break;
        }
      }
    if (!grew) return d;
  }
}

SubgroupSet Group::power_subgroup(const SubgroupSet& h, long long k) const {
  std::vector<int32_t> gens;
  for (int32_t x : h.elems) {
    int32_t y = pow(x, k);
    if (y) gens.push_back(y);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return closure(gens);
}

AbelianType Group::abelian_invariants(const SubgroupSet& h) const {
  if (!is_subgroup(h.elems)) throw ValidationError("not closed under the group operations");
  SubgroupSet der = derived_subgroup(h);
  // |H / [H,H] H^{p^k}| for k = 0, 1, ... recovers the exponent profile.
  long long prev = static_cast<long long>(h.elems.size()) / der.elems.size();
  std::vector<long long> sizes{1};
  long long pk = 1;
  while (true) {
    pk *= pres_.p();
    SubgroupSet pw = power_subgroup(h, pk);
    std::vector<int32_t> gens = der.gens;
    gens.insert(gens.end(), pw.gens.begin(), pw.gens.end());
    SubgroupSet kern = closure(std::move(gens));
    long long q = static_cast<long long>(h.elems.size()) / kern.elems.size();
    sizes.push_back(q);
    if (q == prev) break;
    prev = q;
  }
  // d_k = #factors with e_i >= k = log_p(sizes[k]/sizes[k-1])
  AbelianType t;
  t.p = pres_.p();
  std::vector<int> dk;
  for (size_t k = 1; k < sizes.size(); ++k) {
    long long ratio = sizes[k] / sizes[k - 1];
    int d = 0;
    while (ratio > 1) {
      ratio /= pres_.p();
      ++d;
    }
    if (d == 0) break;
    dk.push_back(d);
  }
  for (int k = static_cast<int>(dk.size()); k >= 1; --k)
    for (int c = 0; c < dk[k - 1] - (k < static_cast<int>(dk.size()) ? dk[k] : 0); ++c)
      t.exps.push_back(k);
  std::sort(t.exps.begin(), t.exps.end());
  return t;
}

AbelianType Group::abelianization() const {
  std::vector<int32_t> all(size_);
  std::iota(all.begin(), all.end(), 0);
  return abelian_invariants(SubgroupSet{std::move(all), {}});
}

std::vector<SubgroupSet> Group::maximal_subgroups() const {
  int g = pres_.rank();
  int p = pres_.p();
  // index-p subgroups of G/Phi = kernels of nonzero functionals up to scalar
  std::vector<std::vector<uint8_t>> functionals;
  std::vector<uint8_t> f(g, 0);
  long long total = 1;
  for (int i = 0; i < g; ++i) total *= p;
  for (long long code = 1; code < total; ++code) {
    long long c = code;
    for (int i = g - 1; i >= 0; --i) {
      f[i] = static_cast<uint8_t>(c % p);
      c /= p;
    }
    int lead = 0;
    while (!f[lead]) ++lead;
    if (f[lead] != 1) continue;  // one representative per line
    functionals.push_back(f);
  }
  std::vector<SubgroupSet> out;
  for (const auto& fn : functionals) {
    std::vector<int32_t> elems;
    for (long long x = 0; x < size_; ++x) {
      auto res = frattini_residue(static_cast<int32_t>(x));
      int dot = 0;
      for (int i = 0; i < g; ++i) dot += fn[i] * res[i];
      if (dot % p == 0) elems.push_back(static_cast<int32_t>(x));
    }
    SubgroupSet s{std::move(elems), {}};
    s.gens = small_generating_set(s.elems);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const SubgroupSet& a, const SubgroupSet& b) { return a.elems < b.elems; });
  return out;
}

std::vector<int32_t> Group::center() const {
  int n = pres_.ngens();
  std::vector<int32_t> out;
  for (long long x = 0; x < size_; ++x) {
    bool central = true;
    for (int gi = 0; gi < n && central; ++gi)
      if (conj(static_cast<int32_t>(x), mul_by_gen(0, gi)) != x) central = false;
    if (central) out.push_back(static_cast<int32_t>(x));
  }
  return out;
}

std::vector<int32_t> Group::small_generating_set(const std::vector<int32_t>& elems) const {
  return closure(elems).gens;
}

}  // namespace pcg
