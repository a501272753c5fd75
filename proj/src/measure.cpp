#include "measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "hom.hpp"
#include "quotient.hpp"

namespace pcg {

Rat eta(int j, int p) {
  Rat r = 1;
  Int pk = 1;
  for (int k = 1; k <= j; ++k) {
    pk *= p;
    Rat term(Int(1), pk);
    term.canonicalize();
    r *= (1 - term);
  }
  return r;
}

namespace {

Rat base_formula(long long y, long long aut_sigma, const Int& order, int g, int dim, int p) {
  Int scale = int_pow(p, static_cast<long long>(g) * (g + 1));
  Rat v = make_rat(y);
  Rat denom(Int(static_cast<long>(aut_sigma)) * order);
  denom.canonicalize();
  v /= denom;
  v *= Rat(scale);
  v *= eta(g, p) * eta(g + 1, p) / eta(g + 1 - dim, p);
  v.canonicalize();
  return v;
}

}  // namespace

MeasValue meas_c_formula(long long y, long long aut_sigma, const Int& order, int g, int h,
                         int p) {
  if (h < 0 || h > g + 1) return {Rat(0), false};
  return {base_formula(y, aut_sigma, order, g, h, p), true};
}

MeasValue meas_formula(long long y, long long aut_sigma, const Int& order, int g, int r,
                       int p) {
  if (r < g || r > g + 1) return {Rat(0), false};
  return {base_formula(y, aut_sigma, order, g, r, p), true};
}

Int abelian_aut_order(const AbelianType& a) {
  int n = a.rank();
  if (n == 0) return 1;
  int p = a.p;
  std::vector<int> d(n), c(n);
  for (int k = 0; k < n; ++k) {
    d[k] = k;
    c[k] = k;
    for (int l = 0; l < n; ++l) {
      if (a.exps[l] == a.exps[k]) {
        d[k] = std::max(d[k], l);
        c[k] = std::min(c[k], l);
      }
    }
  }
  Int out = 1;
  for (int k = 0; k < n; ++k) out *= int_pow(p, d[k] + 1) - int_pow(p, k);
  for (int j = 0; j < n; ++j) out *= int_pow(p, static_cast<long long>(a.exps[j]) * (n - 1 - d[j]));
  for (int i = 0; i < n; ++i) out *= int_pow(p, static_cast<long long>(a.exps[i] - 1) * (n - c[i]));
  return out;
}

Rat meas_ab_formula(const AbelianType& a, std::optional<int> at_class) {
  if (a.rank() == 0) throw ValidationError("measure of the trivial group");
  int p = a.p;
  int g = a.rank();
  int cls = a.p_class();
  int u;
  if (at_class.has_value()) {
    if (*at_class < cls) throw ValidationError("class below the group's class");
    u = (*at_class == cls) ? a.u_below(cls) : g;
  } else {
    u = g;  // stable value
  }
  Int order = 1;
  for (int e : a.exps) order *= int_pow(p, e);
  Rat v(Int(1), abelian_aut_order(a) * order);
  v.canonicalize();
  v *= Rat(int_pow(p, static_cast<long long>(g) * (g + 1)));
  v *= eta(g, p) * eta(g + 1, p) / eta(g + 1 - u, p);
  v.canonicalize();
  return v;
}

std::string make_fingerprint(int order_exp, int p_class, const AbelianType& ab,
                             const Ipad& ipad, long long y) {
  std::ostringstream out;
  out << "o" << order_exp << "|c" << p_class << "|ab" << ab.str() << "|ipad" << ipad.str()
      << "|y" << y;
  return out.str();
}

// ---------------------------------------------------------------------------
// exhaustive oracle

BruteResult brute_force_meas_c(const FreeQuotient& fq, long long tuple_bound) {
  const Group& F = *fq.group();
  const std::vector<int32_t>& X = fq.x_set();
  int k = fq.g() + 1;
  long long total = 1;
  for (int i = 0; i < k; ++i) {
    total *= static_cast<long long>(X.size());
    if (total > tuple_bound) throw BoundError("tuple space exceeds the exhaustive bound");
  }
  struct KernelInfo {
    long long count = 0;
  };
  std::map<std::vector<int32_t>, KernelInfo> kernels;
  std::map<std::vector<int32_t>, std::vector<int32_t>> closure_cache;  // component set -> kernel
  std::vector<size_t> od(k, 0);
  while (true) {
    std::vector<int32_t> comps;
    for (int i = 0; i < k; ++i) comps.push_back(X[od[i]]);
    std::sort(comps.begin(), comps.end());
    comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
    auto it = closure_cache.find(comps);
    if (it == closure_cache.end()) {
      SubgroupSet s = F.normal_closure(comps);
      it = closure_cache.insert({comps, s.elems}).first;
    }
    kernels[it->second].count += 1;
    int pos = k - 1;
    while (pos >= 0 && ++od[pos] == X.size()) {
      od[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  // fold kernels into isomorphism classes of quotients
  BruteResult out;
  out.total_tuples = total;
  for (auto& [kernel, info] : kernels) {
    PcPresentation qp = quotient_pcp(F, kernel);
    GroupPtr qg = std::make_shared<Group>(std::move(qp));
    bool merged = false;
    for (BruteClass& cls : out.classes) {
      if (isomorphic(*cls.rep, *qg)) {
        cls.tuples += info.count;
        merged = true;
        break;
      }
    }
    if (!merged) {
      BruteClass cls;
      cls.rep = qg;
      cls.tuples = info.count;
      out.classes.push_back(std::move(cls));
    }
  }
  auto y_of = [](const Group& g) -> long long {
    auto s = find_gi(g);
    if (!s) return 0;
    long long y = 0;
    for (long long x = 0; x < g.size(); ++x)
      if (s->apply(static_cast<int32_t>(x)) == x) ++y;
    return y;
  };
  for (BruteClass& cls : out.classes) {
    Rat f(Int(static_cast<long>(cls.tuples)), Int(static_cast<long>(total)));
    f.canonicalize();
    cls.freq = f;
    cls.fingerprint = make_fingerprint(cls.rep->order_exp(), cls.rep->p_class(),
                                       cls.rep->abelianization(), ipad_of(*cls.rep),
                                       y_of(*cls.rep));
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const BruteClass& a, const BruteClass& b) { return a.tuples > b.tuples; });
  return out;
}

// ---------------------------------------------------------------------------
// sampling oracle

namespace {

struct McContext {
  const FreeQuotient* fq;
  const Group* F;
  std::vector<int32_t> sigma_perm;       // sigma on all of F
  std::vector<int32_t> y_elems;          // fixed points of sigma
  std::vector<std::vector<int32_t>> series;  // P_m element lists, m = 0..class
  struct Sub {
    std::vector<int32_t> gens;              // of the subgroup
    std::vector<int32_t> derived_gens;      // of its derived subgroup
    std::vector<std::vector<int32_t>> powk; // generators of M^{p^k}, k = 1..class
    long long size = 0;
  };
  Sub whole;
  std::vector<Sub> maximal;

  explicit McContext(const FreeQuotient& q) : fq(&q), F(q.group().get()) {
    const Homomorphism& s = q.sigma();
    sigma_perm.resize(F->size());
    for (long long x = 0; x < F->size(); ++x) {
      sigma_perm[x] = s.apply(static_cast<int32_t>(x));
      if (sigma_perm[x] == x) y_elems.push_back(static_cast<int32_t>(x));
    }
    for (int m = 0; m <= F->p_class(); ++m) series.push_back(F->series_subgroup(m));
    auto build = [&](std::vector<int32_t> elems) {
      Sub sub;
      sub.size = static_cast<long long>(elems.size());
      sub.gens = F->small_generating_set(elems);
      SubgroupSet ss{elems, sub.gens};
      sub.derived_gens = F->derived_subgroup(ss).gens;
      long long pk = 1;
      for (int k2 = 1; k2 <= F->p_class(); ++k2) {
        pk *= F->p();
        sub.powk.push_back(F->power_subgroup(ss, pk).gens);
      }
      return sub;
    };
    std::vector<int32_t> all(F->size());
    for (long long x = 0; x < F->size(); ++x) all[x] = static_cast<int32_t>(x);
    whole = build(all);
    for (const SubgroupSet& m : F->maximal_subgroups()) maximal.push_back(build(m.elems));
  }

  AbelianType layer_type(const Sub& sub, const std::vector<int32_t>& n_gens) const {
    // abelian type of sub/(derived * <n_gens>) via the order profile
    std::vector<int32_t> base = sub.derived_gens;
    base.insert(base.end(), n_gens.begin(), n_gens.end());
    std::vector<long long> sizes{1};
    long long prev = -1;
    for (size_t k2 = 0; k2 < sub.powk.size(); ++k2) {
      std::vector<int32_t> gens = base;
      gens.insert(gens.end(), sub.powk[k2].begin(), sub.powk[k2].end());
      long long denom = static_cast<long long>(F->closure(gens).elems.size());
      long long t = sub.size / denom;
      sizes.push_back(t);
      if (t == prev) break;
      prev = t;
    }
    std::vector<int> dk;
    for (size_t k2 = 1; k2 < sizes.size(); ++k2) {
      long long ratio = sizes[k2] / sizes[k2 - 1];
      int d = 0;
      while (ratio > 1) {
        ratio /= F->p();
        ++d;
      }
      if (d == 0) break;
      dk.push_back(d);
    }
    AbelianType t;
    t.p = F->p();
    for (int k2 = static_cast<int>(dk.size()); k2 >= 1; --k2) {
      int next = k2 < static_cast<int>(dk.size()) ? dk[k2] : 0;
      for (int c2 = 0; c2 < dk[k2 - 1] - next; ++c2) t.exps.push_back(k2);
    }
    std::sort(t.exps.begin(), t.exps.end());
    return t;
  }

  std::string fingerprint(const std::vector<int32_t>& kernel,
                          const std::vector<int32_t>& kernel_gens) const {
    std::vector<bool> in(F->size(), false);
    for (int32_t x : kernel) in[x] = true;
    long long ksize = static_cast<long long>(kernel.size());
    int oe = 0;
    long long q = F->size() / ksize;
    while (q > 1) {
      q /= F->p();
      ++oe;
    }
    int cls = F->p_class();
    for (int m = 0; m <= F->p_class(); ++m) {
      bool inside = true;
      for (int32_t x : series[m])
        if (!in[x]) {
          inside = false;
          break;
        }
      if (inside) {
        cls = m;
        break;
      }
    }
    AbelianType ab = layer_type(whole, kernel_gens);
    Ipad ip;
    ip.top = ab;
    for (const Sub& m : maximal) ip.layer.push_back(layer_type(m, kernel_gens));
    std::sort(ip.layer.begin(), ip.layer.end());
    long long y = 0;
    {
      std::vector<int32_t> reps;
      for (int32_t yv : y_elems) {
        bool fresh = true;
        for (int32_t r : reps)
          if (in[F->mul(yv, F->inv(r))]) {
            fresh = false;
            break;
          }
        if (fresh) reps.push_back(yv);
      }
      y = static_cast<long long>(reps.size());
    }
    return make_fingerprint(oe, cls, ab, ip, y);
  }
};

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

struct McOracle::Impl {
  McContext ctx;
  explicit Impl(const FreeQuotient& fq) : ctx(fq) {}
};

McOracle::McOracle(const FreeQuotient& fq) : impl_(std::make_unique<Impl>(fq)) {}
McOracle::~McOracle() = default;

std::string McOracle::fingerprint(const std::vector<int32_t>& kernel_elems,
                                  const std::vector<int32_t>& kernel_gens) const {
  return impl_->ctx.fingerprint(kernel_elems, kernel_gens);
}

McResult monte_carlo_meas_c(const FreeQuotient& fq, long long n, uint64_t seed, int threads) {
  McContext ctx(fq);
  const Group& F = *ctx.F;
  if (threads < 1) threads = 1;
  std::vector<std::map<std::string, long long>> partial(threads);
  auto worker = [&](int w, long long count) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<uint64_t>(w)));
    std::map<std::vector<int32_t>, std::string> cache;  // kernel -> fingerprint
    int k = fq.g() + 1;
    int ngen = F.pres().ngens();
    for (long long it = 0; it < count; ++it) {
      std::vector<int32_t> comps;
      for (int q = 0; q < k; ++q) {
        Elt t(ngen, 0);
        for (int i = fq.g(); i < ngen; ++i)
          t[i] = static_cast<uint8_t>(rng() % static_cast<uint64_t>(F.p()));
        int32_t ti = F.idx_of(t);
        comps.push_back(F.mul(F.inv(ti), ctx.sigma_perm[ti]));
      }
      std::sort(comps.begin(), comps.end());
      comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
      SubgroupSet s = F.normal_closure(comps);
      auto itc = cache.find(s.elems);
      if (itc == cache.end())
        itc = cache.insert({s.elems, ctx.fingerprint(s.elems, s.gens)}).first;
      partial[w][itc->second] += 1;
    }
  };
  if (threads == 1) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    long long chunk = n / threads, rem = n % threads;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back(worker, w, chunk + (w < rem ? 1 : 0));
    for (auto& t : pool) t.join();
  }
  std::map<std::string, long long> hits;
  for (auto& m : partial)
    for (auto& [fp, c] : m) hits[fp] += c;
  McResult out;
  out.n = n;
  for (auto& [fp, c] : hits) {
    McClass mc;
    mc.fingerprint = fp;
    mc.hits = c;
    mc.estimate = static_cast<double>(c) / static_cast<double>(n);
    mc.stderr_ = std::sqrt(mc.estimate * (1.0 - mc.estimate) / static_cast<double>(n));
    out.classes.push_back(std::move(mc));
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const McClass& a, const McClass& b) {
              return a.hits != b.hits ? a.hits > b.hits : a.fingerprint < b.fingerprint;
            });
  return out;
}

bool recursion_check(const Rat& parent_meas_c, const Rat& parent_meas_next,
                     const std::vector<Rat>& children_meas_next) {
  Rat sum = parent_meas_next;
  for (const Rat& c : children_meas_next) sum += c;
  return sum == parent_meas_c;
}

// ---------------------------------------------------------------------------
// abelianized exhaustive census

namespace {

// Smith normal form diagonal of a small integer matrix (destructive).
std::vector<long long> snf_diagonal(std::vector<std::vector<long long>> m) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  std::vector<long long> diag;
  size_t r = 0, c = 0;
  while (r < rows && c < cols) {
    // find a nonzero pivot
    size_t pr = r, pc = c;
    bool found = false;
    for (size_t i = r; i < rows && !found; ++i)
      for (size_t j = c; j < cols && !found; ++j)
        if (m[i][j]) {
          pr = i;
          pc = j;
          found = true;
        }
    if (!found) break;
    std::swap(m[pr], m[r]);
    for (size_t i = 0; i < rows; ++i) std::swap(m[i][pc], m[i][c]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = r + 1; i < rows; ++i)
        while (m[i][c]) {
          long long q = m[i][c] / m[r][c];
          for (size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
          if (m[i][c]) {
            std::swap(m[i], m[r]);
            clean = false;
          }
        }
      for (size_t j = c + 1; j < cols; ++j)
        while (m[r][j]) {
          long long q = m[r][j] / m[r][c];
          for (size_t i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
          if (m[r][j]) {
            for (size_t i = 0; i < rows; ++i) std::swap(m[i][j], m[i][c]);
            clean = false;
          }
        }
    }
    diag.push_back(std::llabs(m[r][c]));
    ++r;
    ++c;
  }
  // normalize divisibility
  for (size_t i = 0; i < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      long long a = diag[i], b = diag[j];
      long long g = std::gcd(a, b);
      long long l = a / g * b;
      diag[i] = g;
      diag[j] = l;
    }
  std::sort(diag.begin(), diag.end());
  return diag;
}

}  // namespace

std::map<AbelianType, Rat> abelian_tuple_census(int p, int g, int c) {
  long long pc = 1;
  for (int i = 0; i < c; ++i) pc *= p;
  long long phi_card = 1;
  for (int i = 0; i < (c - 1) * g; ++i) phi_card *= p;
  long long total = 1;
  for (int i = 0; i < g + 1; ++i) {
    total *= phi_card;
    if (total > 10000000) throw BoundError("abelianized tuple space too large");
  }
  // enumerate tuples of g+1 vectors in (p Z/p^c)^g
  long long per = phi_card;
  std::map<AbelianType, long long> counts;
  std::vector<long long> od(g + 1, 0);
  auto vec_of = [&](long long code) {
    std::vector<long long> v(g);
    long long base = pc / p;  // entries multiples of p: p * [0, p^{c-1})
    for (int i = 0; i < g; ++i) {
      v[i] = p * (code % base);
      code /= base;
    }
    return v;
  };
  while (true) {
    std::vector<std::vector<long long>> rows;
    for (int i = 0; i < g + 1; ++i) rows.push_back(vec_of(od[i]));
    for (int i = 0; i < g; ++i) {
      std::vector<long long> row(g, 0);
      row[i] = pc;
      rows.push_back(row);
    }
    std::vector<long long> diag = snf_diagonal(std::move(rows));
    AbelianType t;
    t.p = p;
    for (long long d : diag) {
      int e = 0;
      long long v = d;
      while (v > 1) {
        v /= p;
        ++e;
      }
      if (e) t.exps.push_back(e);
    }
    std::sort(t.exps.begin(), t.exps.end());
    counts[t] += 1;
    int pos = g;
    while (pos >= 0 && ++od[pos] == per) {
      od[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::map<AbelianType, Rat> out;
  for (auto& [t, cnt] : counts) {
    Rat f(Int(static_cast<long>(cnt)), Int(static_cast<long>(total)));
    f.canonicalize();
    out[t] = f;
  }
  return out;
}

}  // namespace pcg
