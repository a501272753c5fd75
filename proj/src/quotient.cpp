#include "quotient.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcg {

int32_t CosetSpace::pow(int32_t a, long long e) const {
  long long m = size;
  e %= m;
  if (e < 0) e += m;
  int32_t r = coset_of[0];
  int32_t b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

CosetSpace coset_space(const Group& parent, const std::vector<int32_t>& normal_sorted) {
  CosetSpace cs;
  cs.parent = &parent;
  cs.coset_of.assign(parent.size(), -1);
  for (long long x = 0; x < parent.size(); ++x) {
    if (cs.coset_of[x] >= 0) continue;
    int32_t cid = cs.size++;
    cs.rep.push_back(static_cast<int32_t>(x));
    for (int32_t nelt : normal_sorted)
      cs.coset_of[parent.mul(static_cast<int32_t>(x), nelt)] = cid;
  }
  return cs;
}

namespace {

// Subgroup closure inside the coset space.
std::vector<bool> q_closure(const CosetSpace& q, std::vector<int32_t> gens) {
  std::vector<bool> in(q.size, false);
  std::vector<int32_t> elems{q.coset_of[0]};
  in[q.coset_of[0]] = true;
  std::vector<int32_t> gs;
  for (int32_t g : gens)
    if (!in[g]) {
      in[g] = true;
      elems.push_back(g);
      gs.push_back(g);
    }
  for (size_t i = 0; i < elems.size(); ++i)
    for (int32_t g : gs) {
      int32_t y = q.mul(elems[i], g);
      if (!in[y]) {
        in[y] = true;
        elems.push_back(y);
      }
    }
  return in;
}

long long count_true(const std::vector<bool>& v) {
  long long c = 0;
  for (bool b : v) c += b;
  return c;
}

}  // namespace

PcPresentation quotient_pcp(const Group& parent, const std::vector<int32_t>& normal_sorted) {
  CosetSpace q = coset_space(parent, normal_sorted);
  int p = parent.p();

  // Lower p-central series of the quotient.
  std::vector<std::vector<bool>> series;  // series[m] = P_m membership
  std::vector<bool> whole(q.size, true);
  series.push_back(whole);
  std::vector<int32_t> all(q.size);
  for (int32_t i = 0; i < q.size; ++i) all[i] = i;
  while (true) {
    const std::vector<bool>& cur = series.back();
    std::vector<int32_t> gens;
    for (int32_t s = 0; s < q.size; ++s) {
      if (!cur[s]) continue;
      gens.push_back(q.pow(s, p));
      for (int32_t x = 0; x < q.size; ++x) gens.push_back(q.comm(x, s));
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<bool> next = q_closure(q, gens);
    series.push_back(next);
    if (count_true(next) == 1) break;
    if (series.size() > 64) throw std::logic_error("p-central series did not terminate");
  }
  int cls = static_cast<int>(series.size()) - 1;

  // Pick pc generators layer by layer; record definitions.
  std::vector<int32_t> pcgens;  // coset ids
  std::vector<int> weights;
  std::vector<GenDef> defs;
  // weight 1: extend span of <chosen, P_1>
  {
    std::vector<int32_t> have;
    for (int32_t s = 0; s < q.size; ++s)
      if (series[1][s]) have.push_back(s);
    std::vector<bool> span = q_closure(q, have);
    for (int32_t s = 0; s < q.size && count_true(span) < q.size; ++s) {
      if (span[s]) continue;
      pcgens.push_back(s);
      weights.push_back(1);
      defs.push_back(GenDef{});
      have.push_back(s);
      span = q_closure(q, have);
    }
  }
  for (int w = 2; w <= cls; ++w) {
    // span inside P_{w-1}: start from P_w, add chosen weight-w values
    std::vector<int32_t> have;
    for (int32_t s = 0; s < q.size; ++s)
      if (series[w][s]) have.push_back(s);
    std::vector<bool> span = q_closure(q, have);
    long long target = count_true(series[w - 1]);
    struct Cand {
      int32_t val;
      GenDef def;
    };
    std::vector<Cand> cands;
    for (size_t i = 0; i < pcgens.size(); ++i)
      if (weights[i] == w - 1)
        cands.push_back({q.pow(pcgens[i], p), GenDef{GenDef::kPower, static_cast<int>(i), -1}});
    for (size_t j = 0; j < pcgens.size(); ++j)
      for (size_t i = 0; i < j; ++i)
        if (weights[j] + weights[i] == w)
          cands.push_back({q.comm(pcgens[j], pcgens[i]),
                           GenDef{GenDef::kCommutator, static_cast<int>(j), static_cast<int>(i)}});
    for (const Cand& c : cands) {
      if (count_true(span) >= target) break;
      if (span[c.val]) continue;
      pcgens.push_back(c.val);
      weights.push_back(w);
      defs.push_back(c.def);
      have.push_back(c.val);
      span = q_closure(q, have);
    }
    if (count_true(span) < target)
      throw std::logic_error("layer generators did not span");
  }

  int n = static_cast<int>(pcgens.size());
  // Normal-form map: exponent vector -> coset value.
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= p;
  if (total != q.size) throw std::logic_error("pc generator count mismatch");
  std::vector<int32_t> value_of(total);
  std::vector<int32_t> vec_of(q.size, -1);
  std::vector<long long> radix(n, 1);
  for (int i = n - 2; i >= 0; --i) radix[i] = radix[i + 1] * p;
  for (long long code = 0; code < total; ++code) {
    int32_t v = q.coset_of[0];
    long long t = code;
    for (int i = 0; i < n; ++i) {
      int e = static_cast<int>(t / radix[i]);
      t %= radix[i];
      for (int k = 0; k < e; ++k) v = q.mul(v, pcgens[i]);
    }
    value_of[code] = v;
    if (vec_of[v] != -1) throw std::logic_error("normal forms collide");
    vec_of[v] = static_cast<int32_t>(code);
  }
  auto word_of = [&](int32_t coset) {
    long long code = vec_of[coset];
    Word w;
    for (int i = 0; i < n; ++i) {
      int e = static_cast<int>(code / radix[i]);
      code %= radix[i];
      if (e) w.push_back({i, e});
    }
    return w;
  };

  PcPresentation pres(p, weights);
  for (int i = 0; i < n; ++i) {
    Word w = word_of(q.pow(pcgens[i], p));
    if (!w.empty()) pres.set_power(i, std::move(w));
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      Word w = word_of(q.comm(pcgens[j], pcgens[i]));
      if (!w.empty()) pres.set_comm(j, i, std::move(w));
    }
  pres.set_defs(defs);
  return pres;
}

}  // namespace pcg
