#include "cover.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace pcg {

namespace {

struct TailSpec {
  char kind;  // 'p' or 'c'
  int j = -1, i = -1;
  int weight = 0;
};

struct TailedBuild {
  PcPresentation pres;          // base + all tails, weight-interleaved
  std::vector<int> old_index;   // base gen -> tailed index
  std::vector<int> tail_index;  // tail id -> tailed index
  std::vector<TailSpec> tails;
};

// Base plus one central tail generator of order p per non-defining relation
// of weight <= class+1.
TailedBuild build_tailed(const PcPresentation& base) {
  int n = base.ngens();
  int c = base.p_class();
  std::vector<TailSpec> tails;
  auto is_def = [&](char kind, int j, int i) {
    for (int k = base.rank(); k < n; ++k) {
      const GenDef& d = base.defs()[k];
      if (kind == 'p' && d.kind == GenDef::kPower && d.j == j) return true;
      if (kind == 'c' && d.kind == GenDef::kCommutator && d.j == j && d.i == i) return true;
    }
    return false;
  };
  for (int i = 0; i < n; ++i) {
    int w = base.weight(i) + 1;
    if (w <= c + 1 && !is_def('p', i, -1)) tails.push_back({'p', i, -1, w});
  }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      int w = base.weight(j) + base.weight(i);
      if (w <= c + 1 && !is_def('c', j, i)) tails.push_back({'c', j, i, w});
    }
  // weight-ascending columns: elimination then always expresses a shallower
  // tail through deeper ones, keeping the rewritten words weight-valid
  std::stable_sort(tails.begin(), tails.end(),
                   [](const TailSpec& a, const TailSpec& b) { return a.weight < b.weight; });

  // Interleave: stable sort by weight, base generators before tails.
  struct Slot {
    int weight;
    bool is_tail;
    int ref;  // base gen or tail id
  };
  std::vector<Slot> slots;
  for (int i = 0; i < n; ++i) slots.push_back({base.weight(i), false, i});
  for (size_t t = 0; t < tails.size(); ++t)
    slots.push_back({tails[t].weight, true, static_cast<int>(t)});
  std::stable_sort(slots.begin(), slots.end(),
                   [](const Slot& a, const Slot& b) { return a.weight < b.weight; });
  std::vector<int> weights;
  std::vector<int> old_index(n, -1), tail_index(tails.size(), -1);
  for (size_t k = 0; k < slots.size(); ++k) {
    weights.push_back(slots[k].weight);
    if (slots[k].is_tail)
      tail_index[slots[k].ref] = static_cast<int>(k);
    else
      old_index[slots[k].ref] = static_cast<int>(k);
  }
  PcPresentation pres(base.p(), weights);

  auto remap_word = [&](const Word& w, int tail_id) {
    Word out;
    for (const auto& f : w) out.push_back({old_index[f.gen], f.exp});
    if (tail_id >= 0) out.push_back({tail_index[tail_id], 1});
    std::sort(out.begin(), out.end(),
              [](const Factor& a, const Factor& b) { return a.gen < b.gen; });
    return out;
  };
  std::map<std::pair<int, std::pair<int, int>>, int> tail_of;
  for (size_t t = 0; t < tails.size(); ++t)
    tail_of[{tails[t].kind, {tails[t].j, tails[t].i}}] = static_cast<int>(t);
  for (int i = 0; i < n; ++i) {
    auto it = tail_of.find({'p', {i, -1}});
    Word w = remap_word(base.power(i), it == tail_of.end() ? -1 : it->second);
    if (!w.empty()) pres.set_power(old_index[i], std::move(w));
  }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      auto it = tail_of.find({'c', {j, i}});
      Word w = remap_word(base.comm(j, i), it == tail_of.end() ? -1 : it->second);
      if (!w.empty()) {
        int jj = old_index[j], ii = old_index[i];
        if (jj < ii) throw std::logic_error("reorder broke generator depth");
        pres.set_comm(jj, ii, std::move(w));
      }
    }
  // Tails are central of order p: all their relations stay trivial.
  return TailedBuild{std::move(pres), std::move(old_index), std::move(tail_index),
                     std::move(tails)};
}

// Consistency checks among base generators, recorded as linear relations on
// the tail coordinates. Checks touching a tail letter hold trivially.
std::vector<std::vector<uint8_t>> consistency_rows(const TailedBuild& tb,
                                                   const PcPresentation& base) {
  const PcPresentation& T = tb.pres;
  int m = static_cast<int>(tb.tails.size());
  std::vector<int> is_tail(T.ngens(), -1);
  for (int t = 0; t < m; ++t) is_tail[tb.tail_index[t]] = t;
  std::vector<std::vector<uint8_t>> rows;
  auto push_row = [&](const Elt& lhs, const Elt& rhs) {
    std::vector<uint8_t> row(m, 0);
    bool nonzero = false;
    for (int k = 0; k < T.ngens(); ++k) {
      int d = (lhs[k] - rhs[k] + T.p()) % T.p();
      if (is_tail[k] < 0) {
        if (d) throw std::logic_error("consistency difference off the multiplicator");
      } else if (d) {
        row[is_tail[k]] = static_cast<uint8_t>(d);
        nonzero = true;
      }
    }
    if (nonzero) rows.push_back(std::move(row));
  };
  int n = base.ngens();
  auto bidx = [&](int i) { return tb.old_index[i]; };
  for (int k = 2; k < n; ++k)
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < j; ++i) {
        Elt rhs = T.gen_elt(bidx(j));
        T.mul_gen(rhs, bidx(i), 1);
        Elt a = T.gen_elt(bidx(k));
        T.mul(a, rhs);
        Elt b = T.gen_elt(bidx(k));
        T.mul_gen(b, bidx(j), 1);
        T.mul_gen(b, bidx(i), 1);
        push_row(a, b);
      }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      Elt a = T.collect(T.power(bidx(j)));
      T.mul_gen(a, bidx(i), 1);
      Elt b = T.identity();
      T.mul_gen(b, bidx(j), T.p() - 1);
      Elt jb = T.gen_elt(bidx(j));
      T.mul_gen(jb, bidx(i), 1);
      T.mul(b, jb);
      push_row(a, b);

      a = T.gen_elt(bidx(j));
      T.mul_word(a, T.power(bidx(i)));
      b = T.gen_elt(bidx(j));
      T.mul_gen(b, bidx(i), 1);
      T.mul_gen(b, bidx(i), T.p() - 1);
      push_row(a, b);
    }
  for (int i = 0; i < n; ++i) {
    Elt a = T.collect(T.power(bidx(i)));
    T.mul_gen(a, bidx(i), 1);
    Elt b = T.gen_elt(bidx(i));
    T.mul_word(b, T.power(bidx(i)));
    push_row(a, b);
  }
  return rows;
}

}  // namespace

std::vector<uint8_t> CoverData::mult_coords(const Elt& cover_elt) const {
  std::vector<uint8_t> v(mult_index.size());
  for (size_t t = 0; t < mult_index.size(); ++t) v[t] = cover_elt[mult_index[t]];
  return v;
}

Elt CoverData::embed_base(const Elt& base_elt) const {
  Elt e(cover.ngens(), 0);
  for (int i = 0; i < base.ngens(); ++i) e[old_index[i]] = base_elt[i];
  return e;
}

CoverData p_cover(const PcPresentation& base_in) {
  PcPresentation base = base_in;
  if (!base.has_defs()) base.derive_defs();
  TailedBuild tb = build_tailed(base);
  int m = static_cast<int>(tb.tails.size());
  auto rows = consistency_rows(tb, base);
  FpMat rel(base.p(), static_cast<int>(rows.size()), m);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < m; ++j) rel.at(static_cast<int>(i), j) = rows[i][j];
  std::vector<int> pivots = rref(rel);
  std::vector<bool> is_pivot(m, false);
  for (int c : pivots) is_pivot[c] = true;

  // Substitute the pivot tails, then drop them from the presentation.
  auto substitute = [&](std::vector<uint8_t> tail_vec) {
    return reduce_mod_rows(rel, pivots, std::move(tail_vec));
  };
  // Survivor tails in tailed-presentation order.
  std::vector<int> survivors;
  for (int t = 0; t < m; ++t)
    if (!is_pivot[t]) survivors.push_back(t);
  // New index map: tailed index -> cover index (dropping pivot tails).
  const PcPresentation& T = tb.pres;
  std::vector<int> newidx(T.ngens(), -1);
  std::vector<int> weights;
  {
    std::vector<int> tail_id(T.ngens(), -1);
    for (int t = 0; t < m; ++t) tail_id[tb.tail_index[t]] = t;
    int k = 0;
    for (int x = 0; x < T.ngens(); ++x) {
      if (tail_id[x] >= 0 && is_pivot[tail_id[x]]) continue;
      newidx[x] = k++;
      weights.push_back(T.weight(x));
    }
  }
  PcPresentation cover(base.p(), weights);
  std::vector<int> tail_pos(m, -1);  // tail id -> multiplicator coordinate
  {
    int c2 = 0;
    for (int t : survivors) tail_pos[t] = c2++;
  }
  std::vector<int> is_tail(T.ngens(), -1);
  for (int t = 0; t < m; ++t) is_tail[tb.tail_index[t]] = t;

  auto rewrite = [&](const Word& w) {
    std::vector<uint8_t> tail_vec(m, 0);
    Word out;
    for (const auto& f : w) {
      int t = is_tail[f.gen];
      if (t < 0)
        out.push_back({newidx[f.gen], f.exp});
      else
        tail_vec[t] = static_cast<uint8_t>((tail_vec[t] + f.exp) % base.p());
    }
    tail_vec = substitute(std::move(tail_vec));
    for (int t = 0; t < m; ++t)
      if (tail_vec[t]) {
        if (is_pivot[t]) throw std::logic_error("pivot tail not eliminated");
        out.push_back({newidx[tb.tail_index[t]], tail_vec[t]});
      }
    std::sort(out.begin(), out.end(),
              [](const Factor& a, const Factor& b) { return a.gen < b.gen; });
    return out;
  };
  for (int x = 0; x < T.ngens(); ++x) {
    if (newidx[x] < 0) continue;
    if (is_tail[x] >= 0) continue;  // tails stay central of order p
    Word w = rewrite(T.power(x));
    if (!w.empty()) cover.set_power(newidx[x], std::move(w));
  }
  for (int j = 1; j < T.ngens(); ++j) {
    if (newidx[j] < 0 || is_tail[j] >= 0) continue;
    for (int i = 0; i < j; ++i) {
      if (newidx[i] < 0 || is_tail[i] >= 0) continue;
      Word w = rewrite(T.comm(j, i));
      if (!w.empty()) cover.set_comm(newidx[j], newidx[i], std::move(w));
    }
  }

  CoverData cd;
  cd.old_index.resize(base.ngens());
  for (int i = 0; i < base.ngens(); ++i) cd.old_index[i] = newidx[tb.old_index[i]];
  for (int t : survivors) {
    cd.mult_index.push_back(newidx[tb.tail_index[t]]);
    cd.mult_weight.push_back(tb.tails[t].weight);
  }
  // definitions: base ones remapped, survivor tails defined by their relation
  std::vector<GenDef> defs(cover.ngens());
  for (int k = base.rank(); k < base.ngens(); ++k) {
    const GenDef& d = base.defs()[k];
    GenDef nd;
    nd.kind = d.kind;
    nd.j = cd.old_index[d.j];
    nd.i = d.kind == GenDef::kCommutator ? cd.old_index[d.i] : -1;
    defs[cd.old_index[k]] = nd;
  }
  for (int t : survivors) {
    const TailSpec& ts = tb.tails[t];
    GenDef nd;
    if (ts.kind == 'p') {
      nd.kind = GenDef::kPower;
      nd.j = cd.old_index[ts.j];
    } else {
      nd.kind = GenDef::kCommutator;
      nd.j = cd.old_index[ts.j];
      nd.i = cd.old_index[ts.i];
    }
    defs[newidx[tb.tail_index[t]]] = nd;
  }
  cover.set_defs(defs);
  cd.cover = std::move(cover);
  cd.base = std::move(base);
  for (int t = 0; t < cd.r(); ++t)
    if (cd.mult_weight[t] == cd.base.p_class() + 1) cd.nuc_coords.push_back(t);
  return cd;
}

namespace {

Elt collector_eval_word(const PcPresentation& P, const Word& w,
                        const std::vector<Elt>& images) {
  Elt r = P.identity();
  for (const auto& f : w) {
    Elt b = P.power_elt(images[f.gen], f.exp);
    P.mul(r, b);
  }
  return r;
}

// Solve the image of the generator defined by relation (kind, j, i):
// RHS = prefix * a_k^e * suffix with e = +-1.
Elt solve_definition(const PcPresentation& P, int k, const GenDef& d,
                     const std::vector<Elt>& images, const std::vector<bool>& known) {
  const Word& rhs = d.kind == GenDef::kPower ? P.power(d.j) : P.comm(d.j, d.i);
  Word prefix, suffix;
  long long e = 0;
  bool seen = false;
  for (const auto& f : rhs) {
    if (f.gen == k) {
      e = f.exp;
      seen = true;
    } else if (!seen)
      prefix.push_back(f);
    else
      suffix.push_back(f);
  }
  if (!seen || (e != 1 && e != -1 && e != P.p() - 1))
    throw std::logic_error("definition relation does not isolate its generator");
  for (const auto& f : prefix)
    if (!known[f.gen]) throw std::logic_error("definition depends on unknown image");
  for (const auto& f : suffix)
    if (!known[f.gen]) throw std::logic_error("definition depends on unknown image");
  Elt lhs = d.kind == GenDef::kPower
                ? P.power_elt(images[d.j], P.p())
                : P.commutator(images[d.j], images[d.i]);
  // a_k^e = prefix^{-1} * LHS * suffix^{-1}
  Elt val = P.inverse(collector_eval_word(P, prefix, images));
  P.mul(val, lhs);
  Elt sfx = collector_eval_word(P, suffix, images);
  P.mul(val, P.inverse(sfx));
  if (e != 1) val = P.inverse(val);  // e = -1 (as p-1 won't appear in our covers)
  return val;
}

}  // namespace

FpMat lift_to_multiplicator(const CoverData& cd, const std::vector<Elt>& w1_images) {
  const PcPresentation& C = cd.cover;
  int g = cd.base.rank();
  if (static_cast<int>(w1_images.size()) != g)
    throw ValidationError("need images of the weight-1 generators");
  std::vector<Elt> images(C.ngens(), C.identity());
  std::vector<bool> known(C.ngens(), false);
  for (int i = 0; i < g; ++i) {
    images[cd.old_index[i]] = cd.embed_base(w1_images[i]);
    known[cd.old_index[i]] = true;
  }
  // base generators first (their defining relations stay tail-free), then
  // the multiplicator generators.
  for (int k = g; k < cd.base.ngens(); ++k) {
    int ck = cd.old_index[k];
    images[ck] = solve_definition(C, ck, C.defs()[ck], images, known);
    known[ck] = true;
  }
  for (size_t t = 0; t < cd.mult_index.size(); ++t) {
    int ck = cd.mult_index[t];
    images[ck] = solve_definition(C, ck, C.defs()[ck], images, known);
    known[ck] = true;
  }
  // the lift must be a homomorphism of the cover
  for (int i = 0; i < C.ngens(); ++i) {
    Elt lhs = C.power_elt(images[i], C.p());
    if (lhs != collector_eval_word(C, C.power(i), images))
      throw std::logic_error("automorphism does not lift to the cover (power)");
  }
  for (int j = 1; j < C.ngens(); ++j)
    for (int i = 0; i < j; ++i) {
      Elt lhs = C.commutator(images[j], images[i]);
      if (lhs != collector_eval_word(C, C.comm(j, i), images))
        throw std::logic_error("automorphism does not lift to the cover (commutator)");
    }
  int r = cd.r();
  FpMat mat(C.p(), r, r);
  for (int t = 0; t < r; ++t) {
    const Elt& img = images[cd.mult_index[t]];
    for (int k = 0; k < C.ngens(); ++k) {
      bool is_mult = std::find(cd.mult_index.begin(), cd.mult_index.end(), k) !=
                     cd.mult_index.end();
      if (img[k] && !is_mult)
        throw std::logic_error("multiplicator image leaves the multiplicator");
    }
    auto v = cd.mult_coords(img);
    for (int c = 0; c < r; ++c) mat.at(t, c) = v[c];
  }
  // induced action must stabilize the nucleus
  std::vector<bool> in_nuc(r, false);
  for (int c : cd.nuc_coords) in_nuc[c] = true;
  for (int c : cd.nuc_coords)
    for (int j = 0; j < r; ++j)
      if (mat.at(c, j) && !in_nuc[j])
        throw std::logic_error("lift does not stabilize the nucleus");
  return mat;
}

std::vector<FpMat> allowable_subspaces(const CoverData& cd) {
  int r = cd.r();
  int p = cd.cover.p();
  int h = cd.h();
  std::vector<bool> in_nuc(r, false);
  for (int c : cd.nuc_coords) in_nuc[c] = true;
  std::vector<FpMat> out;
  // enumerate RREF matrices of every dimension k in [h, r-1]
  for (int k = std::max(h, 0); k < r; ++k) {
    if (k == 0) {
      // trivial subspace; allowable iff h == 0
      if (h == 0) out.push_back(FpMat(p, 0, r));
      continue;
    }
    std::vector<int> piv(k);
    std::function<void(int, int)> choose = [&](int pos, int start) {
      if (pos == k) {
        // fill free entries
        std::vector<int> free_pos;
        FpMat base(p, k, r);
        for (int i = 0; i < k; ++i) base.at(i, piv[i]) = 1;
        for (int i = 0; i < k; ++i)
          for (int c = piv[i] + 1; c < r; ++c)
            if (std::find(piv.begin(), piv.end(), c) == piv.end())
              free_pos.push_back(i * r + c);
        long long total = 1;
        for (size_t q = 0; q < free_pos.size(); ++q) {
          total *= p;
          if (total > 4000000) throw BoundError("multiplicator too large to enumerate");
        }
        for (long long code = 0; code < total; ++code) {
          FpMat m = base;
          long long t = code;
          for (size_t q = 0; q < free_pos.size(); ++q) {
            m.a[free_pos[q]] = static_cast<uint8_t>(t % p);
            t /= p;
          }
          // allowable iff the projection away from the nucleus is onto
          FpMat proj(p, k, r - static_cast<int>(cd.nuc_coords.size()));
          for (int i = 0; i < k; ++i) {
            int c2 = 0;
            for (int c = 0; c < r; ++c)
              if (!in_nuc[c]) proj.at(i, c2++) = m.at(i, c);
          }
          if (static_cast<int>(rref(proj).size()) == h) out.push_back(std::move(m));
        }
        return;
      }
      for (int c = start; c < r; ++c) {
        piv[pos] = c;
        choose(pos + 1, c + 1);
      }
    };
    choose(0, 0);
  }
  return out;
}

PcPresentation descendant_pcp(const CoverData& cd, const FpMat& allowable) {
  int r = cd.r();
  int p = cd.cover.p();
  const PcPresentation& base = cd.base;
  // Reorder columns nucleus-last so the kept complement sits inside the
  // nucleus; allowability makes every non-nucleus column a pivot.
  std::vector<int> order;
  for (int c = 0; c < r; ++c)
    if (std::find(cd.nuc_coords.begin(), cd.nuc_coords.end(), c) == cd.nuc_coords.end())
      order.push_back(c);
  size_t non_nuc = order.size();
  for (int c : cd.nuc_coords) order.push_back(c);
  FpMat re(p, allowable.rows, r);
  for (int i = 0; i < allowable.rows; ++i)
    for (int c = 0; c < r; ++c) re.at(i, c) = allowable.at(i, order[c]);
  std::vector<int> pivots = rref(re);
  std::vector<bool> is_piv(r, false);
  for (int c : pivots) is_piv[c] = true;
  for (size_t c = 0; c < non_nuc; ++c)
    if (!is_piv[c]) throw std::logic_error("subgroup is not allowable");
  std::vector<int> kept;  // reordered columns kept as new generators
  for (int c = 0; c < r; ++c)
    if (!is_piv[c]) kept.push_back(c);
  int w = static_cast<int>(kept.size());

  std::vector<int> weights;
  for (int i = 0; i < base.ngens(); ++i) weights.push_back(base.weight(i));
  for (int q = 0; q < w; ++q) weights.push_back(base.p_class() + 1);
  PcPresentation pres(p, weights);

  auto reduce_tail = [&](const std::vector<uint8_t>& mult_vec) {
    std::vector<uint8_t> v(r, 0);
    for (int c = 0; c < r; ++c) v[c] = mult_vec[order[c]];
    v = reduce_mod_rows(re, pivots, std::move(v));
    Word out;
    for (int q = 0; q < w; ++q)
      if (v[kept[q]]) out.push_back({base.ngens() + q, v[kept[q]]});
    return out;
  };
  auto build_word = [&](const Word& cover_rhs) {
    Word out;
    std::vector<uint8_t> mv(r, 0);
    for (const auto& f : cover_rhs) {
      auto it = std::find(cd.mult_index.begin(), cd.mult_index.end(), f.gen);
      if (it == cd.mult_index.end()) {
        // a base generator inside the cover
        int bi = -1;
        for (int i2 = 0; i2 < base.ngens(); ++i2)
          if (cd.old_index[i2] == f.gen) bi = i2;
        out.push_back({bi, f.exp});
      } else {
        mv[it - cd.mult_index.begin()] = static_cast<uint8_t>(f.exp);
      }
    }
    Word tail = reduce_tail(mv);
    out.insert(out.end(), tail.begin(), tail.end());
    std::sort(out.begin(), out.end(),
              [](const Factor& a, const Factor& b) { return a.gen < b.gen; });
    return out;
  };
  for (int i = 0; i < base.ngens(); ++i) {
    Word rhs = build_word(cd.cover.power(cd.old_index[i]));
    if (!rhs.empty()) pres.set_power(i, std::move(rhs));
  }
  for (int j = 1; j < base.ngens(); ++j)
    for (int i = 0; i < j; ++i) {
      Word rhs = build_word(cd.cover.comm(cd.old_index[j], cd.old_index[i]));
      if (!rhs.empty()) pres.set_comm(j, i, std::move(rhs));
    }
  // new generators are central of order p: nothing to set
  std::vector<GenDef> defs(pres.ngens());
  for (int k = 0; k < base.ngens(); ++k) defs[k] = base.defs()[k];
  for (int q = 0; q < w; ++q) {
    int t = -1;  // multiplicator coordinate of kept[q] in natural order
    t = order[kept[q]];
    int ck = cd.mult_index[t];
    const GenDef& d = cd.cover.defs()[ck];
    GenDef nd;
    nd.kind = d.kind;
    // map cover indices back to base indices
    auto back = [&](int cover_gen) {
      for (int i2 = 0; i2 < base.ngens(); ++i2)
        if (cd.old_index[i2] == cover_gen) return i2;
      throw std::logic_error("definition references a multiplicator generator");
    };
    nd.j = back(d.j);
    nd.i = d.kind == GenDef::kCommutator ? back(d.i) : -1;
    defs[base.ngens() + q] = nd;
  }
  pres.set_defs(defs);
  return pres;
}

std::vector<Descendant> immediate_descendants(const Group& base, const CoverData& cd,
                                              const AutData& aut) {
  if (cd.is_terminal()) return {};
  std::vector<FpMat> subs = allowable_subspaces(cd);
  std::map<std::vector<uint8_t>, int> index_of;
  for (size_t i = 0; i < subs.size(); ++i) {
    FpMat canon = row_space_canon(subs[i]);
    index_of[canon.a] = static_cast<int>(i);
    subs[i] = std::move(canon);
  }
  // matrices of the generators on the multiplicator
  std::vector<FpMat> mats;
  for (const Homomorphism& hgen : aut.gens) {
    std::vector<Elt> w1;
    for (int i = 0; i < base.rank(); ++i) w1.push_back(base.elt_of(hgen.images[i]));
    FpMat m = lift_to_multiplicator(cd, w1);
    if (std::find(mats.begin(), mats.end(), m) == mats.end()) mats.push_back(std::move(m));
  }
  // union-find over subspaces
  std::vector<int> parent(subs.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < subs.size(); ++i)
    for (const FpMat& m : mats) {
      FpMat img(m.p, subs[i].rows, m.cols);
      for (int row = 0; row < subs[i].rows; ++row) {
        std::vector<uint8_t> v(subs[i].cols);
        for (int c = 0; c < subs[i].cols; ++c) v[c] = subs[i].at(row, c);
        std::vector<uint8_t> iv = m.apply(v);
        for (int c = 0; c < m.cols; ++c) img.at(row, c) = iv[c];
      }
      FpMat canon = row_space_canon(img);
      auto it = index_of.find(canon.a);
      if (it == index_of.end()) throw std::logic_error("action left the allowable set");
      int a = find(static_cast<int>(i)), b = find(it->second);
      if (a != b) parent[a] = b;
    }
  std::map<int, std::vector<int>> orbits;
  for (size_t i = 0; i < subs.size(); ++i) orbits[find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<Descendant> out;
  for (auto& [root, members] : orbits) {
    int rep = *std::min_element(members.begin(), members.end(), [&](int a, int b) {
      return std::make_pair(subs[a].rows, subs[a].a) < std::make_pair(subs[b].rows, subs[b].a);
    });
    Descendant d;
    d.allowable = subs[rep];
    d.orbit_size = static_cast<long long>(members.size());
    d.step_width = cd.r() - subs[rep].rows;
    d.pres = descendant_pcp(cd, subs[rep]);
    long long pw = 1;
    for (int q = 0; q < base.rank() * d.step_width; ++q) pw *= base.p();
    if (aut.order % d.orbit_size != 0)
      throw std::logic_error("orbit size does not divide the automorphism count");
    d.aut_order = aut.order / d.orbit_size * pw;
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end(), [](const Descendant& a, const Descendant& b) {
    return std::make_pair(a.allowable.rows, a.allowable.a) <
           std::make_pair(b.allowable.rows, b.allowable.a);
  });
  return out;
}

}  // namespace pcg
