#include "hom.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pcg {

int32_t Homomorphism::apply(int32_t x) const {
  Elt e = src->elt_of(x);
  return dst->apply_images(e, images);
}

Elt Homomorphism::apply_elt(const Elt& x) const {
  return dst->elt_of(dst->apply_images(x, images));
}

bool Homomorphism::is_identity() const {
  for (int i = 0; i < src->pres().ngens(); ++i)
    if (images[i] != src->idx_of(src->pres().gen_elt(i))) return false;
  return true;
}

bool Homomorphism::is_epimorphism() const {
  int g = dst->rank();
  FpMat m(dst->p(), static_cast<int>(images.size()), g);
  for (size_t i = 0; i < images.size(); ++i) {
    auto res = dst->frattini_residue(images[i]);
    for (int j = 0; j < g; ++j) m.at(static_cast<int>(i), j) = res[j];
  }
  return static_cast<int>(rref(m).size()) == g;
}

Homomorphism Homomorphism::compose(const Homomorphism& h, const Homomorphism& g) {
  Homomorphism r;
  r.src = g.src;
  r.dst = h.dst;
  r.images.reserve(g.images.size());
  for (int32_t img : g.images) r.images.push_back(h.apply(img));
  return r;
}

namespace {

int32_t eval_word(const Group& dst, const Word& w, const std::vector<int32_t>& images) {
  int32_t r = 0;
  for (const auto& f : w) {
    int32_t b = dst.pow(images[f.gen], f.exp);
    r = dst.mul(r, b);
  }
  return r;
}

bool relations_hold(const Group& src, const Group& dst, const std::vector<int32_t>& images) {
  const PcPresentation& sp = src.pres();
  int n = sp.ngens();
  int p = sp.p();
  for (int i = 0; i < n; ++i) {
    if (dst.pow(images[i], p) != eval_word(dst, sp.power(i), images)) return false;
  }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (dst.comm(images[j], images[i]) != eval_word(dst, sp.comm(j, i), images))
        return false;
    }
  return true;
}

// Extend weight-1 images to all generators: through the definitions when
// they can be solved in index order, else through cached words over the
// minimal generating set.
std::vector<int32_t> induce_images(const Group& src, const Group& dst,
                                   const std::vector<int32_t>& w1) {
  const PcPresentation& sp = src.pres();
  int n = sp.ngens();
  std::vector<int32_t> images(n, 0);
  for (int i = 0; i < src.rank(); ++i) images[i] = w1[i];
  if (sp.defs_triangular()) {
    for (int k = src.rank(); k < n; ++k) {
      const GenDef& d = sp.defs()[k];
      const Word& rhs = d.kind == GenDef::kPower ? sp.power(d.j) : sp.comm(d.j, d.i);
      int32_t lhs = d.kind == GenDef::kPower ? dst.pow(images[d.j], sp.p())
                                             : dst.comm(images[d.j], images[d.i]);
      int32_t prefix = 0;
      for (const auto& f : rhs) {
        if (f.gen == k) break;
        prefix = dst.mul(prefix, dst.pow(images[f.gen], f.exp));
      }
      images[k] = dst.mul(dst.inv(prefix), lhs);
    }
    return images;
  }
  for (int k = src.rank(); k < n; ++k) images[k] = eval_word(dst, src.gen_word(k), w1);
  return images;
}

}  // namespace

std::optional<Homomorphism> hom_from_images(const Group& src, const Group& dst,
                                            const std::vector<int32_t>& w1_images) {
  if (static_cast<int>(w1_images.size()) != src.rank())
    throw ValidationError("need one image per weight-1 generator");
  std::vector<int32_t> images = induce_images(src, dst, w1_images);
  if (!relations_hold(src, dst, images)) return std::nullopt;
  Homomorphism h;
  h.src = &src;
  h.dst = &dst;
  h.images = std::move(images);
  return h;
}

std::vector<int32_t> kernel_of(const Homomorphism& h) {
  const Group& src = *h.src;
  const Group& dst = *h.dst;
  // image table in BFS-free order: happly[x * a_g] = happly[x] * h(a_g)
  std::vector<int32_t> happly(src.size());
  happly[0] = 0;
  int n = src.pres().ngens();
  int p = src.p();
  // iterate indices in lexicographic order; x with last nonzero coordinate i
  // equals (x - step_i) * a_i, and x - step_i < x.
  std::vector<long long> radix(n, 1);
  for (int i = n - 2; i >= 0; --i) radix[i] = radix[i + 1] * p;
  for (long long x = 1; x < src.size(); ++x) {
    int last = -1;
    long long t = x;
    for (int i = 0; i < n; ++i) {
      if (t / radix[i] % p) last = i;
      t %= radix[i];
    }
    long long prev = x - radix[last];
    happly[x] = dst.mul(happly[prev], h.images[last]);
  }
  std::vector<int32_t> kernel;
  for (long long x = 0; x < src.size(); ++x)
    if (happly[x] == 0) kernel.push_back(static_cast<int32_t>(x));
  return kernel;
}

namespace {

struct FiberScan {
  const Group* G;
  std::vector<int32_t> phi;  // Frattini elements
  int g;
  bool triangular;
  struct Check {
    char kind;  // 'p' or 'c'
    int j, i;
  };
  std::vector<std::vector<Check>> ready_at;  // checks by last participant index

  explicit FiberScan(const Group& grp) : G(&grp) {
    phi = grp.frattini_elems();
    g = grp.rank();
    const PcPresentation& sp = grp.pres();
    int n = sp.ngens();
    triangular = sp.defs_triangular();
    ready_at.assign(n, {});
    auto is_def = [&](char kind, int j, int i) {
      if (!triangular) return false;
      for (int k = g; k < n; ++k) {
        const GenDef& d = sp.defs()[k];
        if (kind == 'p' && d.kind == GenDef::kPower && d.j == j) return true;
        if (kind == 'c' && d.kind == GenDef::kCommutator && d.j == j && d.i == i)
          return true;
      }
      return false;
    };
    auto schedule = [&](char kind, int j, int i, const Word& rhs) {
      if (is_def(kind, j, i)) return;  // solved, not checked
      int last = j;
      for (const auto& f : rhs) last = std::max(last, f.gen);
      ready_at[last].push_back({kind, j, i});
    };
    for (int i2 = 0; i2 < n; ++i2) schedule('p', i2, -1, sp.power(i2));
    for (int j2 = 1; j2 < n; ++j2)
      for (int i2 = 0; i2 < j2; ++i2) schedule('c', j2, i2, sp.comm(j2, i2));
  }

  // base images for a GL-part matrix: section of tau applied to each residue
  std::vector<int32_t> section(const FpMat& tau) const {
    std::vector<int32_t> base(g);
    for (int i = 0; i < g; ++i) {
      Elt e(G->pres().ngens(), 0);
      for (int j = 0; j < g; ++j) e[j] = tau.at(i, j);
      base[i] = G->idx_of(e);
    }
    return base;
  }

  // Visit homomorphic tuples (base_i * f_i) over all f in Phi^g, in
  // lexicographic order of the offsets. A hom here is an automorphism, so
  // the image of a_i must share its order: prefilter each slot by that.
  // Returns count of hits; fn may be null; fn returning false stops the scan.
  long long scan(const std::vector<int32_t>& base,
                 const std::function<bool(const std::vector<int32_t>&)>& fn) const {
    std::vector<std::vector<int32_t>> cand(g);
    for (int i = 0; i < g; ++i) {
      uint32_t req = G->profile(G->idx_of(G->pres().gen_elt(i)));
      for (int32_t f : phi) {
        int32_t h = G->mul(base[i], f);
        if (G->profile(h) == req) cand[i].push_back(h);
      }
      if (cand[i].empty()) return 0;
    }
    long long hits = 0;
    std::vector<size_t> od(g, 0);
    std::vector<int32_t> w1(g);
    const PcPresentation& sp = G->pres();
    int n = sp.ngens();
    std::vector<int32_t> images(n);
    while (true) {
      for (int i = 0; i < g; ++i) w1[i] = cand[i][od[i]];
      bool ok = true;
      if (triangular) {
        // induce in index order, running each check as soon as its
        // participants are known
        for (int k = 0; k < n && ok; ++k) {
          if (k < g) {
            images[k] = w1[k];
          } else {
            const GenDef& d = sp.defs()[k];
            const Word& rhs = d.kind == GenDef::kPower ? sp.power(d.j) : sp.comm(d.j, d.i);
            int32_t lhs = d.kind == GenDef::kPower
                              ? G->pow(images[d.j], sp.p())
                              : G->comm(images[d.j], images[d.i]);
            int32_t prefix = 0;
            for (const auto& f : rhs) {
              if (f.gen == k) break;
              prefix = G->mul(prefix, G->pow(images[f.gen], f.exp));
            }
            images[k] = G->mul(G->inv(prefix), lhs);
          }
          for (const Check& c : ready_at[k]) {
            int32_t lhs = c.kind == 'p' ? G->pow(images[c.j], sp.p())
                                        : G->comm(images[c.j], images[c.i]);
            const Word& rhs = c.kind == 'p' ? sp.power(c.j) : sp.comm(c.j, c.i);
            if (lhs != eval_word(*G, rhs, images)) {
              ok = false;
              break;
            }
          }
        }
      } else {
        std::vector<int32_t> full = induce_images(*G, *G, w1);
        ok = relations_hold(*G, *G, full);
        if (ok) images = std::move(full);
      }
      if (ok) {
        ++hits;
        if (fn) {
          std::vector<int32_t> copy(images.begin(), images.end());
          if (!fn(copy)) return hits;
        }
      }
      int pos = g - 1;
      while (pos >= 0 && ++od[pos] == cand[pos].size()) {
        od[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    return hits;
  }
};

// Necessary condition for a matrix on G/Phi to lift: its action must extend
// linearly to the second layer through the p-power and commutator maps.
bool layer_compatible(const Group& G, const FpMat& tau) {
  const PcPresentation& pres = G.pres();
  int g = G.rank();
  int n = pres.ngens();
  std::vector<int> layer2;
  for (int i = 0; i < n; ++i)
    if (pres.weight(i) == 2) layer2.push_back(i);
  if (layer2.empty()) return true;
  auto layer_coords = [&](int32_t x) {
    Elt e = G.elt_of(x);
    std::vector<uint8_t> v(layer2.size());
    for (size_t i = 0; i < layer2.size(); ++i) v[i] = e[layer2[i]];
    return v;
  };
  auto section = [&](const std::vector<uint8_t>& res) {
    Elt e(n, 0);
    for (int j = 0; j < g; ++j) e[j] = res[j];
    return G.idx_of(e);
  };
  std::vector<std::vector<uint8_t>> in, out;
  long long total = 1;
  for (int i = 0; i < g; ++i) total *= G.p();
  std::vector<uint8_t> v(g, 0);
  for (long long code = 0; code < total; ++code) {
    long long t = code;
    for (int i = g - 1; i >= 0; --i) {
      v[i] = static_cast<uint8_t>(t % G.p());
      t /= G.p();
    }
    std::vector<uint8_t> tv(g, 0);
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        tv[j] = static_cast<uint8_t>((tv[j] + v[i] * tau.at(i, j)) % G.p());
    int32_t x = section(v), tx = section(tv);
    in.push_back(layer_coords(G.pow(x, G.p())));
    out.push_back(layer_coords(G.pow(tx, G.p())));
    for (long long code2 = 0; code2 < code; ++code2) {
      long long t2 = code2;
      std::vector<uint8_t> w(g, 0);
      for (int i = g - 1; i >= 0; --i) {
        w[i] = static_cast<uint8_t>(t2 % G.p());
        t2 /= G.p();
      }
      std::vector<uint8_t> tw(g, 0);
      for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
          tw[j] = static_cast<uint8_t>((tw[j] + w[i] * tau.at(i, j)) % G.p());
      in.push_back(layer_coords(G.comm(x, section(w))));
      out.push_back(layer_coords(G.comm(tx, section(tw))));
    }
  }
  return linear_map_exists(G.p(), in, out);
}

}  // namespace

AutData compute_aut(const Group& G) {
  FiberScan scan(G);
  int g = G.rank();
  AutData out;
  // Frattini-kernel automorphisms, with a reduced generating set.
  std::vector<std::vector<int32_t>> kgens;
  {
    std::set<std::vector<int32_t>> closure;  // keyed by weight-1 images
    std::vector<std::vector<int32_t>> members;  // full image vectors
    auto key_of = [&](const std::vector<int32_t>& images) {
      return std::vector<int32_t>(images.begin(), images.begin() + g);
    };
    auto reclose = [&]() {
      for (size_t i = 0; i < members.size(); ++i)
        for (const auto& gen : kgens) {
          // compose: x -> member(gen(x))
          std::vector<int32_t> w1(g);
          for (int i2 = 0; i2 < g; ++i2)
            w1[i2] = G.apply_images(G.elt_of(gen[i2]), members[i]);
          std::vector<int32_t> images = induce_images(G, G, w1);
          if (closure.insert(key_of(images)).second) members.push_back(std::move(images));
        }
    };
    std::vector<int32_t> identity_base(g);
    for (int i = 0; i < g; ++i) identity_base[i] = G.idx_of(G.pres().gen_elt(i));
    {
      std::vector<int32_t> id_images = induce_images(G, G, identity_base);
      closure.insert(key_of(id_images));
      members.push_back(std::move(id_images));
    }
    out.kernel_size = scan.scan(identity_base, [&](const std::vector<int32_t>& images) {
      if (!closure.count(key_of(images))) {
        closure.insert(key_of(images));
        members.push_back(images);
        kgens.push_back(images);
        reclose();
      }
      return true;
    });
  }
  // GL part: which matrices lift.
  std::vector<FpMat> gl = all_invertible(G.p(), g);
  std::vector<std::vector<int32_t>> tau_reps;
  for (const FpMat& tau : gl) {
    if (!layer_compatible(G, tau)) continue;
    std::vector<int32_t> rep;
    scan.scan(scan.section(tau), [&](const std::vector<int32_t>& images) {
      rep = images;
      return false;  // first hit
    });
    if (!rep.empty()) {
      ++out.gl_part;
      tau_reps.push_back(std::move(rep));
    }
  }
  out.order = out.kernel_size * out.gl_part;
  for (auto& images : tau_reps) {
    Homomorphism h;
    h.src = &G;
    h.dst = &G;
    h.images = std::move(images);
    out.gens.push_back(std::move(h));
  }
  for (auto& images : kgens) {
    Homomorphism h;
    h.src = &G;
    h.dst = &G;
    h.images = std::move(images);
    out.gens.push_back(std::move(h));
  }
  return out;
}

long long aut_stream_bound = 6561;  // p^8 for p = 3

long long stream_automorphisms(const Group& G,
                               const std::function<bool(const Homomorphism&)>& fn) {
  if (G.size() > aut_stream_bound)
    throw BoundError("automorphism stream beyond the search bound");
  FiberScan scan(G);
  std::vector<FpMat> gl = all_invertible(G.p(), G.rank());
  long long total = 0;
  bool stop = false;
  for (const FpMat& tau : gl) {
    if (stop) break;
    if (!layer_compatible(G, tau)) continue;
    total += scan.scan(scan.section(tau), [&](const std::vector<int32_t>& images) {
      Homomorphism h;
      h.src = &G;
      h.dst = &G;
      h.images = images;
      if (!fn(h)) {
        stop = true;
        return false;
      }
      return true;
    });
  }
  return total;
}

namespace {

bool squares_to_identity(const Group& G, const std::vector<int32_t>& images) {
  for (int i = 0; i < G.rank(); ++i) {
    int32_t twice = G.apply_images(G.elt_of(images[i]), images);
    if (twice != G.idx_of(G.pres().gen_elt(i))) return false;
  }
  return true;
}

}  // namespace

std::optional<Homomorphism> find_gi(const Group& G) {
  FiberScan scan(G);
  std::vector<int32_t> base(G.rank());
  for (int i = 0; i < G.rank(); ++i) base[i] = G.inv(G.idx_of(G.pres().gen_elt(i)));
  std::optional<Homomorphism> found;
  scan.scan(base, [&](const std::vector<int32_t>& images) {
    if (squares_to_identity(G, images)) {
      Homomorphism h;
      h.src = &G;
      h.dst = &G;
      h.images = images;
      found = std::move(h);
      return false;
    }
    return true;
  });
  return found;
}

long long count_gi(const Group& G) {
  FiberScan scan(G);
  std::vector<int32_t> base(G.rank());
  for (int i = 0; i < G.rank(); ++i) base[i] = G.inv(G.idx_of(G.pres().gen_elt(i)));
  long long n = 0;
  scan.scan(base, [&](const std::vector<int32_t>& images) {
    if (squares_to_identity(G, images)) ++n;
    return true;
  });
  return n;
}

namespace {

std::vector<std::tuple<int, int, int, int, int>> profile_histogram(const Group& G) {
  std::vector<std::tuple<int, int, int, int, int>> h;
  std::map<std::tuple<int, int, int, int>, int> acc;
  for (long long x = 0; x < G.size(); ++x) {
    int32_t xi = static_cast<int32_t>(x);
    int32_t xp = G.pow(xi, G.p());
    acc[{G.elt_order(xi), G.fdepth(xi), G.fdepth(xp), 0}]++;
  }
  for (auto& [k, c] : acc)
    h.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), c});
  return h;
}

}  // namespace

std::optional<Homomorphism> find_isomorphism(const Group& a, const Group& b) {
  if (a.size() != b.size() || a.p_class() != b.p_class() || a.rank() != b.rank())
    return std::nullopt;
  if (!(a.abelianization() == b.abelianization())) return std::nullopt;
  if (profile_histogram(a) != profile_histogram(b)) return std::nullopt;
  int g = a.rank();
  // candidate images per generator: matching invariants
  std::vector<std::vector<int32_t>> cands(g);
  for (int i = 0; i < g; ++i) {
    int32_t src = a.idx_of(a.pres().gen_elt(i));
    for (long long x = 0; x < b.size(); ++x) {
      int32_t xi = static_cast<int32_t>(x);
      if (b.in_frattini(xi)) continue;
      if (b.elt_order(xi) != a.elt_order(src)) continue;
      if (b.fdepth(b.pow(xi, b.p())) != a.fdepth(a.pow(src, a.p()))) continue;
      cands[i].push_back(xi);
    }
    if (cands[i].empty()) return std::nullopt;
  }
  std::vector<int32_t> w1(g);
  std::function<std::optional<Homomorphism>(int)> rec =
      [&](int pos) -> std::optional<Homomorphism> {
    if (pos == g) {
      auto h = hom_from_images(a, b, w1);
      if (h && h->is_epimorphism()) return h;
      return std::nullopt;
    }
    for (int32_t c : cands[pos]) {
      w1[pos] = c;
      // prune: residues so far must stay independent
      FpMat m(b.p(), pos + 1, b.rank());
      for (int i = 0; i <= pos; ++i) {
        auto res = b.frattini_residue(w1[i]);
        for (int j = 0; j < b.rank(); ++j) m.at(i, j) = res[j];
      }
      if (static_cast<int>(rref(m).size()) != pos + 1) continue;
      auto r = rec(pos + 1);
      if (r) return r;
    }
    return std::nullopt;
  };
  return rec(0);
}

bool isomorphic(const Group& a, const Group& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace pcg
