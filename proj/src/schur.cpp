#include "schur.hpp"

#include <algorithm>
#include <set>

namespace pcg {

std::string schur_class_name(SchurClass c) {
  switch (c) {
    case SchurClass::kSchurPlus1Group: return "schur_plus1_group";
    case SchurClass::kAncestorOnly: return "ancestor_only";
    case SchurClass::kPseudoSchurPlus1: return "pseudo_schur_plus1";
    case SchurClass::kNone: return "none";
  }
  return "none";
}

std::optional<SigmaData> sigma_stats(const Group& g, long long aut_order) {
  auto sigma = find_gi(g);
  if (!sigma) return std::nullopt;
  SigmaData sd;
  sd.sigma = std::move(*sigma);
  long long x = 0, y = 0;
  for (long long t = 0; t < g.size(); ++t) {
    int32_t ti = static_cast<int32_t>(t);
    int32_t img = sd.sigma.apply(ti);
    if (img == ti) ++y;
    if (img == g.inv(ti)) ++x;
  }
  sd.x_size = x;
  sd.y_size = y;
  if (x * y != g.size())
    throw std::logic_error("|X||Y| != |G| for a GI-automorphism");
  long long gi = count_gi(g);
  if (aut_order == 0) aut_order = compute_aut(g).order;
  if (aut_order % gi != 0)
    throw std::logic_error("GI count does not divide the automorphism count");
  sd.aut_sigma_order = aut_order / gi;
  return sd;
}

Classification classify(const Group& g, const CoverData& cd) {
  Classification out;
  out.r = cd.r();
  out.h = cd.h();
  int rank = g.rank();
  auto sigma = find_gi(g);
  out.has_gi = sigma.has_value();
  if (!out.has_gi) return out;

  std::vector<Elt> w1;
  for (int i = 0; i < rank; ++i) w1.push_back(g.elt_of(sigma->images[i]));
  FpMat mat = lift_to_multiplicator(cd, w1);
  int p = g.p();
  std::vector<bool> in_nuc(cd.r(), false);
  for (int c : cd.nuc_coords) in_nuc[c] = true;
  out.inverts_mult = true;
  out.inverts_mult_mod_nuc = true;
  for (int t = 0; t < cd.r(); ++t)
    for (int c = 0; c < cd.r(); ++c) {
      int expect = (t == c) ? p - 1 : 0;
      if (mat.at(t, c) != expect) {
        out.inverts_mult = false;
        // modulo the nucleus only rows of non-nucleus coordinates matter,
        // and their defect must lie inside the nucleus
        if (!in_nuc[t] && !in_nuc[c]) out.inverts_mult_mod_nuc = false;
      }
    }
  out.group = out.inverts_mult && (out.r == rank || out.r == rank + 1);
  out.ancestor = out.inverts_mult_mod_nuc && out.h <= rank + 1;
  if (out.group && !out.ancestor)
    throw std::logic_error("sigma-group conditions without the ancestor conditions");
  if (out.group)
    out.cls = SchurClass::kSchurPlus1Group;
  else if (out.ancestor)
    out.cls = SchurClass::kAncestorOnly;
  else if (out.h <= rank + 1)
    out.cls = SchurClass::kPseudoSchurPlus1;
  else
    out.cls = SchurClass::kNone;
  return out;
}

Classification classify(const Group& g) {
  CoverData cd = p_cover(g.pres());
  return classify(g, cd);
}

namespace {

// R* = R^p [F, R] as a subgroup of F.
std::vector<int32_t> star_subgroup(const Group& F, const std::vector<int32_t>& R) {
  std::set<int32_t> gens;
  for (int32_t r : R) {
    int32_t rp = F.pow(r, F.p());
    if (rp) gens.insert(rp);
    for (int gi = 0; gi < F.pres().ngens(); ++gi) {
      int32_t c = F.comm(F.mul_by_gen(0, gi), r);
      if (c) gens.insert(c);
    }
  }
  SubgroupSet s = F.normal_closure(std::vector<int32_t>(gens.begin(), gens.end()));
  return s.elems;
}

int log_p(long long v, int p) {
  int e = 0;
  while (v > 1) {
    v /= p;
    ++e;
  }
  return e;
}

}  // namespace

std::optional<AncestorWitness> ancestor_witness(const Group& g, const Homomorphism& sigma,
                                                const FreeQuotient& fq) {
  if (g.rank() != fq.g())
    throw ValidationError("rank mismatch between the group and the free quotient");
  if (g.p_class() > fq.c())
    throw ValidationError("free quotient class below the group class");
  const Group& F = *fq.group();
  int rank = g.rank();
  // X(G, sigma)
  std::vector<int32_t> xg;
  for (long long t = 0; t < g.size(); ++t) {
    int32_t ti = static_cast<int32_t>(t);
    if (sigma.apply(ti) == g.inv(ti)) xg.push_back(ti);
  }
  std::set<std::vector<int32_t>> seen_kernels;
  std::vector<size_t> od(rank, 0);
  std::vector<int32_t> w1(rank);
  while (true) {
    for (int i = 0; i < rank; ++i) w1[i] = xg[od[i]];
    // independence mod Phi(G); every such map is a homomorphism from F_c
    FpMat m(g.p(), rank, rank);
    for (int i = 0; i < rank; ++i) {
      auto res = g.frattini_residue(w1[i]);
      for (int j = 0; j < rank; ++j) m.at(i, j) = res[j];
    }
    if (static_cast<int>(rref(m).size()) == rank) {
      auto h = hom_from_images(F, g, w1);
      if (!h) throw std::logic_error("relatively free quotient rejected a class-bounded map");
      std::vector<int32_t> kernel = kernel_of(*h);
      if (seen_kernels.insert(kernel).second) {
        std::vector<int32_t> star = star_subgroup(F, kernel);
        int dim = log_p(static_cast<long long>(kernel.size()) / star.size(), g.p());
        if (dim <= rank + 1) {
          std::vector<bool> in_star(F.size(), false);
          for (int32_t x : star) in_star[x] = true;
          bool inverts = true;
          for (int32_t r : kernel) {
            int32_t v = F.mul(fq.sigma().apply(r), r);
            if (!in_star[v]) {
              inverts = false;
              break;
            }
          }
          if (inverts) {
            AncestorWitness w;
            w.epi_images = w1;
            w.kernel = std::move(kernel);
            w.kernel_rank = dim;
            return w;
          }
        }
      }
    }
    int pos = rank - 1;
    while (pos >= 0 && ++od[pos] == xg.size()) {
      od[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return std::nullopt;
}

}  // namespace pcg
