#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "group.hpp"
#include "hom.hpp"
#include "pcpres.hpp"
#include "quotient.hpp"
#include "tower.hpp"

using namespace pcg;

namespace {

PcPresentation elementary_abelian(int p, int g) {
  return PcPresentation(p, std::vector<int>(g, 1));
}

PcPresentation cyclic9() {
  // C9: a1^3 = a2, a2^3 = 1
  PcPresentation pres(3, {1, 2});
  pres.set_power(0, {{1, 1}});
  return pres;
}

PcPresentation z3xz9() {
  // a1 of order 9 (a1^3 = a3), a2 of order 3
  PcPresentation pres(3, {1, 1, 2});
  pres.set_power(0, {{2, 1}});
  return pres;
}

}  // namespace

TEST_CASE("collection in an elementary abelian group reorders letters") {
  PcPresentation pres = elementary_abelian(3, 2);
  Elt e = pres.collect({{1, 1}, {0, 1}});  // a2 a1 -> a1 a2
  CHECK(e == Elt{1, 1});
  CHECK(pres.collect({}) == Elt{0, 0});
  CHECK(pres.is_consistent());
}

TEST_CASE("words with negative and large exponents collect correctly") {
  PcPresentation pres = cyclic9();
  // a1^{-1} = a1^2 a2^2 since a1^3 = a2 and a2^3 = 1
  Elt inv = pres.collect({{0, -1}});
  Elt expect = pres.inverse(pres.gen_elt(0));
  CHECK(inv == expect);
  CHECK(pres.collect({{0, 9}}) == pres.identity());
  CHECK(pres.collect({{0, 10}}) == pres.gen_elt(0));
}

TEST_CASE("collect is a homomorphic image of concatenation") {
  FreeQuotient fq = FreeQuotient::build(3, 2, 2);
  const PcPresentation& pres = fq.pres();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Word u, v;
    for (int i = 0; i < 4; ++i) {
      u.push_back({static_cast<int>(rng() % 5), static_cast<long long>(rng() % 7) - 3});
      v.push_back({static_cast<int>(rng() % 5), static_cast<long long>(rng() % 7) - 3});
    }
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    Elt a = pres.collect(uv);
    Elt b = pres.collect(u);
    pres.mul(b, pres.collect(v));
    CHECK(a == b);
  }
}

TEST_CASE("commutator word in the rank-2 class-2 free quotient") {
  FreeQuotient fq = FreeQuotient::build(3, 2, 2);
  const PcPresentation& pres = fq.pres();
  // oracle: brute-force Cayley table from the multiplication tables
  Group grp(pres);
  CHECK(grp.size() == 243);
  // x2^-1 x1^-1 x2 x1 is the inverse of the stored commutator generator
  Elt w = pres.collect({{1, -1}, {0, -1}, {1, 1}, {0, 1}});
  int32_t via_tables = grp.comm(grp.idx_of(pres.gen_elt(1)), grp.idx_of(pres.gen_elt(0)));
  CHECK(grp.idx_of(w) == via_tables);
  // and it lies in the commutator-generator direction
  Elt comm_gen = grp.elt_of(via_tables);
  int nz = 0;
  for (int i = 2; i < 5; ++i)
    if (comm_gen[i]) ++nz;
  CHECK(nz == 1);
}

TEST_CASE("consistency detects a corrupted commutator relation") {
  FreeQuotient fq = FreeQuotient::build(3, 2, 3);
  PcPresentation pres = fq.pres();
  CHECK(pres.is_consistent());
  // corrupt [a2,a1]: the class-3 relations pin its normalization
  Word bad = pres.comm(1, 0);
  REQUIRE(!bad.empty());
  Word corrupted = bad;
  corrupted[0].exp = corrupted[0].exp == 1 ? 2 : 1;
  pres.set_comm(1, 0, corrupted);
  CHECK(!pres.is_consistent());
}

TEST_CASE("enumeration yields every normal form exactly once") {
  FreeQuotient fq = FreeQuotient::build(3, 2, 2);
  Group grp(fq.pres());
  std::set<std::vector<uint8_t>> seen;
  for (int32_t i = 0; i < grp.size(); ++i) seen.insert(grp.elt_of(i));
  CHECK(seen.size() == 243);
}

TEST_CASE("text format round trip and validation") {
  FreeQuotient fq = FreeQuotient::build(3, 2, 2);
  std::string text = fq.pres().format();
  PcPresentation back = PcPresentation::parse(text);
  CHECK(back.format() == text);
  CHECK(back.is_consistent());
  CHECK_THROWS_AS(PcPresentation::parse("3 2\nw 1 1\nw 2 1\np 1 : g2^3\n"), ValidationError);
  CHECK_THROWS_AS(PcPresentation::parse("3 2\nw 1 1\nw 2 1\nc 2 1 : g1^1\n"), ValidationError);
}

TEST_CASE("abelian invariants") {
  Group c9(cyclic9());
  CHECK(c9.abelianization().str() == "[9]");
  Group mixed(z3xz9());
  CHECK(mixed.abelianization().str() == "[3,9]");
  FreeQuotient fq = FreeQuotient::build(3, 2, 2);
  Group f2(fq.pres());
  CHECK(f2.abelianization().str() == "[9,9]");
}

TEST_CASE("maximal subgroups of the elementary abelian group of rank 2") {
  Group grp(elementary_abelian(3, 2));
  auto maxes = grp.maximal_subgroups();
  REQUIRE(maxes.size() == 4);
  for (const auto& m : maxes) {
    CHECK(m.elems.size() == 3);
    CHECK(grp.abelian_invariants(m).str() == "[3]");
  }
  // pairwise distinct
  for (size_t i = 0; i < maxes.size(); ++i)
    for (size_t j = i + 1; j < maxes.size(); ++j) CHECK(maxes[i].elems != maxes[j].elems);
}

TEST_CASE("homomorphisms from images") {
  Group v(elementary_abelian(3, 2));
  Group c3(elementary_abelian(3, 1));
  // a1 -> b, a2 -> identity: a surjection onto C3
  auto h = hom_from_images(v, c3, {1, 0});
  REQUIRE(h.has_value());
  CHECK(h->is_epimorphism());
  // C9 -> C3 x C3, generator to a1: valid non-injective homomorphism
  Group c9(cyclic9());
  auto h2 = hom_from_images(c9, v, {v.idx_of(v.pres().gen_elt(0))});
  REQUIRE(h2.has_value());
  CHECK(kernel_of(*h2).size() == 3);
}

TEST_CASE("kernels of quotient maps") {
  FreeQuotient fq = FreeQuotient::build(3, 2, 2);
  const Group& f2 = *fq.group();
  Group v(elementary_abelian(3, 2));
  auto h = hom_from_images(f2, v, {v.idx_of(v.pres().gen_elt(0)), v.idx_of(v.pres().gen_elt(1))});
  REQUIRE(h.has_value());
  auto ker = kernel_of(*h);
  CHECK(ker.size() == 27);  // Phi(F_2)
  CHECK(std::equal(ker.begin(), ker.end(), f2.frattini_elems().begin()));
}

TEST_CASE("automorphism counts by brute force") {
  Group v(elementary_abelian(3, 2));
  long long n = 0;
  stream_automorphisms(v, [&](const Homomorphism&) {
    ++n;
    return true;
  });
  CHECK(n == 48);
  CHECK(compute_aut(v).order == 48);

  Group c9(cyclic9());
  CHECK(compute_aut(c9).order == 6);

  Group mixed(z3xz9());
  CHECK(compute_aut(mixed).order == 108);
}

TEST_CASE("isomorphism testing separates and matches") {
  Group c9(cyclic9());
  Group v(elementary_abelian(3, 2));
  CHECK(!isomorphic(c9, v));
  // two presentations of the same quotient of F_2
  FreeQuotient fq = FreeQuotient::build(3, 2, 2);
  const Group& f2 = *fq.group();
  const auto& X = fq.x_set();
  REQUIRE(X.size() == 9);
  // pick two different spanning pairs of X_2 and quotient by them
  std::vector<std::vector<int32_t>> kernels;
  for (int a = 1; a < 9 && kernels.size() < 2; ++a)
    for (int b = a + 1; b < 9 && kernels.size() < 2; ++b) {
      SubgroupSet s = f2.normal_closure({X[a], X[b]});
      if (s.elems.size() == 9) {
        kernels.push_back(s.elems);
        break;
      }
    }
  REQUIRE(kernels.size() == 2);
  Group q1(quotient_pcp(f2, kernels[0]));
  Group q2(quotient_pcp(f2, kernels[1]));
  CHECK(q1.size() == 27);
  CHECK(isomorphic(q1, q2));
}
