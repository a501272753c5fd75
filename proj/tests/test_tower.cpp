#include <map>
#include <set>

#include "doctest.h"
#include "tower.hpp"

using namespace pcg;

TEST_CASE("class-1 and class-2 free quotients have the expected shape") {
  FreeQuotient f1 = FreeQuotient::build(3, 2, 1);
  CHECK(f1.order_exp() == 2);
  FreeQuotient f2 = FreeQuotient::build(3, 2, 2);
  CHECK(f2.order_exp() == 5);
  CHECK(f2.phi_size() == 27);
  CHECK(f2.x_size() == 9);
  CHECK(f2.y_size() == 3);
  // |F_2| = |X(F_2)| |Y(F_2)|
  CHECK(f2.x_of_whole_group() * f2.y_size() == 243);
  // |X_c| = |X(F_c)| / p^g
  CHECK(f2.x_size() == f2.x_of_whole_group() / 9);
}

TEST_CASE("X_2 is a central elementary abelian subgroup of order 9") {
  FreeQuotient f2 = FreeQuotient::build(3, 2, 2);
  const Group& G = *f2.group();
  const auto& X = f2.x_set();
  REQUIRE(X.size() == 9);
  std::set<int32_t> xset(X.begin(), X.end());
  std::vector<int32_t> center = G.center();
  std::set<int32_t> zset(center.begin(), center.end());
  for (int32_t x : X) {
    CHECK(zset.count(x));
    CHECK(G.pow(x, 3) == 0);
  }
  CHECK(G.is_subgroup(X));
  // closed under inversion, contains the identity
  CHECK(xset.count(0));
  for (int32_t x : X) CHECK(xset.count(G.inv(x)));
}

TEST_CASE("the filter definition of X agrees with the phi-map image") {
  for (int c = 1; c <= 2; ++c) {
    FreeQuotient fq = FreeQuotient::build(3, 2, c);
    const Group& G = *fq.group();
    std::set<int32_t> image;
    std::map<int32_t, int> fiber;
    for (int32_t t : G.frattini_elems()) {
      int32_t s = fq.phi_map(t);
      image.insert(s);
      fiber[s] += 1;
    }
    std::set<int32_t> filter(fq.x_set().begin(), fq.x_set().end());
    CHECK(image == filter);
    // fibers all have size |Y_c| = |Phi| / |X_c|
    int expected = static_cast<int>(G.frattini_elems().size() / filter.size());
    for (auto& [s, count] : fiber) CHECK(count == expected);
  }
}

TEST_CASE("phi map basics") {
  FreeQuotient f2 = FreeQuotient::build(3, 2, 2);
  CHECK(f2.phi_map(0) == 0);
  CHECK_THROWS_AS(f2.phi_map(f2.group()->idx_of(f2.pres().gen_elt(0))), ValidationError);
}

TEST_CASE("sigma squares to the identity and inverts modulo Phi") {
  FreeQuotient f3 = FreeQuotient::build(3, 2, 3);
  CHECK(f3.order_exp() == 10);  // derived constant: |F_3| = 3^10
  const Group& G = *f3.group();
  const Homomorphism& s = f3.sigma();
  for (int i = 0; i < 2; ++i) {
    int32_t gi = G.idx_of(G.pres().gen_elt(i));
    CHECK(s.apply(s.apply(gi)) == gi);
    // sigma(g) * g lies in the Frattini subgroup
    CHECK(G.in_frattini(G.mul(s.apply(gi), gi)));
  }
}

TEST_CASE("X_3 projects onto X_2 with constant fibers") {
  FreeQuotient f2 = FreeQuotient::build(3, 2, 2);
  FreeQuotient f3 = FreeQuotient::build(3, 2, 3);
  CHECK(f3.x_size() == 729);
  const Group& G3 = *f3.group();
  const Group& G2 = *f2.group();
  // the natural projection drops the deeper coordinates
  auto project = [&](int32_t x) {
    Elt e = G3.elt_of(x);
    Elt out(G2.pres().ngens(), 0);
    for (int i = 0; i < G2.pres().ngens(); ++i) out[i] = e[i];
    return G2.idx_of(out);
  };
  std::map<int32_t, int> fiber;
  for (int32_t x : f3.x_set()) fiber[project(x)] += 1;
  std::set<int32_t> x2(f2.x_set().begin(), f2.x_set().end());
  REQUIRE(fiber.size() == x2.size());
  for (auto& [img, count] : fiber) {
    CHECK(x2.count(img));
    CHECK(count == static_cast<int>(f3.x_size() / f2.x_size()));
  }
}

TEST_CASE("sampling is deterministic and uniform on X_2") {
  FreeQuotient f2 = FreeQuotient::build(3, 2, 2);
  auto a = f2.sample_x_tuple(3, 12345);
  auto b = f2.sample_x_tuple(3, 12345);
  CHECK(a == b);
  CHECK(f2.sample_x_tuple(0, 1).empty());
  // empirical marginal: each of the 9 values within 4 sigma of 1/9
  const Group& G = *f2.group();
  std::map<int32_t, int> histo;
  const int n = 100000;
  auto draws = f2.sample_x_tuple(n, 999);
  for (const Elt& e : draws) histo[G.idx_of(e)] += 1;
  REQUIRE(histo.size() == 9);
  double pexp = 1.0 / 9.0;
  double sigma = std::sqrt(pexp * (1 - pexp) / n);
  for (auto& [v, count] : histo) {
    double freq = static_cast<double>(count) / n;
    CHECK(std::abs(freq - pexp) < 4 * sigma);
  }
}
