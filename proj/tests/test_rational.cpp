#include "doctest.h"
#include "rational.hpp"

using namespace pcg;

TEST_CASE("rationals reduce and compare canonically") {
  CHECK(make_rat(624, 729) == make_rat(208, 243));
  CHECK(fraction_string(make_rat(624, 729)) == "208/243");
  CHECK(make_rat(0, 5) == Rat(0));
  CHECK(make_rat(-3, 9) == make_rat(-1, 3));
}

TEST_CASE("integer powers") {
  CHECK(int_pow(3, 6) == 729);
  CHECK(int_pow(3, 0) == 1);
  CHECK(rat_pow(make_rat(1, 3), 2) == make_rat(1, 9));
  CHECK(rat_pow(make_rat(1, 3), -2) == make_rat(9));
}

TEST_CASE("four-decimal rendering rounds half to even") {
  CHECK(decimal4(make_rat(8320, 19683)) == "0.4227");
  CHECK(decimal4(make_rat(1664, 6561)) == "0.2536");
  CHECK(decimal4(make_rat(3328, 59049)) == "0.0564");
  CHECK(decimal4(make_rat(11648, 531441)) == "0.0219");
  CHECK(decimal4(make_rat(1, 2)) == "0.5000");
  // ties: 0.00005 -> even, 0.00015 -> even
  CHECK(decimal4(make_rat(1, 20000)) == "0.0000");
  CHECK(decimal4(make_rat(3, 20000)) == "0.0002");
  CHECK(decimal4(make_rat(1)) == "1.0000");
  CHECK(decimal4(make_rat(-1, 2)) == "-0.5000");
}
