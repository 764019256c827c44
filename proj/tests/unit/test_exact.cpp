#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "idap/exact.hpp"

using namespace idap;

TEST_CASE("rationals stay reduced") {
  BigRat a(BigInt(6), BigInt(-4));
  CHECK(a.num() == BigInt(-3));
  CHECK(a.den() == BigInt(2));
  CHECK(a.str() == "-3/2");
  CHECK(BigRat(4).str() == "4");
  CHECK(BigRat::parse("10/4") == BigRat(BigInt(5), BigInt(2)));
  CHECK(BigRat::parse("0.6") == BigRat(BigInt(3), BigInt(5)));
  CHECK(BigRat::parse("-1.5e-1") == BigRat(BigInt(-3), BigInt(20)));
  CHECK_THROWS(BigRat(BigInt(1), BigInt(0)));
  CHECK_THROWS(BigRat::parse("1/x"));
  CHECK((BigRat(BigInt(1), BigInt(3)) + BigRat(BigInt(1), BigInt(6))) == BigRat(BigInt(1), BigInt(2)));
  CHECK(BigRat(BigInt(7), BigInt(2)).floor() == BigInt(3));
  CHECK(BigRat(BigInt(-7), BigInt(2)).floor() == BigInt(-4));
  CHECK(BigRat(BigInt(-7), BigInt(2)).ceil() == BigInt(-3));
  CHECK(BigRat(BigInt(2), BigInt(3)).pow(-2) == BigRat(BigInt(9), BigInt(4)));
}

TEST_CASE("zero is canonical") {
  BigInt z = BigInt(5) - BigInt(5);
  CHECK(z.sign() == 0);
  CHECK((-z).str() == "0");
  CHECK(BigRat(BigInt(0), BigInt(-7)).den() == BigInt(1));
}

TEST_CASE("affine height examples") {
  CHECK(affine_height(RatVec::parse("3/4, 5/6")) == BigInt(12));
  CHECK(affine_height(RatVec::parse("0, 0")) == BigInt(1));
  CHECK(affine_height(RatVec::parse("1/2, 1/4, 1/8")) == BigInt(8));
}

TEST_CASE("projective points") {
  ProjPoint p = to_projective(RatVec::parse("2/3, 1/2"));
  CHECK(p.str() == "6:4:3");
  CHECK(projective_height(p) == BigInt(6));
  CHECK(to_projective(RatVec::parse("1, 2")).str() == "1:1:2");
  CHECK(to_projective(RatVec::parse("0")).str() == "1:0");
  CHECK(projective_height(ProjPoint::parse("1:0:0")) == BigInt(1));
  CHECK(ProjPoint::parse("-4:-2:6").str() == "2:1:-3");
  CHECK(ProjPoint::parse("0:-3:6").str() == "0:1:-2");
  CHECK_THROWS(ProjPoint::parse("0:0"));
  CHECK(affine_height(RatVec::parse("2/3, 1/2")) == BigInt(6));
}

TEST_CASE("canonical forms are idempotent") {
  ProjPoint p = ProjPoint::parse("-6:4:-2");
  CHECK(ProjPoint::parse(p.str()) == p);
  BigRat r = BigRat::parse("-14/21");
  CHECK(BigRat::parse(r.str()) == r);
}

TEST_CASE("heights against brute force on random vectors") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> den(1, 40);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<BigRat> v;
    int k = 1 + trial % 3;
    for (int i = 0; i < k; ++i) {
      int d = den(rng);
      v.emplace_back(BigInt(std::uniform_int_distribution<int>(0, d)(rng)), BigInt(d));
    }
    RatVec rv(v);
    BigInt h = affine_height(rv);
    CHECK(h == BigInt(oracle::brute_affine_height(v)));
    BigInt hp = projective_height(to_projective(rv));
    CHECK(hp >= h);
    CHECK(hp <= h * BigInt(2));  // entries in [0,1]
  }
}
