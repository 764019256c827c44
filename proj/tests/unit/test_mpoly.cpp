#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "idap/mpoly.hpp"
#include "idap/parser.hpp"

using namespace idap;

namespace {
MPoly P(const char* s, std::size_t n) { return parse_polynomial(s, n); }
}  // namespace

TEST_CASE("arithmetic examples") {
  CHECK((P("x1+1", 1) * P("x1-1", 1)) == P("x1^2-1", 1));
  CHECK((P("x1^2-3*x1", 1) + MPoly(1)) == P("x1^2-3*x1", 1));
  CHECK(P("(x1+x2)^2", 2) == P("x1^2+2*x1*x2+x2^2", 2));
  CHECK((P("x1", 1) - P("x1", 1)).is_zero());
  CHECK_THROWS(P("x1", 1) + P("x1", 2));
}

TEST_CASE("evaluation") {
  CHECK(P("x1^2+x2", 2).evaluate(RatVec::parse("1/2, 1/4")) == BigRat(BigInt(1), BigInt(2)));
  CHECK(P("7", 2).evaluate(RatVec::parse("3, 9/4")) == BigRat(7));
  CHECK(P("x1*x2-1", 2).evaluate(RatVec::parse("2, 1/2")).is_zero());
  CHECK_THROWS(P("x1*x2", 2).evaluate(RatVec::parse("2")));
}

TEST_CASE("homogeneous parts") {
  auto parts = homogeneous_parts(P("x1^2-x2+3", 2), 2);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == P("3", 2));
  CHECK(parts[1] == P("-x2", 2));
  CHECK(parts[2] == P("x1^2", 2));
  auto top = homogeneous_parts(P("x1^2+x2^2", 2), 2);
  CHECK(top[0].is_zero());
  CHECK(top[1].is_zero());
  CHECK(top[2] == P("x1^2+x2^2", 2));
  auto lower = homogeneous_parts(P("x1", 1), 3);
  REQUIRE(lower.size() == 4);
  CHECK(lower[1] == P("x1", 1));
  CHECK(lower[3].is_zero());
  CHECK_THROWS(homogeneous_parts(P("x1^3", 1), 2));
}

TEST_CASE("homogenization prints with x0") {
  CHECK(homogenize(P("x1^2-x2+3", 2), 2).str() == "x1^2 - x0*x2 + 3*x0^2");
  CHECK(homogenize(P("x1^2", 1), 2).str() == "x1^2");
  CHECK(homogenize(P("x1", 1), 2).str() == "x0*x1");
  CHECK_THROWS(homogenize(P("x1^3", 1), 2));
}

TEST_CASE("canonical text is degrevlex descending") {
  CHECK(P("3 + x2 + x1^2", 2).str() == "x1^2 + x2 + 3");
  CHECK(P("x1*x3 + x2^2", 3).str() == "x2^2 + x1*x3");
  CHECK(P("-x1 + x2", 2).str() == "-x1 + x2");
  CHECK(P("x1^2 + x2", 2).str(MonOrder::lex) == "x1^2 + x2");
}

TEST_CASE("grading, round trip and homogeneity on random polynomials") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    MPoly p = oracle::random_poly(rng, n, 5, 5, 6);
    const unsigned d = static_cast<unsigned>(std::max(p.degree(), 1)) + trial % 2;
    if (d > 6) continue;
    auto parts = homogeneous_parts(p, d);
    MPoly sum(n);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      CHECK((parts[k].is_zero() || (parts[k].is_homogeneous() && parts[k].degree() == static_cast<int>(k))));
      sum = sum + parts[k];
    }
    CHECK(sum == p);

    MPoly h = homogenize(p, d);
    CHECK(h.is_homogeneous());
    CHECK(dehomogenize(h) == p);

    std::vector<BigRat> x;
    for (std::size_t i = 0; i <= n; ++i) x.emplace_back(BigInt(static_cast<long>(rng() % 7) - 3), BigInt(static_cast<long>(1 + rng() % 5)));
    BigRat t(BigInt(static_cast<long>(rng() % 9) + 1), BigInt(static_cast<long>(rng() % 4) + 1));
    std::vector<BigRat> tx;
    for (const auto& v : x) tx.push_back(t * v);
    CHECK(h.evaluate(tx) == t.pow(d) * h.evaluate(x));
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 3;
    MPoly a = oracle::random_poly(rng, n, 3);
    MPoly b = oracle::random_poly(rng, n, 3);
    MPoly c = oracle::random_poly(rng, n, 3).scaled(BigRat(BigInt(1), BigInt(3)));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
  }
}
