#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "../support/oracles.hpp"
#include "idap/groebner.hpp"
#include "idap/parser.hpp"

using namespace idap;

namespace {

MPoly P(const char* s, std::size_t n) { return parse_polynomial(s, n); }

std::vector<std::string> texts(const GroebnerBasis& gb) {
  std::vector<std::string> out;
  for (const auto& g : gb.gens) out.push_back(g.str(gb.order));
  return out;
}

}  // namespace

TEST_CASE("reduction") {
  CHECK(reduce(P("x1^2+x2^2", 2), {P("x2^2", 2)}, MonOrder::degrevlex) == P("x1^2", 2));
  MPoly g = P("x1^2 - 3*x1*x2 + 2", 2);
  CHECK(reduce(g, {g}, MonOrder::degrevlex).is_zero());
  CHECK(reduce(P("x1*x2", 2), {P("x1^2", 2), P("x2^2", 2)}, MonOrder::degrevlex) == P("x1*x2", 2));
}

TEST_CASE("buchberger examples") {
  CHECK(texts(buchberger({P("x1^2+x2^2", 2), P("x1^2-x2^2", 2)})) == std::vector<std::string>{"x1^2", "x2^2"});
  CHECK(texts(buchberger({P("x1^2", 1)})) == std::vector<std::string>{"x1^2"});
  CHECK(texts(buchberger({P("x1-x2", 2), P("x2-1", 2)}, MonOrder::lex)) == std::vector<std::string>{"x1 - 1", "x2 - 1"});
  CHECK(buchberger({P("x1+1", 1), P("x1", 1)}).contains_one());
  CHECK_THROWS(buchberger({MPoly(2)}));
}

TEST_CASE("membership examples") {
  auto gb = buchberger({P("x1^2+x2^2", 2), P("x1^2-x2^2", 2)});
  CHECK(ideal_member(P("x1^4", 2), gb));
  CHECK_FALSE(ideal_member(P("x1", 1), buchberger({P("x1^2", 1)})));
  CHECK(ideal_member(MPoly(2), gb));
}

TEST_CASE("morphism certificates") {
  auto c = morphism_condition({P("x1^2+x2^2", 2), P("x1^2-x2^2", 2)});
  CHECK(c.holds);
  REQUIRE(c.witnesses.size() == 2);
  CHECK(MPoly::monomial(c.witnesses[0].leading, BigRat(1)).str() == "x1^2");
  CHECK(MPoly::monomial(c.witnesses[1].leading, BigRat(1)).str() == "x2^2");

  auto h = morphism_condition({P("x1^2+x2^2", 2)});
  CHECK_FALSE(h.holds);
  CHECK(h.missing_variables == std::vector<std::size_t>{1});

  for (int a : {1, -2, 5})
    for (unsigned k = 1; k <= 4; ++k) {
      MPoly p = P("x1", 1).pow(k).scaled(BigRat(a));
      CHECK(morphism_condition({p}).holds);
    }

  CHECK(morphism_condition({P("x1^2", 2), P("x1*x2", 2), P("x2^2", 2)}).holds);
  CHECK(morphism_condition({P("x1^2", 2), MPoly(2), P("x2^2", 2)}).holds);
  CHECK_THROWS(morphism_condition({P("x1^2+x2", 2)}));
  CHECK_THROWS(morphism_condition({MPoly(2)}));
  CHECK_THROWS(morphism_condition({P("x1^2", 2), P("x2", 2)}));
}

TEST_CASE("random ideals: criterion, uniqueness, membership") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 3;
    std::vector<MPoly> gens;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) gens.push_back(oracle::random_poly(rng, n, 3, 3, 3));
    auto gb = buchberger(gens);
    CHECK(satisfies_buchberger_criterion(gb.gens, gb.order));
    for (const auto& g : gens) CHECK(ideal_member(g, gb));

    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (auto& g : shuffled) g = g.scaled(BigRat(BigInt(static_cast<long>(rng() % 5) + 1), BigInt(static_cast<long>(rng() % 3) + 2)));
    CHECK(buchberger(shuffled).gens == gb.gens);

    // A random combination is a member, and the exact oracle agrees.
    MPoly comb(n);
    for (const auto& g : gens) comb = comb + g * oracle::random_poly(rng, n, 1, 2, 2);
    CHECK(ideal_member(comb, gb));
    CHECK(oracle::combination_exists(comb, gens, 2));
  }
}

TEST_CASE("crafted membership cases agree with the exact oracle") {
  struct Case {
    std::vector<const char*> gens;
    const char* p;
    std::size_t n;
  };
  const Case cases[] = {
      {{"x1^2+x2^2", "x1^2-x2^2"}, "x1^4", 2},
      {{"x1^2+x2^2", "x1^2-x2^2"}, "x1*x2", 2},
      {{"x1^2"}, "x1", 1},
      {{"x1^2"}, "x1^3 - 2*x1^2", 1},
      {{"x1*x2 - 1", "x2^2 - x1"}, "x1^2 - x2", 2},
      {{"x1*x2 - 1", "x2^2 - x1"}, "x1 + x2", 2},
      {{"x1 - x2", "x2 - x3"}, "x1 - x3", 3},
      {{"x1 - x2", "x2 - x3"}, "x1 + x3", 3},
      {{"x1^2 - x2", "x1*x3 - 1"}, "x2*x3 - x1", 3},
      {{"x1^3 - x2^2"}, "x1^4 - x1*x2^2", 2},
      {{"x1 + x2 + x3", "x1*x2 + x2*x3 + x1*x3", "x1*x2*x3"}, "x3^3", 3},
      {{"x1 + x2 + x3", "x1*x2 + x2*x3 + x1*x3", "x1*x2*x3"}, "x3^2", 3},
  };
  for (const auto& c : cases) {
    std::vector<MPoly> gens;
    for (const char* g : c.gens) gens.push_back(P(g, c.n));
    MPoly p = P(c.p, c.n);
    CAPTURE(c.p);
    CHECK(ideal_member(p, buchberger(gens)) == oracle::combination_exists(p, gens, 4));
  }
}
