#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "../support/oracles.hpp"
#include "idap/errors.hpp"
#include "idap/parser.hpp"
#include "idap/variety.hpp"

using namespace idap;

namespace {

VarietyContext ctx_of(const char* text, std::optional<Box> box = std::nullopt) {
  auto sd = parse_system(text);
  return build_context(sd.polys, std::move(box));
}

BigRat R(const char* s) { return BigRat::parse(s); }

}  // namespace

TEST_CASE("context construction") {
  auto parab = ctx_of("x1^2");
  CHECK(parab.lipschitz == BigRat(3));
  CHECK(parab.d == 2);
  CHECK(parab.morphism.holds);
  CHECK(ctx_of("x1^2; x1*x2; x2^2").morphism.holds);
  CHECK_FALSE(ctx_of("x1^2 + x2^2").morphism.holds);
  CHECK(ctx_of("x1^2+x2^2; x1^2-x2^2").morphism.holds);
  CHECK(ctx_of("x1^3 - 2*x1 + 1").morphism.holds);
  CHECK_THROWS_AS(build_context({MPoly::constant(1, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(build_context({parse_polynomial("x1", 1).scaled(R("1/2"))}), std::invalid_argument);
  CHECK(parab.homogenized[0].str() == "x1^2");
  auto mixed = ctx_of("x1^2 - x2 + 3");
  CHECK(mixed.homogenized[0].str() == "x1^2 - x0*x2 + 3*x0^2");
}

TEST_CASE("F and F*") {
  auto parab = ctx_of("x1^2");
  CHECK(apply_F(parab, RatVec::parse("1/2")).point == RatVec::parse("1/2, 1/4"));
  CHECK(apply_F(parab, RatVec::parse("0")).point == RatVec::parse("0, 0"));
  CHECK(apply_F(parab, RatVec::parse("2")).outside_box);
  auto g = ctx_of("x1^2+x2^2; x1^2-x2^2");
  CHECK(apply_F(g, RatVec::parse("1/2, 1/2")).point == RatVec::parse("1/2, 1/2, 1/2, 0"));

  ProjPoint img = apply_Fstar(parab, ProjPoint::parse("2:1"));
  CHECK(img.str() == "4:2:1");
  CHECK(projective_height(img) == BigInt(4));
  CHECK(apply_Fstar(g, ProjPoint::parse("1:0:0")).str() == "1:0:0:0:0");
  CHECK(apply_Fstar(parab, ProjPoint::parse("6:3")) == apply_Fstar(parab, ProjPoint::parse("2:1")));

  // X0 = 0 with a non-morphism: x1^2 + x2^2 ... use x1*x2, which vanishes at (0:1:0).
  auto bad = ctx_of("x1*x2");
  CHECK_FALSE(bad.morphism.holds);
  CHECK_THROWS_AS(apply_Fstar(bad, ProjPoint::parse("0:1:0")), PreconditionError);
}

TEST_CASE("patch compatibility and Lipschitz sandwich") {
  std::mt19937_64 rng(5);
  for (const char* sys : {"x1^2", "x1^2+x2^2; x1^2-x2^2", "x1^3 - x1*x2 + 2; x2^2", "x1^2; x1*x2; x2^2"}) {
    auto ctx = ctx_of(sys);
    auto rand_point = [&] {
      std::vector<BigRat> x;
      for (std::size_t i = 0; i < ctx.n; ++i) {
        long den = 1 + static_cast<long>(rng() % 30);
        x.emplace_back(BigInt(static_cast<long>(rng() % (den + 1))), BigInt(den));
      }
      return RatVec(x);
    };
    for (int t = 0; t < 40; ++t) {
      RatVec x = rand_point();
      CHECK(to_projective(apply_F(ctx, x).point) == apply_Fstar(ctx, to_projective(x)));
      RatVec y = rand_point();
      BigRat dx = sup_distance(x, y);
      BigRat dF = sup_distance(apply_F(ctx, x).point, apply_F(ctx, y).point);
      CHECK(dx <= dF);
      CHECK(dF <= ctx.lipschitz * dx);
    }
  }
}

TEST_CASE("primitive enumeration") {
  auto parab = ctx_of("x1^2");
  auto four = enumerate_primitive(parab, 4, 4);
  REQUIRE(four.size() == 2);
  CHECK(four[0].value() == RatVec::parse("1/4"));
  CHECK(four[1].value() == RatVec::parse("3/4"));
  auto one = enumerate_primitive(parab, 1, 1);
  CHECK(one.size() == 2);
  for (std::int64_t q : {2, 3, 5, 7, 11, 13}) CHECK(enumerate_primitive(parab, q, q).size() == static_cast<std::size_t>(q - 1));

  // n = 2, q = 2: (0,1), (1,0), (1,1), (1,2), (2,1) over 2.
  auto g = ctx_of("x1^2+x2^2; x1^2-x2^2");
  CHECK(enumerate_primitive(g, 2, 2).size() == 5);

  std::vector<Box> boxes = {unit_box(2), {{R("-1/2"), R("1")}, {R("1/3"), R("2")}}, {{R("0"), R("3")}}};
  for (const auto& box : boxes) {
    for (std::int64_t q = 1; q <= 9; ++q) {
      std::vector<std::vector<std::int64_t>> got;
      for_each_primitive(box, q, [&](const PrimitivePoint& p) {
        std::vector<std::int64_t> v;
        for (const auto& x : p.p) v.push_back(x.to_int64());
        got.push_back(v);
      });
      CHECK(got == oracle::brute_primitive(box, q));
    }
  }
}

TEST_CASE("height scan examples") {
  auto parab = ctx_of("x1^2");
  auto r = height_bound_scan(parab, 10);
  CHECK(r.delta_hat == BigRat(1));
  CHECK(r.max_ratio == BigRat(1));
  CHECK(r.above_one == 0);
  auto g = ctx_of("x1^2+x2^2; x1^2-x2^2");
  PrimitivePoint half{{BigInt(1), BigInt(1)}, BigInt(2)};
  CHECK(image_height(g, half) == BigInt(2));
  auto rg = height_bound_scan(g, 12);
  CHECK(rg.rows[1].q == 2);
  CHECK(rg.rows[1].min_ratio == R("1/2"));
  CHECK(rg.rows[0].min_ratio == BigRat(1));  // integer points
}

TEST_CASE("kernel matches the rational reference") {
  for (const char* sys : {"x1^2", "x1^2+x2^2; x1^2-x2^2", "x1^3 - 3*x1*x2 + 7; 2*x2^2 - x1", "x1^2; x1*x2; x2^2",
                          "x1^2 + x2^2", "5*x1^4 - 3*x1^2 + 11"}) {
    auto ctx = ctx_of(sys);
    const std::int64_t q = ctx.n == 1 ? 60 : 14;
    auto fast = height_bound_scan(ctx, q, Exec::parallel);
    auto serial = height_bound_scan(ctx, q, Exec::serial);
    auto ref = height_bound_scan_reference(ctx, q);
    CAPTURE(sys);
    CHECK(fast == serial);
    CHECK(fast == ref);
    CHECK(fast.above_one == 0);
  }
  Box off{{R("-2"), R("3/2")}};
  auto ctx = build_context({parse_polynomial("7*x1^3 - x1", 1)}, off);
  CHECK(height_bound_scan(ctx, 40) == height_bound_scan_reference(ctx, 40));
}

TEST_CASE("height histogram against direct heights") {
  auto ctx = ctx_of("x1^3 - 3*x1*x2 + 7; 2*x2^2 - x1");
  for (std::int64_t q = 1; q <= 12; ++q) {
    std::map<BigInt, std::uint64_t> expect;
    for (const auto& p : oracle::brute_primitive(ctx.box, q)) {
      std::vector<BigRat> x;
      for (auto v : p) x.emplace_back(BigInt(v), BigInt(q));
      std::vector<BigRat> img = x;
      for (const auto& poly : ctx.polys) img.push_back(poly.evaluate(x));
      expect[BigInt(oracle::brute_affine_height(img))] += 1;
    }
    std::vector<HeightCount> want;
    for (auto& [h, c] : expect) want.push_back({h, c});
    CHECK(image_height_histogram(ctx, q) == want);
  }
}

TEST_CASE("off-manifold check") {
  auto parab = ctx_of("x1^2");
  auto psi3 = ApproxFunction::power(3);
  OffManifoldOptions opt;
  opt.d_min = 3;
  opt.d_max = 50;
  auto rep = off_manifold_check(parab, psi3, opt);
  CHECK(rep.findings.empty());
  CHECK_THROWS_AS(off_manifold_check(parab, ApproxFunction::power(1)), PreconditionError);
  CHECK_THROWS_AS(off_manifold_check(parab, ApproxFunction::power(2)), PreconditionError);
  CHECK_NOTHROW(off_manifold_check(parab, ApproxFunction::power_log(1, 2, 1), opt));

  // On-graph points are never classified as violations.
  CHECK(classify_distance(parab, RatVec::parse("1/2, 1/4"), {R("1/1000"), R("1/1000")}) == Placement::inside);
  CHECK(classify_distance(parab, RatVec::parse("1/2, 1/2"), {R("1/8"), R("1/8")}) == Placement::inside);
  CHECK(classify_distance(parab, RatVec::parse("1/2, 1/2"), {R("1/100"), R("1/100")}) == Placement::outside);
}

TEST_CASE("off-manifold findings match an exact parabola oracle for small heights") {
  // dist((a, b), {(x, x^2) : x in [0,1]}) <= r iff [a-r, a+r] and [0,1] share a
  // point x with b - r <= x^2 <= b + r.
  auto within = [](const BigRat& a, const BigRat& b, const BigRat& r) {
    BigRat lo = max(a - r, BigRat(0));
    BigRat hi = min(a + r, BigRat(1));
    if (lo > hi || b + r < BigRat(0)) return false;
    return lo * lo <= b + r && max(b - r, BigRat(0)) <= hi * hi;
  };
  auto parab = ctx_of("x1^2");
  OffManifoldOptions opt;
  opt.d_max = 9;
  auto rep = off_manifold_check(parab, ApproxFunction::power(3), opt, Exec::serial);
  std::set<std::pair<std::string, int>> reported;
  for (const auto& f : rep.findings) reported.insert({f.r.str(), static_cast<int>(f.placement)});

  std::size_t expected = 0;
  for (std::int64_t D = 1; D <= 9; ++D) {
    BigRat rad = BigRat(BigInt(1), BigInt(D).pow(3));
    for (std::int64_t a = -3 * D; a <= 4 * D; ++a)
      for (std::int64_t b = -3 * D; b <= 4 * D; ++b) {
        if (std::gcd(std::gcd(a, b), D) != 1) continue;
        BigRat x{BigInt(a), BigInt(D)};
        BigRat y{BigInt(b), BigInt(D)};
        if (x * x == y) continue;
        bool in = within(x, y, rad);
        std::string key = RatVec({x, y}).str();
        bool inside = reported.count({key, static_cast<int>(Placement::inside)}) > 0;
        bool uncertain = reported.count({key, static_cast<int>(Placement::uncertain)}) > 0;
        CAPTURE(key);
        if (in) {
          ++expected;
          CHECK((inside || uncertain));
        } else {
          CHECK_FALSE(inside);
        }
      }
  }
  CHECK(expected > 0);
  CHECK(rep.findings.size() >= expected);
}
