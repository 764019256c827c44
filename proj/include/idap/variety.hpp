#pragma once

// The graph Gamma = {(x, P_1(x), ..., P_m(x))}, its maps F and F*, rational
// point enumeration on a box, image heights and the off-manifold search.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idap/asymptotics.hpp"
#include "idap/exact.hpp"
#include "idap/groebner.hpp"
#include "idap/mpoly.hpp"

namespace idap {

enum class Exec { serial, parallel };

namespace detail {
struct CompiledSystem;
}

/// Product of closed rational intervals.
using Box = std::vector<RatInterval>;

Box unit_box(std::size_t n);
bool box_contains(const Box& box, std::span<const BigRat> x);

/// Interval enclosure of p over the box (naive monomial-wise evaluation).
RatInterval enclose(const MPoly& p, const Box& box);

struct VarietyContext {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<MPoly> polys;
  std::vector<unsigned> degrees;
  unsigned d = 0;
  Box box;
  BigRat lipschitz{1};
  MorphismCertificate morphism;
  std::vector<MPoly> homogenized;  // P_j^* of degree d, X0 last
  std::vector<MPoly> top_forms;    // P_{j,d}
  std::shared_ptr<const detail::CompiledSystem> kernel;  // machine-integer copy of P_j^*
};

/// Throws std::invalid_argument for an empty or constant system, mismatched
/// variable counts, non-integer coefficients or an inverted box.
VarietyContext build_context(std::vector<MPoly> polys, std::optional<Box> box = std::nullopt);

struct Evaluated {
  RatVec point;
  bool outside_box = false;
};

/// F(x) = (x, P_1(x), ..., P_m(x)). Points outside the box are evaluated and
/// flagged.
Evaluated apply_F(const VarietyContext& ctx, const RatVec& x);

/// F*(X0 : ... : Xn) = (X0^d : X0^{d-1} X1 : ... : P_1^* : ... : P_m^*).
/// Throws PreconditionError when every coordinate vanishes.
ProjPoint apply_Fstar(const VarietyContext& ctx, const ProjPoint& p);

/// p / q with gcd(p_1, ..., p_n, q) = 1.
struct PrimitivePoint {
  std::vector<BigInt> p;
  BigInt q;

  RatVec value() const;
  friend bool operator==(const PrimitivePoint&, const PrimitivePoint&) = default;
};

/// Calls `visit` for every primitive point in the box with denominator q,
/// numerators in lexicographic order.
void for_each_primitive(const Box& box, std::int64_t q, const std::function<void(const PrimitivePoint&)>& visit);

/// All primitive points with q_lo <= q <= q_hi, q ascending then lex p.
std::vector<PrimitivePoint> enumerate_primitive(const VarietyContext& ctx, std::int64_t q_lo, std::int64_t q_hi);

struct QRow {
  std::int64_t q = 0;
  std::uint64_t count = 0;
  BigRat min_ratio;
  BigRat max_ratio;
  friend bool operator==(const QRow&, const QRow&) = default;
};

/// Ratios H(F(p/q)) / q^d over all primitive points with q <= q_max.
struct HeightBoundReport {
  std::int64_t q_max = 0;
  std::vector<QRow> rows;  // only q with at least one point
  std::uint64_t count = 0;
  BigRat delta_hat;  // global minimum ratio
  BigRat max_ratio;
  std::uint64_t above_one = 0;  // ratios > 1; must stay 0
  bool morphism_holds = false;

  /// Minimum ratio over rows with q_lo <= q <= q_hi.
  BigRat min_ratio_in(std::int64_t q_lo, std::int64_t q_hi) const;
  friend bool operator==(const HeightBoundReport&, const HeightBoundReport&) = default;
};

/// Fast integer kernel. `Exec::parallel` splits the q range across OpenMP
/// threads; the report is identical either way.
HeightBoundReport height_bound_scan(const VarietyContext& ctx, std::int64_t q_max, Exec exec = Exec::parallel);

/// Straightforward rational reference: enumerate, apply F, take the affine
/// height. Slow; kept for cross-checking the kernel.
HeightBoundReport height_bound_scan_reference(const VarietyContext& ctx, std::int64_t q_max);

/// H(F(p/q)) via the integer route q^d / gcd(q^d, q^{d-1} p_i, P_j^*(p, q)).
BigInt image_height(const VarietyContext& ctx, const PrimitivePoint& pt);

struct HeightCount {
  BigInt height;
  std::uint64_t count = 0;
  friend bool operator==(const HeightCount&, const HeightCount&) = default;
};

/// Distinct values of H(F(p/q)) over the primitive points with denominator q,
/// ascending, with multiplicities.
std::vector<HeightCount> image_height_histogram(const VarietyContext& ctx, std::int64_t q);

enum class Placement { inside, outside, uncertain };
const char* to_string(Placement p);

struct OffManifoldFinding {
  RatVec r;
  BigInt height;
  Placement placement = Placement::uncertain;
};

struct OffManifoldOptions {
  std::int64_t d_min = 0;  // heights D with d_min < D <= d_max are searched
  std::int64_t d_max = 50;
  unsigned max_depth = 20;
  std::uint64_t node_budget = 200000;
};

struct OffManifoldReport {
  std::vector<OffManifoldFinding> findings;  // inside and uncertain only
  std::uint64_t candidates = 0;               // off-manifold points classified
  std::uint64_t outside = 0;
  std::int64_t d_min = 0;
  std::int64_t d_max = 0;
};

/// Searches rational r of height D in (d_min, d_max], not on Gamma, whose
/// sup-distance to Gamma over the box is at most psi(D). Refuses with
/// PreconditionError unless r^d psi(r) -> 0.
OffManifoldReport off_manifold_check(const VarietyContext& ctx, const ApproxFunction& psi,
                                     const OffManifoldOptions& opt = {}, Exec exec = Exec::parallel);

/// Exact classification of one point: is dist(r, Gamma over the box) <= radius?
Placement classify_distance(const VarietyContext& ctx, const RatVec& r, const RatInterval& radius,
                            unsigned max_depth = 20, std::uint64_t node_budget = 200000);

}  // namespace idap
