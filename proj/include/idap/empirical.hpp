#pragma once

// Finite-stage checks at desk scale: the two limsup covers, the tail sums of
// the convergence argument, and box-counting estimates of dimension.

#include <cstdint>
#include <optional>
#include <vector>

#include "idap/asymptotics.hpp"
#include "idap/variety.hpp"

namespace idap {

/// S1 = sum over N < q <= Q and primitive p/q of f(psi(H(F(p/q)))),
/// S2 = sum over N < q <= Q of q^n f(psi(q^d)).
struct TailSum {
  std::int64_t n_lo = 0;
  std::int64_t q_hi = 0;
  long double s1 = 0;
  long double s2 = 0;
  /// Exact values, present when psi and f are rational at rational points.
  std::optional<BigRat> s1_exact;
  std::optional<BigRat> s2_exact;
  std::uint64_t points = 0;
  /// Recorded constant C = S1 / S2 (0 for an empty range).
  long double ratio = 0;
};

TailSum tail_sum(const VarietyContext& ctx, const ApproxFunction& psi, const DimFunction& f, std::int64_t n_lo,
                 std::int64_t q_hi, Exec exec = Exec::parallel);

/// Point-by-point rational reference (apply F, affine height); serial.
TailSum tail_sum_reference(const VarietyContext& ctx, const ApproxFunction& psi, const DimFunction& f,
                           std::int64_t n_lo, std::int64_t q_hi);

enum class RadiusMode { lower, upper };
const char* to_string(RadiusMode m);

struct Ball {
  PrimitivePoint center;
  BigRat radius;
};

/// Balls centred at the primitive points with q_lo < q <= q_hi. Lower mode:
/// radius psi(q^d) / K. Upper mode: radius psi(H(F(p/q))).
struct FiniteStageCover {
  std::int64_t q_lo = 0;
  std::int64_t q_hi = 0;
  RadiusMode mode = RadiusMode::lower;
  std::vector<Ball> balls;  // q ascending, then lex p
};

FiniteStageCover build_cover(const VarietyContext& ctx, const ApproxFunction& psi, std::int64_t q_lo,
                             std::int64_t q_hi, RadiusMode mode, Exec exec = Exec::parallel);

/// Number of grid cells of side eps (anchored at the box's lower corner,
/// half-open, clipped to the box) that meet at least one ball. Exact.
std::uint64_t count_cells(const Box& box, const std::vector<Ball>& balls, const BigRat& eps,
                          Exec exec = Exec::parallel);

struct DimensionLevel {
  std::int64_t q = 0;  // stage window (q/2, q]
  BigRat eps;
  std::uint64_t balls = 0;
  std::uint64_t count = 0;
};

struct DimensionEstimate {
  BigRat tau;
  std::vector<DimensionLevel> levels;
  double slope = 0;  // least squares of log N against log(1/eps)
  double intercept = 0;
  double residual = 0;  // RMS
  BigRat predicted;     // (1 + n) / (d tau)
  bool eps_decreasing = true;
  bool count_nondecreasing = true;
};

/// Least-squares line through (x, y); returns {slope, intercept, rms}.
struct LineFit {
  double slope = 0;
  double intercept = 0;
  double rms = 0;
};
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

/// One stage per entry of q_levels. eps defaults to psi_tau(q^d) / K, the
/// smallest radius of the stage. Throws PreconditionError if the morphism
/// test failed or tau is outside the range of the dimension formula, and
/// std::invalid_argument with fewer than 3 levels.
DimensionEstimate estimate_dimension(const VarietyContext& ctx, const BigRat& tau,
                                     const std::vector<std::int64_t>& q_levels,
                                     const std::optional<std::vector<BigRat>>& eps_levels = std::nullopt,
                                     Exec exec = Exec::parallel);

}  // namespace idap
