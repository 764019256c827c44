#pragma once

// Power-log approximation and dimension functions, the hypothesis checks of
// the zero-infinity law, the series verdicts and the dimension formula.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "idap/exact.hpp"

namespace idap {

/// Closed rational interval.
struct RatInterval {
  BigRat lo;
  BigRat hi;

  bool is_point() const { return lo == hi; }
};

/// psi(r) = c * r^-tau * log(e + r)^-beta, or an explicit decreasing table.
class ApproxFunction {
 public:
  /// Throws std::invalid_argument unless c > 0 and tau >= 0.
  static ApproxFunction power_log(BigRat c, BigRat tau, BigRat beta = 0);
  static ApproxFunction power(BigRat tau) { return power_log(1, std::move(tau), 0); }
  /// Values at r = 1, 2, ...; must be positive and non-increasing.
  static ApproxFunction table(std::vector<double> values);

  bool symbolic() const { return table_.empty(); }
  const BigRat& c() const { return c_; }
  const BigRat& tau() const { return tau_; }
  const BigRat& beta() const { return beta_; }
  const std::vector<double>& table_values() const { return table_; }

  /// True when psi(r) is rational for every rational r (beta = 0, integer tau).
  bool exact_at_rationals() const;

  long double operator()(long double r) const;
  /// Exact value when exact_at_rationals(), otherwise a rigorous enclosure
  /// from 200-bit MPFR arithmetic.
  RatInterval enclose(const BigRat& r) const;
  /// Midpoint of enclose(r); exact when exact_at_rationals().
  BigRat rational_value(const BigRat& r) const;

  std::string str() const;

 private:
  BigRat c_{1};
  BigRat tau_;
  BigRat beta_;
  std::vector<double> table_;
};

/// f(r) = r^s * log(1/r)^gamma with s > 0.
class DimFunction {
 public:
  /// Throws std::invalid_argument unless s > 0.
  static DimFunction power_log(BigRat s, BigRat gamma = 0);

  const BigRat& s() const { return s_; }
  const BigRat& gamma() const { return gamma_; }
  bool exact_at_rationals() const { return gamma_.is_zero() && s_.is_integer(); }

  /// Requires 0 < r < 1 when gamma != 0.
  long double operator()(long double r) const;
  std::string str() const;

 private:
  BigRat s_{1};
  BigRat gamma_;
};

enum class Status { satisfied, violated, inconclusive };
const char* to_string(Status s);

struct Condition {
  Status status = Status::inconclusive;
  /// The parameter inequality that decided the status.
  std::string detail;
  bool eventually_only = false;
};

struct HypothesisReport {
  Condition psi_decreasing;
  Condition f_dimension_function;
  Condition f_growth;  // r^-n f(r) -> inf as r -> 0, eventually decreasing
  Condition f_doubling;
  Condition psi_compatibility;
  Condition growth_condition;  // r^d psi(r) -> 0, only needed for intrinsic = ambient
  bool degenerate_psi = false;

  /// All conditions the zero-infinity law needs are satisfied.
  bool law_applies() const;
  std::vector<std::string> failures() const;
};

HypothesisReport validate_hypotheses(const ApproxFunction& psi, const DimFunction& f, unsigned n, unsigned d);

enum class Outcome { zero, infinity, not_applicable, inconclusive };
const char* to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::inconclusive;
  /// The series term behaves like r^exponent * (log r)^log_exponent.
  BigRat exponent;
  BigRat log_exponent;
  std::string regime;  // "intrinsic", "jarnik" or "khintchine"
  HypothesisReport hypotheses;
  std::vector<std::string> reasons;
};

/// Exponents of the series sum_r r^n f(psi(r^d)) for the power-log families.
std::pair<BigRat, BigRat> series_exponents(const ApproxFunction& psi, const DimFunction& f, unsigned n,
                                           unsigned d);

/// Convergence of sum r^e (log r)^l.
bool power_log_series_converges(const BigRat& exponent, const BigRat& log_exponent);

/// Zero-infinity law for intrinsic approximation on a graph of degree d.
/// `morphism_holds` = false forces NotApplicable.
Verdict series_verdict(const ApproxFunction& psi, const DimFunction& f, unsigned n, unsigned d,
                       std::optional<bool> morphism_holds = std::nullopt);

/// Jarnik's law on R^n; f = r^n falls back to Khintchine's theorem.
Verdict classical_verdict(const ApproxFunction& psi, const DimFunction& f, unsigned n);

struct DimensionResult {
  bool applicable = false;
  BigRat s;          // (1 + n) / (d tau)
  BigRat threshold;  // (n + 1) / (n d); applicability needs tau > threshold
  bool intrinsic_equals_ambient = false;  // tau > d
  std::optional<bool> morphism_holds;
};

DimensionResult dimension_formula(unsigned n, unsigned d, const BigRat& tau,
                                  std::optional<bool> morphism_holds = std::nullopt);

}  // namespace idap
