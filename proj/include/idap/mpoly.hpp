#pragma once

// Sparse multivariate polynomials over Q.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "idap/exact.hpp"

namespace idap {

enum class MonOrder { degrevlex, lex };

const char* to_string(MonOrder o);
MonOrder parse_mon_order(std::string_view name);

/// Exponent vector; one entry per variable, in precedence order
/// (slot 0 is the highest variable).
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : e_(std::move(exps)) {}

  std::size_t nvars() const { return e_.size(); }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t& operator[](std::size_t i) { return e_[i]; }
  const std::vector<std::uint32_t>& exps() const { return e_; }

  unsigned degree() const;
  bool is_one() const { return degree() == 0; }
  bool divides(const Monomial& other) const;
  /// Index of the only variable with a positive exponent, or -1.
  int pure_power_var() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Exact quotient; a must be divisible by b.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.e_ < b.e_; }

 private:
  std::vector<std::uint32_t> e_;
};

/// Three-way comparison of monomials under a term order.
int compare(const Monomial& a, const Monomial& b, MonOrder order);

struct Term {
  Monomial mono;
  BigRat coef;
};

/// Polynomial over Q in `nvars` variables. Variables print as x1..xn; a
/// homogenized polynomial carries one extra, lowest-precedence variable x0.
class MPoly {
 public:
  using TermMap = std::map<Monomial, BigRat>;

  MPoly() = default;
  explicit MPoly(std::size_t nvars, bool homogenized = false) : nvars_(nvars), homog_(homogenized) {}

  static MPoly constant(std::size_t nvars, const BigRat& c);
  /// x_{i+1} for slot i.
  static MPoly variable(std::size_t nvars, std::size_t slot);
  static MPoly monomial(const Monomial& m, const BigRat& c, bool homogenized = false);

  std::size_t nvars() const { return nvars_; }
  bool homogenized() const { return homog_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * m in place; drops the term if it cancels.
  void add_term(const Monomial& m, const BigRat& c);

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  bool has_integer_coefficients() const;
  BigRat coefficient(const Monomial& m) const;

  /// Terms in descending order.
  std::vector<Term> sorted_terms(MonOrder order = MonOrder::degrevlex) const;
  Term leading_term(MonOrder order) const;

  MPoly operator-() const;
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly scaled(const BigRat& c) const;
  MPoly times_monomial(const Monomial& m, const BigRat& c) const;
  MPoly pow(unsigned e) const;

  BigRat evaluate(std::span<const BigRat> x) const;
  BigRat evaluate(const RatVec& x) const { return evaluate(x.entries()); }
  /// Integer evaluation; requires integer coefficients.
  BigInt evaluate_integer(std::span<const BigInt> x) const;

  /// Canonical text, terms descending under `order`, e.g. "x1^2 - x2 + 3".
  std::string str(MonOrder order = MonOrder::degrevlex) const;
  std::string var_name(std::size_t slot) const;

  friend bool operator==(const MPoly&, const MPoly&) = default;

 private:
  void check_compatible(const MPoly& o) const;

  std::size_t nvars_ = 0;
  bool homog_ = false;
  TermMap terms_;
};

/// Parts P_0..P_d where P_k collects the total-degree-k terms. Throws if
/// deg(p) > d.
std::vector<MPoly> homogeneous_parts(const MPoly& p, unsigned d);

/// X0^d P_0 + X0^{d-1} P_1 + ... + P_d, with X0 appended as the last slot.
MPoly homogenize(const MPoly& p, unsigned d);

/// Substitutes X0 = 1 in a homogenized polynomial.
MPoly dehomogenize(const MPoly& p);

}  // namespace idap
