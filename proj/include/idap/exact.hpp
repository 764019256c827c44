#pragma once

// Exact integer and rational arithmetic, rational vectors, projective points
// and the two height functions on them.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace idap {

class BigRat;

/// Arbitrary-precision signed integer. Zero is canonical (GMP never stores -0).
class BigInt {
 public:
  BigInt() = default;
  BigInt(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  BigInt(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  explicit BigInt(const mpz_class& v) : v_(v) {}
  explicit BigInt(std::string_view text);

  const mpz_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool fits_int64() const { return v_.fits_slong_p(); }
  std::int64_t to_int64() const;
  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }

  BigInt abs() const { return BigInt(mpz_class(::abs(v_))); }
  BigInt pow(unsigned long e) const;

  friend BigInt operator+(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ + b.v_)); }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ - b.v_)); }
  friend BigInt operator*(const BigInt& a, const BigInt& b) { return BigInt(mpz_class(a.v_ * b.v_)); }
  /// Truncating division; throws on zero divisor.
  friend BigInt operator/(const BigInt& a, const BigInt& b);
  friend BigInt operator%(const BigInt& a, const BigInt& b);
  BigInt operator-() const { return BigInt(mpz_class(-v_)); }
  BigInt& operator+=(const BigInt& o) { v_ += o.v_; return *this; }
  BigInt& operator-=(const BigInt& o) { v_ -= o.v_; return *this; }
  BigInt& operator*=(const BigInt& o) { v_ *= o.v_; return *this; }

  friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigInt& a) { return os << a.v_.get_str(); }

 private:
  mpz_class v_;
};

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);
/// Floor division, for a rounding-stable grid index.
BigInt floor_div(const BigInt& a, const BigInt& b);

/// Rational number kept in lowest terms with a positive denominator.
class BigRat {
 public:
  BigRat() = default;
  BigRat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  BigRat(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  BigRat(const BigInt& v) : v_(v.raw()) {}  // NOLINT(google-explicit-constructor)
  BigRat(const BigInt& num, const BigInt& den);
  explicit BigRat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  /// Accepts "a", "a/b", and finite decimals such as "-0.125" or "1e-3".
  static BigRat parse(std::string_view text);
  /// Exact value of a finite double.
  static BigRat from_double(double x);

  const mpq_class& raw() const { return v_; }
  BigInt num() const { return BigInt(mpz_class(v_.get_num())); }
  BigInt den() const { return BigInt(mpz_class(v_.get_den())); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }
  /// "num/den", or "num" when the denominator is 1.
  std::string str() const;

  BigRat abs() const { return BigRat(mpq_class(::abs(v_))); }
  BigRat inverse() const;
  BigRat pow(long e) const;
  BigInt floor() const;
  BigInt ceil() const;

  friend BigRat operator+(const BigRat& a, const BigRat& b) { return BigRat(mpq_class(a.v_ + b.v_)); }
  friend BigRat operator-(const BigRat& a, const BigRat& b) { return BigRat(mpq_class(a.v_ - b.v_)); }
  friend BigRat operator*(const BigRat& a, const BigRat& b) { return BigRat(mpq_class(a.v_ * b.v_)); }
  friend BigRat operator/(const BigRat& a, const BigRat& b);
  BigRat operator-() const { return BigRat(mpq_class(-v_)); }
  BigRat& operator+=(const BigRat& o) { v_ += o.v_; return *this; }
  BigRat& operator-=(const BigRat& o) { v_ -= o.v_; return *this; }
  BigRat& operator*=(const BigRat& o) { v_ *= o.v_; return *this; }

  friend bool operator==(const BigRat& a, const BigRat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const BigRat& a, const BigRat& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRat& a) { return os << a.str(); }

 private:
  mpq_class v_;
};

BigRat min(const BigRat& a, const BigRat& b);
BigRat max(const BigRat& a, const BigRat& b);

/// Fixed-length vector of rationals.
class RatVec {
 public:
  explicit RatVec(std::vector<BigRat> entries);
  RatVec(std::initializer_list<BigRat> entries) : RatVec(std::vector<BigRat>(entries)) {}

  /// Parses a comma separated list, e.g. "1/2, 0, 3".
  static RatVec parse(std::string_view text);

  std::size_t size() const { return e_.size(); }
  const BigRat& operator[](std::size_t i) const { return e_[i]; }
  std::span<const BigRat> entries() const { return e_; }
  std::string str() const;

  friend bool operator==(const RatVec&, const RatVec&) = default;

 private:
  std::vector<BigRat> e_;
};

/// Sup-norm distance.
BigRat sup_distance(const RatVec& a, const RatVec& b);

/// Point of projective space over Q in its canonical integer form:
/// coordinates with gcd 1 and the first nonzero coordinate positive.
class ProjPoint {
 public:
  /// Canonicalizes the given coordinates. Throws if all are zero.
  explicit ProjPoint(std::vector<BigInt> coords);

  static ProjPoint parse(std::string_view text);

  std::size_t size() const { return c_.size(); }
  const BigInt& operator[](std::size_t i) const { return c_[i]; }
  std::span<const BigInt> coords() const { return c_; }
  /// Colon separated, e.g. "6:4:3".
  std::string str() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  std::vector<BigInt> c_;
};

/// The least D >= 1 with v = r/D and gcd(r_1, ..., r_k, D) = 1, i.e. the
/// lcm of the reduced denominators.
BigInt affine_height(const RatVec& v);

/// (1 : v_1 : ... : v_k) with denominators cleared.
ProjPoint to_projective(const RatVec& v);

/// Max absolute coordinate of the canonical representative.
BigInt projective_height(const ProjPoint& p);

}  // namespace idap
