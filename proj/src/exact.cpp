#include "idap/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace idap {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

BigInt::BigInt(std::string_view text) {
  auto t = trim(text);
  if (!is_integer_literal(t)) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  if (t[0] == '+') t.remove_prefix(1);
  v_.set_str(std::string(t), 10);
}

std::int64_t BigInt::to_int64() const {
  if (!fits_int64()) throw std::overflow_error("integer does not fit in 64 bits: " + str());
  return v_.get_si();
}

BigInt BigInt::pow(unsigned long e) const {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), v_.get_mpz_t(), e);
  return BigInt(r);
}

BigInt operator/(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("integer division by zero");
  return BigInt(mpz_class(a.v_ / b.v_));
}

BigInt operator%(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("integer division by zero");
  return BigInt(mpz_class(a.v_ % b.v_));
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigInt(r);
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigInt(r);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) throw std::domain_error("integer division by zero");
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
  return BigInt(r);
}

BigRat::BigRat(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  v_ = mpq_class(num.raw(), den.raw());
  v_.canonicalize();
}

BigRat BigRat::parse(std::string_view text) {
  auto t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    return BigRat(BigInt(t.substr(0, slash)), BigInt(t.substr(slash + 1)));
  }
  if (is_integer_literal(t)) return BigRat(BigInt(t));

  // Decimal literal: [sign] digits [. digits] [e|E [sign] digits]
  std::string_view mant = t;
  long exp10 = 0;
  if (auto e = t.find_first_of("eE"); e != std::string_view::npos) {
    auto es = t.substr(e + 1);
    if (!is_integer_literal(es)) throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
    exp10 = BigInt(es).to_int64();
    mant = t.substr(0, e);
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  bool seen_dot = false;
  bool any_digit = false;
  for (char c : mant) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any_digit = true;
      if (seen_dot) --exp10;
    } else {
      throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
  }
  if (!any_digit) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  BigRat r{BigInt(digits)};
  if (neg) r = -r;
  BigRat ten{10};
  return exp10 >= 0 ? r * ten.pow(exp10) : r / ten.pow(-exp10);
}

BigRat BigRat::from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite double");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return BigRat(q);
}

std::string BigRat::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

BigRat BigRat::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return BigRat(mpq_class(1 / v_));
}

BigRat BigRat::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  mpz_class n;
  mpz_class d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return BigRat(BigInt(n), BigInt(d));
}

BigInt BigRat::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return BigInt(r);
}

BigInt BigRat::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return BigInt(r);
}

BigRat operator/(const BigRat& a, const BigRat& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  return BigRat(mpq_class(a.v_ / b.v_));
}

BigRat min(const BigRat& a, const BigRat& b) { return b < a ? b : a; }
BigRat max(const BigRat& a, const BigRat& b) { return a < b ? b : a; }

RatVec::RatVec(std::vector<BigRat> entries) : e_(std::move(entries)) {
  if (e_.empty()) throw std::invalid_argument("RatVec must have at least one entry");
}

RatVec RatVec::parse(std::string_view text) {
  auto t = trim(text);
  if (!t.empty() && t.front() == '(' && t.back() == ')') t = trim(t.substr(1, t.size() - 2));
  std::vector<BigRat> v;
  for (auto part : split(t, ',')) v.push_back(BigRat::parse(part));
  return RatVec(std::move(v));
}

std::string RatVec::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ", ";
    s += e_[i].str();
  }
  return s + ")";
}

BigRat sup_distance(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sup_distance: length mismatch");
  BigRat best;
  for (std::size_t i = 0; i < a.size(); ++i) best = max(best, (a[i] - b[i]).abs());
  return best;
}

ProjPoint::ProjPoint(std::vector<BigInt> coords) : c_(std::move(coords)) {
  if (c_.size() < 2) throw std::invalid_argument("projective point needs at least 2 coordinates");
  BigInt g;
  for (const auto& x : c_) g = gcd(g, x);
  if (g.is_zero()) throw std::invalid_argument("projective point with all coordinates zero");
  auto first = std::find_if(c_.begin(), c_.end(), [](const BigInt& x) { return !x.is_zero(); });
  if (first->sign() < 0) g = -g;
  if (g != BigInt(1)) {
    for (auto& x : c_) x = x / g;
  }
}

ProjPoint ProjPoint::parse(std::string_view text) {
  std::vector<BigInt> c;
  auto t = trim(text);
  if (!t.empty() && t.front() == '(' && t.back() == ')') t = trim(t.substr(1, t.size() - 2));
  for (auto part : split(t, ':')) c.emplace_back(part);
  return ProjPoint(std::move(c));
}

std::string ProjPoint::str() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ':';
    s += c_[i].str();
  }
  return s;
}

BigInt affine_height(const RatVec& v) {
  BigInt d{1};
  for (const auto& x : v.entries()) d = lcm(d, x.den());
  return d;
}

ProjPoint to_projective(const RatVec& v) {
  BigInt d = affine_height(v);
  std::vector<BigInt> c;
  c.reserve(v.size() + 1);
  c.push_back(d);
  for (const auto& x : v.entries()) c.push_back(x.num() * (d / x.den()));
  return ProjPoint(std::move(c));
}

BigInt projective_height(const ProjPoint& p) {
  BigInt h;
  for (const auto& x : p.coords()) {
    auto a = x.abs();
    if (h < a) h = a;
  }
  return h;
}

}  // namespace idap
