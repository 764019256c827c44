#include "idap/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace idap {

const char* to_string(MonOrder o) { return o == MonOrder::lex ? "lex" : "degrevlex"; }

MonOrder parse_mon_order(std::string_view name) {
  if (name == "degrevlex" || name == "grevlex") return MonOrder::degrevlex;
  if (name == "lex") return MonOrder::lex;
  throw std::invalid_argument("unknown monomial order '" + std::string(name) + "'");
}

unsigned Monomial::degree() const { return std::accumulate(e_.begin(), e_.end(), 0U); }

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > other.e_[i]) return false;
  return true;
}

int Monomial::pure_power_var() const {
  int var = -1;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] == 0) continue;
    if (var >= 0) return -1;
    var = static_cast<int>(i);
  }
  return var;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.e_.size(); ++i) {
    if (b.e_[i] > r.e_[i]) throw std::logic_error("monomial not divisible");
    r.e_[i] -= b.e_[i];
  }
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::max(r.e_[i], b.e_[i]);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.e_.size(); ++i)
    if (a.e_[i] && b.e_[i]) return false;
  return true;
}

int compare(const Monomial& a, const Monomial& b, MonOrder order) {
  const std::size_t n = a.nvars();
  if (order == MonOrder::lex) {
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    return 0;
  }
  unsigned da = a.degree();
  unsigned db = b.degree();
  if (da != db) return da > db ? 1 : -1;
  // Tie: the smaller exponent in the last differing variable wins.
  for (std::size_t i = n; i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

MPoly MPoly::constant(std::size_t nvars, const BigRat& c) {
  MPoly p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t slot) {
  if (slot >= nvars) throw std::out_of_range("variable slot out of range");
  Monomial m(nvars);
  m[slot] = 1;
  MPoly p(nvars);
  p.add_term(m, 1);
  return p;
}

MPoly MPoly::monomial(const Monomial& m, const BigRat& c, bool homogenized) {
  MPoly p(m.nvars(), homogenized);
  p.add_term(m, c);
  return p;
}

void MPoly::add_term(const Monomial& m, const BigRat& c) {
  if (m.nvars() != nvars_) throw std::invalid_argument("monomial has wrong number of variables");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int MPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.degree()));
  return d;
}

bool MPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  unsigned d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
}

bool MPoly::has_integer_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_integer(); });
}

BigRat MPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigRat() : it->second;
}

std::vector<Term> MPoly::sorted_terms(MonOrder order) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.push_back({m, c});
  std::sort(out.begin(), out.end(),
            [order](const Term& a, const Term& b) { return compare(a.mono, b.mono, order) > 0; });
  return out;
}

Term MPoly::leading_term(MonOrder order) const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(best); it != terms_.end(); ++it)
    if (compare(it->first, best->first, order) > 0) best = it;
  return {best->first, best->second};
}

void MPoly::check_compatible(const MPoly& o) const {
  if (nvars_ != o.nvars_ || homog_ != o.homog_)
    throw std::invalid_argument("polynomials live in different rings (" + std::to_string(nvars_) + " vs " +
                                std::to_string(o.nvars_) + " variables)");
}

MPoly MPoly::operator-() const { return scaled(-1); }

MPoly operator+(const MPoly& a, const MPoly& b) {
  a.check_compatible(b);
  MPoly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
  a.check_compatible(b);
  MPoly r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
  return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_compatible(b);
  MPoly r(a.nvars_, a.homog_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MPoly MPoly::scaled(const BigRat& c) const {
  MPoly r(nvars_, homog_);
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, k * c);
  return r;
}

MPoly MPoly::times_monomial(const Monomial& mono, const BigRat& c) const {
  MPoly r(nvars_, homog_);
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m * mono, k * c);
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r = constant(nvars_, 1);
  r.homog_ = homog_;
  MPoly base = *this;
  while (e) {
    if (e & 1U) r = r * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return r;
}

BigRat MPoly::evaluate(std::span<const BigRat> x) const {
  if (x.size() != nvars_)
    throw std::invalid_argument("evaluate: expected " + std::to_string(nvars_) + " values, got " +
                                std::to_string(x.size()));
  BigRat sum;
  for (const auto& [m, c] : terms_) {
    BigRat t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i]) t *= x[i].pow(m[i]);
    sum += t;
  }
  return sum;
}

BigInt MPoly::evaluate_integer(std::span<const BigInt> x) const {
  if (x.size() != nvars_) throw std::invalid_argument("evaluate_integer: arity mismatch");
  BigInt sum;
  for (const auto& [m, c] : terms_) {
    if (!c.is_integer()) throw std::invalid_argument("evaluate_integer: non-integer coefficient");
    BigInt t = c.num();
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i]) t *= x[i].pow(m[i]);
    sum += t;
  }
  return sum;
}

std::string MPoly::var_name(std::size_t slot) const {
  if (homog_ && slot + 1 == nvars_) return "x0";
  return "x" + std::to_string(slot + 1);
}

std::string MPoly::str(MonOrder order) const {
  if (terms_.empty()) return "0";
  // Factor print order: x0 first, then x1..xn.
  std::vector<std::size_t> slots(nvars_);
  std::iota(slots.begin(), slots.end(), 0);
  if (homog_ && nvars_ > 0) std::rotate(slots.begin(), slots.end() - 1, slots.end());

  std::string out;
  bool first = true;
  for (const auto& [m, c] : sorted_terms(order)) {
    BigRat a = c.abs();
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;

    std::string mono;
    for (std::size_t s : slots) {
      if (!m[s]) continue;
      if (!mono.empty()) mono += "*";
      mono += var_name(s);
      if (m[s] > 1) mono += "^" + std::to_string(m[s]);
    }
    if (mono.empty()) {
      out += a.str();
    } else if (a == BigRat(1)) {
      out += mono;
    } else {
      out += a.str() + "*" + mono;
    }
  }
  return out;
}

std::vector<MPoly> homogeneous_parts(const MPoly& p, unsigned d) {
  if (p.degree() > static_cast<int>(d))
    throw std::invalid_argument("homogeneous_parts: degree " + std::to_string(p.degree()) + " exceeds " +
                                std::to_string(d));
  std::vector<MPoly> parts(d + 1, MPoly(p.nvars(), p.homogenized()));
  for (const auto& [m, c] : p.terms()) parts[m.degree()].add_term(m, c);
  return parts;
}

MPoly homogenize(const MPoly& p, unsigned d) {
  if (p.homogenized()) throw std::invalid_argument("homogenize: polynomial is already homogenized");
  if (p.degree() > static_cast<int>(d))
    throw std::invalid_argument("homogenize: degree " + std::to_string(p.degree()) + " exceeds " +
                                std::to_string(d));
  const std::size_t n = p.nvars();
  MPoly r(n + 1, true);
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::uint32_t> e = m.exps();
    e.push_back(d - m.degree());
    r.add_term(Monomial(std::move(e)), c);
  }
  return r;
}

MPoly dehomogenize(const MPoly& p) {
  if (!p.homogenized()) throw std::invalid_argument("dehomogenize: polynomial has no x0");
  const std::size_t n = p.nvars() - 1;
  MPoly r(n);
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::uint32_t> e(m.exps().begin(), m.exps().end() - 1);
    r.add_term(Monomial(std::move(e)), c);
  }
  return r;
}

}  // namespace idap
