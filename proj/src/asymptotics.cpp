#include "idap/asymptotics.hpp"

#include <mpfr.h>

#include <cmath>
#include <stdexcept>

namespace idap {

namespace {

constexpr mpfr_prec_t kPrecision = 200;
// Relative widening applied to MPFR results; far above the accumulated
// rounding error of the handful of correctly rounded operations used.
constexpr long kWideningBits = 150;

/// RAII wrapper around mpfr_t.
class Mpfr {
 public:
  Mpfr() { mpfr_init2(v_, kPrecision); }
  explicit Mpfr(const BigRat& q) : Mpfr() { mpfr_set_q(v_, q.raw().get_mpq_t(), MPFR_RNDN); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  ~Mpfr() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

std::string cond_str(const BigRat& x) { return x.str(); }

}  // namespace

ApproxFunction ApproxFunction::power_log(BigRat c, BigRat tau, BigRat beta) {
  if (c.sign() <= 0) throw std::invalid_argument("psi: constant c must be positive");
  if (tau.sign() < 0) throw std::invalid_argument("psi: exponent tau must be >= 0");
  ApproxFunction f;
  f.c_ = std::move(c);
  f.tau_ = std::move(tau);
  f.beta_ = std::move(beta);
  return f;
}

ApproxFunction ApproxFunction::table(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("psi table is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0) || !std::isfinite(values[i])) throw std::invalid_argument("psi table values must be positive");
    if (i && values[i] > values[i - 1]) throw std::invalid_argument("psi table must be non-increasing");
  }
  ApproxFunction f;
  f.table_ = std::move(values);
  return f;
}

bool ApproxFunction::exact_at_rationals() const { return symbolic() && beta_.is_zero() && tau_.is_integer(); }

long double ApproxFunction::operator()(long double r) const {
  if (!symbolic()) {
    auto idx = static_cast<std::size_t>(std::max<long double>(1.0L, std::floor(r)));
    return table_[std::min(idx, table_.size()) - 1];
  }
  long double v = static_cast<long double>(c_.to_double()) * std::pow(r, -static_cast<long double>(tau_.to_double()));
  if (!beta_.is_zero())
    v *= std::pow(std::log(std::exp(1.0L) + r), -static_cast<long double>(beta_.to_double()));
  return v;
}

RatInterval ApproxFunction::enclose(const BigRat& r) const {
  if (r.sign() <= 0) throw std::domain_error("psi evaluated at non-positive argument");
  if (!symbolic()) {
    BigRat v = BigRat::from_double(static_cast<double>((*this)(static_cast<long double>(r.to_double()))));
    return {v, v};
  }
  if (exact_at_rationals()) {
    BigRat v = c_ * r.pow(-tau_.num().to_int64());
    return {v, v};
  }
  Mpfr x(r);
  Mpfr expo;
  Mpfr tmp;
  mpfr_log(tmp.get(), x.get(), MPFR_RNDN);
  Mpfr tau(tau_);
  mpfr_mul(expo.get(), tmp.get(), tau.get(), MPFR_RNDN);
  mpfr_neg(expo.get(), expo.get(), MPFR_RNDN);
  if (!beta_.is_zero()) {
    Mpfr e;
    mpfr_set_ui(e.get(), 1, MPFR_RNDN);
    mpfr_exp(e.get(), e.get(), MPFR_RNDN);
    mpfr_add(tmp.get(), e.get(), x.get(), MPFR_RNDN);
    mpfr_log(tmp.get(), tmp.get(), MPFR_RNDN);
    mpfr_log(tmp.get(), tmp.get(), MPFR_RNDN);
    Mpfr beta(beta_);
    mpfr_mul(tmp.get(), tmp.get(), beta.get(), MPFR_RNDN);
    mpfr_sub(expo.get(), expo.get(), tmp.get(), MPFR_RNDN);
  }
  mpfr_exp(expo.get(), expo.get(), MPFR_RNDN);
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), expo.get());
  BigRat mid = c_ * BigRat(q);
  BigRat slack = mid * BigRat(BigInt(1), BigInt(2).pow(kWideningBits));
  return {mid - slack, mid + slack};
}

BigRat ApproxFunction::rational_value(const BigRat& r) const {
  auto iv = enclose(r);
  if (iv.is_point()) return iv.lo;
  return (iv.lo + iv.hi) * BigRat(BigInt(1), BigInt(2));
}

std::string ApproxFunction::str() const {
  if (!symbolic()) return "table[" + std::to_string(table_.size()) + "]";
  std::string s = c_ == BigRat(1) ? "" : c_.str() + "*";
  s += "r^-" + tau_.str();
  if (!beta_.is_zero()) s += "*log(e+r)^-" + (beta_.sign() < 0 ? "(" + beta_.str() + ")" : beta_.str());
  return s;
}

DimFunction DimFunction::power_log(BigRat s, BigRat gamma) {
  if (s.sign() <= 0) throw std::invalid_argument("f: exponent s must be positive");
  DimFunction f;
  f.s_ = std::move(s);
  f.gamma_ = std::move(gamma);
  return f;
}

long double DimFunction::operator()(long double r) const {
  long double v = std::pow(r, static_cast<long double>(s_.to_double()));
  if (!gamma_.is_zero()) {
    if (!(r > 0 && r < 1)) throw std::domain_error("f with a log factor needs 0 < r < 1");
    v *= std::pow(std::log(1.0L / r), static_cast<long double>(gamma_.to_double()));
  }
  return v;
}

std::string DimFunction::str() const {
  std::string s = "r^" + s_.str();
  if (!gamma_.is_zero()) s += "*log(1/r)^" + (gamma_.sign() < 0 ? "(" + gamma_.str() + ")" : gamma_.str());
  return s;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::satisfied: return "satisfied";
    case Status::violated: return "violated";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::zero: return "zero";
    case Outcome::infinity: return "infinity";
    case Outcome::not_applicable: return "not_applicable";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "?";
}

bool HypothesisReport::law_applies() const {
  for (const Condition* c : {&psi_decreasing, &f_dimension_function, &f_growth, &f_doubling, &psi_compatibility})
    if (c->status != Status::satisfied) return false;
  return true;
}

std::vector<std::string> HypothesisReport::failures() const {
  std::vector<std::string> out;
  const std::pair<const char*, const Condition*> all[] = {
      {"psi_decreasing", &psi_decreasing},   {"f_dimension_function", &f_dimension_function},
      {"f_growth", &f_growth},               {"f_doubling", &f_doubling},
      {"psi_compatibility", &psi_compatibility}};
  for (const auto& [name, c] : all)
    if (c->status != Status::satisfied) out.push_back(std::string(name) + " " + to_string(c->status) + ": " + c->detail);
  return out;
}

HypothesisReport validate_hypotheses(const ApproxFunction& psi, const DimFunction& f, unsigned n, unsigned d) {
  HypothesisReport h;
  const BigRat& s = f.s();
  const BigRat& gamma = f.gamma();

  if (!psi.symbolic()) {
    h.psi_decreasing = {Status::satisfied, "table is non-increasing"};
    h.psi_compatibility = {Status::inconclusive, "table-backed psi has no symbolic form"};
    h.growth_condition = {Status::inconclusive, "table-backed psi has no symbolic form"};
  } else {
    const BigRat& tau = psi.tau();
    const BigRat& beta = psi.beta();
    if (tau.sign() > 0) {
      h.psi_decreasing = {Status::satisfied, "tau = " + cond_str(tau) + " > 0", beta.sign() < 0};
    } else if (beta.sign() > 0) {
      h.psi_decreasing = {Status::satisfied, "tau = 0 and beta = " + cond_str(beta) + " > 0"};
    } else if (beta.is_zero()) {
      h.psi_decreasing = {Status::satisfied, "tau = 0 and beta = 0: psi is constant (weakly decreasing)"};
      h.degenerate_psi = true;
    } else {
      h.psi_decreasing = {Status::violated, "tau = 0 and beta = " + cond_str(beta) + " < 0: psi increases"};
    }
    h.psi_compatibility = {Status::satisfied, "power-log psi: f(psi(delta r)) / f(psi(r)) -> delta^(-tau s)"};

    BigRat dd{static_cast<long>(d)};
    if (tau > dd) {
      h.growth_condition = {Status::satisfied, "tau = " + cond_str(tau) + " > d = " + std::to_string(d)};
    } else if (tau == dd && beta.sign() > 0) {
      h.growth_condition = {Status::satisfied, "tau = d and beta = " + cond_str(beta) + " > 0"};
    } else {
      h.growth_condition = {Status::violated, "needs tau > d = " + std::to_string(d) + ", or tau = d with beta > 0; got tau = " +
                                                  cond_str(tau) + ", beta = " + cond_str(beta)};
    }
  }

  h.f_dimension_function = {Status::satisfied, "s = " + cond_str(s) + " > 0", !gamma.is_zero()};

  BigRat nn{static_cast<long>(n)};
  if (s < nn) {
    h.f_growth = {Status::satisfied, "s = " + cond_str(s) + " < n = " + std::to_string(n), !gamma.is_zero()};
  } else if (s == nn && gamma.sign() > 0) {
    h.f_growth = {Status::satisfied, "s = n and gamma = " + cond_str(gamma) + " > 0", true};
  } else {
    h.f_growth = {Status::violated, "r^-n f(r) does not tend to infinity: needs s < n = " + std::to_string(n) +
                                        ", or s = n with gamma > 0; got s = " + cond_str(s) + ", gamma = " +
                                        cond_str(gamma)};
  }

  h.f_doubling = {Status::satisfied, "power-log f: f(Cx) / f(x) -> C^s"};
  return h;
}

std::pair<BigRat, BigRat> series_exponents(const ApproxFunction& psi, const DimFunction& f, unsigned n,
                                           unsigned d) {
  if (!psi.symbolic()) throw std::invalid_argument("series_exponents needs a symbolic psi");
  BigRat exponent = BigRat(static_cast<long>(n)) - BigRat(static_cast<long>(d)) * psi.tau() * f.s();
  // log(1/psi(r^d)) ~ d tau log r only when tau > 0; with tau = 0 the gamma
  // factor is a power of log log r and cannot move the verdict (exponent = n).
  BigRat log_exponent = -psi.beta() * f.s();
  if (psi.tau().sign() > 0) log_exponent += f.gamma();
  return {exponent, log_exponent};
}

bool power_log_series_converges(const BigRat& exponent, const BigRat& log_exponent) {
  const BigRat minus_one{-1};
  return exponent < minus_one || (exponent == minus_one && log_exponent < minus_one);
}

namespace {

Verdict decide(const ApproxFunction& psi, const DimFunction& f, unsigned n, unsigned d, Verdict v) {
  auto [e, l] = series_exponents(psi, f, n, d);
  v.exponent = e;
  v.log_exponent = l;
  v.outcome = power_log_series_converges(e, l) ? Outcome::zero : Outcome::infinity;
  return v;
}

}  // namespace

Verdict series_verdict(const ApproxFunction& psi, const DimFunction& f, unsigned n, unsigned d,
                       std::optional<bool> morphism_holds) {
  if (n == 0 || d == 0) throw std::invalid_argument("series_verdict needs n >= 1 and d >= 1");
  Verdict v;
  v.regime = "intrinsic";
  v.hypotheses = validate_hypotheses(psi, f, n, d);
  if (!psi.symbolic()) {
    v.outcome = Outcome::inconclusive;
    v.reasons.push_back("table-backed psi: no symbolic series test");
    return v;
  }
  if (morphism_holds.has_value() && !*morphism_holds) {
    v.reasons.push_back("top-degree forms have a common nontrivial zero: F* is not a morphism");
  }
  for (auto& r : v.hypotheses.failures()) v.reasons.push_back(std::move(r));
  if (!v.reasons.empty()) {
    auto [e, l] = series_exponents(psi, f, n, d);
    v.exponent = e;
    v.log_exponent = l;
    v.outcome = Outcome::not_applicable;
    return v;
  }
  return decide(psi, f, n, d, std::move(v));
}

Verdict classical_verdict(const ApproxFunction& psi, const DimFunction& f, unsigned n) {
  if (n == 0) throw std::invalid_argument("classical_verdict needs n >= 1");
  Verdict v;
  v.hypotheses = validate_hypotheses(psi, f, n, 1);
  const bool khintchine = f.s() == BigRat(static_cast<long>(n)) && f.gamma().is_zero();
  v.regime = khintchine ? "khintchine" : "jarnik";
  if (!psi.symbolic()) {
    v.outcome = Outcome::inconclusive;
    v.reasons.push_back("table-backed psi: no symbolic series test");
    return v;
  }
  const auto& h = v.hypotheses;
  if (h.psi_decreasing.status != Status::satisfied) v.reasons.push_back("psi_decreasing: " + h.psi_decreasing.detail);
  if (!khintchine && h.f_growth.status != Status::satisfied) v.reasons.push_back("f_growth: " + h.f_growth.detail);
  if (!v.reasons.empty()) {
    v.outcome = Outcome::not_applicable;
    return v;
  }
  return decide(psi, f, n, 1, std::move(v));
}

DimensionResult dimension_formula(unsigned n, unsigned d, const BigRat& tau, std::optional<bool> morphism_holds) {
  if (n == 0 || d == 0) throw std::invalid_argument("dimension_formula needs n >= 1 and d >= 1");
  if (tau.sign() <= 0) throw std::invalid_argument("dimension_formula needs tau > 0");
  DimensionResult r;
  BigRat nn{static_cast<long>(n)};
  BigRat dd{static_cast<long>(d)};
  r.threshold = (nn + 1) / (nn * dd);
  r.applicable = tau > r.threshold;
  r.s = (nn + 1) / (dd * tau);
  r.intrinsic_equals_ambient = tau > dd;
  r.morphism_holds = morphism_holds;
  return r;
}

}  // namespace idap
