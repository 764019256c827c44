#include "idap/report.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace idap {

std::string decimal(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", kFloatDigits, x);
  return buf;
}

json to_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v.entries()) a.push_back(x.str());
  return a;
}

json to_json(const Box& box) {
  json a = json::array();
  for (const auto& iv : box) a.push_back({iv.lo.str(), iv.hi.str()});
  return a;
}

json to_json(const MorphismCertificate& c) {
  json j;
  j["holds"] = c.holds;
  j["degree"] = c.degree;
  j["order"] = to_string(c.basis.order);
  json basis = json::array();
  for (const auto& g : c.basis.gens) basis.push_back(g.str(c.basis.order));
  j["basis"] = basis;
  if (c.holds) {
    json w = json::array();
    for (const auto& pw : c.witnesses)
      w.push_back({{"variable", "x" + std::to_string(pw.var + 1)},
                   {"leading", MPoly::monomial(pw.leading, BigRat(1)).str()}});
    j["witnesses"] = w;
  } else {
    json miss = json::array();
    for (auto v : c.missing_variables) miss.push_back("x" + std::to_string(v + 1));
    j["missing_variables"] = miss;
  }
  return j;
}

json to_json(const HeightBoundReport& r) {
  json j;
  j["q_max"] = r.q_max;
  j["count"] = r.count;
  j["delta_hat"] = r.delta_hat.str();
  j["max_ratio"] = r.max_ratio.str();
  j["above_one"] = r.above_one;
  j["morphism_holds"] = r.morphism_holds;
  if (!r.morphism_holds) j["advisory"] = "morphism condition fails; the lower bound is not guaranteed";
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"q", row.q}, {"count", row.count}, {"min_ratio", row.min_ratio.str()},
                    {"max_ratio", row.max_ratio.str()}});
  j["rows"] = rows;
  return j;
}

json to_json(const Condition& c) {
  return {{"status", to_string(c.status)}, {"detail", c.detail}, {"eventually_only", c.eventually_only}};
}

json to_json(const HypothesisReport& h) {
  return {{"psi_decreasing", to_json(h.psi_decreasing)},
          {"f_dimension_function", to_json(h.f_dimension_function)},
          {"f_growth", to_json(h.f_growth)},
          {"f_doubling", to_json(h.f_doubling)},
          {"psi_compatibility", to_json(h.psi_compatibility)},
          {"growth_condition", to_json(h.growth_condition)},
          {"degenerate_psi", h.degenerate_psi}};
}

json to_json(const Verdict& v) {
  return {{"outcome", to_string(v.outcome)}, {"exponent", v.exponent.str()},
          {"log_exponent", v.log_exponent.str()}, {"regime", v.regime},
          {"hypotheses", to_json(v.hypotheses)},     {"reasons", v.reasons}};
}

json to_json(const DimensionResult& r) {
  json j{{"s", r.s.str()},
         {"applicable", r.applicable},
         {"threshold", r.threshold.str()},
         {"intrinsic_equals_ambient", r.intrinsic_equals_ambient}};
  j["morphism_holds"] = r.morphism_holds ? json(*r.morphism_holds) : json(nullptr);
  return j;
}

json to_json(const DimensionEstimate& e) {
  json levels = json::array();
  for (std::size_t i = 0; i < e.levels.size(); ++i) {
    const auto& l = e.levels[i];
    levels.push_back({{"level", i}, {"q", l.q}, {"eps", l.eps.str()}, {"balls", l.balls}, {"count", l.count}});
  }
  return {{"tau", e.tau.str()},
          {"slope", decimal(e.slope)},
          {"intercept", decimal(e.intercept)},
          {"residual", decimal(e.residual)},
          {"predicted", e.predicted.str()},
          {"predicted_decimal", decimal(e.predicted.to_double())},
          {"eps_decreasing", e.eps_decreasing},
          {"count_nondecreasing", e.count_nondecreasing},
          {"float_digits", kFloatDigits},
          {"levels", levels}};
}

json to_json(const TailSum& t) {
  json j{{"n", t.n_lo},        {"q", t.q_hi},          {"points", t.points},
         {"s1", decimal(t.s1)}, {"s2", decimal(t.s2)}, {"ratio", decimal(t.ratio)},
         {"s1_le_s2", t.s1 <= t.s2}, {"float_digits", kFloatDigits}};
  j["s1_exact"] = t.s1_exact ? json(t.s1_exact->str()) : json(nullptr);
  j["s2_exact"] = t.s2_exact ? json(t.s2_exact->str()) : json(nullptr);
  return j;
}

json to_json(const OffManifoldReport& r) {
  json f = json::array();
  for (const auto& x : r.findings)
    f.push_back({{"r", to_json(x.r)}, {"height", x.height.str()}, {"placement", to_string(x.placement)}});
  return {{"d_min", r.d_min},     {"d_max", r.d_max}, {"candidates", r.candidates},
          {"outside", r.outside}, {"violations", f},  {"clean", r.findings.empty()}};
}

json to_json(const FiniteStageCover& c, bool with_balls) {
  json j{{"q_lo", c.q_lo}, {"q_hi", c.q_hi}, {"mode", to_string(c.mode)}, {"balls", c.balls.size()}};
  if (!c.balls.empty()) {
    BigRat lo = c.balls.front().radius;
    BigRat hi = lo;
    for (const auto& b : c.balls) {
      lo = min(lo, b.radius);
      hi = max(hi, b.radius);
    }
    j["min_radius"] = lo.str();
    j["max_radius"] = hi.str();
  }
  if (with_balls) {
    json a = json::array();
    for (const auto& b : c.balls) a.push_back({{"center", to_json(b.center.value())}, {"radius", b.radius.str()}});
    j["ball_list"] = a;
  }
  return j;
}

json to_json(const ApproxFunction& psi) {
  if (!psi.symbolic()) return {{"table_size", psi.table_values().size()}};
  return {{"c", psi.c().str()}, {"tau", psi.tau().str()}, {"beta", psi.beta().str()}, {"text", psi.str()}};
}

json to_json(const DimFunction& f) { return {{"s", f.s().str()}, {"gamma", f.gamma().str()}, {"text", f.str()}}; }

std::string to_csv(const HeightBoundReport& r) {
  std::string out = "q,count,min_ratio,max_ratio\n";
  for (const auto& row : r.rows)
    out += std::to_string(row.q) + "," + std::to_string(row.count) + "," + row.min_ratio.str() + "," +
           row.max_ratio.str() + "\n";
  return out;
}

std::string to_csv(const DimensionEstimate& e) {
  std::string out = "level,eps,count\n";
  for (std::size_t i = 0; i < e.levels.size(); ++i)
    out += std::to_string(i) + "," + e.levels[i].eps.str() + "," + std::to_string(e.levels[i].count) + "\n";
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

json make_envelope(const std::string& command, const std::string& canonical_input, json payload) {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char ts[32];
  std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", &tm);
  json env;
  env["command"] = command;
  env["input_digest"] = "sha256:" + sha256_hex(canonical_input);
  env["tool_version"] = kToolVersion;
  env["timestamp"] = ts;
  env["payload"] = std::move(payload);
  return env;
}

}  // namespace idap
