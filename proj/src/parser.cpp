#include "idap/parser.hpp"

#include <cctype>
#include <limits>

#include "idap/errors.hpp"

namespace idap {

namespace {

constexpr unsigned kMaxExponent = 1000;

class Parser {
 public:
  Parser(std::string_view text, std::size_t n, std::size_t offset) : s_(text), n_(n), off_(offset) {}

  MPoly parse() {
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    MPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, off_ + pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  unsigned small_uint(const char* what) {
    skip();
    std::size_t at = pos_;
    std::string t = digits();
    if (t.empty()) fail(std::string("expected ") + what);
    if (t.size() > 6 || std::stoul(t) > kMaxExponent) {
      pos_ = at;
      fail(std::string(what) + " too large");
    }
    return static_cast<unsigned>(std::stoul(t));
  }

  MPoly expr() {
    MPoly acc(n_);
    if (peek() == '-') {
      ++pos_;
      acc = acc - term();
    } else {
      acc = term();
    }
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc = acc + term();
      } else if (c == '-') {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  MPoly term() {
    MPoly acc = factor();
    while (peek() == '*') {
      ++pos_;
      acc = acc * factor();
    }
    if (peek() == '/') fail("division is not allowed; coefficients must be integers");
    return acc;
  }

  MPoly factor() {
    MPoly b = base();
    if (peek() == '^') {
      ++pos_;
      b = b.pow(small_uint("exponent"));
    }
    return b;
  }

  MPoly base() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      MPoly e = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (c == 'x' || c == 'X') {
      ++pos_;
      std::size_t at = pos_;
      std::string t = digits();
      if (t.empty()) fail("expected variable index after 'x'");
      std::size_t idx = t.size() > 9 ? std::numeric_limits<std::size_t>::max() : std::stoul(t);
      if (idx == 0 || idx > n_) {
        pos_ = at;
        fail("unknown variable x" + t + " (variables are x1..x" + std::to_string(n_) + ")");
      }
      return MPoly::variable(n_, idx - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string t = digits();
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
        fail("decimal literal; coefficients must be integers");
      return MPoly::constant(n_, BigRat(BigInt(t)));
    }
    if (c == '\0') fail("unexpected end of input");
    if (c == '/') fail("division is not allowed; coefficients must be integers");
    if (c == '.') fail("decimal literal; coefficients must be integers");
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t n_;
  std::size_t off_;
  std::size_t pos_ = 0;
};

struct Segment {
  std::string_view text;
  std::size_t offset;
  std::string label;
};

std::vector<Segment> split_system(std::string_view text) {
  std::vector<Segment> out;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t end = text.find_first_of(";\n", i);
    if (end == std::string_view::npos) end = text.size();
    std::string_view seg = text.substr(i, end - i);
    std::size_t off = i;
    if (auto hash = seg.find('#'); hash != std::string_view::npos) seg = seg.substr(0, hash);
    std::string label;
    if (auto colon = seg.find(':'); colon != std::string_view::npos) {
      std::string_view name = seg.substr(0, colon);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.remove_prefix(1);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
      if (name.empty()) throw ParseError("empty label", off + colon);
      for (char ch : name)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') throw ParseError("bad label", off);
      label = std::string(name);
      seg = seg.substr(colon + 1);
      off += colon + 1;
    }
    bool blank = true;
    for (char ch : seg)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (!blank) out.push_back({seg, off, label});
    else if (!label.empty()) throw ParseError("label without polynomial", off);
    i = end + 1;
  }
  return out;
}

void default_labels(SystemDescriptor& sd) {
  for (std::size_t j = 0; j < sd.labels.size(); ++j)
    if (sd.labels[j].empty()) sd.labels[j] = "P" + std::to_string(j + 1);
}

BigRat json_rat(const nlohmann::json& v, bool integer_only, const std::string& where) {
  try {
    BigRat r;
    if (v.is_number_integer()) {
      r = BigRat(BigInt(v.dump()));
    } else if (v.is_string()) {
      r = BigRat::parse(v.get<std::string>());
    } else {
      throw ParseError(where + ": expected an integer or a string", 0);
    }
    if (integer_only && !r.is_integer()) throw ParseError(where + ": coefficients must be integers", 0);
    return r;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what(), 0);
  }
}

}  // namespace

MPoly parse_polynomial(std::string_view text, std::size_t n) {
  if (n == 0) throw ParseError("need at least one variable", 0);
  return Parser(text, n, 0).parse();
}

std::size_t max_variable_index(std::string_view text) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x' && text[i] != 'X') continue;
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1) throw ParseError("expected variable index after 'x'", i + 1);
    if (j - i - 1 > 9) throw ParseError("variable index too large", i + 1);
    best = std::max<std::size_t>(best, std::stoul(std::string(text.substr(i + 1, j - i - 1))));
    i = j - 1;
  }
  return best;
}

SystemDescriptor parse_system(std::string_view text, std::optional<std::size_t> n) {
  auto segs = split_system(text);
  if (segs.empty()) throw ParseError("no polynomials given", 0);
  SystemDescriptor sd;
  if (n) {
    sd.n = *n;
  } else {
    for (const auto& s : segs) sd.n = std::max(sd.n, max_variable_index(s.text));
    if (sd.n == 0) throw ParseError("cannot infer n from a constant system; pass n explicitly", 0);
  }
  if (sd.n == 0) throw ParseError("need at least one variable", 0);
  for (const auto& s : segs) {
    sd.polys.push_back(Parser(s.text, sd.n, s.offset).parse());
    sd.labels.push_back(s.label);
  }
  default_labels(sd);
  return sd;
}

SystemDescriptor parse_system_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("system JSON must be an object", 0);
  if (!j.contains("n") || !j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0)
    throw ParseError("system JSON: \"n\" must be a positive integer", 0);
  if (!j.contains("polys") || !j["polys"].is_array() || j["polys"].empty())
    throw ParseError("system JSON: \"polys\" must be a non-empty array", 0);
  SystemDescriptor sd;
  sd.n = j["n"].get<std::size_t>();
  std::size_t idx = 0;
  for (const auto& pj : j["polys"]) {
    ++idx;
    const std::string where = "polys[" + std::to_string(idx - 1) + "]";
    if (pj.is_string()) {
      sd.polys.push_back(parse_polynomial(pj.get<std::string>(), sd.n));
      sd.labels.emplace_back();
      continue;
    }
    if (!pj.is_object() || !pj.contains("terms") || !pj["terms"].is_array())
      throw ParseError(where + ": expected {\"terms\": [...]} or an expression string", 0);
    MPoly p(sd.n);
    for (const auto& tj : pj["terms"]) {
      if (!tj.is_object() || !tj.contains("exp") || !tj.contains("coef") || !tj["exp"].is_array())
        throw ParseError(where + ": each term needs \"exp\" and \"coef\"", 0);
      if (tj["exp"].size() != sd.n) throw ParseError(where + ": exponent vector length must equal n", 0);
      Monomial mono(sd.n);
      for (std::size_t i = 0; i < sd.n; ++i) {
        const auto& e = tj["exp"][i];
        if (!e.is_number_unsigned() || e.get<std::uint64_t>() > kMaxExponent)
          throw ParseError(where + ": exponents must be non-negative integers <= 1000", 0);
        mono[i] = static_cast<std::uint32_t>(e.get<std::uint64_t>());
      }
      p.add_term(mono, json_rat(tj["coef"], true, where));
    }
    sd.polys.push_back(std::move(p));
    sd.labels.push_back(pj.contains("label") && pj["label"].is_string() ? pj["label"].get<std::string>() : "");
  }
  default_labels(sd);
  if (j.contains("box")) {
    const auto& bj = j["box"];
    if (!bj.is_array() || bj.size() != sd.n) throw ParseError("system JSON: \"box\" needs one interval per variable", 0);
    Box box;
    for (const auto& iv : bj) {
      if (!iv.is_array() || iv.size() != 2) throw ParseError("system JSON: box intervals are [lo, hi] pairs", 0);
      box.push_back({json_rat(iv[0], false, "box"), json_rat(iv[1], false, "box")});
      if (box.back().hi < box.back().lo) throw ParseError("system JSON: inverted box interval", 0);
    }
    sd.box = std::move(box);
  }
  return sd;
}

Box parse_box(std::string_view text) {
  Box box;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t end = text.find(',', i);
    if (end == std::string_view::npos) end = text.size();
    std::string_view axis = text.substr(i, end - i);
    std::size_t dots = axis.find("..");
    if (dots == std::string_view::npos) throw ParseError("box axis must look like lo..hi", i);
    try {
      RatInterval iv{BigRat::parse(axis.substr(0, dots)), BigRat::parse(axis.substr(dots + 2))};
      if (iv.hi < iv.lo) throw ParseError("inverted box interval", i);
      box.push_back(std::move(iv));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad box bound: ") + e.what(), i);
    }
    i = end + 1;
  }
  return box;
}

std::string SystemDescriptor::str() const {
  std::string out;
  for (std::size_t j = 0; j < polys.size(); ++j) out += labels[j] + ": " + polys[j].str() + "\n";
  return out;
}

}  // namespace idap
