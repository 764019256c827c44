#include "idap/variety.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "idap/errors.hpp"
#include "parallel.hpp"

namespace idap {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

const BigRat kHalf{BigInt(1), BigInt(2)};

// ---- interval arithmetic over Q -------------------------------------------

RatInterval iv_add(const RatInterval& a, const RatInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

RatInterval iv_mul(const RatInterval& a, const RatInterval& b) {
  BigRat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

RatInterval iv_scale(const RatInterval& a, const BigRat& k) {
  if (k.sign() >= 0) return {a.lo * k, a.hi * k};
  return {a.hi * k, a.lo * k};
}

RatInterval iv_pow(const RatInterval& a, unsigned e) {
  if (e == 0) return {1, 1};
  BigRat lo = a.lo.pow(e);
  BigRat hi = a.hi.pow(e);
  if (e % 2 == 1) return {lo, hi};
  if (a.lo.sign() >= 0) return {lo, hi};
  if (a.hi.sign() <= 0) return {hi, lo};
  return {0, max(lo, hi)};
}

/// Smallest |y| over y in the interval.
BigRat min_abs(const RatInterval& a) {
  if (a.lo.sign() > 0) return a.lo;
  if (a.hi.sign() < 0) return -a.hi;
  return 0;
}

std::optional<Box> intersect(const Box& a, const Box& b) {
  Box out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    RatInterval iv{max(a[i].lo, b[i].lo), min(a[i].hi, b[i].hi)};
    if (iv.hi < iv.lo) return std::nullopt;
    out.push_back(std::move(iv));
  }
  return out;
}

// ---- machine-integer helpers for the height kernel ------------------------

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  do {
    b >>= __builtin_ctzll(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

u128 gcd128(u128 a, u128 b) {
  while (b != 0 && (a >> 64 != 0 || b >> 64 != 0)) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  if (b == 0) return a;
  return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
}

u128 abs128(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

BigInt from_u128(u128 v) {
  mpz_class hi(static_cast<unsigned long>(v >> 64));
  mpz_class lo(static_cast<unsigned long>(v & ~std::uint64_t{0}));
  mpz_class r = (hi << 64) + lo;
  return BigInt(r);
}

std::int64_t ceil_to_i64(const BigRat& x) { return x.ceil().to_int64(); }
std::int64_t floor_to_i64(const BigRat& x) { return x.floor().to_int64(); }

/// Numerator ranges [ceil(lo q), floor(hi q)] per coordinate; nullopt if some
/// range is empty.
std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> numerator_ranges(const Box& box, std::int64_t q) {
  std::vector<std::pair<std::int64_t, std::int64_t>> r;
  BigRat qq{q};
  for (const auto& iv : box) {
    std::int64_t a = ceil_to_i64(iv.lo * qq);
    std::int64_t b = floor_to_i64(iv.hi * qq);
    if (b < a) return std::nullopt;
    r.emplace_back(a, b);
  }
  return r;
}

/// Odometer over the numerator ranges, keeping primitive vectors only.
template <class Visit>
void walk_primitive(const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges, std::int64_t q, Visit&& visit) {
  const std::size_t n = ranges.size();
  std::vector<std::int64_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = ranges[i].first;
  const auto uq = static_cast<std::uint64_t>(q);
  while (true) {
    std::uint64_t g = uq;
    for (std::size_t i = 0; i < n && g != 1; ++i)
      g = gcd64(g, static_cast<std::uint64_t>(p[i] < 0 ? -p[i] : p[i]));
    if (g == 1) visit(p);
    std::size_t k = n;
    while (k-- > 0) {
      if (p[k] < ranges[k].second) {
        ++p[k];
        break;
      }
      p[k] = ranges[k].first;
    }
    if (k == static_cast<std::size_t>(-1)) return;
  }
}

}  // namespace

namespace detail {

struct CompiledTerm {
  i128 coef;
  std::vector<std::uint32_t> exps;  // x1..xn, x0 last
};

/// P_j^* with machine coefficients, for the 128-bit fast path.
struct CompiledSystem {
  std::size_t n = 0;
  unsigned d = 0;
  std::vector<std::vector<CompiledTerm>> polys;
  long double log2_coef_sum = 0;  // log2 of the largest per-poly sum of |coef|

  explicit CompiledSystem(const VarietyContext& ctx) : n(ctx.n), d(ctx.d) {
    for (const auto& h : ctx.homogenized) {
      std::vector<CompiledTerm> terms;
      long double sum = 0;
      for (const auto& [m, c] : h.terms()) {
        if (!c.num().fits_int64()) {
          log2_coef_sum = std::numeric_limits<long double>::infinity();
          terms.clear();
          break;
        }
        terms.push_back({static_cast<i128>(c.num().to_int64()), m.exps()});
        sum += std::fabs(static_cast<long double>(c.num().to_double()));
      }
      polys.push_back(std::move(terms));
      if (sum > 0) log2_coef_sum = std::max(log2_coef_sum, std::log2(sum));
    }
  }

  /// |P_j^*(p, q)| < 2^125 whenever max(q, |p_i|) <= bound.
  bool fits(std::int64_t bound) const {
    if (!std::isfinite(log2_coef_sum)) return false;
    return log2_coef_sum + d * std::log2(static_cast<long double>(bound) + 1) < 124;
  }
};

}  // namespace detail

Box unit_box(std::size_t n) { return Box(n, RatInterval{0, 1}); }

bool box_contains(const Box& box, std::span<const BigRat> x) {
  if (x.size() != box.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < box[i].lo || box[i].hi < x[i]) return false;
  return true;
}

RatInterval enclose(const MPoly& p, const Box& box) {
  if (box.size() != p.nvars()) throw std::invalid_argument("enclose: box dimension mismatch");
  RatInterval sum{0, 0};
  for (const auto& [m, c] : p.terms()) {
    RatInterval t{1, 1};
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (m[i]) t = iv_mul(t, iv_pow(box[i], m[i]));
    sum = iv_add(sum, iv_scale(t, c));
  }
  return sum;
}

VarietyContext build_context(std::vector<MPoly> polys, std::optional<Box> box) {
  if (polys.empty()) throw std::invalid_argument("build_context: need at least one polynomial");
  VarietyContext ctx;
  ctx.n = polys.front().nvars();
  ctx.m = polys.size();
  if (ctx.n == 0) throw std::invalid_argument("build_context: need at least one variable");
  for (const auto& p : polys) {
    if (p.nvars() != ctx.n || p.homogenized())
      throw std::invalid_argument("build_context: all polynomials must be in x1..x" + std::to_string(ctx.n));
    if (!p.has_integer_coefficients())
      throw std::invalid_argument("build_context: coefficients must be integers: " + p.str());
    ctx.degrees.push_back(static_cast<unsigned>(std::max(0, p.degree())));
  }
  ctx.d = *std::max_element(ctx.degrees.begin(), ctx.degrees.end());
  if (ctx.d == 0) throw std::invalid_argument("build_context: constant system (d = 0)");
  ctx.polys = std::move(polys);

  ctx.box = box ? std::move(*box) : unit_box(ctx.n);
  if (ctx.box.size() != ctx.n) throw std::invalid_argument("build_context: box dimension does not match n");
  for (const auto& iv : ctx.box)
    if (iv.hi < iv.lo) throw std::invalid_argument("build_context: box interval with hi < lo");

  // K = 1 + max_j sum_i sup |dP_j/dx_i|, bounded term by term with M_k = max |x_k|.
  std::vector<BigRat> mag;
  for (const auto& iv : ctx.box) mag.push_back(max(iv.lo.abs(), iv.hi.abs()));
  BigRat worst;
  for (const auto& p : ctx.polys) {
    BigRat row;
    for (const auto& [m, c] : p.terms()) {
      for (std::size_t i = 0; i < ctx.n; ++i) {
        if (!m[i]) continue;
        BigRat t = c.abs() * BigRat(static_cast<long>(m[i]));
        for (std::size_t k = 0; k < ctx.n; ++k) {
          unsigned e = m[k] - (k == i ? 1 : 0);
          if (e) t *= mag[k].pow(e);
        }
        row += t;
      }
    }
    worst = max(worst, row);
  }
  ctx.lipschitz = BigRat(1) + worst;

  for (const auto& p : ctx.polys) {
    ctx.top_forms.push_back(homogeneous_parts(p, ctx.d)[ctx.d]);
    ctx.homogenized.push_back(homogenize(p, ctx.d));
  }
  ctx.morphism = morphism_condition(ctx.top_forms);
  ctx.kernel = std::make_shared<const detail::CompiledSystem>(ctx);
  return ctx;
}

Evaluated apply_F(const VarietyContext& ctx, const RatVec& x) {
  if (x.size() != ctx.n) throw std::invalid_argument("apply_F: expected " + std::to_string(ctx.n) + " coordinates");
  std::vector<BigRat> out(x.entries().begin(), x.entries().end());
  for (const auto& p : ctx.polys) out.push_back(p.evaluate(x));
  return {RatVec(std::move(out)), !box_contains(ctx.box, x.entries())};
}

ProjPoint apply_Fstar(const VarietyContext& ctx, const ProjPoint& pt) {
  if (pt.size() != ctx.n + 1) throw std::invalid_argument("apply_Fstar: expected " + std::to_string(ctx.n + 1) + " coordinates");
  const BigInt& x0 = pt[0];
  BigInt x0_dm1 = x0.pow(ctx.d - 1);
  std::vector<BigInt> args(pt.coords().begin() + 1, pt.coords().end());
  args.push_back(x0);
  std::vector<BigInt> out;
  out.push_back(x0_dm1 * x0);
  for (std::size_t i = 1; i <= ctx.n; ++i) out.push_back(x0_dm1 * pt[i]);
  for (const auto& h : ctx.homogenized) out.push_back(h.evaluate_integer(args));
  if (std::all_of(out.begin(), out.end(), [](const BigInt& v) { return v.is_zero(); }))
    throw PreconditionError("F* is undefined at (" + pt.str() + "): every coordinate vanishes");
  return ProjPoint(std::move(out));
}

RatVec PrimitivePoint::value() const {
  std::vector<BigRat> v;
  for (const auto& x : p) v.emplace_back(x, q);
  return RatVec(std::move(v));
}

void for_each_primitive(const Box& box, std::int64_t q, const std::function<void(const PrimitivePoint&)>& visit) {
  if (q < 1) return;
  auto ranges = numerator_ranges(box, q);
  if (!ranges) return;
  walk_primitive(*ranges, q, [&](const std::vector<std::int64_t>& p) {
    PrimitivePoint pt;
    pt.q = BigInt(q);
    for (auto v : p) pt.p.emplace_back(v);
    visit(pt);
  });
}

std::vector<PrimitivePoint> enumerate_primitive(const VarietyContext& ctx, std::int64_t q_lo, std::int64_t q_hi) {
  std::vector<PrimitivePoint> out;
  for (std::int64_t q = std::max<std::int64_t>(q_lo, 1); q <= q_hi; ++q)
    for_each_primitive(ctx.box, q, [&](const PrimitivePoint& pt) { out.push_back(pt); });
  return out;
}

BigInt image_height(const VarietyContext& ctx, const PrimitivePoint& pt) {
  const BigInt& q = pt.q;
  BigInt qd = q.pow(ctx.d);
  BigInt qdm1 = q.pow(ctx.d - 1);
  BigInt g = qd;
  for (const auto& x : pt.p) g = gcd(g, qdm1 * x);
  std::vector<BigInt> args = pt.p;
  args.push_back(q);
  for (const auto& h : ctx.homogenized) g = gcd(g, h.evaluate_integer(args));
  return qd / g;
}

std::vector<HeightCount> image_height_histogram(const VarietyContext& ctx, std::int64_t q) {
  std::vector<HeightCount> hist;
  if (q < 1) return hist;
  auto ranges = numerator_ranges(ctx.box, q);
  if (!ranges) return hist;

  std::int64_t bound = q;
  for (const auto& [a, b] : *ranges) bound = std::max({bound, a < 0 ? -a : a, b < 0 ? -b : b});
  if (!ctx.kernel) throw std::logic_error("VarietyContext was not built by build_context");
  const detail::CompiledSystem& sys = *ctx.kernel;

  if (!sys.fits(bound)) {
    walk_primitive(*ranges, q, [&](const std::vector<std::int64_t>& p) {
      PrimitivePoint pt;
      pt.q = BigInt(q);
      for (auto v : p) pt.p.emplace_back(v);
      BigInt h = image_height(ctx, pt);
      auto it = std::find_if(hist.begin(), hist.end(), [&](const HeightCount& c) { return c.height == h; });
      if (it == hist.end()) {
        hist.push_back({h, 1});
      } else {
        ++it->count;
      }
    });
  } else {
    const std::size_t n = sys.n;
    const unsigned d = sys.d;
    // Powers 0..d of each coordinate (q last).
    std::vector<std::vector<i128>> pw(n + 1, std::vector<i128>(d + 1, 1));
    for (unsigned k = 1; k <= d; ++k) pw[n][k] = pw[n][k - 1] * q;
    const u128 qdm1 = static_cast<u128>(pw[n][d - 1]);
    const u128 qd = static_cast<u128>(pw[n][d]);
    std::vector<std::pair<u128, std::uint64_t>> by_gcd;

    walk_primitive(*ranges, q, [&](const std::vector<std::int64_t>& p) {
      for (std::size_t i = 0; i < n; ++i)
        for (unsigned k = 1; k <= d; ++k) pw[i][k] = pw[i][k - 1] * p[i];
      // gcd(q^d, q^{d-1} p_i) = q^{d-1} for primitive p/q.
      u128 g = qdm1;
      for (const auto& terms : sys.polys) {
        if (g == 1) break;
        i128 v = 0;
        for (const auto& t : terms) {
          i128 prod = t.coef;
          for (std::size_t i = 0; i <= n; ++i)
            if (t.exps[i]) prod *= pw[i][t.exps[i]];
          v += prod;
        }
        g = gcd128(g, abs128(v));
      }
      auto it = std::find_if(by_gcd.begin(), by_gcd.end(), [g](const auto& e) { return e.first == g; });
      if (it == by_gcd.end()) {
        by_gcd.emplace_back(g, 1);
      } else {
        ++it->second;
      }
    });
    for (const auto& [g, c] : by_gcd) hist.push_back({from_u128(qd / g), c});
  }
  std::sort(hist.begin(), hist.end(), [](const HeightCount& a, const HeightCount& b) { return a.height < b.height; });
  return hist;
}

BigRat HeightBoundReport::min_ratio_in(std::int64_t q_lo, std::int64_t q_hi) const {
  std::optional<BigRat> best;
  for (const auto& r : rows)
    if (r.q >= q_lo && r.q <= q_hi) best = best ? min(*best, r.min_ratio) : r.min_ratio;
  if (!best) throw std::out_of_range("no rows in the requested q range");
  return *best;
}

namespace {

HeightBoundReport assemble(const VarietyContext& ctx, std::int64_t q_max, std::vector<std::optional<QRow>>& rows,
                           std::uint64_t above_one) {
  HeightBoundReport rep;
  rep.q_max = q_max;
  rep.morphism_holds = ctx.morphism.holds;
  rep.above_one = above_one;
  bool first = true;
  for (auto& r : rows) {
    if (!r) continue;
    rep.count += r->count;
    if (first) {
      rep.delta_hat = r->min_ratio;
      rep.max_ratio = r->max_ratio;
      first = false;
    } else {
      rep.delta_hat = min(rep.delta_hat, r->min_ratio);
      rep.max_ratio = max(rep.max_ratio, r->max_ratio);
    }
    rep.rows.push_back(std::move(*r));
  }
  return rep;
}

}  // namespace

HeightBoundReport height_bound_scan(const VarietyContext& ctx, std::int64_t q_max, Exec exec) {
  std::vector<std::optional<QRow>> rows(static_cast<std::size_t>(std::max<std::int64_t>(q_max, 0)));
  std::vector<std::uint64_t> above(rows.size(), 0);
  detail::parallel_for(0, static_cast<std::int64_t>(rows.size()), exec, [&](std::int64_t i) {
    const std::int64_t q = q_max - i;  // heavy q first
    auto hist = image_height_histogram(ctx, q);
    if (hist.empty()) return;
    BigRat qd{BigInt(q).pow(ctx.d)};
    QRow row;
    row.q = q;
    for (const auto& h : hist) {
      row.count += h.count;
      if (BigRat(h.height) > qd) above[q - 1] += h.count;
    }
    row.min_ratio = BigRat(hist.front().height) / qd;
    row.max_ratio = BigRat(hist.back().height) / qd;
    rows[q - 1] = std::move(row);
  });
  std::uint64_t above_one = 0;
  for (auto a : above) above_one += a;
  return assemble(ctx, q_max, rows, above_one);
}

HeightBoundReport height_bound_scan_reference(const VarietyContext& ctx, std::int64_t q_max) {
  std::vector<std::optional<QRow>> rows(static_cast<std::size_t>(std::max<std::int64_t>(q_max, 0)));
  std::uint64_t above_one = 0;
  for (std::int64_t q = 1; q <= q_max; ++q) {
    BigRat qd{BigInt(q).pow(ctx.d)};
    std::optional<QRow> row;
    for_each_primitive(ctx.box, q, [&](const PrimitivePoint& pt) {
      BigRat ratio = BigRat(affine_height(apply_F(ctx, pt.value()).point)) / qd;
      if (ratio > BigRat(1)) ++above_one;
      if (!row) {
        row = QRow{q, 0, ratio, ratio};
      } else {
        row->min_ratio = min(row->min_ratio, ratio);
        row->max_ratio = max(row->max_ratio, ratio);
      }
      ++row->count;
    });
    rows[q - 1] = std::move(row);
  }
  return assemble(ctx, q_max, rows, above_one);
}

const char* to_string(Placement p) {
  switch (p) {
    case Placement::inside: return "inside";
    case Placement::outside: return "outside";
    case Placement::uncertain: return "uncertain";
  }
  return "?";
}

Placement classify_distance(const VarietyContext& ctx, const RatVec& r, const RatInterval& radius, unsigned max_depth,
                            std::uint64_t node_budget) {
  if (r.size() != ctx.n + ctx.m) throw std::invalid_argument("classify_distance: point has wrong dimension");
  Box ball;
  for (std::size_t i = 0; i < ctx.n; ++i) ball.push_back({r[i] - radius.hi, r[i] + radius.hi});
  auto region = intersect(ctx.box, ball);
  if (!region) return Placement::outside;

  struct Node {
    Box box;
    unsigned depth;
  };
  std::vector<Node> stack{{std::move(*region), 0}};
  std::uint64_t nodes = 0;
  bool uncertain = false;

  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    ++nodes;

    // Lower bound of the sup-distance over the sub-box.
    BigRat lb;
    for (std::size_t i = 0; i < ctx.n; ++i) {
      const auto& iv = node.box[i];
      if (iv.lo > r[i]) lb = max(lb, iv.lo - r[i]);
      if (iv.hi < r[i]) lb = max(lb, r[i] - iv.hi);
    }
    for (std::size_t j = 0; j < ctx.m && !(lb > radius.hi); ++j) {
      RatInterval y = enclose(ctx.polys[j], node.box);
      lb = max(lb, min_abs({y.lo - r[ctx.n + j], y.hi - r[ctx.n + j]}));
    }
    if (lb > radius.hi) continue;

    std::vector<BigRat> c;
    std::vector<BigRat> nearest;  // x-part of r clamped to the sub-box
    for (std::size_t i = 0; i < ctx.n; ++i) {
      const auto& iv = node.box[i];
      c.push_back((iv.lo + iv.hi) * kHalf);
      nearest.push_back(min(max(r[i], iv.lo), iv.hi));
    }
    for (const auto* probe : {&c, &nearest}) {
      BigRat g;
      for (std::size_t i = 0; i < ctx.n; ++i) g = max(g, ((*probe)[i] - r[i]).abs());
      for (std::size_t j = 0; j < ctx.m; ++j) g = max(g, (ctx.polys[j].evaluate(*probe) - r[ctx.n + j]).abs());
      if (g <= radius.lo) return Placement::inside;
    }

    if (node.depth >= max_depth || nodes >= node_budget) {
      uncertain = true;
      continue;
    }
    const std::size_t n = ctx.n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Box child = node.box;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1U) {
          child[i].lo = c[i];
        } else {
          child[i].hi = c[i];
        }
      }
      stack.push_back({std::move(child), node.depth + 1});
    }
  }
  return uncertain ? Placement::uncertain : Placement::outside;
}

OffManifoldReport off_manifold_check(const VarietyContext& ctx, const ApproxFunction& psi,
                                     const OffManifoldOptions& opt, Exec exec) {
  if (!psi.symbolic()) throw PreconditionError("off_manifold_check needs a symbolic psi to verify r^d psi(r) -> 0");
  BigRat d{static_cast<long>(ctx.d)};
  if (!(psi.tau() > d || (psi.tau() == d && psi.beta().sign() > 0)))
    throw PreconditionError("growth condition r^d psi(r) -> 0 fails for psi = " + psi.str() + " with d = " +
                            std::to_string(ctx.d));

  OffManifoldReport rep;
  rep.d_min = opt.d_min;
  rep.d_max = opt.d_max;
  const std::int64_t first = std::max<std::int64_t>(opt.d_min + 1, 1);
  if (opt.d_max < first) return rep;

  struct PerHeight {
    std::vector<OffManifoldFinding> findings;
    std::uint64_t candidates = 0;
    std::uint64_t outside = 0;
  };
  std::vector<PerHeight> per(static_cast<std::size_t>(opt.d_max - first + 1));

  detail::parallel_for(0, static_cast<std::int64_t>(per.size()), exec, [&](std::int64_t idx) {
    const std::int64_t D = first + idx;
    const BigRat dd{D};
    const RatInterval rad = psi.enclose(dd);
    PerHeight& out = per[static_cast<std::size_t>(idx)];

    std::vector<std::pair<std::int64_t, std::int64_t>> xr;
    for (const auto& iv : ctx.box) xr.emplace_back(ceil_to_i64((iv.lo - rad.hi) * dd), floor_to_i64((iv.hi + rad.hi) * dd));
    for (const auto& [a, b] : xr)
      if (b < a) return;

    std::vector<std::int64_t> a(ctx.n);
    for (std::size_t i = 0; i < ctx.n; ++i) a[i] = xr[i].first;
    while (true) {
      std::vector<BigRat> x;
      Box ball;
      for (std::size_t i = 0; i < ctx.n; ++i) {
        x.emplace_back(BigInt(a[i]), BigInt(D));
        ball.push_back({x[i] - rad.hi, x[i] + rad.hi});
      }
      if (auto region = intersect(ctx.box, ball)) {
        std::vector<std::pair<std::int64_t, std::int64_t>> yr;
        bool empty = false;
        for (const auto& p : ctx.polys) {
          RatInterval y = enclose(p, *region);
          yr.emplace_back(ceil_to_i64((y.lo - rad.hi) * dd), floor_to_i64((y.hi + rad.hi) * dd));
          empty = empty || yr.back().second < yr.back().first;
        }
        std::vector<BigRat> on_graph;
        for (const auto& p : ctx.polys) on_graph.push_back(p.evaluate(x));
        if (!empty) {
          std::vector<std::int64_t> b(ctx.m);
          for (std::size_t j = 0; j < ctx.m; ++j) b[j] = yr[j].first;
          while (true) {
            std::uint64_t g = static_cast<std::uint64_t>(D);
            for (auto v : a) g = gcd64(g, static_cast<std::uint64_t>(v < 0 ? -v : v));
            for (auto v : b) g = gcd64(g, static_cast<std::uint64_t>(v < 0 ? -v : v));
            bool on = true;
            std::vector<BigRat> r = x;
            for (std::size_t j = 0; j < ctx.m; ++j) {
              r.emplace_back(BigInt(b[j]), BigInt(D));
              on = on && r.back() == on_graph[j];
            }
            if (g == 1 && !on) {
              ++out.candidates;
              RatVec rv(std::move(r));
              Placement pl = classify_distance(ctx, rv, rad, opt.max_depth, opt.node_budget);
              if (pl == Placement::outside) {
                ++out.outside;
              } else {
                out.findings.push_back({std::move(rv), BigInt(D), pl});
              }
            }
            std::size_t k = ctx.m;
            while (k-- > 0) {
              if (b[k] < yr[k].second) {
                ++b[k];
                break;
              }
              b[k] = yr[k].first;
            }
            if (k == static_cast<std::size_t>(-1)) break;
          }
        }
      }
      std::size_t k = ctx.n;
      while (k-- > 0) {
        if (a[k] < xr[k].second) {
          ++a[k];
          break;
        }
        a[k] = xr[k].first;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  });

  for (auto& p : per) {
    rep.candidates += p.candidates;
    rep.outside += p.outside;
    for (auto& f : p.findings) rep.findings.push_back(std::move(f));
  }
  return rep;
}

}  // namespace idap
