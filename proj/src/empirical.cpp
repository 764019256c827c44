#include "idap/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "idap/errors.hpp"
#include "parallel.hpp"

namespace idap {

namespace {

/// f(psi(h)) in long double.
long double f_of_psi(const ApproxFunction& psi, const DimFunction& f, long double h) { return f(psi(h)); }

/// Exact f(psi(h)) when both are rational at rational points.
BigRat f_of_psi_exact(const ApproxFunction& psi, const DimFunction& f, const BigInt& h) {
  return psi.enclose(BigRat(h)).lo.pow(f.s().num().to_int64());
}

bool exact_route(const ApproxFunction& psi, const DimFunction& f) {
  return psi.exact_at_rationals() && f.exact_at_rationals();
}

struct QSums {
  long double s1 = 0;
  long double s2 = 0;
  BigRat s1_exact;
  BigRat s2_exact;
  std::uint64_t points = 0;
};

TailSum finish(std::int64_t n_lo, std::int64_t q_hi, const std::vector<QSums>& per, bool exact) {
  TailSum t;
  t.n_lo = n_lo;
  t.q_hi = q_hi;
  BigRat e1;
  BigRat e2;
  for (const auto& s : per) {
    t.s1 += s.s1;
    t.s2 += s.s2;
    t.points += s.points;
    if (exact) {
      e1 += s.s1_exact;
      e2 += s.s2_exact;
    }
  }
  if (exact) {
    t.s1_exact = e1;
    t.s2_exact = e2;
  }
  t.ratio = t.s2 > 0 ? t.s1 / t.s2 : 0;
  return t;
}

/// Inclusive integer ranges, one per axis.
using IndexBox = std::vector<std::pair<std::int64_t, std::int64_t>>;

std::uint64_t union_count(std::vector<const IndexBox*> boxes, std::size_t dim) {
  if (boxes.empty()) return 0;
  const std::size_t n = boxes.front()->size();
  if (dim + 1 == n) {
    std::vector<std::pair<std::int64_t, std::int64_t>> iv;
    iv.reserve(boxes.size());
    for (const auto* b : boxes) iv.push_back((*b)[dim]);
    std::sort(iv.begin(), iv.end());
    std::uint64_t total = 0;
    std::int64_t lo = iv[0].first;
    std::int64_t hi = iv[0].second;
    for (std::size_t i = 1; i < iv.size(); ++i) {
      if (iv[i].first > hi + 1) {
        total += static_cast<std::uint64_t>(hi - lo + 1);
        lo = iv[i].first;
        hi = iv[i].second;
      } else {
        hi = std::max(hi, iv[i].second);
      }
    }
    return total + static_cast<std::uint64_t>(hi - lo + 1);
  }

  // Sweep along `dim`; the cross-section is constant between events.
  std::vector<std::int64_t> xs;
  for (const auto* b : boxes) {
    xs.push_back((*b)[dim].first);
    xs.push_back((*b)[dim].second + 1);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(boxes.begin(), boxes.end(), [dim](const IndexBox* a, const IndexBox* b) { return (*a)[dim] < (*b)[dim]; });

  std::uint64_t total = 0;
  std::vector<const IndexBox*> active;
  std::size_t next = 0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const std::int64_t x = xs[k];
    while (next < boxes.size() && (*boxes[next])[dim].first <= x) active.push_back(boxes[next++]);
    std::erase_if(active, [dim, x](const IndexBox* b) { return (*b)[dim].second < x; });
    if (active.empty()) continue;
    total += union_count(active, dim + 1) * static_cast<std::uint64_t>(xs[k + 1] - x);
  }
  return total;
}

}  // namespace

TailSum tail_sum(const VarietyContext& ctx, const ApproxFunction& psi, const DimFunction& f, std::int64_t n_lo,
                 std::int64_t q_hi, Exec exec) {
  if (n_lo < 0) throw std::invalid_argument("tail_sum: N must be >= 0");
  const bool exact = exact_route(psi, f);
  const std::int64_t len = std::max<std::int64_t>(q_hi - n_lo, 0);
  std::vector<QSums> per(static_cast<std::size_t>(len));
  detail::parallel_for(0, len, exec, [&](std::int64_t i) {
    const std::int64_t q = q_hi - i;
    QSums& s = per[static_cast<std::size_t>(q - n_lo - 1)];
    for (const auto& hc : image_height_histogram(ctx, q)) {
      s.points += hc.count;
      s.s1 += static_cast<long double>(hc.count) * f_of_psi(psi, f, static_cast<long double>(hc.height.to_double()));
      if (exact) s.s1_exact += BigRat(static_cast<long>(hc.count)) * f_of_psi_exact(psi, f, hc.height);
    }
    const BigInt qd = BigInt(q).pow(ctx.d);
    s.s2 = std::pow(static_cast<long double>(q), static_cast<long double>(ctx.n)) *
           f_of_psi(psi, f, static_cast<long double>(qd.to_double()));
    if (exact) s.s2_exact = BigRat(BigInt(q).pow(ctx.n)) * f_of_psi_exact(psi, f, qd);
  });
  return finish(n_lo, q_hi, per, exact);
}

TailSum tail_sum_reference(const VarietyContext& ctx, const ApproxFunction& psi, const DimFunction& f,
                           std::int64_t n_lo, std::int64_t q_hi) {
  const bool exact = exact_route(psi, f);
  std::vector<QSums> per;
  for (std::int64_t q = n_lo + 1; q <= q_hi; ++q) {
    QSums s;
    for_each_primitive(ctx.box, q, [&](const PrimitivePoint& pt) {
      BigInt h = affine_height(apply_F(ctx, pt.value()).point);
      ++s.points;
      s.s1 += f_of_psi(psi, f, static_cast<long double>(h.to_double()));
      if (exact) s.s1_exact += f_of_psi_exact(psi, f, h);
    });
    const BigInt qd = BigInt(q).pow(ctx.d);
    s.s2 = std::pow(static_cast<long double>(q), static_cast<long double>(ctx.n)) *
           f_of_psi(psi, f, static_cast<long double>(qd.to_double()));
    if (exact) s.s2_exact = BigRat(BigInt(q).pow(ctx.n)) * f_of_psi_exact(psi, f, qd);
    per.push_back(std::move(s));
  }
  return finish(n_lo, q_hi, per, exact);
}

const char* to_string(RadiusMode m) { return m == RadiusMode::lower ? "lower" : "upper"; }

FiniteStageCover build_cover(const VarietyContext& ctx, const ApproxFunction& psi, std::int64_t q_lo,
                             std::int64_t q_hi, RadiusMode mode, Exec exec) {
  if (!(q_lo < q_hi)) throw std::invalid_argument("build_cover: need Q_lo < Q_hi");
  FiniteStageCover cover;
  cover.q_lo = q_lo;
  cover.q_hi = q_hi;
  cover.mode = mode;
  const std::int64_t first = std::max<std::int64_t>(q_lo + 1, 1);
  const std::int64_t len = std::max<std::int64_t>(q_hi - first + 1, 0);
  std::vector<std::vector<Ball>> per(static_cast<std::size_t>(len));
  detail::parallel_for(0, len, exec, [&](std::int64_t i) {
    const std::int64_t q = q_hi - i;
    auto& out = per[static_cast<std::size_t>(q - first)];
    std::optional<BigRat> lower;
    if (mode == RadiusMode::lower) lower = psi.rational_value(BigRat(BigInt(q).pow(ctx.d))) / ctx.lipschitz;
    for_each_primitive(ctx.box, q, [&](const PrimitivePoint& pt) {
      BigRat r = lower ? *lower : psi.rational_value(BigRat(image_height(ctx, pt)));
      out.push_back({pt, std::move(r)});
    });
  });
  for (auto& v : per)
    for (auto& b : v) cover.balls.push_back(std::move(b));
  return cover;
}

std::uint64_t count_cells(const Box& box, const std::vector<Ball>& balls, const BigRat& eps, Exec exec) {
  if (eps.sign() <= 0) throw std::invalid_argument("count_cells: eps must be positive");
  if (balls.empty()) return 0;
  const std::size_t n = box.size();
  std::vector<std::int64_t> cells(n);
  for (std::size_t i = 0; i < n; ++i) cells[i] = std::max<std::int64_t>(((box[i].hi - box[i].lo) / eps).ceil().to_int64(), 1);

  std::vector<std::optional<IndexBox>> boxes(balls.size());
  detail::parallel_for(0, static_cast<std::int64_t>(balls.size()), exec, [&](std::int64_t b) {
    const Ball& ball = balls[static_cast<std::size_t>(b)];
    RatVec c = ball.center.value();
    IndexBox ib;
    for (std::size_t i = 0; i < n; ++i) {
      BigRat lo = max(c[i] - ball.radius, box[i].lo);
      BigRat hi = min(c[i] + ball.radius, box[i].hi);
      if (hi < lo) return;
      std::int64_t klo = ((lo - box[i].lo) / eps).floor().to_int64();
      std::int64_t khi = ((hi - box[i].lo) / eps).floor().to_int64();
      ib.emplace_back(std::clamp<std::int64_t>(klo, 0, cells[i] - 1), std::clamp<std::int64_t>(khi, 0, cells[i] - 1));
    }
    boxes[static_cast<std::size_t>(b)] = std::move(ib);
  });

  std::vector<const IndexBox*> ptrs;
  for (const auto& b : boxes)
    if (b) ptrs.push_back(&*b);
  return union_count(std::move(ptrs), 0);
}

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least_squares: need >= 2 paired points");
  const double k = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / k;
  double sxx = 0;
  double sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("least_squares: all x values coincide");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / k);
  return fit;
}

namespace {

double log_of(const BigRat& x) {
  long en = 0;
  long ed = 0;
  double mn = mpz_get_d_2exp(&en, x.raw().get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, x.raw().get_den_mpz_t());
  return std::log(mn / md) + static_cast<double>(en - ed) * std::log(2.0);
}

}  // namespace

DimensionEstimate estimate_dimension(const VarietyContext& ctx, const BigRat& tau,
                                     const std::vector<std::int64_t>& q_levels,
                                     const std::optional<std::vector<BigRat>>& eps_levels, Exec exec) {
  if (q_levels.size() < 3) throw std::invalid_argument("estimate_dimension: need at least 3 levels for a regression");
  if (eps_levels && eps_levels->size() != q_levels.size())
    throw std::invalid_argument("estimate_dimension: eps levels must match q levels");
  if (!ctx.morphism.holds) throw PreconditionError("estimate_dimension: the morphism condition fails for this system");
  DimensionResult dim = dimension_formula(static_cast<unsigned>(ctx.n), ctx.d, tau, true);
  if (!dim.applicable)
    throw PreconditionError("estimate_dimension: tau = " + tau.str() + " must exceed (n+1)/(nd) = " + dim.threshold.str());

  const ApproxFunction psi = ApproxFunction::power(tau);
  DimensionEstimate est;
  est.tau = tau;
  est.predicted = dim.s;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < q_levels.size(); ++i) {
    const std::int64_t q = q_levels[i];
    if (q < 2) throw std::invalid_argument("estimate_dimension: stage Q must be >= 2");
    FiniteStageCover cover = build_cover(ctx, psi, q / 2, q, RadiusMode::lower, exec);
    BigRat eps = eps_levels ? (*eps_levels)[i] : psi.rational_value(BigRat(BigInt(q).pow(ctx.d))) / ctx.lipschitz;
    DimensionLevel lvl{q, eps, cover.balls.size(), count_cells(ctx.box, cover.balls, eps, exec)};
    if (!est.levels.empty()) {
      est.eps_decreasing = est.eps_decreasing && lvl.eps < est.levels.back().eps;
      est.count_nondecreasing = est.count_nondecreasing && lvl.count >= est.levels.back().count;
    }
    if (lvl.count == 0) throw std::invalid_argument("estimate_dimension: stage with no covered cells");
    xs.push_back(-log_of(eps));
    ys.push_back(std::log(static_cast<double>(lvl.count)));
    est.levels.push_back(std::move(lvl));
  }
  LineFit fit = least_squares(xs, ys);
  est.slope = fit.slope;
  est.intercept = fit.intercept;
  est.residual = fit.rms;
  return est;
}

}  // namespace idap
