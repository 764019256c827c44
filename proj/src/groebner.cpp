#include "idap/groebner.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace idap {

namespace {

MPoly make_monic(const MPoly& p, MonOrder order) {
  return p.scaled(p.leading_term(order).coef.inverse());
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

}  // namespace

bool GroebnerBasis::contains_one() const {
  return std::any_of(gens.begin(), gens.end(), [](const MPoly& g) { return g.degree() == 0; });
}

MPoly reduce(const MPoly& p, const std::vector<MPoly>& gens, MonOrder order) {
  std::vector<Term> leads;
  leads.reserve(gens.size());
  for (const auto& g : gens) {
    if (g.nvars() != p.nvars()) throw std::invalid_argument("reduce: generator ring mismatch");
    leads.push_back(g.is_zero() ? Term{} : g.leading_term(order));
  }

  MPoly rest = p;
  MPoly rem(p.nvars(), p.homogenized());
  while (!rest.is_zero()) {
    Term lt = rest.leading_term(order);
    bool divided = false;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (gens[k].is_zero() || !leads[k].mono.divides(lt.mono)) continue;
      rest = rest - gens[k].times_monomial(lt.mono / leads[k].mono, lt.coef / leads[k].coef);
      divided = true;
      break;
    }
    if (!divided) {
      rem.add_term(lt.mono, lt.coef);
      rest.add_term(lt.mono, -lt.coef);
    }
  }
  return rem;
}

MPoly s_polynomial(const MPoly& f, const MPoly& g, MonOrder order) {
  Term lf = f.leading_term(order);
  Term lg = g.leading_term(order);
  Monomial l = lcm(lf.mono, lg.mono);
  return f.times_monomial(l / lf.mono, lf.coef.inverse()) - g.times_monomial(l / lg.mono, lg.coef.inverse());
}

GroebnerBasis buchberger(const std::vector<MPoly>& input, MonOrder order) {
  std::vector<MPoly> g;
  for (const auto& p : input)
    if (!p.is_zero()) g.push_back(make_monic(p, order));
  if (g.empty()) throw std::invalid_argument("buchberger: all generators are zero");

  std::vector<Monomial> lm;
  for (const auto& p : g) lm.push_back(p.leading_term(order).mono);

  std::vector<Pair> pairs;
  for (std::size_t j = 1; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.push_back({i, j, lcm(lm[i], lm[j])});

  // Normal strategy: smallest lcm first, ties broken by index.
  auto before = [order](const Pair& a, const Pair& b) {
    int c = compare(a.lcm, b.lcm, order);
    if (c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  };

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), before);
    Pair pr = *it;
    pairs.erase(it);
    if (coprime(lm[pr.i], lm[pr.j])) continue;

    MPoly h = reduce(s_polynomial(g[pr.i], g[pr.j], order), g, order);
    if (h.is_zero()) continue;
    h = make_monic(h, order);
    Monomial hm = h.leading_term(order).mono;
    std::size_t k = g.size();
    g.push_back(std::move(h));
    lm.push_back(hm);
    for (std::size_t i = 0; i < k; ++i) pairs.push_back({i, k, lcm(lm[i], hm)});
  }

  // Minimize: keep one generator per minimal leading monomial.
  std::vector<std::size_t> idx(g.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return compare(lm[a], lm[b], order) < 0; });
  std::vector<MPoly> minimal;
  std::vector<Monomial> kept;
  for (std::size_t i : idx) {
    bool redundant = std::any_of(kept.begin(), kept.end(), [&](const Monomial& m) { return m.divides(lm[i]); });
    if (redundant) continue;
    kept.push_back(lm[i]);
    minimal.push_back(g[i]);
  }

  // Inter-reduce against the others; leading monomials are unchanged.
  std::vector<MPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<MPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Term lt = minimal[i].leading_term(order);
    MPoly tail = minimal[i];
    tail.add_term(lt.mono, -lt.coef);
    MPoly r = reduce(tail, others, order);
    r.add_term(lt.mono, lt.coef);
    reduced.push_back(make_monic(r, order));
  }
  std::sort(reduced.begin(), reduced.end(), [order](const MPoly& a, const MPoly& b) {
    return compare(a.leading_term(order).mono, b.leading_term(order).mono, order) > 0;
  });
  return GroebnerBasis{order, std::move(reduced)};
}

bool ideal_member(const MPoly& p, const GroebnerBasis& gb) {
  if (p.is_zero()) return true;
  return reduce(p, gb.gens, gb.order).is_zero();
}

bool satisfies_buchberger_criterion(const std::vector<MPoly>& gens, MonOrder order) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!reduce(s_polynomial(gens[i], gens[j], order), gens, order).is_zero()) return false;
  return true;
}

MorphismCertificate morphism_condition(const std::vector<MPoly>& top_forms) {
  std::vector<MPoly> forms;
  int degree = -1;
  for (const auto& f : top_forms) {
    if (!f.is_homogeneous()) throw std::invalid_argument("morphism_condition: form is not homogeneous: " + f.str());
    if (f.is_zero()) continue;
    if (degree >= 0 && f.degree() != degree)
      throw std::invalid_argument("morphism_condition: forms of different degrees");
    degree = f.degree();
    forms.push_back(f);
  }
  if (forms.empty()) throw std::invalid_argument("morphism_condition: all top forms are zero");
  if (degree < 1) throw std::invalid_argument("morphism_condition: forms must have degree >= 1");

  MorphismCertificate cert;
  cert.degree = static_cast<unsigned>(degree);
  cert.basis = buchberger(forms, MonOrder::degrevlex);
  const std::size_t n = forms.front().nvars();
  for (std::size_t v = 0; v < n; ++v) {
    std::optional<Monomial> witness;
    for (const auto& g : cert.basis.gens) {
      Monomial m = g.leading_term(cert.basis.order).mono;
      if (m.pure_power_var() == static_cast<int>(v)) {
        witness = m;
        break;
      }
    }
    if (witness) {
      cert.witnesses.push_back({v, *witness});
    } else {
      cert.missing_variables.push_back(v);
    }
  }
  cert.holds = cert.missing_variables.empty();
  if (!cert.holds) cert.witnesses.clear();
  return cert;
}

}  // namespace idap
