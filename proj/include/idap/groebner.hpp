#pragma once

// Buchberger's algorithm over Q and the zero-dimensionality test used to
// decide whether the top-degree forms of a system vanish together only at 0.

#include <optional>
#include <vector>

#include "idap/mpoly.hpp"

namespace idap {

/// Reduced Groebner basis: monic, inter-reduced, sorted by descending leading
/// monomial. Unique for a given ideal and order.
struct GroebnerBasis {
  MonOrder order = MonOrder::degrevlex;
  std::vector<MPoly> gens;

  bool contains_one() const;
};

/// Full multivariate division remainder: no monomial of the result is
/// divisible by a leading monomial of `gens`.
MPoly reduce(const MPoly& p, const std::vector<MPoly>& gens, MonOrder order);

MPoly s_polynomial(const MPoly& f, const MPoly& g, MonOrder order);

/// Throws std::invalid_argument if every generator is zero.
GroebnerBasis buchberger(const std::vector<MPoly>& gens, MonOrder order = MonOrder::degrevlex);

bool ideal_member(const MPoly& p, const GroebnerBasis& gb);

/// True when every S-polynomial of pairs of `gens` reduces to 0 modulo `gens`.
bool satisfies_buchberger_criterion(const std::vector<MPoly>& gens, MonOrder order);

struct PurePowerWitness {
  std::size_t var;  // slot index, variable x_{var+1}
  Monomial leading;
};

/// Outcome of the morphism test. `holds` iff the leading-term ideal of the
/// top forms contains a pure power of every variable.
struct MorphismCertificate {
  bool holds = false;
  unsigned degree = 0;
  GroebnerBasis basis;
  std::vector<PurePowerWitness> witnesses;     // filled when holds
  std::vector<std::size_t> missing_variables;  // filled when !holds
};

/// Input: homogeneous forms of one common degree d >= 1 in n variables.
/// Zero forms are dropped. Throws if all are zero or one is not homogeneous.
MorphismCertificate morphism_condition(const std::vector<MPoly>& top_forms);

}  // namespace idap
