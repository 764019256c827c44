#pragma once

// Text and JSON input for polynomial systems.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := int | 'x' uint | '(' expr ')'
//
// A leading '-' is read as 0 - term. Division and decimals are rejected.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "idap/mpoly.hpp"
#include "idap/variety.hpp"

namespace idap {

struct SystemDescriptor {
  std::size_t n = 0;
  std::vector<MPoly> polys;
  std::vector<std::string> labels;  // P1..Pm unless given
  std::optional<Box> box;

  std::size_t m() const { return polys.size(); }
  /// One polynomial per line, "label: canonical text".
  std::string str() const;
};

/// Parses one polynomial in x1..xn. Throws ParseError.
MPoly parse_polynomial(std::string_view text, std::size_t n);

/// Highest variable index mentioned in the text (0 if none). Throws
/// ParseError on malformed variables.
std::size_t max_variable_index(std::string_view text);

/// Polynomials separated by ';' or newlines; '#' starts a comment; an
/// optional "label:" prefix names a polynomial. n defaults to the highest
/// variable index.
SystemDescriptor parse_system(std::string_view text, std::optional<std::size_t> n = std::nullopt);

/// Coefficient-map form:
///   {"n": 2, "polys": [{"label": "P1", "terms": [{"exp": [2, 0], "coef": 1}]}],
///    "box": [["0", "1"], ["0", "1"]]}
/// Coefficients are integers or integer strings. Throws ParseError.
SystemDescriptor parse_system_json(const nlohmann::json& j);

/// Per-axis "lo..hi", comma separated, e.g. "0..1,-1/2..1/2".
Box parse_box(std::string_view text);

}  // namespace idap
