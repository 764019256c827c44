#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idap {

/// Malformed polynomial or system text. `position` is a 0-based offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// An operation refused to run because a mathematical precondition fails,
/// e.g. a growth condition on psi.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace idap
