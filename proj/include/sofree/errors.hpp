#pragma once

#include <stdexcept>
#include <string>

namespace sofree {

/// Malformed input: size mismatches, non-bijections, violated preconditions.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured enumeration or computation cap would be exceeded.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Internal consistency failure (for example a singular Gram matrix over the
/// formal symbol N). Never expected; signals an arithmetic bug.
class ArithmeticError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

inline void require_cap(bool condition, const std::string& message) {
  if (!condition) throw CapExceeded(message);
}

}  // namespace detail
}  // namespace sofree
