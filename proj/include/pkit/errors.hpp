#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pkit {

/// Malformed expression text. `position` is a 0-based byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A caller handed an input outside an operation's domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numeric validation could not produce a trustworthy result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An algorithmic invariant failed. Always a bug, never a user error.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pkit

#define PKIT_ASSERT(cond, msg)                                              \
  do {                                                                      \
    if (!(cond))                                                            \
      throw ::pkit::InternalError(std::string("invariant violated: ") + (msg)); \
  } while (0)
