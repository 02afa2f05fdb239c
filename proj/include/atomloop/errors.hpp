#ifndef ATOMLOOP_ERRORS_HPP
#define ATOMLOOP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace atomloop {

// Bad data coming from the outside world (files, command line).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed rule-set text. `position` is a 0-based character offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Violated precondition or internal invariant. Always a bug, never data.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace atomloop

#endif  // ATOMLOOP_ERRORS_HPP
