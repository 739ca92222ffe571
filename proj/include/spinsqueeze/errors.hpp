#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinsqueeze {

/// Thrown when the squeezing denominator <J_n2>^2 + <J_n3>^2 falls below
/// the cutoff (mean spin parallel to the probed axis, or zero).
class undefined_direction_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a nonlinear function F(n) evaluates to a non-finite value.
class evaluation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expression syntax error. offset() is the byte position in the source text.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace spinsqueeze
