#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace obstructor {

/// Malformed textual input (characters, dims lists, cache records).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The number of summands does not match the dimension the problem requires.
class DimensionMismatch : public std::runtime_error {
 public:
  DimensionMismatch(const std::string& what, std::size_t expected, std::size_t actual)
      : std::runtime_error(what), expected_(expected), actual_(actual) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

/// A precondition of a domain operation does not hold (rank too large, k > n, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace obstructor
