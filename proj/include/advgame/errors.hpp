#pragma once

#include <stdexcept>
#include <string>

namespace advgame {

// An exhaustive routine was asked to run past its size guard.
class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A result failed its own certification. Always a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Quadrature did not converge on an improper integral.
class DivergentIntegral : public std::runtime_error {
 public:
  explicit DivergentIntegral(const std::string& what) : std::runtime_error(what) {}
};

// A file could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace advgame
