#pragma once

#include <stdexcept>
#include <string>

namespace slowwalk {

// Raised when two independent computations of the same quantity disagree,
// or when a proven structural property fails to hold. Always an engine bug.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

// Raised when inputs fall outside the regime where a formula applies.
class RegimeError : public std::invalid_argument {
 public:
  explicit RegimeError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace slowwalk
