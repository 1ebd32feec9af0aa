#pragma once

#include <stdexcept>

namespace qtwin {

// Invalid input: malformed model files, out-of-range qubit indices,
// unsupported structure/backend pairings. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request exceeds a configured cap (qubit count, enumeration size).
// Maps to CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qtwin
