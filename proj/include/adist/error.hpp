#pragma once

#include <stdexcept>
#include <string>

namespace adist {

/// Raised when an operation receives a function of the wrong kind
/// (e.g. a multiplicative spec where an additive one is required).
class kind_mismatch_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a buffer for a sieve or sample cannot be allocated.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed function spec files.
class spec_parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace adist
