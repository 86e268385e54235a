#pragma once

#include <stdexcept>
#include <string>

namespace ehcr {

/// Bad user input: config values, CLI flags, out-of-contract arguments.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside a special function's domain (z <= 0, invalid Whittaker pair, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A closed-form evaluation produced something that cannot be a probability.
/// Signals a special-function or branch bug rather than bad input.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ehcr
