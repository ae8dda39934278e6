#pragma once

#include <stdexcept>
#include <string>

namespace chevflag {

/// Invalid or unsupported run configuration (type, rank, q, field...).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the domain where the operation is defined.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold.
struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

/// A configured cap (dimension, group order, budget) was exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested oracle is not available for this root system.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace chevflag
