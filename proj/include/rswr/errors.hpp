#pragma once

#include <stdexcept>
#include <string>

namespace rswr {

/// Malformed arguments: mismatched lengths, indices out of range, bad shapes.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Courant number outside (0, 1].
class StabilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Run parameters that cannot produce a valid run (thin overlap, bad parity, schema violations).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The window protocol cannot make progress or received an inconsistent message set.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A broken internal invariant (e.g. a global node not covered by any subdomain).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rswr
