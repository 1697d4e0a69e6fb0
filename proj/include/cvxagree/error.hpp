#pragma once

#include <stdexcept>
#include <string>

namespace cvxagree {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: unknown identifiers, bad file contents, violated axioms.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A brute-force routine was asked to run above its documented size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition does not hold (e.g. too few senders to drop f).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A protocol invariant broke at runtime, typically because the scenario
/// violates the resilience requirement of the protocol.
class ProtocolViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cvxagree
