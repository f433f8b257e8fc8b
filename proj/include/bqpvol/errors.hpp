#pragma once

#include <stdexcept>
#include <string>

namespace bqp {

// Error hierarchy. The CLI maps each class to its own exit code.

/// Invalid argument or structurally unsuitable input (bad family parameter,
/// non-cactus graph where a cactus is required, even odd-cycle set, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configurable size cap was exceeded.
class SizeError : public std::runtime_error {
 public:
  SizeError(const std::string& what, std::size_t reached = 0)
      : std::runtime_error(what), reached_(reached) {}

  /// How far the computation got (e.g. memo entries) before giving up.
  std::size_t reached() const { return reached_; }

 private:
  std::size_t reached_;
};

/// The requested quantity has no implemented route for this input.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation's input precondition does not hold (e.g. point outside Q(G)).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant. Should never be observed.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bqp
