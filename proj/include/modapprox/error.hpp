#pragma once

#include <stdexcept>
#include <string>

namespace modapprox {

/// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation could not produce a trustworthy result (insufficient
/// precision, a bound that should be impossible, a capped sum overflowing).
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace modapprox
