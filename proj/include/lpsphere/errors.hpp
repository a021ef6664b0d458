#pragma once

#include <stdexcept>
#include <string>

namespace lpsphere {

/// Argument outside the mathematical domain of a function (e.g. Γ at x ≤ 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold for the inputs.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not reach the requested accuracy.  Carries the
/// best value obtained and its error estimate so callers can still report it.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double partial, double est_error)
      : std::runtime_error(what), partial_(partial), est_error_(est_error) {}

  double partial() const noexcept { return partial_; }
  double est_error() const noexcept { return est_error_; }

 private:
  double partial_;
  double est_error_;
};

/// The inputs satisfy every checked hypothesis but the resulting bound would be
/// vacuous (e.g. a non-positive normalizing integral).
class DegenerateBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A work budget (e.g. enumeration node count) was exhausted.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::string completed)
      : std::runtime_error(what), completed_(std::move(completed)) {}

  /// Human-readable description of what was finished before the budget ran out.
  const std::string& completed() const noexcept { return completed_; }

 private:
  std::string completed_;
};

}  // namespace lpsphere
