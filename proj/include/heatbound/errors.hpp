#pragma once

#include <stdexcept>
#include <string>

namespace heatbound {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Counting field so large that e^{ηω} beats the thermal/cutoff decay.
class DivergentIntegrandError : public DomainError {
 public:
  using DomainError::DomainError;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved, double requested)
      : std::runtime_error(what + " (achieved error " + std::to_string(achieved) +
                           ", requested " + std::to_string(requested) + ")"),
        achieved_(achieved),
        requested_(requested) {}

  double achieved_error() const noexcept { return achieved_; }
  double requested_error() const noexcept { return requested_; }

 private:
  double achieved_;
  double requested_;
};

class SolverError : public std::runtime_error {
 public:
  enum class Kind { step_underflow, too_many_steps, non_finite };

  SolverError(Kind kind, double time, const std::string& what)
      : std::runtime_error(what + " at t=" + std::to_string(time)), kind_(kind), time_(time) {}

  Kind kind() const noexcept { return kind_; }
  double time() const noexcept { return time_; }

 private:
  Kind kind_;
  double time_;
};

// A quantity that must be positive by construction (a trace, a probability) is not.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heatbound
