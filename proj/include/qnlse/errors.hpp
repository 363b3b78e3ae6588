#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qnlse {

/// Argument outside the domain of a function (poles, zero bases, excluded q).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Series evaluation exceeded its term budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Runge-Kutta stage produced a non-finite value.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, int stage, std::size_t element)
      : std::runtime_error(what), stage_(stage), element_(element) {}
  int stage() const noexcept { return stage_; }
  std::size_t element() const noexcept { return element_; }

 private:
  int stage_;
  std::size_t element_;
};

/// Field propagation failed (zero or non-finite value) at a given step and
/// grid index.
class PropagationError : public std::runtime_error {
 public:
  PropagationError(const std::string& what, std::size_t step, std::size_t index)
      : std::runtime_error(what), step_(step), index_(index) {}
  std::size_t step() const noexcept { return step_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t step_;
  std::size_t index_;
};

/// Degenerate least-squares fit in a convergence study (repeated resolution).
class FitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qnlse
