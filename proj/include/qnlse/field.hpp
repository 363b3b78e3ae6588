#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qnlse/qmath.hpp"

namespace qnlse {

enum class Axis { X, T };

/// Uniform spatial grid plus a time stepping schedule t_k = k * dt,
/// k = 0..n_steps.
struct GridSpec {
  double x_min = -5.0;
  double x_max = 5.0;
  std::size_t n_points = 101;
  double dt = 0.1;
  std::size_t n_steps = 10;

  double dx() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
  double x(std::size_t i) const;
  double t(std::size_t k) const { return static_cast<double>(k) * dt; }

  /// Throws DomainError when an invariant fails.
  void validate() const;
};

/// A complex field psi(x, t) that can be evaluated pointwise.
///
/// Optionally carries a continuous logarithm (so fractional powers follow the
/// field across the branch cut instead of jumping) and exact partial
/// derivatives. Without them, log() falls back to the principal branch and
/// only finite differences are available.
class FieldSampler {
 public:
  using ValueFn = std::function<Complex(double, double)>;
  using PartialFn = std::function<Complex(double, double, Axis, int)>;

  explicit FieldSampler(ValueFn value) : value_(std::move(value)) {}

  FieldSampler& with_log(ValueFn log) {
    log_ = std::move(log);
    return *this;
  }
  FieldSampler& with_partials(PartialFn partial) {
    partial_ = std::move(partial);
    return *this;
  }

  Complex operator()(double x, double t) const { return value_(x, t); }

  /// Continuous logarithm when supplied, principal logarithm otherwise.
  Complex log(double x, double t) const;

  bool has_log() const { return static_cast<bool>(log_); }
  bool has_partials() const { return static_cast<bool>(partial_); }

  /// Exact partial derivative; throws DomainError if none was supplied.
  Complex partial(double x, double t, Axis axis, int order) const;

 private:
  ValueFn value_;
  ValueFn log_;
  PartialFn partial_;
};

/// Scalar real potential V(x).
using Potential = std::function<double(double)>;

inline double free_potential(double) { return 0.0; }

}  // namespace qnlse
