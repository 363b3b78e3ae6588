#include "qnlse/field.hpp"

#include <cmath>

#include "qnlse/errors.hpp"

namespace qnlse {

double GridSpec::x(std::size_t i) const {
  if (i + 1 == n_points) {
    return x_max;
  }
  return x_min + static_cast<double>(i) * dx();
}

void GridSpec::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    throw DomainError("grid: x_max must exceed x_min");
  }
  if (n_points < 3) {
    throw DomainError("grid: at least 3 points required");
  }
  if (!std::isfinite(dt) || !(dt > 0.0)) {
    throw DomainError("grid: dt must be positive");
  }
}

Complex FieldSampler::log(double x, double t) const {
  if (log_) {
    return log_(x, t);
  }
  return principal_log(value_(x, t));
}

Complex FieldSampler::partial(double x, double t, Axis axis, int order) const {
  if (!partial_) {
    throw DomainError("sampler has no analytic partial derivatives");
  }
  if (order != 1 && order != 2) {
    throw DomainError("partial derivative order must be 1 or 2");
  }
  return partial_(x, t, axis, order);
}

}  // namespace qnlse
