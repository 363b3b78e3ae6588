#include "qnlse/residuals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qnlse/errors.hpp"

namespace qnlse {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr int kMaxRichardsonLevels = 8;

double scale_of(Complex field) { return std::max(1.0, std::abs(field)); }

Complex checked_value(const FieldSampler& s, double x, double t) {
  const Complex v = s(x, t);
  require_finite(v, "field value");
  if (v == Complex(0.0, 0.0)) {
    throw DomainError("field vanishes; fractional powers are undefined");
  }
  return v;
}

double default_step(int levels, int order, double coordinate) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::pow(eps, 1.0 / (2.0 * levels + order)) *
         std::max(1.0, std::abs(coordinate));
}

Complex central_difference(const FieldSampler& s, double x, double t, Axis axis,
                           int order, double h) {
  const double origin = axis == Axis::X ? x : t;
  // Representable step, so the stencil is exactly symmetric.
  const double plus = origin + h;
  const double step = plus - origin;
  auto at = [&](double c) { return axis == Axis::X ? s(c, t) : s(x, c); };
  const Complex fp = at(origin + step);
  const Complex fm = at(origin - step);
  if (order == 1) {
    return (fp - fm) / (2.0 * step);
  }
  return (fp - 2.0 * at(origin) + fm) / (step * step);
}

/// Derivative of w = exp(a (log u(x,t) - log_norm)) along one axis.
Complex power_partial(const FieldSampler& s, double a, Complex log_norm, double x,
                      double t, Axis axis, int order,
                      const DerivativeMethod& method) {
  if (std::holds_alternative<Analytic>(method)) {
    const Complex v = checked_value(s, x, t);
    const Complex w = std::exp(a * (s.log(x, t) - log_norm));
    const Complex l1 = s.partial(x, t, axis, 1) / v;
    if (order == 1) {
      return a * w * l1;
    }
    const Complex l2 = s.partial(x, t, axis, 2) / v - l1 * l1;
    return w * (a * a * l1 * l1 + a * l2);
  }
  FieldSampler composed([&s, a, log_norm](double xx, double tt) {
    return std::exp(a * (s.log(xx, tt) - log_norm));
  });
  return fd_partial(composed, x, t, axis, order, method);
}

/// Normalized power u^a with u = field / field(0,0), plus its derivative.
struct NormalizedPower {
  Complex value;
  Complex derivative;
};

NormalizedPower normalized_power(const FieldSampler& s, double a, double x,
                                 double t, Axis axis, int order,
                                 const DerivativeMethod& method) {
  const Complex origin = checked_value(s, 0.0, 0.0);
  const Complex v = checked_value(s, x, t);
  if (a == 1.0) {
    return {v / origin, fd_partial(s, x, t, axis, order, method) / origin};
  }
  const Complex log_norm = s.log(0.0, 0.0);
  return {std::exp(a * (s.log(x, t) - log_norm)),
          power_partial(s, a, log_norm, x, t, axis, order, method)};
}

/// Shared shape of the normalized nonlinear equations:
///   i hbar c d/dt[u^time_power] - H[u^space_power],  u = field / field(0,0).
Complex normalized_residual(const FieldSampler& field, double time_coefficient,
                            double time_power, double space_power, double mass,
                            double hbar, const Potential& potential, double x,
                            double t, const DerivativeMethod& method) {
  const auto dt = normalized_power(field, time_power, x, t, Axis::T, 1, method);
  const auto dxx = normalized_power(field, space_power, x, t, Axis::X, 2, method);
  const Complex lhs = kI * hbar * time_coefficient * dt.derivative;
  const Complex rhs = -(hbar * hbar / (2.0 * mass)) * dxx.derivative +
                      potential(x) * dxx.value;
  return (lhs - rhs) / scale_of(field(x, t));
}

void require_not_two(double q) {
  if (q == 2.0) {
    throw DomainError("NRT equation requires q != 2");
  }
}

}  // namespace

void validate(const DerivativeMethod& method) {
  if (const auto* fd = std::get_if<FiniteDifference>(&method)) {
    if (fd->h_base && !(*fd->h_base > 0.0)) {
      throw DomainError("finite-difference h_base must be positive");
    }
    if (fd->richardson_levels < 1 || fd->richardson_levels > kMaxRichardsonLevels) {
      throw DomainError("richardson_levels must be in [1, 8]");
    }
  }
}

Complex fd_partial(const FieldSampler& sampler, double x, double t, Axis axis,
                   int order, const DerivativeMethod& method) {
  if (order != 1 && order != 2) {
    throw DomainError("partial derivative order must be 1 or 2");
  }
  if (std::holds_alternative<Analytic>(method)) {
    return sampler.partial(x, t, axis, order);
  }
  validate(method);
  const auto& fd = std::get<FiniteDifference>(method);
  const int levels = fd.richardson_levels;
  const double coordinate = axis == Axis::X ? x : t;
  const double h0 = fd.h_base ? *fd.h_base : default_step(levels, order, coordinate);

  std::array<Complex, kMaxRichardsonLevels> row{};
  for (int i = 0; i < levels; ++i) {
    Complex current = central_difference(sampler, x, t, axis, order,
                                         std::ldexp(h0, -i));
    double factor = 1.0;
    for (int j = 1; j <= i; ++j) {
      factor *= 4.0;
      const Complex next = current + (current - row[j - 1]) / (factor - 1.0);
      row[j - 1] = current;
      current = next;
    }
    row[i] = current;
  }
  return row[levels - 1];
}

double hypergeom_ode_residual(const HypParams& p) {
  const Complex f = hyp2f1(p);
  const Complex f1 = hyp2f1_deriv(p, 1);
  const Complex f2 = hyp2f1_deriv(p, 2);
  const Complex residual = p.z * (1.0 - p.z) * f2 +
                           (p.gamma - (p.alpha + p.beta + 1.0) * p.z) * f1 -
                           p.alpha * p.beta * f;
  return std::abs(residual) / scale_of(f);
}

Complex new_nlse_residual(const FieldSampler& field, double q, double mass,
                          double hbar, double x, double t,
                          const DerivativeMethod& method) {
  const Complex value = checked_value(field, x, t);
  const Complex power = std::exp((1.0 - q) * field.log(x, t));
  const Complex d_t = fd_partial(field, x, t, Axis::T, 1, method);
  const Complex d_xx = fd_partial(field, x, t, Axis::X, 2, method);
  const Complex lhs = kI * hbar * q * d_t;
  const Complex rhs = power * (-(hbar * hbar / (2.0 * mass)) * d_xx);
  return (lhs - rhs) / scale_of(value);
}

Complex generalized_nlse_residual(const FieldSampler& psi, double q, double mass,
                                  double hbar, const Potential& potential,
                                  double x, double t,
                                  const DerivativeMethod& method) {
  return normalized_residual(psi, 1.0, q, 1.0, mass, hbar, potential, x, t,
                             method);
}

Complex new_nlse_phi_residual(const FieldSampler& phi, double q, double mass,
                              double hbar, const Potential& potential, double x,
                              double t, const DerivativeMethod& method) {
  if (q == 0.0) {
    throw DomainError("the phi form requires q != 0");
  }
  return normalized_residual(phi, 1.0, 1.0, 1.0 / q, mass, hbar, potential, x, t,
                             method);
}

Complex nrt_residual(const FieldSampler& psi, double q, double mass, double hbar,
                     const Potential& potential, double x, double t,
                     const DerivativeMethod& method) {
  require_not_two(q);
  return normalized_residual(psi, 2.0 - q, 1.0, 2.0 - q, mass, hbar, potential,
                             x, t, method);
}

Complex separated_time_residual(SolutionKind kind, const FieldSampler& f,
                                double q, double lambda, double hbar, double t,
                                const DerivativeMethod& method) {
  const Complex value = checked_value(f, 0.0, t);
  const Complex log_value = f.log(0.0, t);
  Complex lhs;
  Complex rhs;
  if (kind == SolutionKind::NewEquation) {
    lhs = kI * hbar * power_partial(f, q, 0.0, 0.0, t, Axis::T, 1, method);
    rhs = lambda * value;
  } else {
    require_not_two(q);
    lhs = kI * hbar * (2.0 - q) * fd_partial(f, 0.0, t, Axis::T, 1, method);
    rhs = lambda * std::exp((2.0 - q) * log_value);
  }
  return (lhs - rhs) / scale_of(value);
}

Complex separated_space_residual(SolutionKind kind, const FieldSampler& g,
                                 double q, double lambda, double mass,
                                 double hbar, double x,
                                 const DerivativeMethod& method) {
  const Complex value = checked_value(g, x, 0.0);
  const Complex log_value = g.log(x, 0.0);
  const double kinetic = -(hbar * hbar / (2.0 * mass));
  Complex lhs;
  Complex rhs;
  if (kind == SolutionKind::NewEquation) {
    lhs = kinetic * fd_partial(g, x, 0.0, Axis::X, 2, method);
    rhs = lambda * std::exp(q * log_value);
  } else {
    require_not_two(q);
    lhs = kinetic * power_partial(g, 2.0 - q, 0.0, x, 0.0, Axis::X, 2, method);
    rhs = lambda * value;
  }
  return (lhs - rhs) / scale_of(value);
}

const char* to_string(EquationTag tag) {
  switch (tag) {
    case EquationTag::NewNlse: return "new_nlse";
    case EquationTag::GeneralizedNlse: return "generalized_nlse";
    case EquationTag::NewNlsePhi: return "new_nlse_phi";
    case EquationTag::Nrt: return "nrt";
    case EquationTag::SeparatedTimeNew: return "separated_time_new";
    case EquationTag::SeparatedTimeNrt: return "separated_time_nrt";
    case EquationTag::SeparatedSpaceNew: return "separated_space_new";
    case EquationTag::SeparatedSpaceNrt: return "separated_space_nrt";
  }
  return "unknown";
}

std::optional<EquationTag> parse_equation_tag(const std::string& name) {
  for (auto tag : {EquationTag::NewNlse, EquationTag::GeneralizedNlse,
                   EquationTag::NewNlsePhi, EquationTag::Nrt,
                   EquationTag::SeparatedTimeNew, EquationTag::SeparatedTimeNrt,
                   EquationTag::SeparatedSpaceNew, EquationTag::SeparatedSpaceNrt}) {
    if (name == to_string(tag)) {
      return tag;
    }
  }
  return std::nullopt;
}

ResidualReport scan_residual(const ResidualProblem& problem, const GridSpec& grid,
                             const DerivativeMethod& method) {
  grid.validate();
  validate(method);
  const auto tag = problem.equation;
  const bool time_only =
      tag == EquationTag::SeparatedTimeNew || tag == EquationTag::SeparatedTimeNrt;
  const bool space_only =
      tag == EquationTag::SeparatedSpaceNew || tag == EquationTag::SeparatedSpaceNrt;

  auto evaluate = [&](double x, double t) -> Complex {
    const auto& f = problem.field;
    switch (tag) {
      case EquationTag::NewNlse:
        return new_nlse_residual(f, problem.q, problem.mass, problem.hbar, x, t,
                                 method);
      case EquationTag::GeneralizedNlse:
        return generalized_nlse_residual(f, problem.q, problem.mass, problem.hbar,
                                         problem.potential, x, t, method);
      case EquationTag::NewNlsePhi:
        return new_nlse_phi_residual(f, problem.q, problem.mass, problem.hbar,
                                     problem.potential, x, t, method);
      case EquationTag::Nrt:
        return nrt_residual(f, problem.q, problem.mass, problem.hbar,
                            problem.potential, x, t, method);
      case EquationTag::SeparatedTimeNew:
        return separated_time_residual(SolutionKind::NewEquation, f, problem.q,
                                       problem.lambda, problem.hbar, t, method);
      case EquationTag::SeparatedTimeNrt:
        return separated_time_residual(SolutionKind::NRT, f, problem.q,
                                       problem.lambda, problem.hbar, t, method);
      case EquationTag::SeparatedSpaceNew:
        return separated_space_residual(SolutionKind::NewEquation, f, problem.q,
                                        problem.lambda, problem.mass,
                                        problem.hbar, x, method);
      case EquationTag::SeparatedSpaceNrt:
        return separated_space_residual(SolutionKind::NRT, f, problem.q,
                                        problem.lambda, problem.mass,
                                        problem.hbar, x, method);
    }
    return {};
  };

  const std::size_t nx = time_only ? 1 : grid.n_points;
  const std::size_t nt = space_only ? 1 : grid.n_steps + 1;

  ResidualReport report;
  report.equation_tag = to_string(tag);
  double sum_sq = 0.0;
  bool first = true;
  for (std::size_t k = 0; k < nt; ++k) {
    const double t = space_only ? 0.0 : grid.t(k);
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = time_only ? 0.0 : grid.x(i);
      double magnitude = 0.0;
      try {
        magnitude = std::abs(evaluate(x, t));
      } catch (const DomainError& e) {
        std::ostringstream msg;
        msg.precision(17);
        msg << e.what() << " at (x=" << x << ", t=" << t << ")";
        throw DomainError(msg.str());
      }
      if (!std::isfinite(magnitude)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "non-finite residual at (x=" << x << ", t=" << t << ")";
        throw DomainError(msg.str());
      }
      sum_sq += magnitude * magnitude;
      if (first || magnitude > report.max_abs) {
        report.max_abs = magnitude;
        report.worst_x = x;
        report.worst_t = t;
        first = false;
      }
      ++report.n_samples;
    }
  }
  report.l2 = std::sqrt(sum_sq);
  return report;
}

}  // namespace qnlse
