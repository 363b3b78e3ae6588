#include "qnlse/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qnlse/errors.hpp"

namespace qnlse {

namespace {

constexpr Complex kI{0.0, 1.0};

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_stage(const StateVector& k, int stage) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!finite(k[i])) {
      throw BlowUpError("RK4 stage " + std::to_string(stage) +
                            " produced a non-finite value at element " +
                            std::to_string(i),
                        stage, i);
    }
  }
}

StateVector axpy(std::span<const Complex> y, double h, const StateVector& k) {
  StateVector out(y.begin(), y.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += h * k[i];
  }
  return out;
}

/// Number of steps of size <= dt covering [0, span].
std::size_t step_count(double span, double dt) {
  return static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
}

void require_step(double end, double step, const char* what) {
  if (!std::isfinite(end) || end < 0.0) {
    throw DomainError(std::string(what) + ": end point must be >= 0");
  }
  if (!std::isfinite(step) || !(step > 0.0)) {
    throw DomainError(std::string(what) + ": step must be positive");
  }
}

/// Fixed-step RK4 over [0, end] for a system whose first component is
/// reported, tracking that component's logarithm between steps.
template <typename Rhs, typename Report>
Trajectory march(StateVector state, double end, double step, Complex& log_ref,
                 const Rhs& rhs, const Report& report) {
  Trajectory out;
  out.push_back({0.0, report(state)});
  const std::size_t n = end == 0.0 ? 0 : step_count(end, step);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double h = (k + 1 == n) ? end - s : step;
    state = rk4_step(state, rhs, s, h);
    s = (k + 1 == n) ? end : static_cast<double>(k + 1) * step;
    if (state[0] == Complex(0.0, 0.0)) {
      throw DomainError("solution reached zero at " + std::to_string(s));
    }
    log_ref = continuous_log(state[0], log_ref);
    out.push_back({s, report(state)});
  }
  return out;
}

}  // namespace

StateVector rk4_step(std::span<const Complex> state, const RightHandSide& rhs,
                     double t, double dt) {
  const StateVector k1 = rhs(t, state);
  check_stage(k1, 1);
  const StateVector k2 = rhs(t + 0.5 * dt, axpy(state, 0.5 * dt, k1));
  check_stage(k2, 2);
  const StateVector k3 = rhs(t + 0.5 * dt, axpy(state, 0.5 * dt, k2));
  check_stage(k3, 3);
  const StateVector k4 = rhs(t + dt, axpy(state, dt, k3));
  check_stage(k4, 4);
  StateVector out(state.begin(), state.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  check_stage(out, 5);
  return out;
}

Trajectory integrate_separated_time(SolutionKind kind, double q, double lambda,
                                    double hbar, double t_end, double dt) {
  require_step(t_end, dt, "integrate_separated_time");
  double coefficient = 0.0;
  if (kind == SolutionKind::NewEquation) {
    if (q == 0.0) {
      throw DomainError("temporal equation of the new equation requires q != 0");
    }
    coefficient = q;
  } else {
    if (q == 2.0) {
      throw DomainError("NRT equation requires q != 2");
    }
    coefficient = 2.0 - q;
  }
  const Complex scale = lambda / (kI * hbar * coefficient);
  Complex log_ref{0.0, 0.0};
  const RightHandSide rhs = [&](double, std::span<const Complex> f) {
    return StateVector{scale * std::exp((2.0 - q) * continuous_log(f[0], log_ref))};
  };
  return march({Complex(1.0, 0.0)}, t_end, dt, log_ref, rhs,
               [](const StateVector& s) { return s[0]; });
}

Trajectory integrate_separated_space(SolutionKind kind, double q, double lambda,
                                     double mass, double hbar, double x_end,
                                     double dx) {
  require_step(x_end, dx, "integrate_separated_space");
  if (!(mass > 0.0) || !(hbar > 0.0) || !(lambda >= 0.0)) {
    throw DomainError("integrate_separated_space: mass, hbar > 0 and lambda >= 0");
  }
  const double momentum = std::sqrt(2.0 * mass * lambda);
  const double stiffness = 2.0 * mass * lambda / (hbar * hbar);

  double root = 0.0;
  double power = 0.0;
  double lift = 1.0;  // u = g^lift
  if (kind == SolutionKind::NewEquation) {
    if (!(q > -1.0)) {
      throw DomainError("spatial equation of the new equation requires q > -1");
    }
    root = std::sqrt(2.0 * (q + 1.0));
    power = q;
  } else {
    const double product = (2.0 - q) * (3.0 - q);
    if (!(product > 0.0)) {
      throw DomainError("NRT spatial equation requires (2-q)(3-q) > 0");
    }
    root = std::sqrt(2.0 * product);
    lift = 2.0 - q;
    power = 1.0 / lift;
  }
  const Complex slope = lift * 2.0 * kI * momentum / (hbar * root);

  Complex log_ref{0.0, 0.0};
  const RightHandSide rhs = [&](double, std::span<const Complex> y) {
    const Complex nonlinear = std::exp(power * continuous_log(y[0], log_ref));
    return StateVector{y[1], -stiffness * nonlinear};
  };
  const auto report = [&](const StateVector& y) {
    if (lift == 1.0) {
      return y[0];
    }
    return std::exp(continuous_log(y[0], log_ref) / lift);
  };
  try {
    return march({Complex(1.0, 0.0), slope}, x_end, dx, log_ref, rhs, report);
  } catch (const DomainError& e) {
    throw DomainError(std::string("integrate_separated_space: ") + e.what());
  }
}

WaveField WaveField::sample(const GridSpec& grid, double t,
                            const std::function<Complex(double, double)>& field) {
  WaveField w{grid, t, {}};
  w.values.reserve(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    w.values.push_back(field(grid.x(i), t));
  }
  return w;
}

double stability_dt(const GridSpec& grid, double mass, double hbar) {
  const double dx = grid.dx();
  return 0.2 * dx * dx * mass / hbar;
}

std::vector<WaveField> propagate(PdeEquation equation, const WaveField& initial,
                                 double q, double mass, double hbar,
                                 const Potential& potential,
                                 const BoundarySource& boundary) {
  const GridSpec& grid = initial.grid;
  grid.validate();
  if (initial.values.size() != grid.n_points) {
    throw DomainError("initial field length does not match the grid");
  }
  if (!(mass > 0.0) || !(hbar > 0.0)) {
    throw DomainError("propagate: mass and hbar must be positive");
  }
  double power = 1.0;
  double coefficient = 1.0;
  if (equation == PdeEquation::NewEquation) {
    if (q == 0.0) {
      throw DomainError("new equation requires q != 0");
    }
    power = 1.0 / q;
  } else {
    if (q == 2.0) {
      throw DomainError("NRT equation requires q != 2");
    }
    power = 2.0 - q;
    coefficient = 2.0 - q;
  }
  const std::size_t n = grid.n_points;
  const double dx = grid.dx();
  const double kinetic = -(hbar * hbar / (2.0 * mass)) / (dx * dx);
  const Complex scale = 1.0 / (kI * hbar * coefficient);
  std::vector<double> potential_values(n);
  for (std::size_t i = 0; i < n; ++i) {
    potential_values[i] = potential(grid.x(i));
  }

  // Continuous logarithm of the field, anchored at the grid point nearest
  // x = 0 and unwrapped outwards.
  std::vector<Complex> log_ref(n);
  std::size_t anchor = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(grid.x(i)) < std::abs(grid.x(anchor))) {
      anchor = i;
    }
  }
  try {
    log_ref[anchor] = principal_log(initial.values[anchor]);
    for (std::size_t i = anchor + 1; i < n; ++i) {
      log_ref[i] = continuous_log(initial.values[i], log_ref[i - 1]);
    }
    for (std::size_t i = anchor; i-- > 0;) {
      log_ref[i] = continuous_log(initial.values[i], log_ref[i + 1]);
    }
  } catch (const DomainError&) {
    throw PropagationError("initial field has a zero", 0, 0);
  }

  std::size_t current_step = 0;
  std::vector<Complex> nonlinear(n);
  const RightHandSide rhs = [&](double tau, std::span<const Complex> w) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex value = w[i];
      if (i == 0 || i + 1 == n) {
        value = boundary(grid.x(i), tau);
      }
      if (power == 1.0) {
        nonlinear[i] = value;
        continue;
      }
      if (value == Complex(0.0, 0.0) || !finite(value)) {
        throw PropagationError("field reached zero or a non-finite value at step " +
                                   std::to_string(current_step) + ", index " +
                                   std::to_string(i),
                               current_step, i);
      }
      nonlinear[i] = std::exp(power * continuous_log(value, log_ref[i]));
    }
    StateVector out(n, Complex(0.0, 0.0));
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const Complex laplacian = nonlinear[i - 1] - 2.0 * nonlinear[i] + nonlinear[i + 1];
      out[i] = scale * (kinetic * laplacian + potential_values[i] * nonlinear[i]);
    }
    return out;
  };

  std::vector<WaveField> frames;
  frames.reserve(grid.n_steps + 1);
  frames.push_back(initial);
  StateVector state = initial.values;
  for (std::size_t k = 0; k < grid.n_steps; ++k) {
    current_step = k + 1;
    const double t = initial.t + grid.t(k);
    try {
      state = rk4_step(state, rhs, t, grid.dt);
    } catch (const BlowUpError& e) {
      throw PropagationError(std::string("propagation blew up: ") + e.what(),
                             current_step, e.element());
    }
    const double t_next = initial.t + grid.t(k + 1);
    state.front() = boundary(grid.x(0), t_next);
    state.back() = boundary(grid.x(n - 1), t_next);
    for (std::size_t i = 0; i < n; ++i) {
      if (state[i] == Complex(0.0, 0.0) || !finite(state[i])) {
        throw PropagationError("field reached zero or a non-finite value at step " +
                                   std::to_string(current_step) + ", index " +
                                   std::to_string(i),
                               current_step, i);
      }
      log_ref[i] = continuous_log(state[i], log_ref[i]);
    }
    frames.push_back(WaveField{grid, t_next, state});
  }
  return frames;
}

double fit_order(std::span<const double> resolutions, std::span<const double> errors) {
  if (resolutions.size() != errors.size() || resolutions.size() < 2) {
    throw FitError("order fit needs at least two (resolution, error) pairs");
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    if (!(resolutions[i] > 0.0) || !(errors[i] > 0.0) ||
        !std::isfinite(errors[i])) {
      throw FitError("order fit needs positive finite resolutions and errors");
    }
    lx.push_back(std::log(resolutions[i]));
    ly.push_back(std::log(errors[i]));
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 1e-14 * n)) {
    throw FitError("order fit is degenerate: resolutions are not distinct");
  }
  return sxy / sxx;
}

ConvergenceReport convergence_study(const std::function<double(double)>& error_at,
                                    double base_resolution, int levels) {
  if (levels < 3) {
    throw DomainError("convergence study needs at least 3 refinement levels");
  }
  if (!(base_resolution > 0.0)) {
    throw DomainError("convergence study needs a positive base resolution");
  }
  ConvergenceReport report;
  for (int level = 0; level < levels; ++level) {
    const double h = std::ldexp(base_resolution, -level);
    report.resolutions.push_back(h);
    report.errors.push_back(error_at(h));
    if (level > 0 && !(report.errors[level] < report.errors[level - 1])) {
      report.monotone = false;
    }
  }
  report.observed_order = fit_order(report.resolutions, report.errors);
  return report;
}

ClosedForm manufactured_solution(const ManufacturedCase& c) {
  const ClosedForm psi = q_plane_wave_form(c.spec);
  return c.equation == PdeEquation::NewEquation ? psi.pow(c.spec.q()) : psi;
}

double manufactured_error(const ManufacturedCase& c, double dx, double dt) {
  const ClosedForm exact = manufactured_solution(c);
  GridSpec grid;
  grid.x_min = c.x_min;
  grid.x_max = c.x_max;
  grid.n_points = static_cast<std::size_t>(std::lround((c.x_max - c.x_min) / dx)) + 1;
  grid.dt = dt;
  grid.n_steps = static_cast<std::size_t>(std::lround(c.t_end / dt));
  const auto field = [&exact](double x, double t) { return exact.value(x, t); };
  const auto frames =
      propagate(c.equation, WaveField::sample(grid, 0.0, field), c.spec.q(),
                c.spec.mass(), c.spec.hbar(), free_potential, field);
  const WaveField& last = frames.back();
  double error = 0.0;
  for (std::size_t i = 1; i + 1 < grid.n_points; ++i) {
    error = std::max(error, std::abs(last.values[i] - exact.value(grid.x(i), last.t)));
  }
  return error;
}

}  // namespace qnlse
