#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qnlse/field.hpp"
#include "qnlse/qmath.hpp"
#include "qnlse/solutions.hpp"

namespace qnlse {

using StateVector = std::vector<Complex>;
using RightHandSide = std::function<StateVector(double, std::span<const Complex>)>;

/// Classical four-stage Runge-Kutta step. Throws BlowUpError (carrying the
/// stage index 1..4, or 5 for the combined update) on non-finite values.
StateVector rk4_step(std::span<const Complex> state, const RightHandSide& rhs,
                     double t, double dt);

struct TrajectoryPoint {
  double coordinate;
  Complex value;
};
using Trajectory = std::vector<TrajectoryPoint>;

/// Integrates the temporal factor from f(0) = 1 to t_end.
///   NewEquation: df/dt = lambda f^(2-q) / (i hbar q)
///   NRT:         df/dt = lambda f^(2-q) / (i hbar (2-q))
/// The final step is shortened when t_end is not a multiple of dt.
Trajectory integrate_separated_time(SolutionKind kind, double q, double lambda,
                                    double hbar, double t_end, double dt);

/// Integrates the spatial factor from g(0) = 1 with g'(0) equal to the exact
/// slope of the closed form for momentum p = sqrt(2 m lambda).
///   NewEquation: g'' = -(2 m lambda / hbar^2) g^q
///   NRT:         u'' = -(2 m lambda / hbar^2) u^(1/(2-q)),  g = u^(1/(2-q))
/// Throws DomainError naming x when g reaches zero.
Trajectory integrate_separated_space(SolutionKind kind, double q, double lambda,
                                     double mass, double hbar, double x_end,
                                     double dx);

/// Field samples on a uniform grid at one time.
struct WaveField {
  GridSpec grid;
  double t = 0.0;
  std::vector<Complex> values;

  /// Samples `field` at every grid point.
  static WaveField sample(const GridSpec& grid, double t,
                          const std::function<Complex(double, double)>& field);
};

/// Nonlinear equation integrated by the propagator.
///   NewEquation: i hbar du/dt = H u^(1/q)           (u = phi / phi(0,0))
///   NRT:         i hbar (2-q) du/dt = H u^(2-q)      (u = psi / psi(0,0))
enum class PdeEquation { NewEquation, NRT };

/// Exact Dirichlet data u(x, t) at the two domain ends.
using BoundarySource = std::function<Complex(double, double)>;

/// Largest dt of the explicit scheme's diffusive heuristic 0.2 dx^2 m / hbar.
double stability_dt(const GridSpec& grid, double mass, double hbar);

/// Method of lines: central second-order Laplacian, pointwise nonlinearity,
/// RK4 in time with boundary values injected at every stage. The field's
/// logarithm is tracked per grid point so the fractional power stays on the
/// branch continuous with the initial data. Runs initial.grid.n_steps steps of
/// initial.grid.dt and returns every frame including the initial one.
/// Throws PropagationError when a value reaches zero or becomes non-finite.
std::vector<WaveField> propagate(PdeEquation equation, const WaveField& initial,
                                 double q, double mass, double hbar,
                                 const Potential& potential,
                                 const BoundarySource& boundary);

struct ConvergenceReport {
  std::vector<double> resolutions;
  std::vector<double> errors;
  double observed_order = 0.0;
  bool monotone = true;
};

/// Least-squares slope of log(error) against log(resolution). Throws
/// FitError for fewer than two distinct resolutions or non-positive errors.
double fit_order(std::span<const double> resolutions, std::span<const double> errors);

/// Runs error_at(h) for h = base, base/2, ... (levels values) and fits the
/// order. A non-decreasing error between levels clears `monotone`.
ConvergenceReport convergence_study(const std::function<double(double)>& error_at,
                                    double base_resolution, int levels);

/// Manufactured-solution setup: the q-plane wave (raised to q for the new
/// equation) imposed through initial and boundary data on [x_min, x_max].
struct ManufacturedCase {
  PdeEquation equation = PdeEquation::NewEquation;
  FreeParticleSpec spec{1.1, 1.0, 0.5, 1.0};
  double x_min = -5.0;
  double x_max = 5.0;
  double t_end = 0.1;
};

/// Exact field the propagator should reproduce for the case.
ClosedForm manufactured_solution(const ManufacturedCase& c);

/// Interior L-infinity error at t_end for spacing dx and step dt. The grid
/// gets round((x_max - x_min) / dx) + 1 points.
double manufactured_error(const ManufacturedCase& c, double dx, double dt);

}  // namespace qnlse
