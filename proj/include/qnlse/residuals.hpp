#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "qnlse/field.hpp"
#include "qnlse/qmath.hpp"
#include "qnlse/solutions.hpp"

namespace qnlse {

/// Use the sampler's exact partial derivatives.
struct Analytic {};

/// Central differences with Richardson extrapolation over `levels` step
/// sizes h, h/2, ..., h/2^(levels-1). levels == 1 is a plain central
/// difference. Without an explicit h_base the step is
/// eps^(1/(2 levels + order)) * max(1, |coordinate|), which reduces to the
/// usual eps^(1/3) for a single first-derivative stencil.
struct FiniteDifference {
  std::optional<double> h_base;
  int richardson_levels = 2;
};

using DerivativeMethod = std::variant<Analytic, FiniteDifference>;

/// Throws DomainError for h_base <= 0 or fewer than one level.
void validate(const DerivativeMethod& method);

/// Partial derivative of the sampler at (x, t).
Complex fd_partial(const FieldSampler& sampler, double x, double t, Axis axis,
                   int order, const DerivativeMethod& method);

/// |z(1-z)F'' + [gamma-(alpha+beta+1)z]F' - alpha beta F| / max(1, |F|).
double hypergeom_ode_residual(const HypParams& params);

// Pointwise scaled residuals. Each returns (lhs - rhs) / max(1, |field|) and
// throws DomainError where the field (or its value at the origin) vanishes.
// Fractional powers of field values use sampler.log(), so a sampler carrying
// a continuous logarithm is followed across the principal branch cut.

/// i hbar q dF/dt - F^(1-q) H0 F, with H0 = -(hbar^2 / 2m) d2/dx2.
Complex new_nlse_residual(const FieldSampler& field, double q, double mass,
                          double hbar, double x, double t,
                          const DerivativeMethod& method);

/// i hbar d/dt [psi/psi(0,0)]^q - H [psi/psi(0,0)].
Complex generalized_nlse_residual(const FieldSampler& psi, double q, double mass,
                                  double hbar, const Potential& potential,
                                  double x, double t,
                                  const DerivativeMethod& method);

/// i hbar d/dt [phi/phi(0,0)] - H [phi/phi(0,0)]^(1/q).
Complex new_nlse_phi_residual(const FieldSampler& phi, double q, double mass,
                              double hbar, const Potential& potential, double x,
                              double t, const DerivativeMethod& method);

/// i hbar (2-q) d/dt [psi/psi(0,0)] - H [psi/psi(0,0)]^(2-q).
Complex nrt_residual(const FieldSampler& psi, double q, double mass, double hbar,
                     const Potential& potential, double x, double t,
                     const DerivativeMethod& method);

/// Temporal ODE of the separated solution; `f` is read at (0, t).
///   NewEquation: i hbar d/dt f^q - lambda f
///   NRT:         i hbar (2-q) df/dt - lambda f^(2-q)
Complex separated_time_residual(SolutionKind kind, const FieldSampler& f,
                                double q, double lambda, double hbar, double t,
                                const DerivativeMethod& method);

/// Spatial ODE of the separated solution; `g` is read at (x, 0).
///   NewEquation: -(hbar^2/2m) g'' - lambda g^q
///   NRT:         -(hbar^2/2m) (g^(2-q))'' - lambda g
Complex separated_space_residual(SolutionKind kind, const FieldSampler& g,
                                 double q, double lambda, double mass,
                                 double hbar, double x,
                                 const DerivativeMethod& method);

enum class EquationTag {
  NewNlse,
  GeneralizedNlse,
  NewNlsePhi,
  Nrt,
  SeparatedTimeNew,
  SeparatedTimeNrt,
  SeparatedSpaceNew,
  SeparatedSpaceNrt,
};

const char* to_string(EquationTag tag);
std::optional<EquationTag> parse_equation_tag(const std::string& name);

/// An equation together with the field it is checked against.
struct ResidualProblem {
  EquationTag equation = EquationTag::NewNlse;
  FieldSampler field;
  double q = 1.5;
  double mass = 0.5;
  double hbar = 1.0;
  double lambda = 1.0;
  Potential potential = free_potential;
};

struct ResidualReport {
  double max_abs = 0.0;
  double l2 = 0.0;
  double worst_x = 0.0;
  double worst_t = 0.0;
  std::size_t n_samples = 0;
  std::string equation_tag;
};

/// Evaluates the residual at every grid point (x_i, t_k). Separated temporal
/// equations are scanned over t only and spatial ones over x only. A point
/// failure is rethrown as DomainError naming the location.
ResidualReport scan_residual(const ResidualProblem& problem, const GridSpec& grid,
                             const DerivativeMethod& method);

}  // namespace qnlse
