#pragma once

#include <vector>

#include "qnlse/field.hpp"
#include "qnlse/qmath.hpp"

namespace qnlse {

/// Free-particle parameters. The energy is always derived as p^2 / (2m).
class FreeParticleSpec {
 public:
  FreeParticleSpec(double q, double p, double mass, double hbar);

  double q() const { return q_; }
  double p() const { return p_; }
  double mass() const { return mass_; }
  double hbar() const { return hbar_; }
  double energy() const { return p_ * p_ / (2.0 * mass_); }

  FreeParticleSpec with_q(double q) const { return {q, p_, mass_, hbar_}; }

 private:
  double q_;
  double p_;
  double mass_;
  double hbar_;
};

/// Which separated pair of ODEs the factors solve.
enum class SolutionKind { NewEquation, NRT };

const char* to_string(SolutionKind kind);

/// exp(i (p x - E t) / hbar).
Complex classical_plane_wave(const FreeParticleSpec& spec, double x, double t);

/// [1 + (i/hbar)(1-q)(p x - E t)]^(1/(1-q)).
Complex q_plane_wave(const FreeParticleSpec& spec, double x, double t);

/// The q-plane wave evaluated as 2F1(1/(q-1), gamma; gamma; z) with
/// z = (i/hbar)(q-1)(p x - E t).
Complex q_plane_wave_hypergeometric(const FreeParticleSpec& spec, double gamma,
                                    double x, double t);

/// A * q_plane_wave. Throws DomainError for A == 0.
Complex amplitude_wave(const FreeParticleSpec& spec, Complex amplitude,
                       double x, double t);

/// Temporal factor f(t) with f(0) = 1.
Complex separated_f(SolutionKind kind, const FreeParticleSpec& spec, double t);

/// Spatial factor g(x) with g(0) = 1.
Complex separated_g(SolutionKind kind, const FreeParticleSpec& spec, double x);

/// f(t) * g(x).
Complex product_solution(SolutionKind kind, const FreeParticleSpec& spec,
                         double x, double t);

/// One factor (1 + a x + b t)^s of a closed form.
struct PowerFactor {
  Complex rate_x;
  Complex rate_t;
  double exponent;
};

/// Closed-form field
///
///   w(x, t) = A * exp(kx x + kt t) * prod_k (1 + a_k x + b_k t)^(s_k)
///
/// with exact partial derivatives and a logarithm that stays continuous as
/// long as every base keeps a positive real part. Every solution in this
/// library has that shape (the bases are 1 + i * real).
class ClosedForm {
 public:
  ClosedForm(Complex amplitude, Complex rate_x, Complex rate_t,
             std::vector<PowerFactor> factors);

  Complex value(double x, double t) const;
  Complex log_value(double x, double t) const;
  Complex partial(double x, double t, Axis axis, int order) const;

  /// w^a, taken along the continuous logarithm.
  ClosedForm pow(double a) const;
  ClosedForm operator*(const ClosedForm& other) const;

  FieldSampler sampler() const;

 private:
  Complex amplitude_;
  Complex log_amplitude_;
  Complex rate_x_;
  Complex rate_t_;
  std::vector<PowerFactor> factors_;
};

ClosedForm classical_plane_wave_form(const FreeParticleSpec& spec);
ClosedForm q_plane_wave_form(const FreeParticleSpec& spec);
ClosedForm amplitude_wave_form(const FreeParticleSpec& spec, Complex amplitude);
ClosedForm separated_f_form(SolutionKind kind, const FreeParticleSpec& spec);
ClosedForm separated_g_form(SolutionKind kind, const FreeParticleSpec& spec);
ClosedForm product_solution_form(SolutionKind kind, const FreeParticleSpec& spec);

}  // namespace qnlse
