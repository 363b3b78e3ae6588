#pragma once

#include <complex>

namespace qnlse {

using Complex = std::complex<double>;

/// Below this |q - 1| every q-deformed formula dispatches to its exponential
/// limit.
inline constexpr double kQOneEpsilon = 1e-12;

inline bool is_classical(double q) { return std::abs(q - 1.0) < kQOneEpsilon; }

/// Parameters of the Gauss hypergeometric function 2F1(alpha, beta; gamma; z).
struct HypParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
  Complex z{0.0, 0.0};
};

/// Principal logarithm with the argument in (-pi, pi]. A negative real axis
/// carrying a signed zero maps to +pi. Throws DomainError for zero.
Complex principal_log(Complex z);

/// Logarithm of z on the branch whose imaginary part is closest to
/// reference.imag(). Used to follow a field continuously in x or t.
Complex continuous_log(Complex z, Complex reference);

/// exp(exponent * Log(base)) on the principal branch.
///
/// base == 0 yields 0 when Re(exponent) > 0 and throws DomainError otherwise.
/// Non-finite results throw DomainError.
Complex cpow_principal(Complex base, Complex exponent);

/// Deformed exponential [1 + (q-1) z]^(1/(1-q)); exp(z) when q is within
/// kQOneEpsilon of 1. Throws DomainError when the base vanishes.
Complex q_exp(double q, Complex z);

/// Real q-exponential with the cutoff: zero wherever 1 + (q-1) x <= 0.
double q_exp_real_cutoff(double q, double x);

/// 2F1 with the degenerate beta == gamma closed form (1 - z)^(-alpha) and the
/// power series elsewhere (|z| < 1 only).
Complex hyp2f1(const HypParams& params);

/// Power series path only, without the beta == gamma dispatch.
Complex hyp2f1_series(const HypParams& params);

/// dF/dz (order 1) or d2F/dz2 (order 2) via F' = (alpha beta / gamma)
/// F(alpha+1, beta+1; gamma+1; z).
Complex hyp2f1_deriv(const HypParams& params, int order);

/// Scaled defect of 2F1(-alpha, gamma; gamma; -z) = (1 + z)^alpha. The left
/// side is summed as a series so the two sides are computed independently.
double check_binomial_identity(double alpha, double gamma, Complex z);

/// Throws DomainError unless every component is finite.
void require_finite(Complex value, const char* what);

}  // namespace qnlse
