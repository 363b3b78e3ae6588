#include "qnlse/qmath.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qnlse/errors.hpp"

namespace qnlse {

namespace {

constexpr int kSeriesMaxTerms = 10000;
constexpr int kSeriesQuietTerms = 3;
const double kSeriesRelTol = std::ldexp(1.0, -52);

bool is_gamma_pole(double gamma) {
  return gamma <= 0.0 && std::floor(gamma) == gamma;
}

void check_params(const HypParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) ||
      !std::isfinite(p.gamma)) {
    throw DomainError("hyp2f1: non-finite parameter");
  }
  require_finite(p.z, "hyp2f1 argument");
  if (is_gamma_pole(p.gamma)) {
    throw DomainError("hyp2f1: gamma = " + std::to_string(p.gamma) +
                      " is a pole (zero or negative integer)");
  }
}

}  // namespace

void require_finite(Complex value, const char* what) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw DomainError(std::string(what) + " is not finite");
  }
}

Complex principal_log(Complex z) {
  if (z == Complex(0.0, 0.0)) {
    throw DomainError("logarithm of zero");
  }
  double arg = std::atan2(z.imag(), z.real());
  if (arg == -std::numbers::pi) {
    arg = std::numbers::pi;
  }
  return {std::log(std::abs(z)), arg};
}

Complex continuous_log(Complex z, Complex reference) {
  Complex log = principal_log(z);
  const double two_pi = 2.0 * std::numbers::pi;
  const double turns = std::round((reference.imag() - log.imag()) / two_pi);
  return {log.real(), log.imag() + two_pi * turns};
}

Complex cpow_principal(Complex base, Complex exponent) {
  require_finite(base, "power base");
  require_finite(exponent, "power exponent");
  if (base == Complex(0.0, 0.0)) {
    if (exponent.real() > 0.0) {
      return {0.0, 0.0};
    }
    throw DomainError("zero raised to an exponent with non-positive real part");
  }
  if (base == Complex(1.0, 0.0)) {
    return {1.0, 0.0};
  }
  Complex result = std::exp(exponent * principal_log(base));
  require_finite(result, "power result");
  return result;
}

Complex q_exp(double q, Complex z) {
  if (is_classical(q)) {
    Complex result = std::exp(z);
    require_finite(result, "q_exp result");
    return result;
  }
  const Complex base = 1.0 + (q - 1.0) * z;
  if (base == Complex(0.0, 0.0)) {
    throw DomainError("q_exp: 1 + (q-1) z vanishes");
  }
  return cpow_principal(base, 1.0 / (1.0 - q));
}

double q_exp_real_cutoff(double q, double x) {
  if (is_classical(q)) {
    return std::exp(x);
  }
  const double base = 1.0 + (q - 1.0) * x;
  if (!(base > 0.0)) {
    return 0.0;
  }
  return std::pow(base, 1.0 / (1.0 - q));
}

Complex hyp2f1_series(const HypParams& p) {
  check_params(p);
  if (!(std::abs(p.z) < 1.0)) {
    throw DomainError("hyp2f1: series path requires |z| < 1");
  }
  Complex sum{1.0, 0.0};
  Complex term{1.0, 0.0};
  int quiet = 0;
  for (int n = 0; n < kSeriesMaxTerms; ++n) {
    const double k = static_cast<double>(n);
    term *= (p.alpha + k) * (p.beta + k) / ((p.gamma + k) * (k + 1.0)) * p.z;
    sum += term;
    if (std::abs(term) <= kSeriesRelTol * std::abs(sum)) {
      if (++quiet == kSeriesQuietTerms) {
        require_finite(sum, "hyp2f1 series");
        return sum;
      }
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError("hyp2f1: series did not converge within " +
                         std::to_string(kSeriesMaxTerms) + " terms");
}

Complex hyp2f1(const HypParams& p) {
  check_params(p);
  // Exact comparison: the degenerate form is only taken when the caller built
  // beta and gamma from the same value.
  if (p.beta == p.gamma) {
    const Complex base = 1.0 - p.z;
    if (base.imag() == 0.0 && base.real() <= 0.0) {
      throw DomainError("hyp2f1: z on the branch cut [1, inf)");
    }
    return cpow_principal(base, -p.alpha);
  }
  if (p.alpha == p.gamma) {
    return hyp2f1({p.beta, p.alpha, p.gamma, p.z});
  }
  return hyp2f1_series(p);
}

Complex hyp2f1_deriv(const HypParams& p, int order) {
  if (order != 1 && order != 2) {
    throw DomainError("hyp2f1_deriv: order must be 1 or 2");
  }
  check_params(p);
  Complex scale = p.alpha * p.beta / p.gamma;
  HypParams shifted{p.alpha + 1.0, p.beta + 1.0, p.gamma + 1.0, p.z};
  if (order == 2) {
    scale *= shifted.alpha * shifted.beta / shifted.gamma;
    shifted = {p.alpha + 2.0, p.beta + 2.0, p.gamma + 2.0, p.z};
  }
  if (scale == Complex(0.0, 0.0)) {
    return {0.0, 0.0};
  }
  return scale * hyp2f1(shifted);
}

double check_binomial_identity(double alpha, double gamma, Complex z) {
  const Complex lhs = hyp2f1_series({-alpha, gamma, gamma, -z});
  const Complex rhs = cpow_principal(1.0 + z, alpha);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace qnlse
