#include "qnlse/solutions.hpp"

#include <cmath>
#include <string>

#include "qnlse/errors.hpp"

namespace qnlse {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_time_factor_q(SolutionKind kind, double q) {
  if (kind == SolutionKind::NewEquation && q == 0.0) {
    throw DomainError("temporal factor of the new equation requires q != 0");
  }
  if (kind == SolutionKind::NRT && q == 2.0) {
    throw DomainError("NRT factors require q != 2");
  }
}

/// Denominator under the spatial wave number, sqrt(2(q+1)) or
/// sqrt(2(2-q)(3-q)).
double space_factor_root(SolutionKind kind, double q) {
  if (kind == SolutionKind::NewEquation) {
    if (!(q > -1.0)) {
      throw DomainError("spatial factor of the new equation requires q > -1");
    }
    return std::sqrt(2.0 * (q + 1.0));
  }
  const double product = (2.0 - q) * (3.0 - q);
  if (!(product > 0.0)) {
    throw DomainError("NRT spatial factor requires (2-q)(3-q) > 0");
  }
  return std::sqrt(2.0 * product);
}

/// Coefficient of (i/hbar) E t in the temporal base.
double time_factor_ratio(SolutionKind kind, double q) {
  return kind == SolutionKind::NewEquation ? (1.0 - q) / q
                                           : (1.0 - q) / (2.0 - q);
}

}  // namespace

FreeParticleSpec::FreeParticleSpec(double q, double p, double mass, double hbar)
    : q_(q), p_(p), mass_(mass), hbar_(hbar) {
  if (!std::isfinite(q) || !std::isfinite(p) || !std::isfinite(mass) ||
      !std::isfinite(hbar)) {
    throw DomainError("free particle parameters must be finite");
  }
  if (!(mass > 0.0)) {
    throw DomainError("mass must be positive");
  }
  if (!(hbar > 0.0)) {
    throw DomainError("hbar must be positive");
  }
}

const char* to_string(SolutionKind kind) {
  return kind == SolutionKind::NewEquation ? "new" : "nrt";
}

Complex classical_plane_wave(const FreeParticleSpec& spec, double x, double t) {
  const double phase = (spec.p() * x - spec.energy() * t) / spec.hbar();
  return {std::cos(phase), std::sin(phase)};
}

Complex q_plane_wave(const FreeParticleSpec& spec, double x, double t) {
  const double q = spec.q();
  if (is_classical(q)) {
    return classical_plane_wave(spec, x, t);
  }
  const Complex base =
      1.0 + kI * (1.0 - q) * (spec.p() * x - spec.energy() * t) / spec.hbar();
  return cpow_principal(base, 1.0 / (1.0 - q));
}

Complex q_plane_wave_hypergeometric(const FreeParticleSpec& spec, double gamma,
                                    double x, double t) {
  const double q = spec.q();
  if (is_classical(q)) {
    return classical_plane_wave(spec, x, t);
  }
  HypParams params;
  params.alpha = 1.0 / (q - 1.0);
  params.beta = gamma;
  params.gamma = gamma;
  params.z = kI * (q - 1.0) * (spec.p() * x - spec.energy() * t) / spec.hbar();
  return hyp2f1(params);
}

Complex amplitude_wave(const FreeParticleSpec& spec, Complex amplitude,
                       double x, double t) {
  if (amplitude == Complex(0.0, 0.0)) {
    throw DomainError("amplitude must be nonzero");
  }
  require_finite(amplitude, "amplitude");
  return amplitude * q_plane_wave(spec, x, t);
}

Complex separated_f(SolutionKind kind, const FreeParticleSpec& spec, double t) {
  const double q = spec.q();
  require_time_factor_q(kind, q);
  const double energy = spec.energy();
  if (is_classical(q)) {
    const double phase = -energy * t / spec.hbar();
    return {std::cos(phase), std::sin(phase)};
  }
  const Complex base =
      1.0 + kI * time_factor_ratio(kind, q) * energy * t / spec.hbar();
  return cpow_principal(base, 1.0 / (q - 1.0));
}

Complex separated_g(SolutionKind kind, const FreeParticleSpec& spec, double x) {
  const double q = spec.q();
  const double root = space_factor_root(kind, q);
  if (is_classical(q)) {
    const double phase = spec.p() * x / spec.hbar();
    return {std::cos(phase), std::sin(phase)};
  }
  const Complex base = 1.0 + kI * (1.0 - q) / root * spec.p() * x / spec.hbar();
  return cpow_principal(base, 2.0 / (1.0 - q));
}

Complex product_solution(SolutionKind kind, const FreeParticleSpec& spec,
                         double x, double t) {
  return separated_f(kind, spec, t) * separated_g(kind, spec, x);
}

// ---------------------------------------------------------------------------
// ClosedForm

ClosedForm::ClosedForm(Complex amplitude, Complex rate_x, Complex rate_t,
                       std::vector<PowerFactor> factors)
    : amplitude_(amplitude),
      log_amplitude_(principal_log(amplitude)),
      rate_x_(rate_x),
      rate_t_(rate_t),
      factors_(std::move(factors)) {}

Complex ClosedForm::value(double x, double t) const {
  Complex result = amplitude_;
  if (rate_x_ != Complex(0.0, 0.0) || rate_t_ != Complex(0.0, 0.0)) {
    result *= std::exp(rate_x_ * x + rate_t_ * t);
  }
  for (const auto& f : factors_) {
    result *= cpow_principal(1.0 + f.rate_x * x + f.rate_t * t, f.exponent);
  }
  return result;
}

Complex ClosedForm::log_value(double x, double t) const {
  Complex result = log_amplitude_ + rate_x_ * x + rate_t_ * t;
  for (const auto& f : factors_) {
    result += f.exponent * principal_log(1.0 + f.rate_x * x + f.rate_t * t);
  }
  return result;
}

Complex ClosedForm::partial(double x, double t, Axis axis, int order) const {
  if (order != 1 && order != 2) {
    throw DomainError("partial derivative order must be 1 or 2");
  }
  // d/ds log w and d2/ds2 log w, then w' = w L', w'' = w (L'^2 + L'').
  Complex d1 = axis == Axis::X ? rate_x_ : rate_t_;
  Complex d2{0.0, 0.0};
  for (const auto& f : factors_) {
    const Complex rate = axis == Axis::X ? f.rate_x : f.rate_t;
    if (rate == Complex(0.0, 0.0)) {
      continue;
    }
    const Complex ratio = rate / (1.0 + f.rate_x * x + f.rate_t * t);
    d1 += f.exponent * ratio;
    d2 -= f.exponent * ratio * ratio;
  }
  const Complex w = value(x, t);
  return order == 1 ? w * d1 : w * (d1 * d1 + d2);
}

ClosedForm ClosedForm::pow(double a) const {
  std::vector<PowerFactor> factors = factors_;
  for (auto& f : factors) {
    f.exponent *= a;
  }
  ClosedForm out(std::exp(a * log_amplitude_), a * rate_x_, a * rate_t_,
                 std::move(factors));
  out.log_amplitude_ = a * log_amplitude_;
  if (amplitude_ == Complex(1.0, 0.0)) {
    out.amplitude_ = 1.0;
  }
  return out;
}

ClosedForm ClosedForm::operator*(const ClosedForm& other) const {
  std::vector<PowerFactor> factors = factors_;
  factors.insert(factors.end(), other.factors_.begin(), other.factors_.end());
  ClosedForm out(amplitude_ * other.amplitude_, rate_x_ + other.rate_x_,
                 rate_t_ + other.rate_t_, std::move(factors));
  out.log_amplitude_ = log_amplitude_ + other.log_amplitude_;
  return out;
}

FieldSampler ClosedForm::sampler() const {
  FieldSampler s([form = *this](double x, double t) { return form.value(x, t); });
  s.with_log([form = *this](double x, double t) { return form.log_value(x, t); });
  s.with_partials([form = *this](double x, double t, Axis axis, int order) {
    return form.partial(x, t, axis, order);
  });
  return s;
}

ClosedForm classical_plane_wave_form(const FreeParticleSpec& spec) {
  return ClosedForm(1.0, kI * spec.p() / spec.hbar(),
                    -kI * spec.energy() / spec.hbar(), {});
}

ClosedForm q_plane_wave_form(const FreeParticleSpec& spec) {
  const double q = spec.q();
  if (is_classical(q)) {
    return classical_plane_wave_form(spec);
  }
  const Complex scale = kI * (1.0 - q) / spec.hbar();
  return ClosedForm(1.0, 0.0, 0.0,
                    {{scale * spec.p(), -scale * spec.energy(), 1.0 / (1.0 - q)}});
}

ClosedForm amplitude_wave_form(const FreeParticleSpec& spec, Complex amplitude) {
  if (amplitude == Complex(0.0, 0.0)) {
    throw DomainError("amplitude must be nonzero");
  }
  return ClosedForm(amplitude, 0.0, 0.0, {}) * q_plane_wave_form(spec);
}

ClosedForm separated_f_form(SolutionKind kind, const FreeParticleSpec& spec) {
  const double q = spec.q();
  require_time_factor_q(kind, q);
  if (is_classical(q)) {
    return ClosedForm(1.0, 0.0, -kI * spec.energy() / spec.hbar(), {});
  }
  const Complex rate = kI * time_factor_ratio(kind, q) * spec.energy() / spec.hbar();
  return ClosedForm(1.0, 0.0, 0.0, {{0.0, rate, 1.0 / (q - 1.0)}});
}

ClosedForm separated_g_form(SolutionKind kind, const FreeParticleSpec& spec) {
  const double q = spec.q();
  const double root = space_factor_root(kind, q);
  if (is_classical(q)) {
    return ClosedForm(1.0, kI * spec.p() / spec.hbar(), 0.0, {});
  }
  const Complex rate = kI * (1.0 - q) / root * spec.p() / spec.hbar();
  return ClosedForm(1.0, 0.0, 0.0, {{rate, 0.0, 2.0 / (1.0 - q)}});
}

ClosedForm product_solution_form(SolutionKind kind, const FreeParticleSpec& spec) {
  return separated_f_form(kind, spec) * separated_g_form(kind, spec);
}

}  // namespace qnlse
