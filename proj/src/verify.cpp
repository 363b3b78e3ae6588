#include "qnlse/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "qnlse/errors.hpp"
#include "qnlse/integrators.hpp"
#include "qnlse/qmath.hpp"
#include "qnlse/residuals.hpp"

namespace qnlse {

namespace {

constexpr double kAnalyticTol = 1e-8;
constexpr double kFiniteDifferenceTol = 1e-5;
constexpr double kDiscriminationFloor = 1e-3;

const std::vector<double> kQValues{0.5, 0.9, 1.1, 1.5};

SuiteResult below(std::string name, double worst, double threshold,
                  std::string detail = {}) {
  return {std::move(name), worst <= threshold, worst, threshold, false,
          std::move(detail)};
}

SuiteResult above(std::string name, double worst, double threshold,
                  std::string detail = {}) {
  return {std::move(name), worst > threshold, worst, threshold, true,
          std::move(detail)};
}

/// Evaluates `body`; any library error turns into a failed suite.
SuiteResult guarded(const std::string& name, const std::function<SuiteResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::nan(""), 0.0, false, e.what()};
  }
}

struct BinomialDraw {
  double alpha;
  double gamma;
  Complex z;
};

std::vector<BinomialDraw> binomial_draws(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> alpha(-3.0, 3.0);
  std::uniform_real_distribution<double> gamma(0.5, 4.0);
  std::uniform_real_distribution<double> radius(0.0, 0.9);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<BinomialDraw> out;
  for (int i = 0; i < count; ++i) {
    const double a = alpha(rng);
    const double g = gamma(rng);
    out.push_back({a, g, std::polar(radius(rng), angle(rng))});
  }
  return out;
}

double max_scan(const ResidualProblem& problem, const GridSpec& grid,
                const DerivativeMethod& method) {
  return scan_residual(problem, grid, method).max_abs;
}

ResidualProblem problem_for(EquationTag tag, const FieldSampler& field,
                            const FreeParticleSpec& spec) {
  ResidualProblem p{tag, field};
  p.q = spec.q();
  p.mass = spec.mass();
  p.hbar = spec.hbar();
  p.lambda = spec.energy();
  return p;
}

/// Every equation paired with its own closed-form solution at one q.
std::vector<ResidualProblem> own_solution_problems(const FreeParticleSpec& spec) {
  const double q = spec.q();
  const ClosedForm wave = q_plane_wave_form(spec);
  std::vector<ResidualProblem> out;
  out.push_back(problem_for(EquationTag::NewNlse, wave.sampler(), spec));
  out.push_back(problem_for(EquationTag::GeneralizedNlse, wave.sampler(), spec));
  out.push_back(problem_for(EquationTag::NewNlsePhi, wave.pow(q).sampler(), spec));
  out.push_back(problem_for(
      EquationTag::NewNlsePhi,
      product_solution_form(SolutionKind::NewEquation, spec).pow(q).sampler(), spec));
  out.push_back(problem_for(
      EquationTag::SeparatedTimeNew,
      separated_f_form(SolutionKind::NewEquation, spec).sampler(), spec));
  out.push_back(problem_for(
      EquationTag::SeparatedSpaceNew,
      separated_g_form(SolutionKind::NewEquation, spec).sampler(), spec));
  if (q != 2.0) {
    out.push_back(problem_for(EquationTag::Nrt, wave.sampler(), spec));
    out.push_back(problem_for(
        EquationTag::Nrt, product_solution_form(SolutionKind::NRT, spec).sampler(),
        spec));
    out.push_back(problem_for(EquationTag::SeparatedTimeNrt,
                              separated_f_form(SolutionKind::NRT, spec).sampler(),
                              spec));
    out.push_back(problem_for(EquationTag::SeparatedSpaceNrt,
                              separated_g_form(SolutionKind::NRT, spec).sampler(),
                              spec));
  }
  return out;
}

}  // namespace

std::uint64_t seed_from_environment() {
  if (const char* env = std::getenv("QNLSE_SEED")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') {
      return value;
    }
  }
  return 42;
}

double classical_distance(const std::string& solution, const FreeParticleSpec& spec,
                          const GridSpec& grid) {
  double worst = 0.0;
  for (std::size_t k = 0; k <= grid.n_steps; ++k) {
    const double t = grid.t(k);
    for (std::size_t i = 0; i < grid.n_points; ++i) {
      const double x = grid.x(i);
      Complex value;
      if (solution == "q_plane_wave") {
        value = q_plane_wave(spec, x, t);
      } else if (solution == "product_new") {
        value = product_solution(SolutionKind::NewEquation, spec, x, t);
      } else if (solution == "product_nrt") {
        value = product_solution(SolutionKind::NRT, spec, x, t);
      } else {
        throw DomainError("unknown solution '" + solution + "'");
      }
      worst = std::max(worst, std::abs(value - classical_plane_wave(spec, x, t)));
    }
  }
  return worst;
}

double factor_separation(const FreeParticleSpec& spec, const GridSpec& grid) {
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    worst = std::max(worst, std::abs(separated_g(SolutionKind::NewEquation, spec, x) -
                                     separated_g(SolutionKind::NRT, spec, x)));
  }
  return worst;
}

std::vector<SuiteResult> run_verification_suites(const VerifyOptions& options) {
  std::vector<SuiteResult> results;
  const auto draws = binomial_draws(options.seed, options.draws);
  const FreeParticleSpec& base = options.spec;
  const GridSpec& grid = options.grid;

  results.push_back(guarded("qmath.binomial_identity", [&] {
    double worst = 0.0;
    for (const auto& d : draws) {
      worst = std::max(worst, check_binomial_identity(d.alpha, d.gamma, d.z));
    }
    return below("qmath.binomial_identity", worst, 1e-10);
  }));

  results.push_back(guarded("qmath.hypergeometric_ode", [&] {
    double worst = 0.0;
    std::mt19937_64 rng(options.seed + 1);
    std::uniform_real_distribution<double> beta(-3.0, 3.0);
    for (const auto& d : draws) {
      worst = std::max(worst, hypergeom_ode_residual({-d.alpha, d.gamma, d.gamma, -d.z}));
      worst = std::max(worst, hypergeom_ode_residual({d.alpha, beta(rng), d.gamma, d.z}));
    }
    for (double q : {0.5, 0.9, 1.1, 1.5, 2.0}) {
      const auto spec = base.with_q(q);
      for (std::size_t k = 0; k <= grid.n_steps; ++k) {
        for (std::size_t i = 0; i < grid.n_points; ++i) {
          const Complex z{0.0, (q - 1.0) *
                                   (spec.p() * grid.x(i) - spec.energy() * grid.t(k)) /
                                   spec.hbar()};
          worst = std::max(worst, hypergeom_ode_residual({1.0 / (q - 1.0), 1.0, 1.0, z}));
        }
      }
    }
    return below("qmath.hypergeometric_ode", worst, 1e-8);
  }));

  results.push_back(guarded("qmath.symmetry", [&] {
    double worst = 0.0;
    std::mt19937_64 rng(options.seed + 2);
    std::uniform_real_distribution<double> beta(-3.0, 3.0);
    for (const auto& d : draws) {
      const double b = beta(rng);
      const Complex lhs = hyp2f1({d.alpha, b, d.gamma, d.z});
      const Complex rhs = hyp2f1({b, d.alpha, d.gamma, d.z});
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    return below("qmath.symmetry", worst, 1e-12);
  }));

  results.push_back(guarded("solutions.gamma_independence", [&] {
    GridSpec coarse = grid;
    coarse.n_points = 21;
    coarse.n_steps = 4;
    coarse.dt = 0.25;
    double worst = 0.0;
    for (double q : {0.5, 0.9, 1.1, 1.5, 2.0}) {
      const auto spec = base.with_q(q);
      for (std::size_t k = 0; k <= coarse.n_steps; ++k) {
        for (std::size_t i = 0; i < coarse.n_points; ++i) {
          const double x = coarse.x(i);
          const double t = coarse.t(k);
          const Complex direct = q_plane_wave(spec, x, t);
          for (double gamma : {0.5, 1.0, 2.7}) {
            worst = std::max(worst, std::abs(q_plane_wave_hypergeometric(spec, gamma, x, t) -
                                             direct));
          }
        }
      }
    }
    return below("solutions.gamma_independence", worst, 1e-10);
  }));

  for (const auto& [label, method, tolerance] :
       {std::tuple{"residuals.analytic", DerivativeMethod{Analytic{}}, kAnalyticTol},
        std::tuple{"residuals.finite_difference", DerivativeMethod{FiniteDifference{}},
                   kFiniteDifferenceTol}}) {
    results.push_back(guarded(label, [&, label = label, method = method,
                                      tolerance = tolerance] {
      double worst = 0.0;
      std::string where;
      std::vector<double> qs = kQValues;
      qs.push_back(2.0);
      for (double q : qs) {
        for (const auto& problem : own_solution_problems(base.with_q(q))) {
          const double r = max_scan(problem, grid, method);
          if (r > worst) {
            worst = r;
            where = std::string(to_string(problem.equation)) + " q=" + std::to_string(q);
          }
        }
      }
      return below(label, worst, tolerance, where);
    }));
  }

  results.push_back(guarded("residuals.lambda_uniqueness", [&] {
    double weakest = std::numeric_limits<double>::infinity();
    for (double q : kQValues) {
      const auto spec = base.with_q(q);
      for (auto kind : {SolutionKind::NewEquation, SolutionKind::NRT}) {
        for (double factor : {0.99, 1.01}) {
          auto problem = problem_for(kind == SolutionKind::NewEquation
                                         ? EquationTag::SeparatedSpaceNew
                                         : EquationTag::SeparatedSpaceNrt,
                                     separated_g_form(kind, spec).sampler(), spec);
          problem.lambda *= factor;
          weakest = std::min(weakest, max_scan(problem, grid, Analytic{}));
        }
      }
    }
    return above("residuals.lambda_uniqueness", weakest, 1e-4);
  }));

  results.push_back(guarded("residuals.cross_equation", [&] {
    const auto spec = base;
    const double q = spec.q();
    const auto product_new = product_solution_form(SolutionKind::NewEquation, spec);
    const auto product_nrt = product_solution_form(SolutionKind::NRT, spec);
    const double a =
        max_scan(problem_for(EquationTag::Nrt, product_new.sampler(), spec), grid, Analytic{});
    const double b = max_scan(
        problem_for(EquationTag::NewNlsePhi, product_nrt.pow(q).sampler(), spec), grid,
        Analytic{});
    const double c = max_scan(
        problem_for(EquationTag::SeparatedSpaceNew,
                    separated_g_form(SolutionKind::NRT, spec).sampler(), spec),
        grid, Analytic{});
    return above("residuals.cross_equation", std::min({a, b, c}), kDiscriminationFloor);
  }));

  results.push_back(guarded("solutions.classical_limit", [&] {
    double weakest = std::numeric_limits<double>::infinity();
    std::string detail;
    for (const char* solution : {"q_plane_wave", "product_new", "product_nrt"}) {
      for (double sign : {1.0, -1.0}) {
        // 1e-1 is outside the linear regime once |p x - E t| / hbar ~ 6.
        std::vector<double> deltas{1e-2, 1e-3, 1e-4};
        std::vector<double> distances;
        for (double d : deltas) {
          distances.push_back(classical_distance(solution, base.with_q(1.0 + sign * d), grid));
        }
        const double order = fit_order(deltas, distances);
        if (order < weakest) {
          weakest = order;
          detail = solution;
        }
      }
    }
    return SuiteResult{"solutions.classical_limit", weakest >= 0.9, weakest, 0.9, true, detail};
  }));

  results.push_back(guarded("solutions.non_coincidence", [&] {
    const double separation = factor_separation(base.with_q(1.5), grid);
    std::vector<double> deltas{1e-2, 1e-3, 1e-4};
    std::vector<double> gaps;
    for (double d : deltas) {
      gaps.push_back(factor_separation(base.with_q(1.0 + d), grid));
    }
    const double order = fit_order(deltas, gaps);
    SuiteResult r = above("solutions.non_coincidence", separation, kDiscriminationFloor,
                          "vanishing order " + std::to_string(order));
    r.passed = r.passed && order >= 0.9;
    return r;
  }));

  results.push_back(guarded("integrators.separated_odes", [&] {
    double worst = 0.0;
    for (double q : {0.5, 1.1, 1.5}) {
      const auto spec = base.with_q(q);
      for (auto kind : {SolutionKind::NewEquation, SolutionKind::NRT}) {
        const auto f = integrate_separated_time(kind, q, spec.energy(), spec.hbar(), 1.0, 1e-3);
        worst = std::max(worst, std::abs(f.back().value - separated_f(kind, spec, 1.0)));
        const auto g = integrate_separated_space(kind, q, spec.energy(), spec.mass(),
                                                 spec.hbar(), 1.0, 1e-3);
        worst = std::max(worst, std::abs(g.back().value - separated_g(kind, spec, 1.0)));
      }
    }
    return below("integrators.separated_odes", worst, 1e-7);
  }));

  results.push_back(guarded("integrators.rk4_order", [&] {
    const auto spec = base;
    const auto study = convergence_study(
        [&](double dt) {
          const auto f = integrate_separated_time(SolutionKind::NewEquation, spec.q(),
                                                  spec.energy(), spec.hbar(), 1.0, dt);
          return std::abs(f.back().value -
                          separated_f(SolutionKind::NewEquation, spec, 1.0));
        },
        0.1, 3);
    const double deviation = std::abs(study.observed_order - 4.0);
    return below("integrators.rk4_order", deviation, 0.5,
                 "order " + std::to_string(study.observed_order));
  }));

  results.push_back(guarded("integrators.pde_classical", [&] {
    GridSpec pde;
    pde.x_min = -5.0;
    pde.x_max = 5.0;
    pde.n_points = 401;
    pde.dt = 1e-4;
    pde.n_steps = 1000;
    const auto spec = base.with_q(1.0);
    const ClosedForm exact = classical_plane_wave_form(spec);
    const auto field = [&exact](double x, double t) { return exact.value(x, t); };
    const WaveField initial = WaveField::sample(pde, 0.0, field);
    const auto a = propagate(PdeEquation::NewEquation, initial, 1.0, spec.mass(),
                             spec.hbar(), free_potential, field);
    const auto b = propagate(PdeEquation::NRT, initial, 1.0, spec.mass(), spec.hbar(),
                             free_potential, field);
    double between = 0.0;
    double error = 0.0;
    for (std::size_t i = 1; i + 1 < pde.n_points; ++i) {
      between = std::max(between, std::abs(a.back().values[i] - b.back().values[i]));
      error = std::max(error,
                       std::abs(a.back().values[i] - exact.value(pde.x(i), a.back().t)));
    }
    SuiteResult r = below("integrators.pde_classical", error, 1e-4,
                          "tag disagreement " + std::to_string(between));
    r.passed = r.passed && between <= 1e-10;
    return r;
  }));

  results.push_back(guarded("integrators.pde_manufactured", [&] {
    // Half-line where the linearised problem is forward-parabolic for q > 1
    // and p > 0; the other half amplifies roundoff without bound.
    double worst = 0.0;
    double weakest_order_gap = 0.0;
    for (auto equation : {PdeEquation::NewEquation, PdeEquation::NRT}) {
      ManufacturedCase c;
      c.equation = equation;
      c.spec = base.with_q(1.1);
      c.x_min = 0.0;
      c.x_max = 5.0;
      worst = std::max(worst, manufactured_error(c, 0.025, 1e-4));
      const auto study = convergence_study(
          [&](double dx) { return manufactured_error(c, dx, 1e-4); }, 0.1, 3);
      weakest_order_gap = std::max(weakest_order_gap, std::abs(study.observed_order - 2.0));
    }
    SuiteResult r = below("integrators.pde_manufactured", worst, 1e-3,
                          "order deviation " + std::to_string(weakest_order_gap));
    r.passed = r.passed && weakest_order_gap <= 0.3;
    return r;
  }));

  return results;
}

}  // namespace qnlse
