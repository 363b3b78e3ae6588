#include "qnlse/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnlse/errors.hpp"
#include "qnlse/integrators.hpp"
#include "qnlse/report.hpp"
#include "qnlse/residuals.hpp"
#include "qnlse/solutions.hpp"
#include "qnlse/verify.hpp"

namespace qnlse {

namespace {

/// Signals a configuration problem (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  double q = 1.5;
  double p = 1.0;
  double mass = 0.5;
  double hbar = 1.0;
  std::string equation = "new";
  std::string solution;
  std::string scenario = "ode-time";
  double x_min = -5.0;
  double x_max = 5.0;
  std::size_t nx = 101;
  double dt = 0.1;
  std::size_t steps = 10;
  std::string method = "analytic";
  int richardson = 2;
  int levels = 3;
  double tol = 1e-6;
  std::string format = "json";
  std::string out;
};

FreeParticleSpec spec_of(const RunConfig& c) {
  return FreeParticleSpec(c.q, c.p, c.mass, c.hbar);
}

GridSpec grid_of(const RunConfig& c) {
  GridSpec g;
  g.x_min = c.x_min;
  g.x_max = c.x_max;
  g.n_points = c.nx;
  g.dt = c.dt;
  g.n_steps = c.steps;
  g.validate();
  return g;
}

DerivativeMethod method_of(const RunConfig& c) {
  if (c.method == "fd") {
    DerivativeMethod m = FiniteDifference{std::nullopt, c.richardson};
    validate(m);
    return m;
  }
  return Analytic{};
}

void add_config(Report& r, const RunConfig& c) {
  r.add("command", c.command);
  r.add("q", c.q);
  r.add("p", c.p);
  r.add("mass", c.mass);
  r.add("hbar", c.hbar);
  r.add("energy", c.p * c.p / (2.0 * c.mass));
}

/// Writes `text` to --out when given, otherwise to `out`.
void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
  } else {
    write_text_file(c.out, text);
  }
}

void emit_report(const RunConfig& c, const Report& report, std::ostream& out) {
  if (c.format == "svg") {
    throw UsageError("--format svg is only available for propagate and compare");
  }
  emit(c, c.format == "csv" ? report.to_csv() : report.to_json(), out);
}

// ---------------------------------------------------------------------------

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.seed = seed_from_environment();
  options.spec = spec_of(c);
  options.grid = GridSpec{c.x_min, c.x_max, c.nx, c.dt, c.steps};
  options.grid.validate();
  const auto results = run_verification_suites(options);
  Report report;
  add_config(report, c);
  report.add("seed", static_cast<std::int64_t>(options.seed));
  bool all = true;
  for (const auto& s : results) {
    all = all && s.passed;
    err << (s.passed ? "PASS " : "FAIL ") << s.name << "  worst=" << format_number(s.worst)
        << (s.higher_is_better ? " (>= " : " (<= ") << format_number(s.threshold) << ")"
        << (s.detail.empty() ? "" : "  " + s.detail) << "\n";
    report.add(s.name + ".passed", s.passed);
    report.add(s.name + ".worst", s.worst);
    report.add(s.name + ".threshold", s.threshold);
  }
  report.add("all_passed", all);
  emit_report(c, report, out);
  return all ? kExitPass : kExitCheckFailed;
}

EquationTag equation_of(const std::string& name) {
  if (name == "new") return EquationTag::NewNlse;
  if (auto tag = parse_equation_tag(name)) return *tag;
  throw UsageError("unknown equation '" + name + "'");
}

std::string default_solution(EquationTag tag) {
  switch (tag) {
    case EquationTag::SeparatedTimeNew: return "f-new";
    case EquationTag::SeparatedTimeNrt: return "f-nrt";
    case EquationTag::SeparatedSpaceNew: return "g-new";
    case EquationTag::SeparatedSpaceNrt: return "g-nrt";
    default: return "qwave";
  }
}

ClosedForm solution_form(const std::string& name, const FreeParticleSpec& spec) {
  if (name == "qwave") return q_plane_wave_form(spec);
  if (name == "classical") return classical_plane_wave_form(spec);
  if (name == "product-new") return product_solution_form(SolutionKind::NewEquation, spec);
  if (name == "product-nrt") return product_solution_form(SolutionKind::NRT, spec);
  if (name == "f-new") return separated_f_form(SolutionKind::NewEquation, spec);
  if (name == "f-nrt") return separated_f_form(SolutionKind::NRT, spec);
  if (name == "g-new") return separated_g_form(SolutionKind::NewEquation, spec);
  if (name == "g-nrt") return separated_g_form(SolutionKind::NRT, spec);
  throw UsageError("unknown solution '" + name + "'");
}

int cmd_residual(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto spec = spec_of(c);
  const EquationTag tag = equation_of(c.equation);
  const std::string solution = c.solution.empty() ? default_solution(tag) : c.solution;
  ClosedForm form = solution_form(solution, spec);
  if (tag == EquationTag::NewNlsePhi) {
    form = form.pow(spec.q());
  }
  ResidualProblem problem{tag, form.sampler()};
  problem.q = spec.q();
  problem.mass = spec.mass();
  problem.hbar = spec.hbar();
  problem.lambda = spec.energy();
  const ResidualReport residual = scan_residual(problem, grid_of(c), method_of(c));

  const bool passed = residual.max_abs <= c.tol;
  Report report;
  add_config(report, c);
  report.add("solution", solution);
  report.add("method", c.method);
  report.add("residual", residual);
  report.add("tolerance", c.tol);
  report.add("passed", passed);
  emit_report(c, report, out);
  err << (passed ? "PASS " : "FAIL ") << residual.equation_tag << " on " << solution
      << ": max scaled residual " << format_number(residual.max_abs) << " at (x="
      << format_number(residual.worst_x) << ", t=" << format_number(residual.worst_t)
      << "), tolerance " << format_number(c.tol) << "\n";
  return passed ? kExitPass : kExitCheckFailed;
}

PdeEquation pde_of(const std::string& name) {
  if (name == "new") return PdeEquation::NewEquation;
  if (name == "nrt") return PdeEquation::NRT;
  throw UsageError("propagation supports --equation new or nrt");
}

int cmd_propagate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto spec = spec_of(c);
  const PdeEquation equation = pde_of(c.equation);
  const std::string solution = c.solution.empty() ? "qwave" : c.solution;
  ClosedForm exact = [&] {
    if (solution == "qwave") return q_plane_wave_form(spec);
    if (solution == "product") {
      return product_solution_form(equation == PdeEquation::NewEquation
                                       ? SolutionKind::NewEquation
                                       : SolutionKind::NRT,
                                   spec);
    }
    throw UsageError("propagation supports --solution qwave or product");
  }();
  if (equation == PdeEquation::NewEquation) {
    exact = exact.pow(spec.q());
  }
  const GridSpec grid = grid_of(c);
  if (grid.dt > stability_dt(grid, spec.mass(), spec.hbar())) {
    err << "warning: dt " << format_number(grid.dt)
        << " exceeds the explicit-scheme heuristic 0.2 dx^2 m / hbar = "
        << format_number(stability_dt(grid, spec.mass(), spec.hbar())) << "\n";
  }
  const auto field = [&exact](double x, double t) { return exact.value(x, t); };
  std::vector<WaveField> frames;
  try {
    frames = propagate(equation, WaveField::sample(grid, 0.0, field), spec.q(),
                       spec.mass(), spec.hbar(), free_potential, field);
  } catch (const PropagationError& e) {
    err << "propagation failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  const WaveField& last = frames.back();
  double error = 0.0;
  for (std::size_t i = 1; i + 1 < grid.n_points; ++i) {
    error = std::max(error, std::abs(last.values[i] - exact.value(grid.x(i), last.t)));
  }

  Report summary;
  add_config(summary, c);
  summary.add("equation", c.equation);
  summary.add("solution", solution);
  summary.add("frames", static_cast<std::int64_t>(frames.size()));
  summary.add("t_final", last.t);
  summary.add("interior_max_error", error);

  if (c.format == "csv") {
    if (c.out.empty()) {
      throw UsageError("--format csv for propagate needs --out DIRECTORY");
    }
    std::filesystem::create_directories(c.out);
    for (std::size_t k = 0; k < frames.size(); ++k) {
      write_text_file(std::filesystem::path(c.out) / frame_file_name(k),
                      frame_to_csv(frames[k]));
    }
    write_text_file(std::filesystem::path(c.out) / "summary.csv", summary.to_csv());
    out << summary.to_csv();
  } else if (c.format == "svg") {
    emit(c, frame_to_svg(last, "t = " + format_number(last.t)), out);
  } else {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(summary.to_json());
    j["frames_data"] = nlohmann::ordered_json::array();
    for (const auto& frame : frames) {
      nlohmann::ordered_json f;
      f["t"] = frame.t;
      std::vector<double> xs;
      std::vector<double> re;
      std::vector<double> im;
      for (std::size_t i = 0; i < frame.values.size(); ++i) {
        xs.push_back(frame.grid.x(i));
        re.push_back(frame.values[i].real());
        im.push_back(frame.values[i].imag());
      }
      f["x"] = xs;
      f["re"] = re;
      f["im"] = im;
      j["frames_data"].push_back(f);
    }
    emit(c, j.dump(2) + "\n", out);
  }
  err << "propagated " << frames.size() - 1 << " steps; interior max error vs exact "
      << format_number(error) << "\n";
  return kExitPass;
}

int cmd_converge(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto spec = spec_of(c);
  double expected = 4.0;
  double band = 0.5;
  std::function<double(double)> error_at;
  double base = 0.1;
  if (c.scenario == "ode-time" || c.scenario == "ode-space") {
    const SolutionKind kind = c.equation == "nrt" ? SolutionKind::NRT
                                                  : SolutionKind::NewEquation;
    if (c.scenario == "ode-time") {
      error_at = [=](double h) {
        const auto f = integrate_separated_time(kind, spec.q(), spec.energy(), spec.hbar(),
                                                1.0, h);
        return std::abs(f.back().value - separated_f(kind, spec, 1.0));
      };
    } else {
      error_at = [=](double h) {
        const auto g = integrate_separated_space(kind, spec.q(), spec.energy(),
                                                 spec.mass(), spec.hbar(), 1.0, h);
        return std::abs(g.back().value - separated_g(kind, spec, 1.0));
      };
    }
  } else if (c.scenario == "pde") {
    expected = 2.0;
    band = 0.3;
    ManufacturedCase mc;
    mc.equation = pde_of(c.equation);
    mc.spec = spec;
    mc.x_min = c.x_min;
    mc.x_max = c.x_max;
    mc.t_end = c.dt * static_cast<double>(c.steps);
    const double dt = c.dt;
    error_at = [mc, dt](double dx) { return manufactured_error(mc, dx, dt); };
  } else {
    throw UsageError("unknown scenario '" + c.scenario + "'");
  }
  ConvergenceReport study;
  try {
    study = convergence_study(error_at, base, c.levels);
  } catch (const PropagationError& e) {
    err << "convergence study failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const FitError& e) {
    err << "convergence study failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  const bool passed = std::abs(study.observed_order - expected) <= band;
  Report report;
  add_config(report, c);
  report.add("scenario", c.scenario);
  report.add("equation", c.equation);
  for (std::size_t i = 0; i < study.resolutions.size(); ++i) {
    report.add("level_" + std::to_string(i) + ".resolution", study.resolutions[i]);
    report.add("level_" + std::to_string(i) + ".error", study.errors[i]);
  }
  report.add("observed_order", study.observed_order);
  report.add("expected_order", expected);
  report.add("monotone", study.monotone);
  report.add("passed", passed);
  emit_report(c, report, out);
  err << (passed ? "PASS " : "FAIL ") << c.scenario << " observed order "
      << format_number(study.observed_order) << " (expected " << expected << " +- " << band
      << ")" << (study.monotone ? "" : ", errors not monotone") << "\n";
  return passed ? kExitPass : kExitCheckFailed;
}

int cmd_limit(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto spec = spec_of(c);
  GridSpec grid = grid_of(c);
  const std::vector<double> deltas{1e-1, 1e-2, 1e-3};
  Report report;
  add_config(report, c);
  bool all = true;
  for (const char* solution : {"q_plane_wave", "product_new", "product_nrt"}) {
    std::vector<double> distances;
    for (double d : deltas) {
      const double distance = classical_distance(solution, spec.with_q(1.0 + d), grid);
      distances.push_back(distance);
      report.add(std::string(solution) + ".q_minus_1=" + format_number(d), distance);
    }
    const double order = fit_order(deltas, distances);
    report.add(std::string(solution) + ".order", order);
    all = all && order >= 0.9;
    err << (order >= 0.9 ? "PASS " : "FAIL ") << solution << " classical-limit order "
        << format_number(order) << "\n";
  }
  report.add("passed", all);
  emit_report(c, report, out);
  return all ? kExitPass : kExitCheckFailed;
}

int cmd_compare(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto spec = spec_of(c);
  const GridSpec grid = grid_of(c);
  std::vector<double> xs;
  std::vector<double> difference;
  std::vector<double> modulus_new;
  std::vector<double> modulus_nrt;
  std::string table = "x,g_new_re,g_new_im,g_nrt_re,g_nrt_im,difference,modulus_new,modulus_nrt\n";
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  double max_difference = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double x = grid.x(i);
    const Complex a = separated_g(SolutionKind::NewEquation, spec, x);
    const Complex b = separated_g(SolutionKind::NRT, spec, x);
    const double d = std::abs(a - b);
    max_difference = std::max(max_difference, d);
    xs.push_back(x);
    difference.push_back(d);
    modulus_new.push_back(std::abs(a));
    modulus_nrt.push_back(std::abs(b));
    table += format_number(x) + "," + format_number(a.real()) + "," +
             format_number(a.imag()) + "," + format_number(b.real()) + "," +
             format_number(b.imag()) + "," + format_number(d) + "," +
             format_number(std::abs(a)) + "," + format_number(std::abs(b)) + "\n";
    points.push_back({{"x", x}, {"difference", d}, {"modulus_new", std::abs(a)},
                      {"modulus_nrt", std::abs(b)}});
  }
  if (c.format == "csv") {
    emit(c, table, out);
  } else if (c.format == "svg") {
    emit(c,
         curves_to_svg(xs,
                       {{"|g_new - g_nrt|", difference},
                        {"|g_new|", modulus_new},
                        {"|g_nrt|", modulus_nrt}},
                       "q = " + format_number(c.q)),
         out);
  } else {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse([&] {
      Report r;
      add_config(r, c);
      r.add("max_difference", max_difference);
      return r.to_json();
    }());
    j["points"] = points;
    emit(c, j.dump(2) + "\n", out);
  }
  err << "max |g_new - g_nrt| = " << format_number(max_difference) << " at q = "
      << format_number(c.q) << "\n";
  return kExitPass;
}

void add_common_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--q", c.q, "deformation index q");
  sub->add_option("--p", c.p, "momentum");
  sub->add_option("--mass", c.mass, "particle mass (> 0)");
  sub->add_option("--hbar", c.hbar, "reduced Planck constant (> 0)");
  sub->add_option("--equation", c.equation,
                  "new | nrt (residual also accepts the full equation tags)");
  sub->add_option("--xmin", c.x_min, "left end of the x grid");
  sub->add_option("--xmax", c.x_max, "right end of the x grid");
  sub->add_option("--nx", c.nx, "number of x points (>= 3)");
  sub->add_option("--dt", c.dt, "time step");
  sub->add_option("--steps", c.steps, "number of time steps");
  sub->add_option("--tol", c.tol, "tolerance for pass/fail");
  sub->add_option("--format", c.format, "csv | json | svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  sub->add_option("--out", c.out, "output path");
}

void validate_config(const RunConfig& c) {
  if (c.equation == "nrt" && c.q == 2.0) {
    throw UsageError("the NRT equation requires q != 2");
  }
  if (!(c.mass > 0.0)) throw UsageError("--mass must be positive");
  if (!(c.hbar > 0.0)) throw UsageError("--hbar must be positive");
  if (!std::isfinite(c.q) || !std::isfinite(c.p)) {
    throw UsageError("--q and --p must be finite");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"q-deformed nonlinear Schroedinger equation toolkit"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run every invariant suite");
  auto* residual = app.add_subcommand("residual", "scan an equation's residual on a grid");
  auto* propagate_cmd = app.add_subcommand("propagate", "integrate a nonlinear PDE");
  auto* converge = app.add_subcommand("converge", "refinement study with fitted order");
  auto* limit = app.add_subcommand("limit", "distance to the classical plane wave vs q-1");
  auto* compare = app.add_subcommand("compare", "compare the new-equation and NRT g(x)");
  for (auto* sub : {verify, residual, propagate_cmd, converge, limit, compare}) {
    add_common_options(sub, config);
  }
  residual->add_option("--method", config.method, "analytic | fd")
      ->check(CLI::IsMember({"analytic", "fd"}));
  residual->add_option("--richardson", config.richardson,
                       "finite-difference Richardson levels");
  residual->add_option("--solution", config.solution,
                       "qwave | classical | product-new | product-nrt | f-new | f-nrt | "
                       "g-new | g-nrt");
  propagate_cmd->add_option("--solution", config.solution, "qwave | product");
  converge->add_option("--scenario", config.scenario, "ode-time | ode-space | pde")
      ->check(CLI::IsMember({"ode-time", "ode-space", "pde"}));
  converge->add_option("--levels", config.levels, "refinement levels (>= 3)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) {
    reversed.pop_back();  // program name
  }
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) {
    config.command = sub->get_name();
  }
  if (config.command == "propagate" || (config.command == "converge" &&
                                        config.scenario == "pde")) {
    auto* sub = app.get_subcommand(config.command);
    if (sub->get_option("--dt")->count() == 0) config.dt = 1e-4;
    if (sub->get_option("--steps")->count() == 0) config.steps = 1000;
  }

  try {
    validate_config(config);
    if (config.command == "verify") return cmd_verify(config, out, err);
    if (config.command == "residual") return cmd_residual(config, out, err);
    if (config.command == "propagate") return cmd_propagate(config, out, err);
    if (config.command == "converge") return cmd_converge(config, out, err);
    if (config.command == "limit") return cmd_limit(config, out, err);
    if (config.command == "compare") return cmd_compare(config, out, err);
    throw UsageError("unknown command");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace qnlse
