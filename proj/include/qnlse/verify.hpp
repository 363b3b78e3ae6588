#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnlse/field.hpp"
#include "qnlse/solutions.hpp"

namespace qnlse {

/// Outcome of one invariant suite: the worst observed figure against its
/// threshold. `higher_is_better` flips the comparison (orders, separations).
struct SuiteResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;
  double threshold = 0.0;
  bool higher_is_better = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int draws = 200;
  FreeParticleSpec spec{1.5, 1.0, 0.5, 1.0};
  GridSpec grid{};  // x in [-5, 5], 101 points, t = 0, 0.1, ..., 1
};

/// Seed from QNLSE_SEED, falling back to 42.
std::uint64_t seed_from_environment();

std::vector<SuiteResult> run_verification_suites(const VerifyOptions& options);

/// Sup over the grid of |solution(q) - exp(i(px-Et)/hbar)| for the named
/// solution ("q_plane_wave", "product_new", "product_nrt").
double classical_distance(const std::string& solution, const FreeParticleSpec& spec,
                          const GridSpec& grid);

/// Max over the grid of |g_new(x) - g_nrt(x)|.
double factor_separation(const FreeParticleSpec& spec, const GridSpec& grid);

}  // namespace qnlse
