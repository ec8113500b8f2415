#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "isoembed/solver.hpp"

namespace isoembed::cli {

/// Process exit codes; fixed contract, documented in the README.
enum class ExitCode : int {
  ok = 0,
  internal_error = 1,
  not_converged = 2,
  diverged = 3,
  freeness_failure = 4,
  invalid_config = 5,
};

struct RunConfig {
  std::string scenario;
  int grid_size = 0;
  PerturbationSpec perturbation = ConstantPerturbation{MatrixXr::Zero(1, 1)};
  std::uint64_t seed = 0;  // echoed into the report; nonzero only for random specs
  SolveConfig solver;
  std::string report_path;
  std::string embedding_path;
  std::string trace_path;
};

/// Parses and validates a config document. Throws ConfigError naming the
/// offending field.
RunConfig parse_run_config(const std::string& json_text);

/// Loads a config file, runs the solve, writes the requested report,
/// embedding, and trace files, and returns the exit code.
int run_solve(const std::string& config_path, std::ostream& log);

struct VerifyOptions {
  int grid_size = 32;
  std::uint64_t seed = 7;
  int trials = 10;
  /// Replaces the span-lift coefficients with the uncorrected ones; the
  /// composite identity is expected to fail, demonstrating the regression
  /// guard.
  bool corrupt_q0_sign = false;
};

/// Runs the operator identity suite on seeded random fields and prints a
/// residual table. Returns 0 iff every identity holds within tolerance.
int run_verify(const VerifyOptions& opts, std::ostream& out);

/// Prints the built-in scenarios with their dimensions and freeness margins.
int list_scenarios(std::ostream& out);

/// FNV-1a hash of the raw config bytes, used for report provenance.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace isoembed::cli
