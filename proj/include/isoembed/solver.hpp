#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "isoembed/operators.hpp"
#include "isoembed/scenario.hpp"

namespace isoembed {

enum class SolveStatus { converged, not_converged, diverged };
const char* to_string(SolveStatus status);

struct SolveConfig {
  int max_iters = 50;
  /// Stop when the order-2 sup norm of the iterate update falls below this.
  Real tol_step = 1e-13;
  /// Isometry residual required to declare convergence.
  Real tol_residual = 1e-11;
  /// Abort when an iterate's order-2 norm exceeds this multiple of the first
  /// iterate's norm.
  Real divergence_factor = 50.0;
  /// Holder exponent carried into reports; not used numerically.
  Real alpha = 0.5;
  /// Truncate each iterate to the 2/3 dealiasing ball.
  bool dealias = false;
};

struct SolveReport {
  SolveStatus status = SolveStatus::not_converged;
  bool converged = false;
  int iterations = 0;
  std::vector<Real> step_norms;          // norm_c(v_{k+1} - v_k, 2)
  std::vector<Real> contraction_ratios;  // successive step-norm quotients
  Real final_residual = 0;               // sup |d_i u . d_j u - g_ij|
  Real freeness_margin = 0;
  Real spectral_tail = 0;  // energy fraction above 2/3 of Nyquist in final v
};

/// Per-iteration callback data; ratio is NaN on the first iteration.
struct IterationRecord {
  int iter;
  Real step_norm;
  Real ratio;
  Real residual;
};
using IterationObserver = std::function<void(const IterationRecord&)>;

/// One fixed-point step: apply_m0(frame, h) + apply_q0(frame, v, v).
VecField phi_step(const Frame& frame, const SymTensorField& h, const VecField& v);

/// Max over (i, j) of sup |d_i u . d_j u - g_ij|.
Real isometry_residual(const Immersion& u, const SymTensorField& g);

struct SolveResult {
  /// Engaged iff the report says converged; u = u0 + v.
  std::optional<Immersion> u;
  SolveReport report;
};

/// Picard iteration from v = 0. Convergence requires both the step criterion
/// and the post-hoc isometry residual check; divergence aborts when the
/// iterate norm passes divergence_factor times the first iterate's norm or
/// the contraction ratios exceed 1 for 5 consecutive steps.
SolveResult solve(const Scenario& scenario, const SolveConfig& cfg,
                  const IterationObserver& observer = {});

/// Bisects the perturbation amplitude between a converging and a
/// non-converging sample down to 5% relative width; returns the midpoint.
Real basin_probe(const std::function<Scenario(Real)>& family, Real amp_lo, Real amp_hi,
                 const SolveConfig& cfg);

}  // namespace isoembed
