#include "isoembed/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "isoembed/spectral.hpp"

namespace isoembed {

namespace {

void validate(const SolveConfig& cfg) {
  if (cfg.max_iters < 1) throw std::invalid_argument("solve: max_iters must be >= 1");
  if (!(cfg.tol_step > 0) || !(cfg.tol_residual > 0))
    throw std::invalid_argument("solve: tolerances must be positive");
  if (!(cfg.divergence_factor > 0))
    throw std::invalid_argument("solve: divergence_factor must be positive");
  if (!(cfg.alpha > 0) || !(cfg.alpha < 1))
    throw std::invalid_argument("solve: alpha must lie in (0,1)");
}

Real tail_fraction(const VecField& v) {
  const Real total = energy(v);
  if (total <= 0) return 0;
  const int cutoff = (2 * v.grid().nyquist()) / 3;
  return energy_above(v, cutoff) / total;
}

// Residual straight from a raw map, so diverged iterates (which may no longer
// be immersions) still produce a finite report.
Real map_isometry_residual(const VecField& map, const SymTensorField& g) {
  const int n = map.grid().dim();
  std::vector<VecField> du;
  for (int i = 0; i < n; ++i) du.push_back(partial(map, i));
  Real worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      worst = std::max(
          worst, norm_c(dot(du[size_t(i)], du[size_t(j)]) - g.component(i, j), 0));
  return worst;
}

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::not_converged: return "not_converged";
    case SolveStatus::diverged: return "diverged";
  }
  return "unknown";
}

VecField phi_step(const Frame& frame, const SymTensorField& h, const VecField& v) {
  return apply_m0(frame, h) + apply_q0(frame, v, v);
}

Real isometry_residual(const Immersion& u, const SymTensorField& g) {
  if (u.grid() != g.grid()) throw std::invalid_argument("isometry_residual: grids differ");
  return map_isometry_residual(u.map(), g);
}

SolveResult solve(const Scenario& scenario, const SolveConfig& cfg,
                  const IterationObserver& observer) {
  validate(cfg);
  const Frame frame = build_frame(scenario.u0);
  const GridSpec& grid = scenario.u0.grid();
  const int dealias_cutoff = grid.size() / 3;

  VecField m0h = apply_m0(frame, scenario.h);
  if (cfg.dealias) m0h = truncate_modes(m0h, dealias_cutoff);

  SolveReport report;
  report.freeness_margin = frame.freeness_margin();

  auto residual_of = [&](const VecField& v) {
    return map_isometry_residual(scenario.u0.map() + v, scenario.g);
  };

  VecField v = VecField::zero(grid, scenario.u0.ambient_dim());
  Real first_norm = -1;
  int rising_ratios = 0;
  SolveStatus status = SolveStatus::not_converged;

  for (int k = 1; k <= cfg.max_iters; ++k) {
    VecField next = m0h + apply_q0(frame, v, v);
    if (cfg.dealias) next = truncate_modes(next, dealias_cutoff);
    const Real step = norm_c(next - v, 2);
    report.step_norms.push_back(step);
    Real ratio = std::numeric_limits<Real>::quiet_NaN();
    if (k >= 2) {
      ratio = step / report.step_norms[size_t(k - 2)];
      report.contraction_ratios.push_back(ratio);
      rising_ratios = ratio > 1 ? rising_ratios + 1 : 0;
    }
    v = std::move(next);
    report.iterations = k;
    if (observer) observer({k, step, ratio, residual_of(v)});
    if (k == 1) first_norm = norm_c(v, 2);

    if (step <= cfg.tol_step) {
      status = SolveStatus::converged;  // subject to the residual check below
      break;
    }
    if (first_norm > 0 && norm_c(v, 2) > cfg.divergence_factor * first_norm) {
      status = SolveStatus::diverged;
      break;
    }
    if (rising_ratios >= 5) {
      status = SolveStatus::diverged;
      break;
    }
  }

  report.final_residual = residual_of(v);
  report.spectral_tail = tail_fraction(v);
  if (status == SolveStatus::converged && report.final_residual > cfg.tol_residual)
    status = SolveStatus::not_converged;
  report.status = status;
  report.converged = status == SolveStatus::converged;

  SolveResult result{std::nullopt, std::move(report)};
  if (result.report.converged) result.u = Immersion(scenario.u0.map() + v);
  return result;
}

Real basin_probe(const std::function<Scenario(Real)>& family, Real amp_lo, Real amp_hi,
                 const SolveConfig& cfg) {
  if (!(amp_lo >= 0) || !(amp_hi > amp_lo))
    throw std::invalid_argument("basin_probe: need 0 <= amp_lo < amp_hi");
  auto converges = [&](Real amp) {
    return solve(family(amp), cfg).report.converged;
  };
  if (!converges(amp_lo))
    throw std::invalid_argument("basin_probe: lower bracket does not converge");
  if (converges(amp_hi))
    throw std::invalid_argument("basin_probe: upper bracket converges");
  while (amp_hi - amp_lo > Real(0.05) * Real(0.5) * (amp_hi + amp_lo)) {
    const Real mid = Real(0.5) * (amp_lo + amp_hi);
    (converges(mid) ? amp_lo : amp_hi) = mid;
  }
  return Real(0.5) * (amp_lo + amp_hi);
}

}  // namespace isoembed
