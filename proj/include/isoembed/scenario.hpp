#pragma once

#include <string>
#include <variant>
#include <vector>

#include "isoembed/frame.hpp"
#include "isoembed/random_fields.hpp"

namespace isoembed {

/// Constant symmetric tensor; values must be an n x n symmetric matrix.
struct ConstantPerturbation {
  MatrixXr values;
};

/// One cosine mode added to component (i, j): amplitude * cos(k . x).
/// Indices are 0-based and normalized to i <= j.
struct TensorMode {
  int i = 0;
  int j = 0;
  std::vector<int> wavevector;
  Real amplitude = 0;
};

struct ModePerturbation {
  std::vector<TensorMode> modes;
};

/// Seeded band-limited random tensor. Every component is scaled so its sup
/// norm equals amplitude exactly.
struct RandomPerturbation {
  int max_wavenumber = 1;
  Real amplitude = 0;
  std::uint64_t seed = 0;
};

using PerturbationSpec =
    std::variant<ConstantPerturbation, ModePerturbation, RandomPerturbation>;

/// Realizes a perturbation spec as a symmetric tensor field on the grid.
/// Deterministic for a fixed spec. Throws ConfigError for wavevectors beyond
/// Nyquist or shape mismatches.
SymTensorField make_perturbation(const PerturbationSpec& spec, const GridSpec& grid);

/// A base immersion together with a target metric g = pullback(u0) + h.
/// Construction validates that g is pointwise positive definite.
struct Scenario {
  std::string name;
  Immersion u0;
  SymTensorField g;
  SymTensorField h;
};

/// n=1, N=2: u0(x) = (cos x, sin x). Pullback metric dx^2.
Scenario scenario_circle(int grid_size, const PerturbationSpec& h_spec);

/// n=2, N=6: u0(x,y) = (cos x, sin x, cos y, sin y, cos(x+y), sin(x+y)).
/// Pullback metric is the constant matrix [[2,1],[1,2]], which is flat.
Scenario scenario_flat_torus_r6(int grid_size, const PerturbationSpec& h_spec);

/// Dispatch by scenario name; throws ConfigError for unknown names.
Scenario make_scenario(const std::string& name, int grid_size, const PerturbationSpec& h_spec);

struct ScenarioInfo {
  std::string name;
  int dim;
  int ambient_dim;
};

const std::vector<ScenarioInfo>& builtin_scenarios();

/// The n=2 map (cos x, sin x, cos y, sin y) into R^4. Its mixed second
/// derivative vanishes identically, so frame building rejects it; kept as the
/// canonical negative example for the freeness checks.
VecField clifford_torus_r4(const GridSpec& grid);

}  // namespace isoembed
