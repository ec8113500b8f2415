#include "isoembed/scenario.hpp"

#include <cmath>
#include <sstream>

#include "isoembed/errors.hpp"
#include "isoembed/spectral.hpp"

namespace isoembed {

namespace {

SymTensorField constant_tensor(const ConstantPerturbation& spec, const GridSpec& grid) {
  const int n = grid.dim();
  if (spec.values.rows() != n || spec.values.cols() != n)
    throw ConfigError("constant perturbation must be an n x n matrix");
  if (!spec.values.isApprox(spec.values.transpose(), 0))
    throw ConfigError("constant perturbation must be symmetric");
  std::vector<ScalarField> comps;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      comps.push_back(ScalarField::constant(grid, spec.values(i, j)));
  return SymTensorField(n, std::move(comps));
}

SymTensorField mode_tensor(const ModePerturbation& spec, const GridSpec& grid) {
  const int n = grid.dim();
  std::vector<ArrayXc> spectra(size_t(n * (n + 1) / 2),
                               ArrayXc::Zero(grid.num_points()));
  std::vector<int> neg(static_cast<size_t>(n), 0);
  for (const TensorMode& mode : spec.modes) {
    if (mode.i < 0 || mode.j < 0 || mode.i >= n || mode.j >= n)
      throw ConfigError("perturbation mode component index out of range");
    if (int(mode.wavevector.size()) != n)
      throw ConfigError("perturbation mode wavevector has wrong length");
    for (int t = 0; t < n; ++t) {
      if (std::abs(mode.wavevector[size_t(t)]) > grid.nyquist())
        throw ConfigError("perturbation mode wavevector beyond Nyquist");
      neg[size_t(t)] = -mode.wavevector[size_t(t)];
    }
    ArrayXc& s = spectra[size_t(SymTensorField::pair_index(mode.i, mode.j, n))];
    const Index plus = grid.mode_index(mode.wavevector.data());
    const Index minus = grid.mode_index(neg.data());
    if (plus == minus) {
      s[plus] += mode.amplitude;  // constant or pure-Nyquist cosine
    } else {
      s[plus] += mode.amplitude / 2;
      s[minus] += mode.amplitude / 2;
    }
  }
  std::vector<ScalarField> comps;
  for (auto& s : spectra) comps.push_back(ScalarField::from_spectrum(grid, std::move(s)));
  return SymTensorField(n, std::move(comps));
}

SymTensorField random_tensor(const RandomPerturbation& spec, const GridSpec& grid) {
  if (spec.max_wavenumber < 0 || spec.max_wavenumber > grid.nyquist())
    throw ConfigError("random perturbation max_wavenumber beyond Nyquist");
  const int n = grid.dim();
  Rng rng(spec.seed);
  std::vector<ScalarField> comps;
  for (int idx = 0; idx < n * (n + 1) / 2; ++idx) {
    ScalarField raw = random_band_limited(grid, spec.max_wavenumber, rng);
    const Real sup = norm_c(raw, 0);
    const Real scale = sup > 0 ? spec.amplitude / sup : Real(0);
    comps.push_back(scale * raw);
  }
  return SymTensorField(n, std::move(comps));
}

Scenario finish_scenario(std::string name, Immersion u0, const PerturbationSpec& h_spec) {
  SymTensorField h = make_perturbation(h_spec, u0.grid());
  SymTensorField g = pullback_metric(u0) + h;
  const Real min_eig = min_eigenvalue(g);
  if (min_eig <= 0) {
    std::ostringstream msg;
    msg << "scenario '" << name << "': target metric is not positive definite"
        << " (min eigenvalue " << min_eig << ")";
    throw ConfigError(msg.str());
  }
  return Scenario{std::move(name), std::move(u0), std::move(g), std::move(h)};
}

}  // namespace

SymTensorField make_perturbation(const PerturbationSpec& spec, const GridSpec& grid) {
  return std::visit(
      [&](const auto& s) -> SymTensorField {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConstantPerturbation>) return constant_tensor(s, grid);
        if constexpr (std::is_same_v<T, ModePerturbation>) return mode_tensor(s, grid);
        if constexpr (std::is_same_v<T, RandomPerturbation>) return random_tensor(s, grid);
      },
      spec);
}

Scenario scenario_circle(int grid_size, const PerturbationSpec& h_spec) {
  GridSpec grid = make_grid(1, grid_size);
  ArrayXr c(grid.num_points()), s(grid.num_points());
  for (Index p = 0; p < grid.num_points(); ++p) {
    const Real x = grid.coordinate(int(p));
    c[p] = std::cos(x);
    s[p] = std::sin(x);
  }
  VecField map(std::vector<ScalarField>{ScalarField::from_values(grid, std::move(c)),
                                        ScalarField::from_values(grid, std::move(s))});
  return finish_scenario("circle", Immersion(std::move(map)), h_spec);
}

Scenario scenario_flat_torus_r6(int grid_size, const PerturbationSpec& h_spec) {
  GridSpec grid = make_grid(2, grid_size);
  std::vector<ArrayXr> vals(6, ArrayXr(grid.num_points()));
  int coords[2];
  for (Index p = 0; p < grid.num_points(); ++p) {
    grid.unravel(p, coords);
    const Real x = grid.coordinate(coords[0]);
    const Real y = grid.coordinate(coords[1]);
    vals[0][p] = std::cos(x);
    vals[1][p] = std::sin(x);
    vals[2][p] = std::cos(y);
    vals[3][p] = std::sin(y);
    vals[4][p] = std::cos(x + y);
    vals[5][p] = std::sin(x + y);
  }
  std::vector<ScalarField> comps;
  for (auto& v : vals) comps.push_back(ScalarField::from_values(grid, std::move(v)));
  return finish_scenario("flat_torus_r6", Immersion(VecField(std::move(comps))), h_spec);
}

Scenario make_scenario(const std::string& name, int grid_size, const PerturbationSpec& h_spec) {
  if (name == "circle") return scenario_circle(grid_size, h_spec);
  if (name == "flat_torus_r6") return scenario_flat_torus_r6(grid_size, h_spec);
  throw ConfigError("unknown scenario '" + name + "'");
}

const std::vector<ScenarioInfo>& builtin_scenarios() {
  static const std::vector<ScenarioInfo> infos = {
      {"circle", 1, 2},
      {"flat_torus_r6", 2, 6},
  };
  return infos;
}

VecField clifford_torus_r4(const GridSpec& grid) {
  if (grid.dim() != 2) throw std::invalid_argument("clifford_torus_r4: grid must be 2-d");
  std::vector<ArrayXr> vals(4, ArrayXr(grid.num_points()));
  int coords[2];
  for (Index p = 0; p < grid.num_points(); ++p) {
    grid.unravel(p, coords);
    const Real x = grid.coordinate(coords[0]);
    const Real y = grid.coordinate(coords[1]);
    vals[0][p] = std::cos(x);
    vals[1][p] = std::sin(x);
    vals[2][p] = std::cos(y);
    vals[3][p] = std::sin(y);
  }
  std::vector<ScalarField> comps;
  for (auto& v : vals) comps.push_back(ScalarField::from_values(grid, std::move(v)));
  return VecField(std::move(comps));
}

}  // namespace isoembed
