#include "isoembed/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "isoembed/errors.hpp"
#include "isoembed/spectral.hpp"

namespace isoembed::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw ConfigError("config field '" + field + "': " + why);
}

const json& require(const json& j, const std::string& field, const std::string& scope) {
  const std::string full = scope.empty() ? field : scope + "." + field;
  if (!j.contains(field)) bad_field(full, "missing");
  return j.at(field);
}

Real get_real(const json& j, const std::string& field, const std::string& scope) {
  const json& v = require(j, field, scope);
  if (!v.is_number()) bad_field(scope.empty() ? field : scope + "." + field, "must be a number");
  return v.get<Real>();
}

int get_int(const json& j, const std::string& field, const std::string& scope) {
  const json& v = require(j, field, scope);
  if (!v.is_number_integer()) bad_field(scope.empty() ? field : scope + "." + field, "must be an integer");
  return v.get<int>();
}

PerturbationSpec parse_perturbation(const json& j, int dim, std::uint64_t* seed_out) {
  if (!j.is_object()) bad_field("perturbation", "must be an object");
  const json& kind_j = require(j, "kind", "perturbation");
  if (!kind_j.is_string()) bad_field("perturbation.kind", "must be a string");
  const std::string kind = kind_j.get<std::string>();

  if (kind == "constant") {
    MatrixXr values = MatrixXr::Zero(dim, dim);
    if (j.contains("values")) {
      const json& rows = j.at("values");
      if (!rows.is_array() || int(rows.size()) != dim)
        bad_field("perturbation.values", "must be an n x n array of arrays");
      for (int i = 0; i < dim; ++i) {
        const json& row = rows.at(size_t(i));
        if (!row.is_array() || int(row.size()) != dim)
          bad_field("perturbation.values", "must be an n x n array of arrays");
        for (int k = 0; k < dim; ++k) {
          if (!row.at(size_t(k)).is_number()) bad_field("perturbation.values", "entries must be numbers");
          values(i, k) = row.at(size_t(k)).get<Real>();
        }
      }
      if (!values.isApprox(values.transpose(), 0))
        bad_field("perturbation.values", "must be symmetric");
    } else if (j.contains("value")) {
      if (!j.at("value").is_number()) bad_field("perturbation.value", "must be a number");
      values = j.at("value").get<Real>() * MatrixXr::Identity(dim, dim);
    } else {
      bad_field("perturbation", "constant kind needs 'values' or 'value'");
    }
    return ConstantPerturbation{std::move(values)};
  }

  if (kind == "modes") {
    const json& modes_j = require(j, "modes", "perturbation");
    if (!modes_j.is_array()) bad_field("perturbation.modes", "must be an array");
    ModePerturbation spec;
    for (const json& m : modes_j) {
      TensorMode mode;
      mode.i = get_int(m, "i", "perturbation.modes[]") - 1;  // config uses 1-based components
      mode.j = get_int(m, "j", "perturbation.modes[]") - 1;
      const json& wv = require(m, "wavevector", "perturbation.modes[]");
      if (!wv.is_array() || int(wv.size()) != dim)
        bad_field("perturbation.modes[].wavevector", "must have one entry per axis");
      for (const json& k : wv) {
        if (!k.is_number_integer()) bad_field("perturbation.modes[].wavevector", "entries must be integers");
        mode.wavevector.push_back(k.get<int>());
      }
      mode.amplitude = get_real(m, "amplitude", "perturbation.modes[]");
      if (mode.i < 0 || mode.j < 0 || mode.i >= dim || mode.j >= dim)
        bad_field("perturbation.modes[].i/j", "component indices must lie in 1..n");
      spec.modes.push_back(std::move(mode));
    }
    return spec;
  }

  if (kind == "random") {
    RandomPerturbation spec;
    spec.max_wavenumber = get_int(j, "max_wavenumber", "perturbation");
    spec.amplitude = get_real(j, "amplitude", "perturbation");
    const json& seed_j = require(j, "seed", "perturbation");
    if (!seed_j.is_number_integer()) bad_field("perturbation.seed", "must be an integer");
    spec.seed = seed_j.get<std::uint64_t>();
    *seed_out = spec.seed;
    return spec;
  }

  bad_field("perturbation.kind", "must be one of constant|modes|random, got '" + kind + "'");
}

void parse_solver(const json& j, SolveConfig* cfg) {
  if (!j.is_object()) bad_field("solver", "must be an object");
  if (j.contains("max_iters")) cfg->max_iters = get_int(j, "max_iters", "solver");
  if (j.contains("tol_step")) cfg->tol_step = get_real(j, "tol_step", "solver");
  if (j.contains("tol_residual")) cfg->tol_residual = get_real(j, "tol_residual", "solver");
  if (j.contains("divergence_factor"))
    cfg->divergence_factor = get_real(j, "divergence_factor", "solver");
  if (j.contains("alpha")) cfg->alpha = get_real(j, "alpha", "solver");
  if (j.contains("dealias")) {
    if (!j.at("dealias").is_boolean()) bad_field("solver.dealias", "must be a boolean");
    cfg->dealias = j.at("dealias").get<bool>();
  }
  if (cfg->max_iters < 1) bad_field("solver.max_iters", "must be >= 1");
  if (!(cfg->tol_step > 0)) bad_field("solver.tol_step", "must be positive");
  if (!(cfg->tol_residual > 0)) bad_field("solver.tol_residual", "must be positive");
  if (!(cfg->divergence_factor > 0)) bad_field("solver.divergence_factor", "must be positive");
  if (!(cfg->alpha > 0 && cfg->alpha < 1)) bad_field("solver.alpha", "must lie in (0,1)");
}

std::string get_path(const json& j, const std::string& field) {
  if (!j.contains(field)) return {};
  if (!j.at(field).is_string()) bad_field("output." + field, "must be a string");
  return j.at(field).get<std::string>();
}

int scenario_dim(const std::string& name) {
  for (const ScenarioInfo& info : builtin_scenarios())
    if (info.name == name) return info.dim;
  bad_field("scenario", "unknown scenario '" + name + "'");
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig cfg;
  const json& scenario_j = require(j, "scenario", "");
  if (!scenario_j.is_string()) bad_field("scenario", "must be a string");
  cfg.scenario = scenario_j.get<std::string>();
  const int dim = scenario_dim(cfg.scenario);

  cfg.grid_size = get_int(j, "grid_size", "");
  if (cfg.grid_size < 8 || cfg.grid_size % 2 != 0)
    bad_field("grid_size", "must be even and >= 8");

  cfg.perturbation = parse_perturbation(require(j, "perturbation", ""), dim, &cfg.seed);
  if (j.contains("solver")) parse_solver(j.at("solver"), &cfg.solver);
  if (j.contains("output")) {
    const json& out = j.at("output");
    if (!out.is_object()) bad_field("output", "must be an object");
    cfg.report_path = get_path(out, "report");
    cfg.embedding_path = get_path(out, "embedding");
    cfg.trace_path = get_path(out, "trace");
  }
  return cfg;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16) << v;
  return os.str();
}

std::string eigen_version() {
  std::ostringstream os;
  os << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "." << EIGEN_MINOR_VERSION;
  return os.str();
}

void write_report(const std::string& path, const RunConfig& cfg, const SolveReport& report,
                  std::uint64_t config_hash) {
  ordered_json j;
  j["scenario"] = cfg.scenario;
  j["grid_size"] = cfg.grid_size;
  j["alpha"] = cfg.solver.alpha;
  j["status"] = to_string(report.status);
  j["converged"] = report.converged;
  j["iterations"] = report.iterations;
  j["step_norms"] = report.step_norms;
  j["contraction_ratios"] = report.contraction_ratios;
  j["final_residual"] = report.final_residual;
  j["freeness_margin"] = report.freeness_margin;
  j["spectral_tail"] = report.spectral_tail;
  j["provenance"] = ordered_json{{"config_hash", hex64(config_hash)},
                                 {"version", kVersion},
                                 {"eigen", eigen_version()},
                                 {"seed", cfg.seed}};
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write report file '" + path + "'");
  out << j.dump(2) << "\n";
}

void write_embedding(const std::string& path, const Immersion& u) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write embedding file '" + path + "'");
  out << std::setprecision(17);
  const GridSpec& g = u.grid();
  for (int t = 0; t < g.dim(); ++t) out << (t ? "," : "") << "x" << t + 1;
  for (int c = 0; c < u.ambient_dim(); ++c) out << ",u" << c + 1;
  out << "\n";
  std::vector<int> coords(static_cast<size_t>(g.dim()), 0);
  for (Index p = 0; p < g.num_points(); ++p) {
    g.unravel(p, coords.data());
    for (int t = 0; t < g.dim(); ++t) out << (t ? "," : "") << g.coordinate(coords[size_t(t)]);
    for (int c = 0; c < u.ambient_dim(); ++c) out << "," << u.map().component(c).values()[p];
    out << "\n";
  }
}

}  // namespace

int run_solve(const std::string& config_path, std::ostream& log) {
  std::string text;
  {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      log << "error: cannot read config file '" << config_path << "'\n";
      return int(ExitCode::invalid_config);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }

  try {
    const RunConfig cfg = parse_run_config(text);
    const std::uint64_t hash = fnv1a64(text);
    const Scenario scenario = make_scenario(cfg.scenario, cfg.grid_size, cfg.perturbation);

    std::ofstream trace;
    IterationObserver observer;
    if (!cfg.trace_path.empty()) {
      trace.open(cfg.trace_path);
      if (!trace) throw ConfigError("cannot write trace file '" + cfg.trace_path + "'");
      trace << std::setprecision(17) << "iter,step_norm,contraction_ratio,residual\n";
      observer = [&trace](const IterationRecord& rec) {
        trace << rec.iter << "," << rec.step_norm << ",";
        if (!std::isnan(rec.ratio)) trace << rec.ratio;
        trace << "," << rec.residual << "\n";
      };
    }

    const SolveResult result = solve(scenario, cfg.solver, observer);
    if (!cfg.report_path.empty()) write_report(cfg.report_path, cfg, result.report, hash);
    if (result.u && !cfg.embedding_path.empty()) write_embedding(cfg.embedding_path, *result.u);

    log << cfg.scenario << " m=" << cfg.grid_size << ": " << to_string(result.report.status)
        << " after " << result.report.iterations
        << " iterations, residual " << result.report.final_residual << "\n";
    switch (result.report.status) {
      case SolveStatus::converged: return int(ExitCode::ok);
      case SolveStatus::not_converged: return int(ExitCode::not_converged);
      case SolveStatus::diverged: return int(ExitCode::diverged);
    }
    return int(ExitCode::internal_error);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return int(ExitCode::invalid_config);
  } catch (const FreenessError& e) {
    log << "error: " << e.what() << "\n";
    return int(ExitCode::freeness_failure);
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return int(ExitCode::invalid_config);
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << "\n";
    return int(ExitCode::internal_error);
  }
}

namespace {

struct IdentityRow {
  std::string name;
  std::string scenario;
  Real residual;
  Real tolerance;
};

void run_identity_rows(const Scenario& scenario, const VerifyOptions& opts,
                       std::vector<IdentityRow>* rows) {
  const GridSpec& grid = scenario.u0.grid();
  const Frame frame = build_frame(scenario.u0);
  const int K = std::max(1, grid.size() / 6);
  const int N = scenario.u0.ambient_dim();

  Real l0m0_res = 0, l0m0_tol = 0;
  Real split_res = 0, split_tol = 0;
  Real comp_res = 0, comp_tol = 0;
  Real bilin_res = 0, bilin_tol = 0;
  Real symm_res = 0, symm_tol = 0;
  Real m0_res = 0, m0_tol = 0;
  Real q0_res = 0, q0_tol = 0;

  for (int trial = 0; trial < opts.trials; ++trial) {
    const std::uint64_t s = opts.seed + 1000003ull * std::uint64_t(trial);

    const SymTensorField h =
        make_perturbation(RandomPerturbation{K, 0.1, s}, grid);
    const VecField m0h = apply_m0(frame, h);
    l0m0_res = std::max(l0m0_res, norm_c(apply_l0(frame, m0h) - h, 0));
    l0m0_tol = std::max(l0m0_tol, 1e-11 * norm_c(h, 1));

    // Pointwise span constraints of M0.
    {
      const int n = grid.dim();
      Real res = 0;
      for (int i = 0; i < n; ++i) res = std::max(res, norm_c(dot(frame.first(i), m0h), 0));
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          res = std::max(res, norm_c(-2.0 * dot(frame.second(i, j), m0h) - h.component(i, j), 0));
      m0_res = std::max(m0_res, res);
      m0_tol = std::max(m0_tol, 1e-12 * std::max(norm_c(h, 0), Real(1)));
    }

    const VecField v = random_band_limited_vec(grid, N, K, s + 1);
    const VecField w = random_band_limited_vec(grid, N, K, s + 2);
    const VecField v2 = random_band_limited_vec(grid, N, K, s + 3);
    const Real nv = norm_c(v, 2), nw = norm_c(w, 2), nv2 = norm_c(v2, 2);

    split_res = std::max(split_res, splitting_residual(v));
    split_tol = std::max(split_tol, 1e-11 * nv * nv);

    if (opts.corrupt_q0_sign) {
      comp_res = std::max(comp_res, detail::composite_residual_signed(frame, v, 1.0, 1.0));
    } else {
      comp_res = std::max(comp_res, composite_residual(frame, v));
    }
    comp_tol = std::max(comp_tol, 1e-10 * (1 + nv) * nv);

    // Bilinearity in the first slot.
    {
      const Real a = 0.75, b = -1.25;
      const LoweredQ combo = q_lower(a * v + b * v2, w);
      const LoweredQ qv = q_lower(v, w);
      const LoweredQ qv2 = q_lower(v2, w);
      Real res = 0;
      const int n = grid.dim();
      for (int i = 0; i < n; ++i)
        res = std::max(res,
                       norm_c(combo.q(i) - (a * qv.q(i) + b * qv2.q(i)), 0));
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          res = std::max(res, norm_c(combo.q(i, j) - (a * qv.q(i, j) + b * qv2.q(i, j)), 0));
      bilin_res = std::max(bilin_res, res);
      bilin_tol = std::max(bilin_tol, 1e-12 * (std::abs(a) * nv + std::abs(b) * nv2) * nw);
    }

    // Slot symmetry.
    {
      const LoweredQ qvw = q_lower(v, w);
      const LoweredQ qwv = q_lower(w, v);
      Real res = 0;
      const int n = grid.dim();
      for (int i = 0; i < n; ++i) res = std::max(res, norm_c(qvw.q(i) - qwv.q(i), 0));
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) res = std::max(res, norm_c(qvw.q(i, j) - qwv.q(i, j), 0));
      symm_res = std::max(symm_res, res);
      symm_tol = std::max(symm_tol, 1e-13 * std::max(nv * nw, Real(1)));
    }

    // Pointwise span constraints of Q0.
    {
      const LoweredQ q = q_lower(v, v);
      const VecField q0 = apply_q0(frame, v, v);
      Real res = 0;
      const int n = grid.dim();
      for (int i = 0; i < n; ++i)
        res = std::max(res, norm_c(dot(frame.first(i), q0) + q.q(i), 0));
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
          res = std::max(res,
                         norm_c(dot(frame.second(i, j), q0) - 0.5 * q.q(i, j), 0));
      q0_res = std::max(q0_res, res);
      q0_tol = std::max(q0_tol, 1e-12 * nv * nv);
    }
  }

  rows->push_back({"L0 M0 = Id", scenario.name, l0m0_res, l0m0_tol});
  rows->push_back({"M0 span constraints", scenario.name, m0_res, m0_tol});
  rows->push_back({"splitting identity", scenario.name, split_res, split_tol});
  rows->push_back({"composite identity", scenario.name, comp_res, comp_tol});
  rows->push_back({"q_lower bilinearity", scenario.name, bilin_res, bilin_tol});
  rows->push_back({"q_lower symmetry", scenario.name, symm_res, symm_tol});
  rows->push_back({"Q0 span constraints", scenario.name, q0_res, q0_tol});
}

}  // namespace

int run_verify(const VerifyOptions& opts, std::ostream& out) {
  try {
    const PerturbationSpec none = ConstantPerturbation{MatrixXr::Zero(1, 1)};
    std::vector<IdentityRow> rows;
    run_identity_rows(scenario_circle(opts.grid_size, none), opts, &rows);
    const PerturbationSpec none2 = ConstantPerturbation{MatrixXr::Zero(2, 2)};
    run_identity_rows(scenario_flat_torus_r6(opts.grid_size, none2), opts, &rows);

    out << std::left << std::setw(24) << "identity" << std::setw(16) << "scenario"
        << std::setw(14) << "residual" << std::setw(14) << "tolerance"
        << "status\n";
    std::string first_failure;
    for (const IdentityRow& row : rows) {
      const bool pass = row.residual <= row.tolerance;
      if (!pass && first_failure.empty()) first_failure = row.name + " [" + row.scenario + "]";
      out << std::left << std::setw(24) << row.name << std::setw(16) << row.scenario
          << std::setw(14) << std::setprecision(3) << std::scientific << row.residual
          << std::setw(14) << row.tolerance << (pass ? "pass" : "FAIL") << "\n";
      out.unsetf(std::ios::scientific);
    }
    if (!first_failure.empty()) {
      out << "FAILED: " << first_failure << "\n";
      return int(ExitCode::internal_error);
    }
    out << "all identities hold\n";
    return int(ExitCode::ok);
  } catch (const std::exception& e) {
    out << "internal error: " << e.what() << "\n";
    return int(ExitCode::internal_error);
  }
}

int list_scenarios(std::ostream& out) {
  for (const ScenarioInfo& info : builtin_scenarios()) {
    const PerturbationSpec none = ConstantPerturbation{MatrixXr::Zero(info.dim, info.dim)};
    const Scenario s = make_scenario(info.name, 16, none);
    const Frame frame = build_frame(s.u0);
    out << info.name << ": n=" << info.dim << ", N=" << info.ambient_dim << ", margin "
        << std::setprecision(12) << frame.freeness_margin() << "\n";
  }
  return int(ExitCode::ok);
}

}  // namespace isoembed::cli
