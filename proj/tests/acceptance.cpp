// Acceptance suite: every criterion below runs at a pinned tolerance and
// prints exactly one pass/fail line. The process exits with the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoembed/cli.hpp"
#include "isoembed/errors.hpp"
#include "isoembed/solver.hpp"
#include "isoembed/spectral.hpp"

using namespace isoembed;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const PerturbationSpec kNone1 = ConstantPerturbation{MatrixXr::Zero(1, 1)};
const PerturbationSpec kNone2 = ConstantPerturbation{MatrixXr::Zero(2, 2)};

// The canonical torus run: band limit 3, sup amplitude 1e-2, seed 10.
constexpr std::uint64_t kTorusSeed = 10;

SolveConfig solver_defaults() {
  SolveConfig cfg;
  cfg.max_iters = 50;
  cfg.tol_step = 1e-13;
  cfg.tol_residual = 1e-10;
  return cfg;
}

std::string fmt(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

VecField scaled_random_vec(const GridSpec& g, int N, int K, std::uint64_t seed, Real sup) {
  const VecField raw = random_band_limited_vec(g, N, K, seed);
  return (sup / norm_c(raw, 0)) * raw;
}

Outcome right_inverse() {
  Real worst = 0;
  for (const auto& [name, m] : {std::pair<std::string, int>{"circle", 64},
                                std::pair<std::string, int>{"flat_torus_r6", 32}}) {
    const Scenario sc = make_scenario(name, m, name == "circle" ? kNone1 : kNone2);
    const Frame frame = build_frame(sc.u0);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const SymTensorField h =
          make_perturbation(RandomPerturbation{m / 6, 0.1, seed}, sc.u0.grid());
      const Real res = norm_c(apply_l0(frame, apply_m0(frame, h)) - h, 0);
      worst = std::max(worst, res / (1e-11 * norm_c(h, 1)));
    }
  }
  return {worst <= 1.0, "worst residual at " + fmt(worst) + "x tolerance"};
}

Outcome splitting() {
  const GridSpec g = make_grid(2, 32);
  Real worst = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const VecField v = scaled_random_vec(g, 6, 5, seed, 0.5);
    const Real nv = norm_c(v, 2);
    worst = std::max(worst, splitting_residual(v) / (1e-11 * nv * nv));
  }
  return {worst <= 1.0, "worst residual at " + fmt(worst) + "x tolerance"};
}

Outcome composite() {
  const Scenario sc = scenario_flat_torus_r6(32, kNone2);
  const Frame frame = build_frame(sc.u0);
  Real worst = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const VecField v = scaled_random_vec(sc.u0.grid(), 6, 5, seed, 0.5);
    const Real nv = norm_c(v, 2);
    worst = std::max(worst, composite_residual(frame, v) / (1e-10 * (1 + nv) * nv));
  }
  return {worst <= 1.0, "worst residual at " + fmt(worst) + "x tolerance"};
}

Outcome circle_fixed_point() {
  SolveConfig cfg = solver_defaults();
  cfg.tol_residual = 1e-12;
  const Scenario sc = scenario_circle(64, ConstantPerturbation{0.1 * MatrixXr::Ones(1, 1)});
  const SolveResult r = solve(sc, cfg);
  if (!r.report.converged) return {false, "did not converge"};
  const Real expected = std::sqrt(1.1) - 1.0;  // 0.04880884817...
  const Real amp = norm_c(r.u->map() - sc.u0.map(), 0);
  const bool pass = r.report.iterations <= 30 && std::abs(amp - expected) <= 1e-12 &&
                    r.report.final_residual <= 1e-12;
  return {pass, std::to_string(r.report.iterations) + " iters, amplitude error " +
                    fmt(std::abs(amp - expected)) + ", residual " +
                    fmt(r.report.final_residual)};
}

SolveReport torus_report(Real amplitude) {
  const Scenario sc =
      scenario_flat_torus_r6(32, RandomPerturbation{3, amplitude, kTorusSeed});
  return solve(sc, solver_defaults()).report;
}

Outcome torus_end_to_end(SolveReport* out) {
  const SolveReport r = torus_report(1e-2);
  *out = r;
  if (!r.converged) return {false, "did not converge"};
  bool ratios_ok = true;
  for (size_t i = 1; i < r.contraction_ratios.size(); ++i)
    ratios_ok = ratios_ok && r.contraction_ratios[i] < 1.0;
  const bool pass = r.iterations <= 50 && r.final_residual <= 1e-10 && ratios_ok &&
                    r.contraction_ratios.back() <= 0.1;
  return {pass, std::to_string(r.iterations) + " iters, residual " + fmt(r.final_residual) +
                    ", final ratio " + fmt(r.contraction_ratios.back())};
}

Outcome rate_scaling(const SolveReport& at_1e2) {
  const SolveReport fine = torus_report(1e-3);
  if (!at_1e2.converged || !fine.converged) return {false, "a run did not converge"};
  const Real factor = at_1e2.contraction_ratios.back() / fine.contraction_ratios.back();
  return {factor >= 3.0 && factor <= 30.0, "ratio factor " + fmt(factor) + " in [3, 30]"};
}

std::string write_temp_config(const fs::path& dir, const std::string& name,
                              const nlohmann::json& j) {
  const std::string path = (dir / name).string();
  std::ofstream out(path);
  out << j.dump();
  return path;
}

Outcome graceful_divergence(const fs::path& dir) {
  nlohmann::json j;
  j["scenario"] = "circle";
  j["grid_size"] = 64;
  j["perturbation"] = {{"kind", "constant"}, {"value", 20.0}};
  j["output"] = {{"report", (dir / "diverge_report.json").string()}};
  const std::string cfg = write_temp_config(dir, "diverge.json", j);

  std::ostringstream log;
  int code = 0;
  try {
    code = cli::run_solve(cfg, log);
  } catch (const std::exception& e) {
    return {false, std::string("exception escaped: ") + e.what()};
  }
  if (code != int(cli::ExitCode::diverged) && code != int(cli::ExitCode::not_converged))
    return {false, "exit code " + std::to_string(code)};
  try {
    const auto report = nlohmann::json::parse(std::ifstream((dir / "diverge_report.json")));
    if (report.at("converged").get<bool>()) return {false, "report claims convergence"};
    if (!report.contains("step_norms") || report.at("step_norms").empty())
      return {false, "report trace missing"};
  } catch (const std::exception& e) {
    return {false, std::string("report unreadable: ") + e.what()};
  }
  return {true, "exit code " + std::to_string(code) + ", report intact"};
}

Outcome freeness_guards() {
  const Frame circle = build_frame(scenario_circle(64, kNone1).u0);
  if (std::abs(circle.freeness_margin() - 1.0) > 1e-12)
    return {false, "circle margin " + fmt(circle.freeness_margin())};

  Real torus_margin = -1;
  for (int m : {8, 16, 32}) {
    const Frame f = build_frame(scenario_flat_torus_r6(m, kNone2).u0);
    if (f.freeness_margin() <= 0) return {false, "torus margin not positive"};
    if (torus_margin < 0) torus_margin = f.freeness_margin();
    if (std::abs(f.freeness_margin() - torus_margin) > 1e-12)
      return {false, "torus margin drifts with resolution"};
  }

  bool rejected = false;
  try {
    build_frame(Immersion(clifford_torus_r4(make_grid(2, 32))));
  } catch (const FreenessError&) {
    rejected = true;
  }
  if (!rejected) return {false, "Clifford R^4 map was not rejected"};
  return {true, "circle margin 1, torus margin " + fmt(torus_margin) + ", Clifford rejected"};
}

Outcome smoothness_echo() {
  const Scenario sc = scenario_flat_torus_r6(32, RandomPerturbation{3, 1e-2, kTorusSeed});
  const SolveResult r = solve(sc, solver_defaults());
  if (!r.report.converged) return {false, "did not converge"};
  const VecField v = r.u->map() - sc.u0.map();
  const Real fraction = energy_above(v, 9) / energy(v);
  return {fraction <= 1e-10, "energy fraction above wavenumber 9: " + fmt(fraction)};
}

Outcome determinism(const fs::path& dir) {
  nlohmann::json j;
  j["scenario"] = "flat_torus_r6";
  j["grid_size"] = 32;
  j["perturbation"] = {{"kind", "random"},
                       {"max_wavenumber", 3},
                       {"amplitude", 1e-2},
                       {"seed", kTorusSeed}};
  j["solver"] = {{"tol_residual", 1e-10}};
  j["output"] = {{"report", (dir / "det_report.json").string()}};
  const std::string cfg = write_temp_config(dir, "det.json", j);

  std::ostringstream log;
  auto read = [&] {
    std::ifstream in(dir / "det_report.json", std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  if (cli::run_solve(cfg, log) != 0) return {false, "first run failed"};
  const std::string first = read();
  if (cli::run_solve(cfg, log) != 0) return {false, "second run failed"};
  const std::string second = read();
  if (first != second) return {false, "report bytes differ between runs"};
  return {true, std::to_string(first.size()) + " report bytes, byte-identical"};
}

}  // namespace

int main() {
  const fs::path tmp =
      fs::temp_directory_path() / ("isoembed_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(tmp);

  struct Criterion {
    std::string name;
    Real time_limit_s;  // 0: none
    std::function<Outcome()> run;
  };

  SolveReport torus_1e2;
  const std::vector<Criterion> criteria = {
      {"right inverse L0 M0 = Id", 5.0, right_inverse},
      {"splitting identity", 10.0, splitting},
      {"composite identity", 0.0, composite},
      {"circle closed-form fixed point", 1.0, circle_fixed_point},
      {"torus end-to-end solve", 30.0, [&] { return torus_end_to_end(&torus_1e2); }},
      {"contraction rate scales with amplitude", 0.0, [&] { return rate_scaling(torus_1e2); }},
      {"graceful divergence", 0.0, [&] { return graceful_divergence(tmp); }},
      {"freeness guards", 0.0, freeness_guards},
      {"smoothness echo", 0.0, smoothness_echo},
      {"deterministic reports", 0.0, [&] { return determinism(tmp); }},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const Real seconds =
        std::chrono::duration<Real>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].time_limit_s > 0 && seconds > criteria[i].time_limit_s) {
      outcome.pass = false;
      outcome.detail += " [over time limit " + fmt(criteria[i].time_limit_s) + " s]";
    }
    if (!outcome.pass) ++failures;
    std::printf("criterion %02zu %-42s %s (%s; %.2f s)\n", i + 1, criteria[i].name.c_str(),
                outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str(), seconds);
  }

  fs::remove_all(tmp);
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
