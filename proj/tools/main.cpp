#include <CLI11.hpp>
#include <iostream>

#include "isoembed/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Isometric embeddings of flat tori by spectral fixed-point iteration"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run a solve from a JSON config file");
  solve_cmd->add_option("config", config_path, "Path to the config JSON")->required();

  isoembed::cli::VerifyOptions verify_opts;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the operator identity suite on random fields");
  verify_cmd->add_option("--size", verify_opts.grid_size, "Grid points per axis")
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_opts.seed, "Random seed")->capture_default_str();
  verify_cmd->add_option("--trials", verify_opts.trials, "Random fields per identity")
      ->capture_default_str();
  verify_cmd->add_flag("--corrupt-q0-sign", verify_opts.corrupt_q0_sign)->group("");

  CLI::App* scenarios_cmd = app.add_subcommand("scenarios", "List built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : int(isoembed::cli::ExitCode::invalid_config);
  }

  try {
    if (solve_cmd->parsed()) return isoembed::cli::run_solve(config_path, std::cout);
    if (verify_cmd->parsed()) return isoembed::cli::run_verify(verify_opts, std::cout);
    if (scenarios_cmd->parsed()) return isoembed::cli::list_scenarios(std::cout);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return int(isoembed::cli::ExitCode::internal_error);
  }
  return int(isoembed::cli::ExitCode::internal_error);
}
