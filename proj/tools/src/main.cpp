#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "descentlab_cli/commands.hpp"

int main(int argc, char** argv) {
  namespace cli = descentlab::cli;

  CLI::App app{"descentlab: gradient-descent bake-offs and Gadam runs"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::CommandOptions options;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  auto* out_opt = app.add_option("--out", out_dir, "Output directory (default $DESCENTLAB_OUT)");
  auto* seed_opt = app.add_option("--seed", seed, "Master seed, replacing the spec's seeds");
  auto* workers_opt = app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

  std::string spec_path;
  auto* run = app.add_subcommand("run", "Train every optimizer in a spec and write traces");
  run->add_option("spec", spec_path, "RunSpec JSON file")->required();
  auto* gadam = app.add_subcommand("gadam", "Run Gadam against a matched-budget Adam baseline");
  gadam->add_option("spec", spec_path, "RunSpec JSON file with a gadam section")->required();
  auto* verify = app.add_subcommand("verify", "Recompute the worked loss examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : cli::kExitInvalidSpec;
  }

  options.spec_path = spec_path;
  if (*out_opt) options.out = out_dir;
  if (*seed_opt) options.seed = seed;
  if (*workers_opt) options.workers = workers;

  if (*verify) return cli::cmd_verify(std::cout);
  if (*run) return cli::cmd_run(options, std::cout, std::cerr);
  return cli::cmd_gadam(options, std::cout, std::cerr);
}
