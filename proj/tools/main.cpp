#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ratsys/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ratsys: simulate and classify k-th order rational difference systems"};
  app.require_subcommand(1);

  ratsys::cli::CommandOptions opts;
  std::optional<int> trials;
  std::optional<long> horizon;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* sub, bool needs_out, const std::string& out_help) {
    sub->add_option("--config", opts.config, "JSON experiment config")->required();
    if (needs_out) sub->add_option("--out", opts.out, out_help)->required();
    sub->add_option("--horizon", horizon, "override horizon");
    sub->add_option("--seed", seed, "override rng_seed");
  };

  auto* simulate = app.add_subcommand("simulate", "write a trajectory CSV");
  add_common(simulate, true, "output CSV path");
  auto* classify = app.add_subcommand("classify", "print the predicted regime");
  add_common(classify, false, "");
  auto* verify = app.add_subcommand("verify", "check the predicted regime against simulations");
  add_common(verify, false, "");
  verify->add_option("--trials", trials, "override trial count");
  auto* sweep = app.add_subcommand("sweep", "classify and verify a parameter grid");
  add_common(sweep, true, "output directory for phase_table.csv");
  sweep->add_option("--trials", trials, "override trial count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ratsys::cli::kValidationError;
  }

  opts.trials = trials;
  opts.horizon = horizon;
  opts.seed = seed;

  if (simulate->parsed()) return ratsys::cli::cmd_simulate(opts, std::cout, std::cerr);
  if (classify->parsed()) return ratsys::cli::cmd_classify(opts, std::cout, std::cerr);
  if (verify->parsed()) return ratsys::cli::cmd_verify(opts, std::cout, std::cerr);
  return ratsys::cli::cmd_sweep(opts, std::cout, std::cerr);
}
