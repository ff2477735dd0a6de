// erspin-sim <experiment> --config <file> [--set key=value ...] --out <dir> [--seed N]
//
// Exit codes: 0 success, 2 config or usage error, 3 numerical failure.

#include "erspin/config.hpp"
#include "erspin/errors.hpp"
#include "erspin/experiments.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kConfigExit = 2;
constexpr int kNumericalExit = 3;

int config_error(const std::string& key, const std::string& what) {
  std::cerr << "erspin-sim: config error [" << key << "]: " << what << '\n';
  return kConfigExit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Er:YSO spin-ensemble experiment simulator", "erspin-sim"};
  std::string experiment, config_path, out_dir;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  app.add_option("experiment", experiment, "holeburn, pumping-efficiency, rabi, ramsey, echo, "
                                           "resonator or heating-budget")
      ->required();
  app.add_option("--config", config_path, "flat key = value config file")->required();
  app.add_option("--set", sets, "override key=value (repeatable)");
  app.add_option("--out", out_dir, "output directory (defaults to output_dir in the config)");
  app.add_option("--seed", seed, "seed for monte-carlo quadrature");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    return config_error("cli", msg);
  }

  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) return config_error("config", "cannot read '" + config_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    erspin::ExperimentConfig cfg = erspin::parse_config(text.str());

    if (!cfg.experiment.empty() && cfg.experiment != experiment) {
      return config_error("experiment", "config names '" + cfg.experiment +
                                            "' but the command line asks for '" + experiment + "'");
    }
    erspin::apply_assignment(cfg, "experiment", experiment);
    for (const std::string& s : sets) erspin::apply_assignment(cfg, s);
    if (seed) cfg.seed = seed;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (!cfg.output_dir) return config_error("output_dir", "no --out given and none in config");

    const erspin::ExperimentResult result = erspin::run_experiment(cfg);
    erspin::write_outputs(result, *cfg.output_dir);
    std::cout << erspin::format_summary(result);
    return 0;
  } catch (const erspin::ConfigError& e) {
    return config_error(e.key(), e.what());
  } catch (const erspin::InputError& e) {
    return config_error("input", e.what());
  } catch (const erspin::NumericalError& e) {
    std::cerr << "erspin-sim: numerical error: " << e.what() << '\n';
    return kNumericalExit;
  } catch (const std::exception& e) {
    std::cerr << "erspin-sim: " << e.what() << '\n';
    return 1;
  }
}
