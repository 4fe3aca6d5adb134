#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hmclab/config.hpp"
#include "hmclab/experiment.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string output_dir;
  bool overwrite = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "path to the JSON experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--output-dir", opts.output_dir, "override the config's output directory");
  cmd->add_flag("--overwrite", opts.overwrite, "allow overwriting existing output files");
  cmd->add_option("--seed", opts.seed, "override the config's RNG seed")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
}

int run(const CommonOptions& opts, hmclab::ExperimentKind expected) {
  std::ifstream in(opts.config_path);
  std::stringstream buffer;
  buffer << in.rdbuf();

  hmclab::ParseResult parsed = hmclab::parse_config(buffer.str());
  if (!parsed.ok()) {
    for (const auto& err : parsed.errors) std::cerr << "config error: " << err << "\n";
    return 2;
  }
  hmclab::ExperimentConfig cfg = *parsed.config;
  if (cfg.experiment != expected) {
    std::cerr << "config declares experiment '" << hmclab::experiment_kind_name(cfg.experiment)
              << "' but the '" << hmclab::experiment_kind_name(expected)
              << "' subcommand was invoked\n";
    return 2;
  }

  // Output dir priority: --output-dir, then config, then HMC_LAB_OUTPUT_DIR.
  if (!opts.output_dir.empty()) cfg.output_dir = opts.output_dir;
  if (cfg.output_dir.empty()) {
    if (const char* env = std::getenv("HMC_LAB_OUTPUT_DIR")) cfg.output_dir = env;
  }
  if (opts.overwrite) cfg.overwrite = true;
  if (opts.seed_set) cfg.sampler.seed = opts.seed;

  try {
    const hmclab::ExitReport report = hmclab::run_experiment(cfg);
    for (const auto& [metric, value] : report.summary)
      std::cout << metric << " = " << hmclab::format_number(value) << "\n";
    for (const auto& e : report.expectations)
      std::cout << (e.satisfied ? "PASS" : "FAIL") << "  " << e.expectation.metric << " "
                << e.expectation.comparator << " " << hmclab::format_number(e.expectation.threshold)
                << "  (actual " << hmclab::format_number(e.value) << ")\n";
    for (const auto& f : report.output_files) std::cout << "wrote " << f << "\n";
    return report.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hmc-lab: config-driven Hamiltonian Monte Carlo experiments"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto* sample = app.add_subcommand("sample", "run chains and write trajectories");
  auto* couple = app.add_subcommand("couple", "run synchronously coupled chain pairs");
  auto* check = app.add_subcommand("integrate-check",
                                   "conservation, reversibility, and volume checks");
  auto* conv = app.add_subcommand("convergence", "per-step W2 to the target law");
  for (auto* cmd : {sample, couple, check, conv}) add_common(cmd, opts);

  CLI11_PARSE(app, argc, argv);

  if (sample->parsed()) return run(opts, hmclab::ExperimentKind::Sample);
  if (couple->parsed()) return run(opts, hmclab::ExperimentKind::Couple);
  if (check->parsed()) return run(opts, hmclab::ExperimentKind::IntegrateCheck);
  return run(opts, hmclab::ExperimentKind::Convergence);
}
