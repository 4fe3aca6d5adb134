#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hmclab/config.hpp"

namespace hmclab {

struct ExpectationResult {
  Expectation expectation;
  double value = 0.0;
  bool satisfied = false;
};

struct ExitReport {
  std::vector<std::pair<std::string, double>> summary;
  std::vector<ExpectationResult> expectations;
  std::vector<std::string> output_files;

  bool ok() const {
    for (const auto& e : expectations)
      if (!e.satisfied) return false;
    return true;
  }
  double metric(const std::string& name) const;
};

// Executes the configured experiment, writes its CSV artifacts under
// cfg.output_dir, and evaluates the configured expectations. Throws on
// invalid input or unwritable output; refuses to overwrite existing
// files unless cfg.overwrite is set.
ExitReport run_experiment(const ExperimentConfig& cfg);

// Format a double with 17 significant digits (lossless round-trip).
std::string format_number(double v);

}  // namespace hmclab
