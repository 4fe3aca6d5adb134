#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hmclab/potentials.hpp"
#include "hmclab/samplers.hpp"

namespace hmclab {

enum class ExperimentKind { Sample, Couple, IntegrateCheck, Convergence };

struct PotentialSpec {
  std::string kind;  // spherical_quadratic | diagonal_quadratic | dense_quadratic | perturbed_quadratic
  int dim = 0;
  std::vector<double> coefficients;   // diagonal_quadratic
  std::vector<double> spectrum;       // dense_quadratic
  std::uint64_t spectrum_seed = 0;    // dense_quadratic
  std::vector<double> base_diagonal;  // perturbed_quadratic
  double perturbation = 0.0;          // perturbed_quadratic

  Potential build() const;
};

struct Expectation {
  std::string metric;
  std::string comparator;  // one of <, <=, >, >=
  double threshold = 0.0;
};

// Declarative description of a run, parsed from a JSON config file.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Sample;
  PotentialSpec potential;
  SamplerConfig sampler;
  int repetitions = 1;
  std::string output_dir;
  bool overwrite = false;
  bool record_coordinates = false;
  std::vector<double> x0;  // optional; defaults to the origin
  std::vector<Expectation> expectations;

  std::string serialize() const;
};

struct ParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;  // each names the offending field

  bool ok() const { return errors.empty(); }
};

// Total: returns either a validated config or the full list of field
// errors. Unknown keys are rejected to catch typos.
ParseResult parse_config(const std::string& text);

std::string experiment_kind_name(ExperimentKind k);
std::string sampler_kind_name(SamplerKind k);

}  // namespace hmclab
