#include "hmclab/config.hpp"

#include <set>
#include <stdexcept>

#include <json.hpp>

namespace hmclab {

using nlohmann::json;

namespace {

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& section, std::vector<std::string>& errors) {
  for (const auto& [key, _] : obj.items())
    if (!known.count(key)) errors.push_back(section + ": unknown key '" + key + "'");
}

template <typename T>
bool read_field(const json& obj, const std::string& section, const std::string& key, T& out,
                std::vector<std::string>& errors, bool required) {
  if (!obj.contains(key)) {
    if (required) errors.push_back(section + ": missing field '" + key + "'");
    return false;
  }
  try {
    out = obj.at(key).get<T>();
    return true;
  } catch (const json::exception&) {
    errors.push_back(section + ": field '" + key + "' has the wrong type");
    return false;
  }
}

void parse_potential(const json& obj, PotentialSpec& spec, std::vector<std::string>& errors) {
  reject_unknown_keys(obj,
                      {"kind", "dim", "coefficients", "spectrum", "spectrum_seed",
                       "base_diagonal", "perturbation"},
                      "potential", errors);
  if (!read_field(obj, "potential", "kind", spec.kind, errors, true)) return;

  if (spec.kind == "spherical_quadratic") {
    if (read_field(obj, "potential", "dim", spec.dim, errors, true) && spec.dim <= 0)
      errors.push_back("potential: 'dim' must be positive");
  } else if (spec.kind == "diagonal_quadratic") {
    read_field(obj, "potential", "coefficients", spec.coefficients, errors, true);
    spec.dim = static_cast<int>(spec.coefficients.size());
  } else if (spec.kind == "dense_quadratic") {
    read_field(obj, "potential", "spectrum", spec.spectrum, errors, true);
    read_field(obj, "potential", "spectrum_seed", spec.spectrum_seed, errors, true);
    spec.dim = static_cast<int>(spec.spectrum.size());
  } else if (spec.kind == "perturbed_quadratic") {
    read_field(obj, "potential", "base_diagonal", spec.base_diagonal, errors, true);
    read_field(obj, "potential", "perturbation", spec.perturbation, errors, true);
    if (spec.perturbation < 0.0) errors.push_back("potential: 'perturbation' must be >= 0");
    spec.dim = static_cast<int>(spec.base_diagonal.size());
  } else {
    errors.push_back("potential: unknown kind '" + spec.kind + "'");
  }
}

void parse_sampler(const json& obj, SamplerConfig& cfg, std::vector<std::string>& errors) {
  reject_unknown_keys(obj, {"sampler", "T", "eta", "k", "seed"}, "sampler", errors);
  std::string name;
  if (read_field(obj, "sampler", "sampler", name, errors, true)) {
    if (name == "idealized_hmc")
      cfg.sampler = SamplerKind::IdealizedHMC;
    else if (name == "unadjusted_hmc")
      cfg.sampler = SamplerKind::UnadjustedHMC;
    else if (name == "rwm")
      cfg.sampler = SamplerKind::RWM;
    else if (name == "ula")
      cfg.sampler = SamplerKind::ULA;
    else {
      errors.push_back("sampler: unknown sampler '" + name + "'");
      return;
    }
  } else {
    return;
  }

  const bool needs_T =
      cfg.sampler == SamplerKind::IdealizedHMC || cfg.sampler == SamplerKind::UnadjustedHMC;
  const bool needs_eta = cfg.sampler != SamplerKind::IdealizedHMC;
  if (read_field(obj, "sampler", "T", cfg.T, errors, needs_T) && cfg.T <= 0.0)
    errors.push_back("sampler: 'T' must be > 0");
  if (read_field(obj, "sampler", "eta", cfg.eta, errors, needs_eta) && cfg.eta <= 0.0)
    errors.push_back("sampler: 'eta' must be > 0");
  if (read_field(obj, "sampler", "k", cfg.k, errors, true) && cfg.k < 0)
    errors.push_back("sampler: 'k' must be >= 0");
  read_field(obj, "sampler", "seed", cfg.seed, errors, true);
}

void parse_expectations(const json& arr, std::vector<Expectation>& out,
                        std::vector<std::string>& errors) {
  if (!arr.is_array()) {
    errors.push_back("expectations: must be an array");
    return;
  }
  for (const auto& e : arr) {
    Expectation exp;
    reject_unknown_keys(e, {"metric", "comparator", "threshold"}, "expectations", errors);
    read_field(e, "expectations", "metric", exp.metric, errors, true);
    read_field(e, "expectations", "comparator", exp.comparator, errors, true);
    read_field(e, "expectations", "threshold", exp.threshold, errors, true);
    if (exp.comparator != "<" && exp.comparator != "<=" && exp.comparator != ">" &&
        exp.comparator != ">=")
      errors.push_back("expectations: comparator '" + exp.comparator + "' is not one of < <= > >=");
    out.push_back(std::move(exp));
  }
}

}  // namespace

Potential PotentialSpec::build() const {
  if (kind == "spherical_quadratic") return Potential::spherical(dim);
  if (kind == "diagonal_quadratic") return Potential::diagonal(to_vec(coefficients));
  if (kind == "dense_quadratic") return Potential::dense(to_vec(spectrum), spectrum_seed);
  if (kind == "perturbed_quadratic")
    return Potential::perturbed(to_vec(base_diagonal), perturbation);
  throw std::invalid_argument("PotentialSpec: unknown kind '" + kind + "'");
}

ParseResult parse_config(const std::string& text) {
  ParseResult result;
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) {
    result.errors.push_back("config: not valid JSON");
    return result;
  }
  if (!root.is_object()) {
    result.errors.push_back("config: top level must be an object");
    return result;
  }

  ExperimentConfig cfg;
  auto& errors = result.errors;
  reject_unknown_keys(root,
                      {"experiment", "potential", "sampler", "repetitions", "output_dir",
                       "overwrite", "record_coordinates", "x0", "expectations"},
                      "config", errors);

  std::string experiment;
  if (read_field(root, "config", "experiment", experiment, errors, true)) {
    if (experiment == "sample")
      cfg.experiment = ExperimentKind::Sample;
    else if (experiment == "couple")
      cfg.experiment = ExperimentKind::Couple;
    else if (experiment == "integrate-check")
      cfg.experiment = ExperimentKind::IntegrateCheck;
    else if (experiment == "convergence")
      cfg.experiment = ExperimentKind::Convergence;
    else
      errors.push_back("config: unknown experiment '" + experiment + "'");
  }

  if (root.contains("potential") && root.at("potential").is_object())
    parse_potential(root.at("potential"), cfg.potential, errors);
  else
    errors.push_back("config: missing or malformed section 'potential'");

  if (root.contains("sampler") && root.at("sampler").is_object())
    parse_sampler(root.at("sampler"), cfg.sampler, errors);
  else
    errors.push_back("config: missing or malformed section 'sampler'");

  if (read_field(root, "config", "repetitions", cfg.repetitions, errors, false) &&
      cfg.repetitions <= 0)
    errors.push_back("config: 'repetitions' must be positive");
  read_field(root, "config", "output_dir", cfg.output_dir, errors, false);
  read_field(root, "config", "overwrite", cfg.overwrite, errors, false);
  read_field(root, "config", "record_coordinates", cfg.record_coordinates, errors, false);
  read_field(root, "config", "x0", cfg.x0, errors, false);
  if (!cfg.x0.empty() && cfg.potential.dim > 0 &&
      static_cast<int>(cfg.x0.size()) != cfg.potential.dim)
    errors.push_back("config: 'x0' length does not match the potential dimension");
  if (root.contains("expectations"))
    parse_expectations(root.at("expectations"), cfg.expectations, errors);

  if (errors.empty()) {
    try {
      cfg.sampler.validate();
    } catch (const std::invalid_argument& e) {
      errors.push_back(std::string("sampler: ") + e.what());
    }
  }
  if (errors.empty()) result.config = std::move(cfg);
  return result;
}

std::string experiment_kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Sample: return "sample";
    case ExperimentKind::Couple: return "couple";
    case ExperimentKind::IntegrateCheck: return "integrate-check";
    case ExperimentKind::Convergence: return "convergence";
  }
  return "?";
}

std::string sampler_kind_name(SamplerKind k) {
  switch (k) {
    case SamplerKind::IdealizedHMC: return "idealized_hmc";
    case SamplerKind::UnadjustedHMC: return "unadjusted_hmc";
    case SamplerKind::RWM: return "rwm";
    case SamplerKind::ULA: return "ula";
  }
  return "?";
}

std::string ExperimentConfig::serialize() const {
  json root;
  root["experiment"] = experiment_kind_name(experiment);

  json pot;
  pot["kind"] = potential.kind;
  if (potential.kind == "spherical_quadratic") pot["dim"] = potential.dim;
  if (potential.kind == "diagonal_quadratic") pot["coefficients"] = potential.coefficients;
  if (potential.kind == "dense_quadratic") {
    pot["spectrum"] = potential.spectrum;
    pot["spectrum_seed"] = potential.spectrum_seed;
  }
  if (potential.kind == "perturbed_quadratic") {
    pot["base_diagonal"] = potential.base_diagonal;
    pot["perturbation"] = potential.perturbation;
  }
  root["potential"] = pot;

  json smp;
  smp["sampler"] = sampler_kind_name(sampler.sampler);
  if (sampler.sampler == SamplerKind::IdealizedHMC || sampler.sampler == SamplerKind::UnadjustedHMC)
    smp["T"] = sampler.T;
  if (sampler.sampler != SamplerKind::IdealizedHMC) smp["eta"] = sampler.eta;
  smp["k"] = sampler.k;
  smp["seed"] = sampler.seed;
  root["sampler"] = smp;

  root["repetitions"] = repetitions;
  if (!output_dir.empty()) root["output_dir"] = output_dir;
  if (overwrite) root["overwrite"] = true;
  if (record_coordinates) root["record_coordinates"] = true;
  if (!x0.empty()) root["x0"] = x0;
  if (!expectations.empty()) {
    json arr = json::array();
    for (const auto& e : expectations)
      arr.push_back({{"metric", e.metric}, {"comparator", e.comparator}, {"threshold", e.threshold}});
    root["expectations"] = arr;
  }
  return root.dump(2);
}

}  // namespace hmclab
