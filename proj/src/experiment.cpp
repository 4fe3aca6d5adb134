#include "hmclab/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <stdexcept>

#include "hmclab/coupling.hpp"
#include "hmclab/diagnostics.hpp"
#include "hmclab/dynamics.hpp"

namespace hmclab {

namespace fs = std::filesystem;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double ExitReport::metric(const std::string& name) const {
  for (const auto& [k, v] : summary)
    if (k == name) return v;
  throw std::out_of_range("ExitReport: no metric named '" + name + "'");
}

namespace {

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, bool overwrite) : path_(path) {
    if (fs::exists(path) && !overwrite)
      throw std::runtime_error("refusing to overwrite existing file " + path.string() +
                               " (pass --overwrite)");
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  std::ofstream out_;
};

Eigen::VectorXd initial_position(const ExperimentConfig& cfg, int dim) {
  if (cfg.x0.empty()) return Eigen::VectorXd::Zero(dim);
  if (static_cast<int>(cfg.x0.size()) != dim)
    throw std::invalid_argument("x0 length does not match the potential dimension");
  return Eigen::Map<const Eigen::VectorXd>(cfg.x0.data(), dim);
}

GaussianSpec quadratic_target(const Potential& p) {
  // pi = N(0, H^-1) for f = 1/2 x^T H x (in the Hessian eigenbasis).
  const Eigen::VectorXd& lam = p.hessian_eigenvalues();
  Eigen::MatrixXd cov = lam.cwiseInverse().asDiagonal();
  if (p.has_dense_basis()) cov = p.eigenbasis() * cov * p.eigenbasis().transpose();
  return {Eigen::VectorXd::Zero(p.dim()), cov};
}

void run_sample(const ExperimentConfig& cfg, const Potential& p, ExitReport& report,
                const fs::path& dir) {
  CsvWriter traj(dir / "trajectory.csv", cfg.overwrite);
  std::vector<std::string> header = {"chain_id", "step"};
  for (int j = 0; j < p.dim(); ++j) header.push_back("x_" + std::to_string(j));
  traj.row(header);

  const Eigen::VectorXd x0 = initial_position(cfg, p.dim());
  Eigen::MatrixXd pooled(static_cast<Eigen::Index>(cfg.repetitions) * cfg.sampler.k, p.dim());
  Eigen::Index row = 0;
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    const auto traj_positions = run_chain(p, cfg.sampler, x0, static_cast<std::uint64_t>(rep));
    for (int step = 0; step < static_cast<int>(traj_positions.size()); ++step) {
      std::vector<std::string> cells = {std::to_string(rep), std::to_string(step + 1)};
      for (int j = 0; j < p.dim(); ++j) cells.push_back(format_number(traj_positions[step][j]));
      traj.row(cells);
      pooled.row(row++) = traj_positions[step];
    }
  }
  report.output_files.push_back(traj.path().string());

  if (row >= 2) {
    const GaussianSpec fit = empirical_moments({pooled.topRows(row), "sample"});
    report.summary.emplace_back("n_samples", static_cast<double>(row));
    report.summary.emplace_back("max_abs_mean", fit.mean.cwiseAbs().maxCoeff());
    report.summary.emplace_back("min_var", fit.covariance.diagonal().minCoeff());
    report.summary.emplace_back("max_var", fit.covariance.diagonal().maxCoeff());
    if (p.is_quadratic())
      report.summary.emplace_back("w2_to_target", w2_gaussian(fit, quadratic_target(p)));
  }
}

void run_couple(const ExperimentConfig& cfg, const Potential& p, ExitReport& report,
                const fs::path& dir) {
  const Eigen::VectorXd x0 = initial_position(cfg, p.dim());

  // Repetitions fan out concurrently; each owns seeds derived from
  // (master seed, repetition index), and results are gathered in index
  // order so output is independent of completion order.
  std::vector<std::future<CoupledTrace>> futures;
  futures.reserve(cfg.repetitions);
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    futures.push_back(std::async(std::launch::async, [&, rep] {
      SamplerConfig rep_cfg = cfg.sampler;
      rep_cfg.seed = RngStream::derive_seed(cfg.sampler.seed, 2 * rep);
      const std::uint64_t y0_seed = RngStream::derive_seed(cfg.sampler.seed, 2 * rep + 1);
      return coupled_run(p, rep_cfg, x0, y0_seed, cfg.record_coordinates);
    }));
  }

  CsvWriter csv(dir / "coupled.csv", cfg.overwrite);
  std::vector<std::string> header = {"rep", "step", "distance"};
  if (cfg.record_coordinates)
    for (int j = 0; j < p.dim(); ++j) header.push_back("d_" + std::to_string(j));
  csv.row(header);

  double d1_max = 0.0, dfinal_max = 0.0, dinit_max = 0.0;
  double slope_sum = 0.0;
  int slope_count = 0;
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    const CoupledTrace trace = futures[rep].get();
    for (std::size_t step = 0; step < trace.distances.size(); ++step) {
      std::vector<std::string> cells = {std::to_string(rep), std::to_string(step),
                                        format_number(trace.distances[step])};
      if (trace.per_coordinate)
        for (int j = 0; j < p.dim(); ++j)
          cells.push_back(format_number((*trace.per_coordinate)(static_cast<Eigen::Index>(step), j)));
      csv.row(cells);
    }
    dinit_max = std::max(dinit_max, trace.distances.front());
    if (trace.distances.size() > 1) d1_max = std::max(d1_max, trace.distances[1]);
    dfinal_max = std::max(dfinal_max, trace.distances.back());
    if (trace.distances.size() >= 6 && trace.distances.front() > 0.0) {
      slope_sum += contraction_fit(trace);
      ++slope_count;
    }
  }
  report.output_files.push_back(csv.path().string());
  report.summary.emplace_back("distance_initial_max", dinit_max);
  report.summary.emplace_back("distance_step1_max", d1_max);
  report.summary.emplace_back("distance_final_max", dfinal_max);
  if (slope_count > 0)
    report.summary.emplace_back("contraction_slope_mean", slope_sum / slope_count);
}

void run_integrate_check(const ExperimentConfig& cfg, const Potential& p, ExitReport& report,
                         const fs::path& dir) {
  RngStream rng(cfg.sampler.seed, 0);
  const PhasePoint z0{rng.normal_vector(p.dim()), rng.normal_vector(p.dim())};
  const double T = cfg.sampler.T;
  const double eta = cfg.sampler.eta;
  if (T <= 0.0) throw std::invalid_argument("integrate-check: sampler.T must be > 0");
  if (eta <= 0.0) throw std::invalid_argument("integrate-check: sampler.eta must be > 0");

  auto add = [&](const std::string& name, double v) { report.summary.emplace_back(name, v); };
  const bool small_dim = p.dim() <= 5;

  if (p.is_quadratic()) {
    const Integrator exact{Scheme::ExactQuadratic, 0.0};
    add("energy_drift_exact", energy_drift(p, exact, z0, T));
    add("reversibility_exact", reversibility_defect(p, exact, z0, T));
    if (small_dim)
      add("jacobian_abs_error_exact", std::abs(jacobian_det_estimate(p, exact, z0, T) - 1.0));
  }
  const Integrator lf{Scheme::Leapfrog, eta};
  add("energy_drift_leapfrog", energy_drift(p, lf, z0, T));
  add("reversibility_leapfrog", reversibility_defect(p, lf, z0, T));
  if (small_dim)
    add("jacobian_abs_error_leapfrog", std::abs(jacobian_det_estimate(p, lf, z0, T) - 1.0));

  CsvWriter csv(dir / "integrate_check.csv", cfg.overwrite);
  csv.row({"metric", "value"});
  for (const auto& [k, v] : report.summary) csv.row({k, format_number(v)});
  report.output_files.push_back(csv.path().string());
}

void run_convergence(const ExperimentConfig& cfg, const Potential& p, ExitReport& report,
                     const fs::path& dir) {
  if (!p.is_quadratic())
    throw std::invalid_argument(
        "convergence: requires a quadratic potential (closed-form target law)");
  if (cfg.repetitions < 2)
    throw std::invalid_argument("convergence: needs repetitions >= 2 chains");

  const int d = p.dim();
  const int k = cfg.sampler.k;
  const Eigen::VectorXd x0 = initial_position(cfg, d);

  // Per-step moment accumulators across chains.
  std::vector<Eigen::VectorXd> sum(k, Eigen::VectorXd::Zero(d));
  std::vector<Eigen::MatrixXd> outer(k, Eigen::MatrixXd::Zero(d, d));
  for (int chain = 0; chain < cfg.repetitions; ++chain) {
    const auto traj = run_chain(p, cfg.sampler, x0, static_cast<std::uint64_t>(chain));
    for (int step = 0; step < k; ++step) {
      sum[step] += traj[step];
      outer[step] += traj[step] * traj[step].transpose();
    }
  }

  const GaussianSpec target = quadratic_target(p);
  const double n = static_cast<double>(cfg.repetitions);
  CsvWriter csv(dir / "convergence.csv", cfg.overwrite);
  csv.row({"step", "w2"});
  std::vector<double> w2s(k);
  for (int step = 0; step < k; ++step) {
    const Eigen::VectorXd mean = sum[step] / n;
    const Eigen::MatrixXd cov = (outer[step] - n * mean * mean.transpose()) / (n - 1.0);
    w2s[step] = w2_gaussian({mean, cov}, target);
    csv.row({std::to_string(step + 1), format_number(w2s[step])});
  }
  report.output_files.push_back(csv.path().string());

  double max_increase = 0.0;
  for (int step = 1; step < k; ++step)
    max_increase = std::max(max_increase, w2s[step] - w2s[step - 1]);
  int steps_to = k + 1;
  for (int step = 0; step < k; ++step)
    if (w2s[step] <= 0.1) {
      steps_to = step + 1;
      break;
    }
  report.summary.emplace_back("w2_final", w2s.empty() ? 0.0 : w2s.back());
  report.summary.emplace_back("monotonicity_violation", max_increase);
  report.summary.emplace_back("steps_to_0.1", static_cast<double>(steps_to));
}

}  // namespace

ExitReport run_experiment(const ExperimentConfig& cfg) {
  cfg.sampler.validate();
  const Potential p = cfg.potential.build();
  const fs::path dir = cfg.output_dir.empty() ? fs::path(".") : fs::path(cfg.output_dir);
  fs::create_directories(dir);

  ExitReport report;
  switch (cfg.experiment) {
    case ExperimentKind::Sample:
      run_sample(cfg, p, report, dir);
      break;
    case ExperimentKind::Couple:
      run_couple(cfg, p, report, dir);
      break;
    case ExperimentKind::IntegrateCheck:
      run_integrate_check(cfg, p, report, dir);
      break;
    case ExperimentKind::Convergence:
      run_convergence(cfg, p, report, dir);
      break;
  }

  if (cfg.experiment != ExperimentKind::IntegrateCheck) {
    CsvWriter summary(dir / "summary.csv", cfg.overwrite);
    summary.row({"metric", "value"});
    for (const auto& [k, v] : report.summary) summary.row({k, format_number(v)});
    report.output_files.push_back(summary.path().string());
  }

  for (const auto& e : cfg.expectations) {
    ExpectationResult r;
    r.expectation = e;
    r.value = report.metric(e.metric);
    if (e.comparator == "<")
      r.satisfied = r.value < e.threshold;
    else if (e.comparator == "<=")
      r.satisfied = r.value <= e.threshold;
    else if (e.comparator == ">")
      r.satisfied = r.value > e.threshold;
    else
      r.satisfied = r.value >= e.threshold;
    report.expectations.push_back(std::move(r));
  }
  return report;
}

}  // namespace hmclab
