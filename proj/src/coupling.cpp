#include "hmclab/coupling.hpp"

#include <cmath>
#include <stdexcept>

#include "hmclab/dynamics.hpp"

namespace hmclab {

namespace {

constexpr int kWarmStartSteps = 1000;

Eigen::VectorXd coupled_position_update(const Potential& p, const SamplerConfig& cfg,
                                        const Eigen::VectorXd& x, const Eigen::VectorXd& xi) {
  if (cfg.sampler == SamplerKind::IdealizedHMC) {
    const PhasePoint z = p.is_quadratic() ? exact_quadratic_flow(p, {x, xi}, cfg.T)
                                          : flow_reference(p, {x, xi}, cfg.T);
    return z.x;
  }
  return integrate(p, {Scheme::Euler2, cfg.eta}, {x, xi}, cfg.T).x;
}

}  // namespace

Eigen::VectorXd stationary_sample_quadratic(const Potential& p, RngStream& rng) {
  if (!p.is_quadratic())
    throw std::domain_error("stationary_sample_quadratic: potential is not quadratic");
  Eigen::VectorXd xi = rng.normal_vector(p.dim());
  const Eigen::VectorXd& lam = p.hessian_eigenvalues();
  Eigen::VectorXd y = xi.cwiseQuotient(lam.cwiseSqrt());
  if (p.has_dense_basis()) y = p.eigenbasis() * y;
  return y;
}

CoupledTrace coupled_run(const Potential& p, const SamplerConfig& cfg, const Eigen::VectorXd& x0,
                         std::uint64_t y0_seed, bool record_coordinates) {
  cfg.validate();
  if (cfg.sampler != SamplerKind::IdealizedHMC && cfg.sampler != SamplerKind::UnadjustedHMC)
    throw std::invalid_argument("coupled_run: only HMC samplers support synchronous coupling");
  if (x0.size() != p.dim()) throw std::invalid_argument("coupled_run: x0 dimension mismatch");

  RngStream y0_rng(y0_seed, 0);
  Eigen::VectorXd y;
  if (p.is_quadratic()) {
    y = stationary_sample_quadratic(p, y0_rng);
  } else {
    // Warm start from the origin; the chain forgets it long before
    // kWarmStartSteps idealized steps.
    ChainState warm(Eigen::VectorXd::Zero(p.dim()), y0_seed, 1);
    for (int i = 0; i < kWarmStartSteps; ++i) idealized_hmc_step(p, warm, cfg.T);
    y = warm.position;
  }

  Eigen::VectorXd x = x0;
  RngStream momentum_rng(cfg.seed, 0);

  CoupledTrace trace;
  trace.config = cfg;
  trace.distances.reserve(cfg.k + 1);
  if (record_coordinates) trace.per_coordinate.emplace(cfg.k + 1, p.dim());

  auto record = [&](int step) {
    trace.distances.push_back((x - y).norm());
    if (trace.per_coordinate) trace.per_coordinate->row(step) = (x - y).cwiseAbs();
  };
  record(0);

  for (int i = 1; i <= cfg.k; ++i) {
    const Eigen::VectorXd xi = momentum_rng.normal_vector(p.dim());
    x = coupled_position_update(p, cfg, x, xi);
    y = coupled_position_update(p, cfg, y, xi);
    record(i);
  }
  return trace;
}

double predicted_coordinate_factor(double c_j, double T) {
  if (c_j <= 0.0) throw std::invalid_argument("predicted_coordinate_factor: c_j must be > 0");
  if (T < 0.0) throw std::invalid_argument("predicted_coordinate_factor: T must be >= 0");
  return std::cos(std::sqrt(2.0 * c_j) * T);
}

std::pair<double, double> predicted_contraction_gamma(double m, double M) {
  if (!(0.0 < m && m <= M))
    throw std::invalid_argument("predicted_contraction_gamma: need 0 < m <= M");
  const double t_star = std::sqrt(m) / (std::sqrt(2.0) * M);
  const double gamma = m * m / (2.0 * M * M);
  return {t_star, gamma};
}

double contraction_fit(const CoupledTrace& trace, double floor) {
  if (trace.distances.size() < 2)
    throw std::invalid_argument("contraction_fit: trace too short");
  if (trace.distances.front() <= floor)
    throw std::invalid_argument("contraction_fit: zero initial distance, fit undefined");

  // Plain least squares of log d_k on k over usable entries.
  double sk = 0.0, sy = 0.0, skk = 0.0, sky = 0.0;
  int n = 0;
  for (std::size_t k = 0; k < trace.distances.size(); ++k) {
    const double d = trace.distances[k];
    if (d <= floor) break;
    const double y = std::log(d);
    sk += static_cast<double>(k);
    sy += y;
    skk += static_cast<double>(k) * static_cast<double>(k);
    sky += static_cast<double>(k) * y;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("contraction_fit: fewer than 2 usable entries");
  return (n * sky - sk * sy) / (n * skk - sk * sk);
}

}  // namespace hmclab
