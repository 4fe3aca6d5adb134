#include "hmclab/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace hmclab {

void SamplerConfig::validate() const {
  if (k < 0) throw std::invalid_argument("SamplerConfig: k must be >= 0");
  switch (sampler) {
    case SamplerKind::IdealizedHMC:
      if (T <= 0.0) throw std::invalid_argument("SamplerConfig: IdealizedHMC requires T > 0");
      break;
    case SamplerKind::UnadjustedHMC:
      if (T <= 0.0) throw std::invalid_argument("SamplerConfig: UnadjustedHMC requires T > 0");
      if (eta <= 0.0) throw std::invalid_argument("SamplerConfig: UnadjustedHMC requires eta > 0");
      break;
    case SamplerKind::RWM:
    case SamplerKind::ULA:
      if (eta < 0.0) throw std::invalid_argument("SamplerConfig: eta must be >= 0");
      if (sampler == SamplerKind::ULA && eta <= 0.0)
        throw std::invalid_argument("SamplerConfig: ULA requires eta > 0");
      break;
  }
}

Eigen::VectorXd sample_momentum(ChainState& state, int d) {
  return state.rng.normal_vector(d);
}

void idealized_hmc_step(const Potential& p, ChainState& state, double T) {
  if (T <= 0.0) throw std::invalid_argument("idealized_hmc_step: T must be > 0");
  const Eigen::VectorXd xi = sample_momentum(state, p.dim());
  const PhasePoint z = p.is_quadratic() ? exact_quadratic_flow(p, {state.position, xi}, T)
                                        : flow_reference(p, {state.position, xi}, T);
  state.position = z.x;
  ++state.step_index;
}

void unadjusted_hmc_step(const Potential& p, ChainState& state, double T, double eta) {
  if (T <= 0.0 || eta <= 0.0)
    throw std::invalid_argument("unadjusted_hmc_step: T and eta must be > 0");
  const Eigen::VectorXd xi = sample_momentum(state, p.dim());
  const PhasePoint z = integrate(p, {Scheme::Euler2, eta}, {state.position, xi}, T);
  state.position = z.x;
  ++state.step_index;
}

bool metropolis_accept(RngStream& rng, double log_ratio) {
  if (log_ratio >= 0.0) return true;
  return rng.uniform() <= std::exp(log_ratio);
}

bool rwm_step_accepted(const Potential& p, ChainState& state, double eta) {
  const Eigen::VectorXd xi = sample_momentum(state, p.dim());
  const Eigen::VectorXd proposal = state.position + eta * xi;
  const bool accept = metropolis_accept(state.rng, p.value(state.position) - p.value(proposal));
  if (accept) state.position = proposal;
  ++state.step_index;
  return accept;
}

void rwm_step(const Potential& p, ChainState& state, double eta) {
  rwm_step_accepted(p, state, eta);
}

void ula_step(const Potential& p, ChainState& state, double eta) {
  if (eta <= 0.0) throw std::invalid_argument("ula_step: eta must be > 0");
  const Eigen::VectorXd xi = sample_momentum(state, p.dim());
  state.position += -eta * p.gradient(state.position) + std::sqrt(2.0 * eta) * xi;
  ++state.step_index;
}

void sampler_step(const Potential& p, ChainState& state, const SamplerConfig& cfg) {
  switch (cfg.sampler) {
    case SamplerKind::IdealizedHMC:
      idealized_hmc_step(p, state, cfg.T);
      return;
    case SamplerKind::UnadjustedHMC:
      unadjusted_hmc_step(p, state, cfg.T, cfg.eta);
      return;
    case SamplerKind::RWM:
      rwm_step(p, state, cfg.eta);
      return;
    case SamplerKind::ULA:
      ula_step(p, state, cfg.eta);
      return;
  }
  throw std::logic_error("sampler_step: unknown sampler");
}

std::vector<Eigen::VectorXd> run_chain(const Potential& p, const SamplerConfig& cfg,
                                       const Eigen::VectorXd& x0, std::uint64_t stream_id) {
  cfg.validate();
  if (x0.size() != p.dim()) throw std::invalid_argument("run_chain: x0 dimension mismatch");
  ChainState state(x0, cfg.seed, stream_id);
  std::vector<Eigen::VectorXd> trajectory;
  trajectory.reserve(cfg.k);
  for (int i = 0; i < cfg.k; ++i) {
    sampler_step(p, state, cfg);
    trajectory.push_back(state.position);
  }
  return trajectory;
}

}  // namespace hmclab
