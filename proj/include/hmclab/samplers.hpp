#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hmclab/dynamics.hpp"
#include "hmclab/potentials.hpp"
#include "hmclab/rng.hpp"

namespace hmclab {

enum class SamplerKind { IdealizedHMC, UnadjustedHMC, RWM, ULA };

struct SamplerConfig {
  SamplerKind sampler = SamplerKind::IdealizedHMC;
  double T = 0.0;    // integration time (HMC variants)
  double eta = 0.0;  // numerical step size (UnadjustedHMC) / step scale (RWM, ULA)
  int k = 0;         // number of Markov chain steps
  std::uint64_t seed = 0;

  // Throws std::invalid_argument when the fields required by the chosen
  // sampler are missing or out of range.
  void validate() const;
};

// One Markov chain: current position, step counter, and its RNG stream.
struct ChainState {
  Eigen::VectorXd position;
  std::int64_t step_index = 0;
  RngStream rng;

  ChainState(Eigen::VectorXd x0, std::uint64_t seed, std::uint64_t stream_id = 0)
      : position(std::move(x0)), rng(seed, stream_id) {}
};

// d standard normal draws from the chain's stream.
Eigen::VectorXd sample_momentum(ChainState& state, int d);

// One step of idealized HMC: fresh momentum, exact flow for time T
// (reference flow on non-quadratic potentials), velocity discarded.
void idealized_hmc_step(const Potential& p, ChainState& state, double T);

// One step of unadjusted HMC: fresh momentum, euler2 inner loop for
// ceil(T/eta) steps (shortened final step), no Metropolis filter.
void unadjusted_hmc_step(const Potential& p, ChainState& state, double T, double eta);

// Accept with probability min(1, exp(log_ratio)), consuming one uniform
// only when the proposal is not downhill.
bool metropolis_accept(RngStream& rng, double log_ratio);

// Random walk Metropolis: propose X + eta * xi, accept with probability
// min(1, exp(f(X) - f(proposal))).
void rwm_step(const Potential& p, ChainState& state, double eta);
// Same, reporting whether the proposal was accepted.
bool rwm_step_accepted(const Potential& p, ChainState& state, double eta);

// Unadjusted Langevin: X <- X - eta * grad f(X) + sqrt(2 eta) * xi.
void ula_step(const Potential& p, ChainState& state, double eta);

// Advance state by one step of the configured sampler.
void sampler_step(const Potential& p, ChainState& state, const SamplerConfig& cfg);

// Run k steps from x0, returning positions X_1..X_k.
std::vector<Eigen::VectorXd> run_chain(const Potential& p, const SamplerConfig& cfg,
                                       const Eigen::VectorXd& x0, std::uint64_t stream_id = 0);

}  // namespace hmclab
