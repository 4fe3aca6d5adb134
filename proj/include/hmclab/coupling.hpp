#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hmclab/potentials.hpp"
#include "hmclab/samplers.hpp"

namespace hmclab {

// Distance record of two synchronously coupled chains:
// distances[k] = ||X_k - Y_k|| for k = 0..k_max.
struct CoupledTrace {
  std::vector<double> distances;
  // Optional per-coordinate |X_k[j] - Y_k[j]|, one row per step.
  std::optional<Eigen::MatrixXd> per_coordinate;
  SamplerConfig config;
};

// Exact stationary draw for quadratic targets: pi is N(0, H^-1), so
// Y = Q diag(lambda^-1/2) Q^T xi.
Eigen::VectorXd stationary_sample_quadratic(const Potential& p, RngStream& rng);

// Run two chains sharing every momentum draw. X starts at x0; Y starts
// from pi (exact draw for quadratic targets, a 1000-step idealized
// warm-start otherwise), seeded by y0_seed. Only HMC samplers couple.
CoupledTrace coupled_run(const Potential& p, const SamplerConfig& cfg, const Eigen::VectorXd& x0,
                         std::uint64_t y0_seed, bool record_coordinates = false);

// cos(sqrt(2 c_j) T): one-step difference factor of coordinate j of a
// harmonic oscillator f = sum c_j x_j^2 under the synchronous coupling.
double predicted_coordinate_factor(double c_j, double T);

// Contraction prediction for m-strongly convex, M-smooth targets
// (Hessian eigenvalue convention): T* = sqrt(m) / (sqrt(2) M) and
// gamma = m^2 / (2 M^2), with ||x_T - y_T||^2 <= (1 - gamma) ||x_0 - y_0||^2.
std::pair<double, double> predicted_contraction_gamma(double m, double M);

// Least-squares slope of log(distance) vs step index, i.e. the empirical
// per-step log contraction factor. Entries at or below `floor` are
// excluded (a coalesced pair contributes no information).
double contraction_fit(const CoupledTrace& trace, double floor = 1e-300);

}  // namespace hmclab
