#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hmclab/dynamics.hpp"
#include "hmclab/potentials.hpp"

namespace hmclab {

struct SampleSet {
  Eigen::MatrixXd samples;  // n x d, one sample per row
  std::string source;
};

struct GaussianSpec {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;  // SPD

  static GaussianSpec standard(int d) {
    return {Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Identity(d, d)};
  }
};

// Sample mean and unbiased sample covariance. Needs n >= 2.
GaussianSpec empirical_moments(const SampleSet& s);

// Closed-form W2 between Gaussians:
// sqrt( ||mu_a - mu_b||^2 + tr(Sa + Sb - 2 (Sb^1/2 Sa Sb^1/2)^1/2) ).
double w2_gaussian(const GaussianSpec& a, const GaussianSpec& b);

// Exact empirical 1D W2 via the order-statistics coupling.
double w2_empirical_1d(std::vector<double> xs, std::vector<double> ys);

// Max over inner steps of |H(z_j) - H(z_0)|. ExactQuadratic is sampled
// on a fixed grid of 100 times in [0, T].
double energy_drift(const Potential& p, const Integrator& integ, const PhasePoint& z0, double t);

// Least-squares slope of log(drift) vs log(eta).
double order_estimate(const std::vector<std::pair<double, double>>& eta_drift);

}  // namespace hmclab
