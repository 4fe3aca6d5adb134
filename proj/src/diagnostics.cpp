#include "hmclab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hmclab {

namespace {

// Symmetric PSD square root via eigendecomposition, eigenvalues floored
// at 1e-14 to tolerate near-degenerate covariances.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.eigenvalues().minCoeff() < -1e-12)
    throw std::invalid_argument("w2_gaussian: covariance is not positive semidefinite");
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(1e-14);
  return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

GaussianSpec empirical_moments(const SampleSet& s) {
  const Eigen::Index n = s.samples.rows();
  if (n < 2) throw std::invalid_argument("empirical_moments: need at least 2 samples");
  Eigen::VectorXd mean = s.samples.colwise().mean();
  Eigen::MatrixXd centered = s.samples.rowwise() - mean.transpose();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  return {std::move(mean), std::move(cov)};
}

double w2_gaussian(const GaussianSpec& a, const GaussianSpec& b) {
  if (a.mean.size() != b.mean.size())
    throw std::invalid_argument("w2_gaussian: dimension mismatch");
  const Eigen::MatrixXd sb_half = psd_sqrt(b.covariance);
  const Eigen::MatrixXd cross = psd_sqrt(sb_half * a.covariance * sb_half);
  const double bures =
      a.covariance.trace() + b.covariance.trace() - 2.0 * cross.trace();
  const double sq = (a.mean - b.mean).squaredNorm() + std::max(bures, 0.0);
  return std::sqrt(sq);
}

double w2_empirical_1d(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("w2_empirical_1d: sample sizes differ");
  if (xs.empty()) throw std::invalid_argument("w2_empirical_1d: empty samples");
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double diff = xs[i] - ys[i];
    acc += diff * diff;
  }
  return std::sqrt(acc / static_cast<double>(xs.size()));
}

double energy_drift(const Potential& p, const Integrator& integ, const PhasePoint& z0, double t) {
  const double h0 = hamiltonian(p, z0);
  double drift = 0.0;
  if (integ.scheme == Scheme::ExactQuadratic) {
    constexpr int kGrid = 100;
    for (int i = 1; i <= kGrid; ++i) {
      const PhasePoint z = exact_quadratic_flow(p, z0, t * i / kGrid);
      drift = std::max(drift, std::abs(hamiltonian(p, z) - h0));
    }
    return drift;
  }
  if (integ.eta <= 0.0) throw std::invalid_argument("energy_drift: eta must be > 0");
  const long n = static_cast<long>(std::ceil(t / integ.eta));
  PhasePoint z = z0;
  double remaining = t;
  for (long i = 0; i < n; ++i) {
    const double h = (remaining < integ.eta) ? remaining : integ.eta;
    z = (integ.scheme == Scheme::Leapfrog) ? leapfrog_step(p, z, h) : euler2_step(p, z, h);
    remaining -= h;
    drift = std::max(drift, std::abs(hamiltonian(p, z) - h0));
  }
  return drift;
}

double order_estimate(const std::vector<std::pair<double, double>>& eta_drift) {
  if (eta_drift.size() < 3) throw std::invalid_argument("order_estimate: need >= 3 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [eta, drift] : eta_drift) {
    if (eta <= 0.0 || drift <= 0.0)
      throw std::invalid_argument("order_estimate: etas and drifts must be positive");
    const double x = std::log(eta);
    const double y = std::log(drift);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(eta_drift.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hmclab
