#include "hmclab/potentials.hpp"

#include <cmath>
#include <stdexcept>

#include "hmclab/rng.hpp"

namespace hmclab {

namespace {

double softplus(double t) {
  // log(1 + e^t), overflow-safe
  if (t > 30.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

Potential Potential::spherical(int dim) {
  if (dim <= 0) throw std::invalid_argument("Potential: dim must be positive");
  Potential p(PotentialKind::SphericalQuadratic, dim);
  p.eigvals_ = Eigen::VectorXd::Ones(dim);
  p.m_ = 1.0;
  p.M_ = 1.0;
  return p;
}

Potential Potential::diagonal(Eigen::VectorXd coefficients) {
  if (coefficients.size() == 0) throw std::invalid_argument("Potential: empty coefficients");
  if ((coefficients.array() <= 0.0).any())
    throw std::invalid_argument("Potential: coefficients must be positive");
  Potential p(PotentialKind::DiagonalQuadratic, static_cast<int>(coefficients.size()));
  p.eigvals_ = 2.0 * coefficients;
  p.m_ = p.eigvals_.minCoeff();
  p.M_ = p.eigvals_.maxCoeff();
  p.params_ = std::move(coefficients);
  return p;
}

Potential Potential::dense(Eigen::VectorXd spectrum, std::uint64_t spectrum_seed) {
  const int d = static_cast<int>(spectrum.size());
  if (d == 0) throw std::invalid_argument("Potential: empty spectrum");
  if ((spectrum.array() <= 0.0).any())
    throw std::invalid_argument("Potential: spectrum must be positive");
  Potential p(PotentialKind::DenseQuadratic, d);

  // Random orthogonal Q: QR of a Gaussian matrix, signs fixed by diag(R)
  // so the result is a deterministic function of the seed.
  RngStream rng(spectrum_seed, 0);
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;

  p.basis_ = q;
  p.eigvals_ = spectrum;
  p.matrix_ = q * spectrum.asDiagonal() * q.transpose();
  p.m_ = spectrum.minCoeff();
  p.M_ = spectrum.maxCoeff();
  return p;
}

Potential Potential::perturbed(Eigen::VectorXd base_diagonal, double amplitude) {
  const int d = static_cast<int>(base_diagonal.size());
  if (d == 0) throw std::invalid_argument("Potential: empty base diagonal");
  if ((base_diagonal.array() <= 0.0).any())
    throw std::invalid_argument("Potential: base diagonal must be positive");
  if (amplitude < 0.0) throw std::invalid_argument("Potential: amplitude must be >= 0");
  Potential p(PotentialKind::PerturbedQuadratic, d);
  p.m_ = base_diagonal.minCoeff();
  p.M_ = base_diagonal.maxCoeff() + amplitude / 4.0;  // softplus'' <= 1/4
  p.params_ = std::move(base_diagonal);
  p.amplitude_ = amplitude;
  return p;
}

void Potential::check_dim(const Eigen::VectorXd& x) const {
  if (x.size() != dim_)
    throw std::invalid_argument("Potential: input has length " + std::to_string(x.size()) +
                                ", expected " + std::to_string(dim_));
}

double Potential::value(const Eigen::VectorXd& x) const {
  check_dim(x);
  switch (kind_) {
    case PotentialKind::SphericalQuadratic:
      return 0.5 * x.squaredNorm();
    case PotentialKind::DiagonalQuadratic:
      return (params_.array() * x.array().square()).sum();
    case PotentialKind::DenseQuadratic:
      return 0.5 * x.dot(matrix_ * x);
    case PotentialKind::PerturbedQuadratic: {
      double f = 0.5 * (params_.array() * x.array().square()).sum();
      for (int j = 0; j < dim_; ++j) f += amplitude_ * softplus(x[j]);
      return f;
    }
  }
  throw std::logic_error("Potential: unknown kind");
}

Eigen::VectorXd Potential::gradient(const Eigen::VectorXd& x) const {
  check_dim(x);
  switch (kind_) {
    case PotentialKind::SphericalQuadratic:
      return x;
    case PotentialKind::DiagonalQuadratic:
      return 2.0 * params_.cwiseProduct(x);
    case PotentialKind::DenseQuadratic:
      return matrix_ * x;
    case PotentialKind::PerturbedQuadratic: {
      Eigen::VectorXd g = params_.cwiseProduct(x);
      for (int j = 0; j < dim_; ++j) g[j] += amplitude_ * sigmoid(x[j]);
      return g;
    }
  }
  throw std::logic_error("Potential: unknown kind");
}

const Eigen::VectorXd& Potential::hessian_eigenvalues() const {
  if (!is_quadratic())
    throw std::domain_error("Potential: hessian_eigenvalues requires a quadratic kind");
  return eigvals_;
}

const Eigen::MatrixXd& Potential::eigenbasis() const {
  if (kind_ != PotentialKind::DenseQuadratic)
    throw std::domain_error("Potential: eigenbasis is only stored for DenseQuadratic");
  return basis_;
}

}  // namespace hmclab
