#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

namespace hmclab {

enum class PotentialKind {
  SphericalQuadratic,
  DiagonalQuadratic,
  DenseQuadratic,
  PerturbedQuadratic,
};

// A target potential f, defining the Gibbs density pi(x) ~ exp(-f(x)).
// Every member exposes an exact gradient and Hessian eigenvalue bounds
// (m, M) with m*I <= Hess f <= M*I. Immutable after construction.
//
// Kinds and their formulas:
//   SphericalQuadratic   f(x) = 1/2 ||x||^2              Hess = I
//   DiagonalQuadratic    f(x) = sum_j c_j x_j^2          Hess = 2 diag(c)
//   DenseQuadratic       f(x) = 1/2 x^T A x, A = Q L Q^T Hess = A
//   PerturbedQuadratic   f(x) = 1/2 x^T diag(a) x + amp * sum_j softplus(x_j)
//
// Note the coefficient convention for DiagonalQuadratic: the Hessian
// eigenvalues are 2*c_j, so convexity_bounds() reports (2 min c, 2 max c).
class Potential {
 public:
  static Potential spherical(int dim);
  static Potential diagonal(Eigen::VectorXd coefficients);
  // SPD matrix built as Q diag(spectrum) Q^T with Q a seeded random
  // orthogonal matrix, so the exact Hessian spectrum is known.
  static Potential dense(Eigen::VectorXd spectrum, std::uint64_t spectrum_seed);
  static Potential perturbed(Eigen::VectorXd base_diagonal, double amplitude);

  PotentialKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_quadratic() const { return kind_ != PotentialKind::PerturbedQuadratic; }

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;

  // Hessian eigenvalue bounds (m, M), tight for quadratic kinds.
  std::pair<double, double> convexity_bounds() const { return {m_, M_}; }

  // Quadratic kinds only: Hessian eigenvalues, ascending for Dense,
  // coordinate order otherwise.
  const Eigen::VectorXd& hessian_eigenvalues() const;
  // Orthonormal eigenbasis Q (columns); identity for coordinate-aligned kinds.
  const Eigen::MatrixXd& eigenbasis() const;
  bool has_dense_basis() const { return kind_ == PotentialKind::DenseQuadratic; }

  // DiagonalQuadratic coefficients c_j (f = sum c_j x_j^2).
  const Eigen::VectorXd& coefficients() const { return params_; }
  double perturbation_amplitude() const { return amplitude_; }

 private:
  Potential(PotentialKind kind, int dim) : kind_(kind), dim_(dim) {}
  void check_dim(const Eigen::VectorXd& x) const;

  PotentialKind kind_;
  int dim_;
  Eigen::VectorXd params_;     // c_j (diagonal), base diagonal (perturbed)
  Eigen::VectorXd eigvals_;    // Hessian eigenvalues (quadratic kinds)
  Eigen::MatrixXd basis_;      // eigenbasis Q (dense kind)
  Eigen::MatrixXd matrix_;     // A (dense kind)
  double amplitude_ = 0.0;     // softplus amplitude (perturbed kind)
  double m_ = 0.0;
  double M_ = 0.0;
};

}  // namespace hmclab
