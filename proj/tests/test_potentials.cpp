#include <doctest.h>

#include <cmath>

#include "hmclab/potentials.hpp"
#include "hmclab/rng.hpp"

using namespace hmclab;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Central finite-difference gradient, the independent oracle for the
// analytic gradients.
Eigen::VectorXd fd_gradient(const Potential& p, const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    g[j] = (p.value(xp) - p.value(xm)) / (2.0 * h);
  }
  return g;
}

// Numerical Hessian extreme eigenvalues, oracle for convexity_bounds.
std::pair<double, double> fd_hessian_bounds(const Potential& p, const Eigen::VectorXd& x) {
  const double h = 1e-5;
  const int d = p.dim();
  Eigen::MatrixXd hess(d, d);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    hess.col(j) = (p.gradient(xp) - p.gradient(xm)) / (2.0 * h);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (hess + hess.transpose()));
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

std::vector<Potential> all_kinds() {
  std::vector<Potential> out;
  out.push_back(Potential::spherical(3));
  out.push_back(Potential::diagonal(vec({0.5, 1.0, 2.0})));
  out.push_back(Potential::dense(vec({0.7, 1.3, 2.5}), 99));
  out.push_back(Potential::perturbed(vec({1.0, 1.5, 2.0}), 1.0));
  return out;
}

}  // namespace

TEST_CASE("eval_f on the closed forms") {
  CHECK(Potential::spherical(2).value(vec({1, 0})) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(Potential::diagonal(vec({1, 3})).value(vec({1, 1})) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(Potential::diagonal(vec({2})).value(vec({0})) == 0.0);
}

TEST_CASE("grad_f on the closed forms") {
  CHECK((Potential::spherical(2).gradient(vec({1, 2})) - vec({1, 2})).norm() == 0.0);
  CHECK((Potential::diagonal(vec({1, 3})).gradient(vec({1, 1})) - vec({2, 6})).norm() == 0.0);
  for (const auto& p : all_kinds()) {
    if (!p.is_quadratic()) continue;  // perturbed minimizer is not the origin
    CHECK(p.gradient(Eigen::VectorXd::Zero(p.dim())).norm() == 0.0);
  }
}

TEST_CASE("convexity_bounds") {
  CHECK(Potential::spherical(5).convexity_bounds() == std::pair<double, double>{1.0, 1.0});
  CHECK(Potential::perturbed(vec({1, 1}), 0.0).convexity_bounds() ==
        std::pair<double, double>{1.0, 1.0});

  // Hessian of sum c_j x_j^2 is 2 diag(c); checked against the numerical
  // Hessian eigenvalues.
  const Potential p = Potential::diagonal(vec({0.5, 2.0}));
  const auto [m, M] = p.convexity_bounds();
  CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(M == doctest::Approx(4.0).epsilon(1e-12));
  const auto [fm, fM] = fd_hessian_bounds(p, vec({0.3, -0.7}));
  CHECK(fm == doctest::Approx(m).epsilon(1e-6));
  CHECK(fM == doctest::Approx(M).epsilon(1e-6));
}

TEST_CASE("analytic gradients agree with finite differences") {
  RngStream rng(7);
  for (const auto& p : all_kinds()) {
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXd x = 2.0 * rng.normal_vector(p.dim());
      const Eigen::VectorXd g = p.gradient(x);
      CHECK((g - fd_gradient(p, x)).norm() <= 1e-6 * (1.0 + g.norm()));
    }
  }
}

TEST_CASE("gradient monotonicity bounds for quadratics") {
  RngStream rng(8);
  for (const auto& p : all_kinds()) {
    if (!p.is_quadratic()) continue;
    const auto [m, M] = p.convexity_bounds();
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXd x = rng.normal_vector(p.dim());
      const Eigen::VectorXd y = rng.normal_vector(p.dim());
      const double inner = (p.gradient(x) - p.gradient(y)).dot(x - y);
      const double sq = (x - y).squaredNorm();
      CHECK(inner >= m * sq * (1.0 - 1e-12));
      CHECK(inner <= M * sq * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("strong convexity lower bound at the known minimizer") {
  RngStream rng(9);
  for (const auto& p : all_kinds()) {
    if (!p.is_quadratic()) continue;  // quadratics minimize at the origin with f = 0
    const auto [m, M] = p.convexity_bounds();
    const Eigen::VectorXd xstar = Eigen::VectorXd::Zero(p.dim());
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::VectorXd x = rng.normal_vector(p.dim());
      CHECK(p.value(x) - p.value(xstar) >= 0.5 * m * (x - xstar).squaredNorm() * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("dense quadratic has the prescribed spectrum") {
  const Eigen::VectorXd spectrum = vec({0.5, 1.0, 3.0});
  const Potential p = Potential::dense(spectrum, 1234);
  const auto [m, M] = p.convexity_bounds();
  CHECK(m == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(M == doctest::Approx(3.0).epsilon(1e-12));
  // basis is orthonormal
  const Eigen::MatrixXd q = p.eigenbasis();
  CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
  // same seed, same potential
  const Potential p2 = Potential::dense(spectrum, 1234);
  CHECK(p.value(vec({1, 2, 3})) == p2.value(vec({1, 2, 3})));
}

TEST_CASE("perturbed quadratic reported bounds hold numerically") {
  const Potential p = Potential::perturbed(vec({1.0, 2.0}), 1.0);
  const auto [m, M] = p.convexity_bounds();
  CHECK(m == doctest::Approx(1.0));
  CHECK(M == doctest::Approx(2.25));
  RngStream rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const auto [fm, fM] = fd_hessian_bounds(p, 3.0 * rng.normal_vector(2));
    CHECK(fm >= m - 1e-6);
    CHECK(fM <= M + 1e-6);
  }
}

TEST_CASE("dimension mismatch raises") {
  const Potential p = Potential::spherical(3);
  CHECK_THROWS_AS(p.value(vec({1, 2})), std::invalid_argument);
  CHECK_THROWS_AS(p.gradient(vec({1, 2, 3, 4})), std::invalid_argument);
}

TEST_CASE("invalid construction raises") {
  CHECK_THROWS_AS(Potential::spherical(0), std::invalid_argument);
  CHECK_THROWS_AS(Potential::diagonal(vec({1.0, -1.0})), std::invalid_argument);
  CHECK_THROWS_AS(Potential::perturbed(vec({1.0}), -0.5), std::invalid_argument);
}
