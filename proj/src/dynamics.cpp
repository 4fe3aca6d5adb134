#include "hmclab/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace hmclab {

namespace {

void check_phase(const Potential& p, const PhasePoint& z) {
  if (z.x.size() != p.dim() || z.v.size() != p.dim())
    throw std::invalid_argument("PhasePoint: dimension mismatch with potential");
}

}  // namespace

double hamiltonian(const Potential& p, const PhasePoint& z) {
  check_phase(p, z);
  return p.value(z.x) + 0.5 * z.v.squaredNorm();
}

PhasePoint exact_quadratic_flow(const Potential& p, const PhasePoint& z0, double t) {
  check_phase(p, z0);
  if (!p.is_quadratic())
    throw std::domain_error("exact_quadratic_flow: potential is not quadratic");
  if (t == 0.0) return z0;

  const bool dense = p.has_dense_basis();
  Eigen::VectorXd x = dense ? Eigen::VectorXd(p.eigenbasis().transpose() * z0.x) : z0.x;
  Eigen::VectorXd v = dense ? Eigen::VectorXd(p.eigenbasis().transpose() * z0.v) : z0.v;

  const Eigen::VectorXd& lam = p.hessian_eigenvalues();
  for (int j = 0; j < p.dim(); ++j) {
    const double w = std::sqrt(lam[j]);
    const double c = std::cos(w * t);
    const double s = std::sin(w * t);
    const double xj = x[j];
    const double vj = v[j];
    x[j] = xj * c + (vj / w) * s;
    v[j] = -xj * w * s + vj * c;
  }

  if (dense) return {p.eigenbasis() * x, p.eigenbasis() * v};
  return {std::move(x), std::move(v)};
}

PhasePoint leapfrog_step(const Potential& p, const PhasePoint& z, double eta) {
  check_phase(p, z);
  Eigen::VectorXd v_half = z.v - 0.5 * eta * p.gradient(z.x);
  Eigen::VectorXd x_new = z.x + eta * v_half;
  Eigen::VectorXd v_new = v_half - 0.5 * eta * p.gradient(x_new);
  return {std::move(x_new), std::move(v_new)};
}

PhasePoint euler2_step(const Potential& p, const PhasePoint& z, double eta) {
  check_phase(p, z);
  const Eigen::VectorXd g0 = p.gradient(z.x);
  Eigen::VectorXd x_new = z.x + eta * z.v - 0.5 * eta * eta * g0;
  Eigen::VectorXd v_new = z.v - 0.5 * eta * (g0 + p.gradient(x_new));
  return {std::move(x_new), std::move(v_new)};
}

PhasePoint integrate(const Potential& p, const Integrator& integ, const PhasePoint& z0, double t) {
  check_phase(p, z0);
  if (t < 0.0) throw std::invalid_argument("integrate: t must be >= 0");
  if (integ.scheme == Scheme::ExactQuadratic) return exact_quadratic_flow(p, z0, t);
  if (integ.eta <= 0.0) throw std::invalid_argument("integrate: eta must be > 0");
  if (t == 0.0) return z0;

  const long n = static_cast<long>(std::ceil(t / integ.eta));
  PhasePoint z = z0;
  double remaining = t;
  for (long i = 0; i < n; ++i) {
    const double h = (remaining < integ.eta) ? remaining : integ.eta;
    z = (integ.scheme == Scheme::Leapfrog) ? leapfrog_step(p, z, h) : euler2_step(p, z, h);
    remaining -= h;
  }
  return z;
}

double reference_step_size(const Potential& p) {
  return 1e-3 / std::sqrt(p.convexity_bounds().second);
}

PhasePoint flow_reference(const Potential& p, const PhasePoint& z0, double t) {
  return integrate(p, {Scheme::Leapfrog, reference_step_size(p)}, z0, t);
}

double jacobian_det_estimate(const Potential& p, const Integrator& integ, const PhasePoint& z0,
                             double t) {
  check_phase(p, z0);
  const int d = p.dim();
  const double h = kFiniteDiffStep;
  Eigen::MatrixXd jac(2 * d, 2 * d);

  auto flow = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    PhasePoint z = integrate(p, integ, {x, v}, t);
    Eigen::VectorXd out(2 * d);
    out << z.x, z.v;
    return out;
  };

  for (int j = 0; j < 2 * d; ++j) {
    Eigen::VectorXd xp = z0.x, vp = z0.v, xm = z0.x, vm = z0.v;
    if (j < d) {
      xp[j] += h;
      xm[j] -= h;
    } else {
      vp[j - d] += h;
      vm[j - d] -= h;
    }
    jac.col(j) = (flow(xp, vp) - flow(xm, vm)) / (2.0 * h);
  }
  return jac.determinant();
}

double reversibility_defect(const Potential& p, const Integrator& integ, const PhasePoint& z0,
                            double t) {
  const PhasePoint z1 = integrate(p, integ, z0, t);
  const PhasePoint z2 = integrate(p, integ, {z1.x, -z1.v}, t);
  return (z2.x - z0.x).norm() + (z2.v + z0.v).norm();
}

}  // namespace hmclab
