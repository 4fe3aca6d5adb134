#pragma once

#include <Eigen/Dense>

#include "hmclab/potentials.hpp"

namespace hmclab {

// Point (x, v) in phase space R^d x R^d.
struct PhasePoint {
  Eigen::VectorXd x;
  Eigen::VectorXd v;
};

enum class Scheme { ExactQuadratic, Leapfrog, Euler2 };

struct Integrator {
  Scheme scheme = Scheme::Leapfrog;
  double eta = 0.0;  // step size; ignored by ExactQuadratic
};

// Global finite-difference step for the test utilities below.
inline constexpr double kFiniteDiffStep = 1e-5;

// H(x, v) = f(x) + 1/2 ||v||^2
double hamiltonian(const Potential& p, const PhasePoint& z);

// Closed-form Hamiltonian flow for quadratic potentials. In the Hessian
// eigenbasis each coordinate is an independent oscillator with angular
// frequency w_j = sqrt(lambda_j):
//   x_t = x_0 cos(w t) + (v_0 / w) sin(w t)
//   v_t = -x_0 w sin(w t) + v_0 cos(w t)
// Throws std::domain_error on non-quadratic kinds.
PhasePoint exact_quadratic_flow(const Potential& p, const PhasePoint& z0, double t);

// Velocity Verlet: half-kick, drift, half-kick.
PhasePoint leapfrog_step(const Potential& p, const PhasePoint& z, double eta);

// Second-order Euler step:
//   x' = x + eta v - 1/2 eta^2 grad f(x)
//   v' = v - 1/2 eta (grad f(x) + grad f(x'))
// The velocity update applies the mean force over the step, which is the
// form consistent with the second-order Taylor expansion it discretizes
// (and coincides with leapfrog's).
PhasePoint euler2_step(const Potential& p, const PhasePoint& z, double eta);

// Compose steps to simulate exactly time T: n = ceil(T / eta) steps with
// the final one shortened. ExactQuadratic evaluates the closed form.
PhasePoint integrate(const Potential& p, const Integrator& integ, const PhasePoint& z0, double t);

// High-resolution stand-in for the continuous flow on non-quadratic
// potentials: leapfrog at eta_ref = 1e-3 / sqrt(M).
PhasePoint flow_reference(const Potential& p, const PhasePoint& z0, double t);
double reference_step_size(const Potential& p);

// Determinant of the 2d x 2d Jacobian of z0 -> integrate(p, integ, z0, t),
// built by central finite differences. Test utility for small d.
double jacobian_det_estimate(const Potential& p, const Integrator& integ, const PhasePoint& z0,
                             double t);

// ||x2 - x0|| + ||v2 + v0|| after flowing forward, flipping the velocity,
// and flowing forward again. Zero for a time-reversible map.
double reversibility_defect(const Potential& p, const Integrator& integ, const PhasePoint& z0,
                            double t);

}  // namespace hmclab
