#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "tbw/types.hpp"

namespace tbw {

struct AeroCoefficients {
    double cL = 0.0;
    double cD = 0.0;
    double cm = 0.0;
};

struct BodyForces {
    double Fx = 0.0; // N
    double Fz = 0.0; // N
    double M = 0.0;  // N m, pitch
};

// Longitudinal coefficient build-up. cL and cm are linear in alpha and
// deltaE; the drag row uses |alpha| and |deltaE| so deflections of either
// sign add drag (and so that the trim point is an exact fixed point of the
// simulated dynamics). The u-term is the perturbation form (u - V_ref)/V_ref.
AeroCoefficients aero_coefficients(const AircraftModel& model, double alpha, double V,
                                   double u, double q, double deltaE);

// Stability-axis lift/drag rotated into body axes; forces scale with qbar*S,
// the pitch moment with qbar*S*cbar. gust_w enters only through the air-
// relative alpha and V. Faults if airspeed is at or below 1 m/s.
BodyForces aero_forces_moments_body(const AircraftModel& model, const FlightState& s,
                                    double deltaE, double gust_w = 0.0);

// Gravity acceleration in body axes.
std::array<double, 3> gravity_body(double phi, double theta);

// Full 12-state rigid-body derivative (diagonal inertia). Faults when |theta|
// reaches the Euler singularity guard or any input is non-finite.
FlightState state_derivative(const FlightState& s, double deltaE, const AircraftModel& model,
                             double gust_w = 0.0);

// Classical RK4 step; deltaE, thrust and gust_w held constant across substeps.
FlightState integrate_step(const FlightState& s, double deltaE, const AircraftModel& model,
                           double gust_w, double dt);

// Newton iteration on (alpha, deltaE, thrust) driving (udot, wdot, qdot) to
// zero in wings-level flight with theta = alpha + gamma, q = 0.
TrimSolution trim_solve(const AircraftModel& model, double V, double gamma = 0.0);

// Flight state at a trim solution (wings level, zero rates, origin position).
FlightState trim_state(const TrimSolution& trim);

// Central-difference Jacobian of the longitudinal subsystem (u, w, q, theta)
// at trim. Refuses (NumericalError) if the trim residual is above tolerance.
Eigen::Matrix4d linearize_longitudinal(const AircraftModel& model, const TrimSolution& trim);

// Eigenvalues of a real 4x4, sorted by |Re| descending (then |Im| descending).
std::array<std::complex<double>, 4> eig4(const Eigen::Matrix4d& A);

} // namespace tbw
