#include "tbw/airframe.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace tbw {

namespace {
constexpr double kThetaGuard = kPi / 2.0 - 1e-6;
constexpr double kMinAirspeed = 1.0; // m/s, aero model invalid at rest
} // namespace

AeroCoefficients aero_coefficients(const AircraftModel& model, double alpha, double V,
                                   double u, double q, double deltaE) {
    if (!(std::isfinite(alpha) && std::isfinite(V) && std::isfinite(u) && std::isfinite(q) &&
          std::isfinite(deltaE))) {
        throw SimulationFault("aero_coefficients: non-finite input");
    }
    if (V < kMinAirspeed) {
        throw SimulationFault("aero_coefficients: airspeed below validity limit");
    }
    const DerivativeSet& d = model.derivs;
    const double du = (u - model.V_ref) / model.V_ref;
    const double qhat = q * model.cbar / (2.0 * V);
    AeroCoefficients c;
    c.cL = d.cL0 + d.cLa * alpha + d.cLu * du + d.cLq * qhat + d.cLde * deltaE;
    c.cD = d.cD0 + d.cDa * std::abs(alpha) + d.cDu * du + d.cDq * qhat + d.cDde * std::abs(deltaE);
    c.cm = d.cm0 + d.cma * alpha + d.cmu * du + d.cmq * qhat + d.cmde * deltaE;
    return c;
}

BodyForces aero_forces_moments_body(const AircraftModel& model, const FlightState& s,
                                    double deltaE, double gust_w) {
    const double wa = s.w + gust_w;
    const double V = std::sqrt(s.u * s.u + s.v * s.v + wa * wa);
    const double alpha = std::atan2(wa, s.u);
    const AeroCoefficients c = aero_coefficients(model, alpha, V, s.u, s.q, deltaE);
    const double qbarS = 0.5 * model.rho * V * V * model.S;
    const double L = qbarS * c.cL;
    const double D = qbarS * c.cD;
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    BodyForces f;
    f.Fx = -D * ca + L * sa;
    f.Fz = -L * ca - D * sa;
    f.M = qbarS * model.cbar * c.cm;
    return f;
}

std::array<double, 3> gravity_body(double phi, double theta) {
    return {-kGravity * std::sin(theta), kGravity * std::cos(theta) * std::sin(phi),
            kGravity * std::cos(theta) * std::cos(phi)};
}

FlightState state_derivative(const FlightState& s, double deltaE, const AircraftModel& model,
                             double gust_w) {
    if (!s.finite()) throw SimulationFault("state_derivative: non-finite state");
    if (std::abs(s.theta) >= kThetaGuard) {
        std::ostringstream msg;
        msg << "state_derivative: Euler singularity guard tripped, theta = " << s.theta << " rad";
        throw SimulationFault(msg.str());
    }

    const BodyForces f = aero_forces_moments_body(model, s, deltaE, gust_w);
    const auto g = gravity_body(s.phi, s.theta);

    FlightState d;
    d.u = s.r * s.v - s.q * s.w + (f.Fx + model.thrust) / model.mass + g[0];
    d.v = s.p * s.w - s.r * s.u + g[1];
    d.w = s.q * s.u - s.p * s.v + f.Fz / model.mass + g[2];

    d.p = (model.Iyy - model.Izz) * s.q * s.r / model.Ixx;
    d.q = ((model.Izz - model.Ixx) * s.p * s.r + f.M) / model.Iyy;
    d.r = (model.Ixx - model.Iyy) * s.p * s.q / model.Izz;

    const double sphi = std::sin(s.phi), cphi = std::cos(s.phi);
    const double sth = std::sin(s.theta), cth = std::cos(s.theta);
    const double tth = sth / cth;
    d.phi = s.p + tth * (s.q * sphi + s.r * cphi);
    d.theta = s.q * cphi - s.r * sphi;
    d.psi = (s.q * sphi + s.r * cphi) / cth;

    const double spsi = std::sin(s.psi), cpsi = std::cos(s.psi);
    d.x = cpsi * cth * s.u + (cpsi * sth * sphi - spsi * cphi) * s.v +
          (cpsi * sth * cphi + spsi * sphi) * s.w;
    d.y = spsi * cth * s.u + (spsi * sth * sphi + cpsi * cphi) * s.v +
          (spsi * sth * cphi - cpsi * sphi) * s.w;
    d.z = -sth * s.u + cth * sphi * s.v + cth * cphi * s.w;
    return d;
}

namespace {

FlightState axpy(const FlightState& s, double a, const FlightState& d) {
    FlightState r = s;
    r.u += a * d.u;
    r.v += a * d.v;
    r.w += a * d.w;
    r.p += a * d.p;
    r.q += a * d.q;
    r.r += a * d.r;
    r.phi += a * d.phi;
    r.theta += a * d.theta;
    r.psi += a * d.psi;
    r.x += a * d.x;
    r.y += a * d.y;
    r.z += a * d.z;
    return r;
}

} // namespace

FlightState integrate_step(const FlightState& s, double deltaE, const AircraftModel& model,
                           double gust_w, double dt) {
    if (!(dt > 0.0)) throw NumericalError("integrate_step: dt must be positive");
    const FlightState k1 = state_derivative(s, deltaE, model, gust_w);
    const FlightState k2 = state_derivative(axpy(s, 0.5 * dt, k1), deltaE, model, gust_w);
    const FlightState k3 = state_derivative(axpy(s, 0.5 * dt, k2), deltaE, model, gust_w);
    const FlightState k4 = state_derivative(axpy(s, dt, k3), deltaE, model, gust_w);
    FlightState r = axpy(s, dt / 6.0, k1);
    r = axpy(r, dt / 3.0, k2);
    r = axpy(r, dt / 3.0, k3);
    r = axpy(r, dt / 6.0, k4);
    return r;
}

namespace {

// (udot, wdot, qdot) at the wings-level candidate trim point.
Eigen::Vector3d trim_residual(const AircraftModel& model, double V, double gamma,
                              const Eigen::Vector3d& z) {
    AircraftModel m = model;
    m.thrust = z[2];
    FlightState s;
    s.u = V * std::cos(z[0]);
    s.w = V * std::sin(z[0]);
    s.theta = z[0] + gamma;
    const FlightState d = state_derivative(s, z[1], m);
    return {d.u, d.w, d.q};
}

} // namespace

TrimSolution trim_solve(const AircraftModel& model, double V, double gamma) {
    if (!(V > 0.0)) throw NumericalError("trim_solve: V must be positive");
    Eigen::Vector3d z(0.0, 0.0, 0.5 * model.rho * V * V * model.S * model.derivs.cD0);
    double res = 0.0;
    try {
        for (int it = 0; it < 100; ++it) {
            const Eigen::Vector3d r0 = trim_residual(model, V, gamma, z);
            res = r0.norm();
            if (res < 1e-10) break;
            Eigen::Matrix3d J;
            for (int j = 0; j < 3; ++j) {
                const double h = (j == 2) ? std::max(1e-4, 1e-7 * std::abs(z[j])) : 1e-7;
                Eigen::Vector3d zp = z, zm = z;
                zp[j] += h;
                zm[j] -= h;
                J.col(j) = (trim_residual(model, V, gamma, zp) -
                            trim_residual(model, V, gamma, zm)) /
                           (2.0 * h);
            }
            z -= J.fullPivLu().solve(r0);
        }
        res = trim_residual(model, V, gamma, z).norm();
    } catch (const SimulationFault& e) {
        std::ostringstream msg;
        msg << "trim_solve: iteration left the validity envelope (" << e.what()
            << "), last residual " << res;
        throw NumericalError(msg.str());
    }
    if (!(res < 1e-8)) {
        std::ostringstream msg;
        msg << "trim_solve: no convergence in 100 iterations, last residual " << res;
        throw NumericalError(msg.str());
    }
    TrimSolution t;
    t.alpha = z[0];
    t.deltaE = z[1];
    t.thrust = z[2];
    t.residual = res;
    t.V = V;
    return t;
}

FlightState trim_state(const TrimSolution& trim) {
    FlightState s;
    s.u = trim.V * std::cos(trim.alpha);
    s.w = trim.V * std::sin(trim.alpha);
    s.theta = trim.alpha;
    return s;
}

Eigen::Matrix4d linearize_longitudinal(const AircraftModel& model, const TrimSolution& trim) {
    if (!(trim.residual < 1e-8)) {
        throw NumericalError("linearize_longitudinal: trim residual above tolerance");
    }
    AircraftModel m = model;
    m.thrust = trim.thrust;

    const auto lon_deriv = [&](const Eigen::Vector4d& y) {
        FlightState s;
        s.u = y[0];
        s.w = y[1];
        s.q = y[2];
        s.theta = y[3];
        const FlightState d = state_derivative(s, trim.deltaE, m);
        return Eigen::Vector4d(d.u, d.w, d.q, d.theta);
    };

    const FlightState s0 = trim_state(trim);
    const Eigen::Vector4d y0(s0.u, s0.w, s0.q, s0.theta);
    // perturbations: 1e-6 of scale (1 m/s for velocities, 1 rad/s, 1 rad)
    const double h = 1e-6;
    Eigen::Matrix4d A;
    for (int j = 0; j < 4; ++j) {
        Eigen::Vector4d yp = y0, ym = y0;
        yp[j] += h;
        ym[j] -= h;
        A.col(j) = (lon_deriv(yp) - lon_deriv(ym)) / (2.0 * h);
    }
    return A;
}

std::array<std::complex<double>, 4> eig4(const Eigen::Matrix4d& A) {
    Eigen::EigenSolver<Eigen::Matrix4d> solver(A, /*computeEigenvectors=*/false);
    std::array<std::complex<double>, 4> ev;
    for (int i = 0; i < 4; ++i) ev[i] = solver.eigenvalues()[i];
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
        if (std::abs(a.real()) != std::abs(b.real())) return std::abs(a.real()) > std::abs(b.real());
        return std::abs(a.imag()) > std::abs(b.imag());
    });
    return ev;
}

} // namespace tbw
