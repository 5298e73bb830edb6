#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace tbw {

constexpr double kGravity = 9.80665;        // m/s^2
constexpr double kNewtonPerLbf = 4.4482216152605;
constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// Simulation left its validity envelope (Euler singularity, non-finite state).
class SimulationFault : public std::runtime_error {
  public:
    explicit SimulationFault(const std::string& what) : std::runtime_error(what) {}
};

// A solver failed to converge or produced a non-finite result.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A required input artifact (Q-table, dataset, config) is missing.
class MissingArtifact : public std::runtime_error {
  public:
    explicit MissingArtifact(const std::string& what) : std::runtime_error(what) {}
};

// The 12 rigid-body states. Body axes: x forward, y right, z down.
struct FlightState {
    double u = 0.0, v = 0.0, w = 0.0;        // body velocities (m/s)
    double p = 0.0, q = 0.0, r = 0.0;        // body rates (rad/s)
    double phi = 0.0, theta = 0.0, psi = 0.0; // Euler angles (rad)
    double x = 0.0, y = 0.0, z = 0.0;        // inertial position (m), z down

    bool finite() const {
        return std::isfinite(u) && std::isfinite(v) && std::isfinite(w) &&
               std::isfinite(p) && std::isfinite(q) && std::isfinite(r) &&
               std::isfinite(phi) && std::isfinite(theta) && std::isfinite(psi) &&
               std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

// Dimensionless longitudinal stability/control derivatives, per radian.
struct DerivativeSet {
    std::string phase; // "cruise" or "takeoff"
    double cD0 = 0.0, cL0 = 0.0, cm0 = 0.0;
    double cDa = 0.0, cLa = 0.0, cma = 0.0;
    double cDu = 0.0, cLu = 0.0, cmu = 0.0;
    double cDq = 0.0, cLq = 0.0, cmq = 0.0;
    double cDde = 0.0, cLde = 0.0, cmde = 0.0;
};

struct AircraftModel {
    double S = 0.0;     // wing area (m^2)
    double cbar = 0.0;  // mean aerodynamic chord (m)
    double b = 0.0;     // span (m)
    double mass = 0.0;  // kg
    double Ixx = 0.0, Iyy = 0.0, Izz = 0.0, Ixz = 0.0; // kg m^2
    DerivativeSet derivs;
    double rho = 1.225;   // kg/m^3
    double V_ref = 160.0; // reference airspeed (m/s)
    double thrust = 0.0;  // body-x thrust through the CG (N)
};

struct TrimSolution {
    double alpha = 0.0;     // rad
    double deltaE = 0.0;    // rad
    double thrust = 0.0;    // N
    double residual = 0.0;  // norm of (udot, wdot, qdot)
    double V = 0.0;         // airspeed the trim was solved at (m/s)
};

} // namespace tbw
