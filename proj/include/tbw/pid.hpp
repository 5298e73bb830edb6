#pragma once

#include "tbw/types.hpp"

namespace tbw {

// Pitch-attitude PID. Convention: deltaE = -(Kp*err + Ki*int(err) + Kd*q),
// so with cm_deltaE < 0 the stabilizing gains are negative. Output clamps to
// the elevator limits (same bounds as the RL action grid); the integrator
// freezes while the output is saturated.
struct PidGains {
    double kp = -18.0; // elevator-rad per rad of pitch error
    double ki = -4.0;  // per rad*s
    double kd = -1.8;  // per rad/s (derivative on measured pitch rate)
    double integrator_limit = 0.5; // rad*s
    double output_limit = 0.25;    // rad
};

struct PidState {
    double integral = 0.0; // accumulated error (rad*s)
};

double pid_step(double err, double q, double dt, const PidGains& gains, PidState& state);

} // namespace tbw
