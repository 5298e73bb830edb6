#include "tbw/pid.hpp"

#include <algorithm>
#include <cmath>

namespace tbw {

double pid_step(double err, double q, double dt, const PidGains& gains, PidState& state) {
    if (!(dt > 0.0)) throw NumericalError("pid_step: dt must be positive");
    const double candidate_integral =
        std::clamp(state.integral + err * dt, -gains.integrator_limit, gains.integrator_limit);
    const double raw = -(gains.kp * err + gains.ki * candidate_integral + gains.kd * q);
    const double out = std::clamp(raw, -gains.output_limit, gains.output_limit);
    // anti-windup: only commit the integral while the command is unsaturated
    if (raw == out) state.integral = candidate_integral;
    return out;
}

} // namespace tbw
