#include "tbw/atmosphere.hpp"

#include <cmath>

namespace tbw {

GustFilter::GustFilter(const DrydenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    if (!(cfg.sigma_w >= 0.0 && cfg.L_w > 0.0 && cfg.u1 > 0.0 && cfg.dt > 0.0)) {
        throw NumericalError("GustFilter: invalid Dryden configuration");
    }
    const double K = cfg.sigma_w * std::sqrt(cfg.L_w / (kPi * cfg.u1));
    const double T = cfg.L_w / cfg.u1;
    const double c = 2.0 / cfg.dt; // Tustin s -> c (z-1)/(z+1)
    const double Tc = T * c;
    const double d0 = (1.0 + Tc) * (1.0 + Tc);
    b0_ = K * (1.0 + std::sqrt(3.0) * Tc) / d0;
    b1_ = 2.0 * K / d0;
    b2_ = K * (1.0 - std::sqrt(3.0) * Tc) / d0;
    a1_ = (2.0 - 2.0 * Tc * Tc) / d0;
    a2_ = (1.0 - Tc) * (1.0 - Tc) / d0;
    dc_gain_ = K;
}

double GustFilter::step_with_input(double x) {
    const double y = b0_ * x + s1_;
    s1_ = b1_ * x - a1_ * y + s2_;
    s2_ = b2_ * x - a2_ * y;
    return y;
}

double GustFilter::step() {
    const double x = rng_.normal() / std::sqrt(cfg_.dt);
    return step_with_input(x);
}

double apply_sensor_noise(double measurement, double fraction, Rng& rng) {
    return measurement * (1.0 + fraction * rng.uniform_pm1());
}

} // namespace tbw
