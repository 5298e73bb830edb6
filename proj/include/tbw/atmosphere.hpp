#pragma once

#include <cstdint>

#include "tbw/rng.hpp"
#include "tbw/types.hpp"

namespace tbw {

struct DrydenConfig {
    double sigma_w = 10.0; // gust intensity (m/s)
    double L_w = 100.0;    // turbulence scale length (m)
    double u1 = 160.0;     // true airspeed (m/s)
    double dt = 0.01;      // sample time (s)
    std::uint64_t seed = 0;
};

// Vertical-gust shaping filter
//
//   G_w(s) = sigma_w * sqrt(L_w / (pi u1)) * (1 + sqrt(3) T s) / (1 + T s)^2,
//   T = L_w / u1
//
// discretized by the bilinear transform (preserves the DC gain exactly) and
// driven by zero-mean unit-variance white noise scaled by 1/sqrt(dt).
class GustFilter {
  public:
    explicit GustFilter(const DrydenConfig& cfg);

    // one gust sample, drawing the noise internally
    double step();

    // filter response to an externally supplied input sample
    double step_with_input(double x);

    double dc_gain() const { return dc_gain_; }
    const DrydenConfig& config() const { return cfg_; }

  private:
    DrydenConfig cfg_;
    Rng rng_;
    double b0_ = 0.0, b1_ = 0.0, b2_ = 0.0; // numerator
    double a1_ = 0.0, a2_ = 0.0;            // denominator (monic)
    double s1_ = 0.0, s2_ = 0.0;            // direct form II transposed states
    double dc_gain_ = 0.0;
};

// Multiplicative sensor noise: measurement * (1 + fraction * U[-1, 1]).
double apply_sensor_noise(double measurement, double fraction, Rng& rng);

} // namespace tbw
