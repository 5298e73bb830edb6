#include "tbw/environment.hpp"

#include <algorithm>
#include <cmath>

namespace tbw {

Discretizer default_discretizer() {
    Discretizer d;
    d.theta_edges.push_back(-10.0);
    for (int k = 12; k >= 1; --k) d.theta_edges.push_back(-(k * 0.002));
    d.theta_edges.push_back(-0.001);
    d.theta_edges.push_back(0.0);
    d.theta_edges.push_back(0.001);
    for (int k = 1; k <= 12; ++k) d.theta_edges.push_back(k * 0.002);
    d.theta_edges.push_back(10.0);

    d.rate_edges = {-10.0, -0.04, -0.02, -0.005, 0.005, 0.02, 0.04, 10.0};
    return d;
}

int bin_index(const std::vector<double>& edges, double x) {
    // first edge strictly greater than x, minus one; clamp to outer bins
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    const int idx = static_cast<int>(it - edges.begin()) - 1;
    return std::clamp(idx, 0, static_cast<int>(edges.size()) - 2);
}

Observation discretize(double err, double q, const Discretizer& d, ObsMode mode) {
    Observation o;
    o.err = err;
    o.q = q;
    o.err_bin = bin_index(d.theta_edges, err);
    o.rate_bin = (mode == ObsMode::Mdp) ? bin_index(d.rate_edges, q) : -1;
    return o;
}

double reward(double err, double q, double deltaE, double deltaE_prev, const RewardConfig& cfg) {
    const double jump = cfg.jump_abs_of_diff ? std::abs(deltaE - deltaE_prev)
                                             : std::abs(deltaE) - std::abs(deltaE_prev);
    if (jump > cfg.jump_threshold) return cfg.jump_penalty;

    // The bonus branch is gated on the pitch-error vicinity: rate bonuses
    // only add once at least one error threshold holds, otherwise a parked
    // aircraft far from the target would farm the |q| bonuses forever.
    const double err_v = cfg.vicinity_in_degrees ? rad2deg(err) : err;
    const double q_v = cfg.vicinity_in_degrees ? rad2deg(q) : q;
    double bonus = 0.0;
    for (std::size_t i = 0; i < cfg.err_thresholds.size(); ++i) {
        if (std::abs(err_v) < cfg.err_thresholds[i]) bonus += cfg.err_bonuses[i];
    }
    if (bonus > 0.0) {
        for (std::size_t i = 0; i < cfg.rate_thresholds.size(); ++i) {
            if (std::abs(q_v) < cfg.rate_thresholds[i]) bonus += cfg.rate_bonuses[i];
        }
        return bonus;
    }

    const double err_q = cfg.quadratic_in_degrees ? rad2deg(err) : err;
    const double q_q = cfg.quadratic_in_degrees ? rad2deg(q) : q;
    const double a = cfg.quad_err_weight * std::abs(err_q);
    const double b = cfg.quad_rate_weight * std::abs(q_q);
    return -(a * a) - (b * b);
}

Environment::Environment(const AircraftModel& model, const TrimSolution& trim,
                         const Discretizer& disc, const RewardConfig& rcfg,
                         const EpisodeConfig& ecfg, const DrydenConfig& gust_cfg,
                         std::uint64_t master_seed)
    : model_(model),
      trim_(trim),
      disc_(disc),
      rcfg_(rcfg),
      ecfg_(ecfg),
      theta_des_(ecfg.theta_des),
      gust_([&] {
          DrydenConfig g = gust_cfg;
          g.dt = ecfg.dt;
          g.seed = derive_seed(master_seed, Stream::Gust);
          return g;
      }()),
      reset_rng_(derive_seed(master_seed, Stream::Reset)),
      noise_rng_(derive_seed(master_seed, Stream::Noise)) {
    if (!(trim_.residual < 1e-8)) {
        throw NumericalError("Environment: trim solution not converged");
    }
    model_.thrust = trim_.thrust;
    state_ = trim_state(trim_);
}

Observation Environment::observe() {
    double theta_m = state_.theta;
    double q_m = state_.q;
    if (ecfg_.noise_enabled) {
        theta_m = apply_sensor_noise(theta_m, ecfg_.noise_fraction, noise_rng_);
        q_m = apply_sensor_noise(q_m, ecfg_.noise_fraction, noise_rng_);
    }
    last_theta_meas_ = theta_m;
    last_q_meas_ = q_m;
    return discretize(theta_m - theta_des_, q_m, disc_, ecfg_.mode);
}

Observation Environment::reset() {
    return reset_at(reset_rng_.uniform(ecfg_.theta0_min, ecfg_.theta0_max));
}

Observation Environment::reset_at(double theta0) {
    // everything at trim except theta; u, w (hence alpha) unchanged, q = 0
    state_ = trim_state(trim_);
    state_.theta = theta0;
    theta_des_ = ecfg_.theta_des;
    prev_action_ = 0.0;
    steps_ = 0;
    last_gust_ = 0.0;
    return observe();
}

StepResult Environment::step(double action_deltaE) {
    if (!(std::abs(action_deltaE) <= 0.25 + 1e-12)) {
        throw NumericalError("Environment::step: action outside elevator limits");
    }
    last_gust_ = ecfg_.gust_enabled ? gust_.step() : 0.0;
    state_ = integrate_step(state_, action_deltaE, model_, last_gust_, ecfg_.dt);
    ++steps_;

    StepResult r;
    r.obs = observe();
    // reward always reads the true (noiseless) simulation state
    r.reward = reward(state_.theta - theta_des_, state_.q, action_deltaE, prev_action_, rcfg_);
    if (!std::isfinite(r.reward)) throw NumericalError("Environment::step: non-finite reward");
    r.done = steps_ >= ecfg_.steps();
    prev_action_ = action_deltaE;
    return r;
}

} // namespace tbw
