#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "tbw/airframe.hpp"
#include "tbw/atmosphere.hpp"
#include "tbw/rng.hpp"
#include "tbw/types.hpp"

namespace tbw {

enum class ObsMode { Mdp, Pomdp };

// Bin-edge sets mapping continuous (pitch error, pitch rate) to table indices.
struct Discretizer {
    std::vector<double> theta_edges; // pitch-error edges (rad), strictly increasing
    std::vector<double> rate_edges;  // pitch-rate edges (rad/s)

    int err_bins() const { return static_cast<int>(theta_edges.size()) - 1; }
    int rate_bins() const { return static_cast<int>(rate_edges.size()) - 1; }
};

// 29 pitch-error edges (28 bins) and 8 pitch-rate edges (7 bins): the
// published negative-side lists mirrored about zero, with +-10 rad catch-alls.
Discretizer default_discretizer();

// Half-open containment [e_k, e_{k+1}); values beyond the outer edges clamp.
int bin_index(const std::vector<double>& edges, double x);

struct Observation {
    int err_bin = 0;
    int rate_bin = -1; // -1 in POMDP mode
    double err = 0.0;  // rad, continuous (as measured)
    double q = 0.0;    // rad/s, continuous (as measured)
};

Observation discretize(double err, double q, const Discretizer& d, ObsMode mode);

struct RewardConfig {
    // aggressive-elevator penalty
    double jump_threshold = 0.1; // rad
    double jump_penalty = -10000.0;
    // false: penalize (|dE_t| - |dE_{t-1}|) > threshold, exactly as printed;
    // true: penalize |dE_t - dE_{t-1}| > threshold
    bool jump_abs_of_diff = false;

    // vicinity bonuses; thresholds in deg / deg-per-s when vicinity_in_degrees
    std::array<double, 2> err_thresholds = {0.05, 0.02};
    std::array<double, 2> err_bonuses = {300.0, 300.0};
    std::array<double, 3> rate_thresholds = {0.04, 0.02, 0.005};
    std::array<double, 3> rate_bonuses = {400.0, 600.0, 800.0};
    bool vicinity_in_degrees = true;

    // quadratic shaping, radians unless quadratic_in_degrees
    double quad_err_weight = 100.0;
    double quad_rate_weight = 40.0;
    bool quadratic_in_degrees = false;
};

// Three exclusive branches, in order: elevator-jump penalty, vicinity bonus
// sum, quadratic shaping.
double reward(double err, double q, double deltaE, double deltaE_prev, const RewardConfig& cfg);

struct EpisodeConfig {
    double duration = 5.0; // s
    double dt = 0.01;      // s
    double theta_des = deg2rad(1.0);
    double theta0_min = 0.0;           // rad
    double theta0_max = deg2rad(2.0);  // rad
    ObsMode mode = ObsMode::Mdp;
    bool gust_enabled = false;
    bool noise_enabled = false;
    double noise_fraction = 0.10;

    int steps() const { return static_cast<int>(duration / dt + 0.5); }
};

struct StepResult {
    Observation obs;
    double reward = 0.0;
    bool done = false;
};

// Episodic RL wrapper around the 6DoF simulation. Single-writer; run many
// independently seeded instances for parallel work.
class Environment {
  public:
    Environment(const AircraftModel& model, const TrimSolution& trim, const Discretizer& disc,
                const RewardConfig& rcfg, const EpisodeConfig& ecfg, const DrydenConfig& gust_cfg,
                std::uint64_t master_seed);

    // Random theta0 in [theta0_min, theta0_max]; all other states at trim.
    Observation reset();
    // Pinned theta0 (evaluation runs).
    Observation reset_at(double theta0);

    // One dt step under the given elevator deflection. Observation comes from
    // the (optionally noise-corrupted) measurement; reward from the true
    // state. The jump penalty does not terminate the episode.
    StepResult step(double action_deltaE);

    const FlightState& state() const { return state_; }
    const Discretizer& discretizer() const { return disc_; }
    const EpisodeConfig& episode_config() const { return ecfg_; }
    const AircraftModel& model() const { return model_; }
    const TrimSolution& trim() const { return trim_; }

    double time() const { return steps_ * ecfg_.dt; }
    int step_count() const { return steps_; }
    double prev_action() const { return prev_action_; }
    double theta_des() const { return theta_des_; }
    void set_theta_des(double v) { theta_des_ = v; } // variable-theta tracking
    double last_gust() const { return last_gust_; }
    double last_theta_meas() const { return last_theta_meas_; }
    double last_q_meas() const { return last_q_meas_; }

  private:
    Observation observe();

    AircraftModel model_;
    TrimSolution trim_;
    Discretizer disc_;
    RewardConfig rcfg_;
    EpisodeConfig ecfg_;
    FlightState state_;
    double theta_des_;
    double prev_action_ = 0.0;
    int steps_ = 0;
    GustFilter gust_;
    Rng reset_rng_;
    Rng noise_rng_;
    double last_gust_ = 0.0;
    double last_theta_meas_ = 0.0;
    double last_q_meas_ = 0.0;
};

} // namespace tbw
