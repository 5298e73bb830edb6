#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "tbw/config.hpp"
#include "tbw/qlearning.hpp"

namespace tbw {

// Piecewise-linear pitch target; a single point means a constant target.
struct ThetaProfile {
    std::vector<std::pair<double, double>> points; // (time s, theta deg)

    static ThetaProfile constant(double theta_deg) { return {{{0.0, theta_deg}}}; }
    // "t:deg; t:deg; ..." with strictly increasing times
    static ThetaProfile parse(const std::string& spec);

    double value_deg(double t) const;
    double value_rad(double t) const { return deg2rad(value_deg(t)); }
    std::string describe() const;
};

struct LogRow {
    double t = 0.0;          // s
    double theta = 0.0;      // rad
    double q = 0.0;          // rad/s
    double alpha = 0.0;      // rad
    double u = 0.0;          // m/s
    double w = 0.0;          // m/s
    double deltaE = 0.0;     // rad
    double reward = 0.0;
    double gust = 0.0;       // m/s
    double theta_meas = 0.0; // rad (what the controller saw)
    double q_meas = 0.0;     // rad/s
    double theta_des = 0.0;  // rad
};

struct EpisodeLog {
    std::vector<LogRow> rows;
    void write_csv(const std::string& path) const;
};

struct Metrics {
    double rise_time_s = std::nan("");   // first |err| <= 10% of |err(0)|
    double overshoot_pct = 0.0;          // excursion past target, % of initial error
    double ss_err_deg = 0.0;             // mean |err| over the last second
    double control_tv_rad = 0.0;         // sum |dE_k - dE_{k-1}|
    double max_step_dE_rad = 0.0;        // max single-step elevator change
    double max_abs_err_deg = 0.0;        // over the whole run
    double total_reward = 0.0;
};

Metrics compute_metrics(const EpisodeLog& log, double dt);

// max |theta - theta_des| in degrees at times >= t_from
double max_abs_err_deg_after(const EpisodeLog& log, double t_from);

enum class Controller { MdpGreedy, PomdpGreedy, Faa, Pid, OpenLoopTrim };

Controller controller_from_string(const std::string& name);
std::string to_string(Controller c);

struct Scenario {
    std::string name = "step";
    Controller controller = Controller::Faa;
    ThetaProfile profile = ThetaProfile::constant(1.0);
    bool gust = false;
    bool noise = false;
    double duration = 5.0; // s
    std::uint64_t seed = 1;
    double theta0_deg = std::nan(""); // NaN = start at trim attitude
};

struct RunResult {
    EpisodeLog log;
    Metrics metrics;
};

// Runs one scenario deterministically. RL controllers need the trained table
// (null for PID / open-loop).
RunResult run_scenario(const Settings& settings, const Scenario& scenario, const QTable* table);

} // namespace tbw
