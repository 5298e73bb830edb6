#include "tbw/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "tbw/faa.hpp"
#include "tbw/pid.hpp"

namespace tbw {

ThetaProfile ThetaProfile::parse(const std::string& spec) {
    ThetaProfile p;
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ';')) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) {
            throw NumericalError("ThetaProfile::parse: expected 't:deg' in '" + tok + "'");
        }
        const double t = std::stod(tok.substr(0, colon));
        const double deg = std::stod(tok.substr(colon + 1));
        if (!p.points.empty() && t <= p.points.back().first) {
            throw NumericalError("ThetaProfile::parse: times must be strictly increasing");
        }
        p.points.emplace_back(t, deg);
    }
    if (p.points.empty()) throw NumericalError("ThetaProfile::parse: empty profile");
    return p;
}

double ThetaProfile::value_deg(double t) const {
    if (t <= points.front().first) return points.front().second;
    if (t >= points.back().first) return points.back().second;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (t <= points[i].first) {
            const auto& [t0, v0] = points[i - 1];
            const auto& [t1, v1] = points[i];
            return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
        }
    }
    return points.back().second;
}

std::string ThetaProfile::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) os << "; ";
        os << points[i].first << ':' << points[i].second;
    }
    return os.str();
}

void EpisodeLog::write_csv(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw MissingArtifact("EpisodeLog::write_csv: cannot open " + path);
    os << "# tbwq episode-log v1\n";
    os << "t_s,theta_deg,q_degps,alpha_deg,u_mps,w_mps,deltaE_rad,reward,gust_mps,"
          "theta_meas_deg,q_meas_degps,theta_des_deg\n";
    char buf[512];
    for (const LogRow& r : rows) {
        std::snprintf(buf, sizeof buf,
                      "%.6f,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      r.t, rad2deg(r.theta), rad2deg(r.q), rad2deg(r.alpha), r.u, r.w, r.deltaE,
                      r.reward, r.gust, rad2deg(r.theta_meas), rad2deg(r.q_meas),
                      rad2deg(r.theta_des));
        os << buf;
    }
}

Metrics compute_metrics(const EpisodeLog& log, double dt) {
    Metrics m;
    if (log.rows.size() < 2) return m;
    const double err0 = log.rows.front().theta - log.rows.front().theta_des;
    const double sign0 = (err0 >= 0.0) ? 1.0 : -1.0;

    double last_t = log.rows.back().t;
    double ss_sum = 0.0;
    int ss_count = 0;
    bool risen = false;
    for (std::size_t k = 1; k < log.rows.size(); ++k) {
        const LogRow& r = log.rows[k];
        const double err = r.theta - r.theta_des;
        if (!risen && std::abs(err) <= 0.1 * std::abs(err0)) {
            m.rise_time_s = r.t;
            risen = true;
        }
        // excursion past the target, measured against the initial offset
        const double past = -err * sign0;
        if (past > 0.0 && std::abs(err0) > 0.0) {
            m.overshoot_pct = std::max(m.overshoot_pct, 100.0 * past / std::abs(err0));
        }
        m.max_abs_err_deg = std::max(m.max_abs_err_deg, rad2deg(std::abs(err)));
        if (r.t > last_t - 1.0 + 1e-9) {
            ss_sum += std::abs(err);
            ++ss_count;
        }
        if (k >= 2) {
            const double d = std::abs(r.deltaE - log.rows[k - 1].deltaE);
            m.control_tv_rad += d;
            m.max_step_dE_rad = std::max(m.max_step_dE_rad, d);
        }
        m.total_reward += r.reward;
    }
    if (ss_count > 0) m.ss_err_deg = rad2deg(ss_sum / ss_count);
    (void)dt;
    return m;
}

double max_abs_err_deg_after(const EpisodeLog& log, double t_from) {
    double worst = 0.0;
    for (const LogRow& r : log.rows) {
        if (r.t >= t_from) {
            worst = std::max(worst, rad2deg(std::abs(r.theta - r.theta_des)));
        }
    }
    return worst;
}

Controller controller_from_string(const std::string& name) {
    if (name == "mdp" || name == "mdp-greedy") return Controller::MdpGreedy;
    if (name == "pomdp" || name == "pomdp-greedy") return Controller::PomdpGreedy;
    if (name == "faa") return Controller::Faa;
    if (name == "pid") return Controller::Pid;
    if (name == "open-loop" || name == "open-loop-trim") return Controller::OpenLoopTrim;
    throw NumericalError("unknown controller '" + name +
                         "' (expected mdp, pomdp, faa, pid or open-loop)");
}

std::string to_string(Controller c) {
    switch (c) {
        case Controller::MdpGreedy: return "mdp-greedy";
        case Controller::PomdpGreedy: return "pomdp-greedy";
        case Controller::Faa: return "faa";
        case Controller::Pid: return "pid";
        case Controller::OpenLoopTrim: return "open-loop-trim";
    }
    return "?";
}

RunResult run_scenario(const Settings& settings, const Scenario& scenario, const QTable* table) {
    const bool needs_table = scenario.controller == Controller::MdpGreedy ||
                             scenario.controller == Controller::PomdpGreedy ||
                             scenario.controller == Controller::Faa;
    if (needs_table && table == nullptr) {
        throw MissingArtifact("scenario '" + scenario.name + "' (" +
                              to_string(scenario.controller) + ") requires a trained Q-table");
    }

    const AircraftModel model = make_model(settings.dataset, settings.phase);
    const TrimSolution trim = trim_solve(model, settings.trim_speed);

    EpisodeConfig ecfg = settings.episode;
    ecfg.duration = scenario.duration;
    ecfg.mode = (scenario.controller == Controller::PomdpGreedy) ? ObsMode::Pomdp : ObsMode::Mdp;
    ecfg.gust_enabled = scenario.gust;
    ecfg.noise_enabled = scenario.noise;
    ecfg.theta_des = scenario.profile.value_rad(0.0);

    Environment env(model, trim, default_discretizer(), settings.reward, ecfg, settings.dryden,
                    scenario.seed);
    const double theta0 =
        std::isnan(scenario.theta0_deg) ? trim.alpha : deg2rad(scenario.theta0_deg);
    env.reset_at(theta0);

    const ActionGrid grid;
    std::unique_ptr<MembershipGrid> faa;
    if (scenario.controller == Controller::Faa) {
        faa = std::make_unique<MembershipGrid>(env.discretizer(), *table, grid, settings.faa);
    }
    if (scenario.controller == Controller::MdpGreedy && table->mode() != ObsMode::Mdp) {
        throw NumericalError("scenario '" + scenario.name + "': table is not an MDP table");
    }
    if (scenario.controller == Controller::PomdpGreedy && table->mode() != ObsMode::Pomdp) {
        throw NumericalError("scenario '" + scenario.name + "': table is not a POMDP table");
    }

    PidState pid_state;
    const auto act = [&](double err_meas, double q_meas) -> double {
        switch (scenario.controller) {
            case Controller::MdpGreedy: {
                const Observation o = discretize(err_meas, q_meas, env.discretizer(), ObsMode::Mdp);
                return grid.value(table->argmax_action(o));
            }
            case Controller::PomdpGreedy: {
                const Observation o =
                    discretize(err_meas, q_meas, env.discretizer(), ObsMode::Pomdp);
                return grid.value(table->argmax_action(o));
            }
            case Controller::Faa:
                return faa->action(err_meas, q_meas);
            case Controller::Pid:
                return pid_step(err_meas, q_meas, ecfg.dt, settings.pid, pid_state);
            case Controller::OpenLoopTrim:
                return trim.deltaE;
        }
        return 0.0;
    };

    RunResult out;
    out.log.rows.reserve(ecfg.steps() + 1);
    {
        LogRow r0;
        r0.t = 0.0;
        r0.theta = env.state().theta;
        r0.q = env.state().q;
        r0.alpha = std::atan2(env.state().w, env.state().u);
        r0.u = env.state().u;
        r0.w = env.state().w;
        r0.deltaE = 0.0;
        r0.theta_meas = env.last_theta_meas();
        r0.q_meas = env.last_q_meas();
        r0.theta_des = env.theta_des();
        out.log.rows.push_back(r0);
    }

    const int steps = ecfg.steps();
    for (int k = 0; k < steps; ++k) {
        const double t = k * ecfg.dt;
        env.set_theta_des(scenario.profile.value_rad(t));
        const double err_meas = env.last_theta_meas() - env.theta_des();
        const double deltaE = act(err_meas, env.last_q_meas());
        const StepResult res = env.step(deltaE);

        LogRow r;
        r.t = env.time();
        r.theta = env.state().theta;
        r.q = env.state().q;
        r.alpha = std::atan2(env.state().w + env.last_gust(), env.state().u);
        r.u = env.state().u;
        r.w = env.state().w;
        r.deltaE = deltaE;
        r.reward = res.reward;
        r.gust = env.last_gust();
        r.theta_meas = env.last_theta_meas();
        r.q_meas = env.last_q_meas();
        r.theta_des = env.theta_des();
        out.log.rows.push_back(r);
    }
    out.metrics = compute_metrics(out.log, ecfg.dt);
    return out;
}

} // namespace tbw
