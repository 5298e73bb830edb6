#include "tbw/config.hpp"

#include <fstream>
#include <sstream>

namespace tbw {

namespace {

std::string trimmed(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::defaults() {
    Config c;
    c.set("aircraft.dataset", ""); // empty = built-in Chaka 50
    c.set("aircraft.phase", "cruise");
    c.set("aircraft.trim_speed_mps", "160");

    c.set("simulation.dt_s", "0.01");

    c.set("episode.duration_s", "5.0");
    c.set("episode.theta_des_deg", "1.0");
    c.set("episode.theta0_min_deg", "0.0");
    c.set("episode.theta0_max_deg", "2.0");

    c.set("reward.jump_threshold_rad", "0.1");
    c.set("reward.jump_penalty", "-10000");
    c.set("reward.jump_abs_of_diff", "false");
    c.set("reward.err_threshold1_deg", "0.05");
    c.set("reward.err_bonus1", "300");
    c.set("reward.err_threshold2_deg", "0.02");
    c.set("reward.err_bonus2", "300");
    c.set("reward.rate_threshold1_degps", "0.04");
    c.set("reward.rate_bonus1", "400");
    c.set("reward.rate_threshold2_degps", "0.02");
    c.set("reward.rate_bonus2", "600");
    c.set("reward.rate_threshold3_degps", "0.005");
    c.set("reward.rate_bonus3", "800");
    c.set("reward.vicinity_in_degrees", "true");
    c.set("reward.quad_err_weight", "100");
    c.set("reward.quad_rate_weight", "40");
    c.set("reward.quadratic_in_degrees", "false");

    c.set("schedule.eps_start", "0.1");
    c.set("schedule.eps_decrement", "3e-6");
    c.set("schedule.eps_floor", "0.04");
    c.set("schedule.alpha_start", "0.02");
    c.set("schedule.alpha_decrement", "9e-7");
    c.set("schedule.alpha_floor", "0.002");
    c.set("schedule.gamma", "0.99");
    c.set("schedule.episodes", "20000");

    c.set("dryden.sigma_w_mps", "10");
    c.set("dryden.L_w_m", "100");
    c.set("dryden.u1_mps", "160");

    c.set("noise.fraction", "0.10");

    c.set("faa.edge_anchored", "false");
    c.set("faa.exclude_outer", "true");
    c.set("faa.fine_limit_rad", "0.024");
    c.set("faa.in_training", "false");

    // Stabilizing gains are negative under deltaE = -(Kp e + Ki int + Kd q)
    // because cm_deltaE < 0. Tuned on the linearized cruise model for a rise
    // faster than the fuzzy controller with an overshoot that decays by ~2 s.
    c.set("pid.kp", "-18.0");
    c.set("pid.ki", "-4.0");
    c.set("pid.kd", "-1.8");
    c.set("pid.integrator_limit", "0.5");
    c.set("pid.output_limit", "0.25");

    c.set("run.seed", "6");

    // piecewise-linear variable target, "time_s:theta_deg" pairs
    c.set("profile.variable_points", "0:1; 5:1; 10:2; 14:2; 34:-2; 40:-2");
    return c;
}

void Config::parse_overlay(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw NumericalError(origin + ":" + std::to_string(lineno) +
                                     ": malformed section header");
            }
            section = trimmed(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw NumericalError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trimmed(line.substr(0, eq));
        const std::string value = trimmed(line.substr(eq + 1));
        kv_[section.empty() ? key : section + "." + key] = value;
    }
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingArtifact("config file not found: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Config c = defaults();
    c.parse_overlay(ss.str(), path);
    return c;
}

std::string Config::get_string(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw NumericalError("config key not found: " + key);
    return it->second;
}

double Config::get_double(const std::string& key) const {
    try {
        return std::stod(get_string(key));
    } catch (const std::invalid_argument&) {
        throw NumericalError("config key " + key + " is not a number: '" + get_string(key) + "'");
    }
}

int Config::get_int(const std::string& key) const {
    return static_cast<int>(get_double(key));
}

std::uint64_t Config::get_u64(const std::string& key) const {
    return static_cast<std::uint64_t>(std::stoull(get_string(key)));
}

bool Config::get_bool(const std::string& key) const {
    const std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw NumericalError("config key " + key + " is not a boolean: '" + v + "'");
}

std::string Config::serialize() const {
    std::ostringstream os;
    std::string section;
    for (const auto& [key, value] : kv_) {
        const auto dot = key.find('.');
        const std::string sec = (dot == std::string::npos) ? "" : key.substr(0, dot);
        const std::string name = (dot == std::string::npos) ? key : key.substr(dot + 1);
        if (sec != section) {
            os << '[' << sec << "]\n";
            section = sec;
        }
        os << name << " = " << value << '\n';
    }
    return os.str();
}

Settings resolve_settings(const Config& cfg) {
    Settings s;
    const std::string dataset_path = cfg.get_string("aircraft.dataset");
    s.dataset = dataset_path.empty() ? chaka50_dataset() : load_dataset(dataset_path);
    s.phase = cfg.get_string("aircraft.phase");
    s.trim_speed = cfg.get_double("aircraft.trim_speed_mps");

    s.reward.jump_threshold = cfg.get_double("reward.jump_threshold_rad");
    s.reward.jump_penalty = cfg.get_double("reward.jump_penalty");
    s.reward.jump_abs_of_diff = cfg.get_bool("reward.jump_abs_of_diff");
    s.reward.err_thresholds = {cfg.get_double("reward.err_threshold1_deg"),
                               cfg.get_double("reward.err_threshold2_deg")};
    s.reward.err_bonuses = {cfg.get_double("reward.err_bonus1"),
                            cfg.get_double("reward.err_bonus2")};
    s.reward.rate_thresholds = {cfg.get_double("reward.rate_threshold1_degps"),
                                cfg.get_double("reward.rate_threshold2_degps"),
                                cfg.get_double("reward.rate_threshold3_degps")};
    s.reward.rate_bonuses = {cfg.get_double("reward.rate_bonus1"),
                             cfg.get_double("reward.rate_bonus2"),
                             cfg.get_double("reward.rate_bonus3")};
    s.reward.vicinity_in_degrees = cfg.get_bool("reward.vicinity_in_degrees");
    s.reward.quad_err_weight = cfg.get_double("reward.quad_err_weight");
    s.reward.quad_rate_weight = cfg.get_double("reward.quad_rate_weight");
    s.reward.quadratic_in_degrees = cfg.get_bool("reward.quadratic_in_degrees");

    s.episode.duration = cfg.get_double("episode.duration_s");
    s.episode.dt = cfg.get_double("simulation.dt_s");
    s.episode.theta_des = deg2rad(cfg.get_double("episode.theta_des_deg"));
    s.episode.theta0_min = deg2rad(cfg.get_double("episode.theta0_min_deg"));
    s.episode.theta0_max = deg2rad(cfg.get_double("episode.theta0_max_deg"));
    s.episode.noise_fraction = cfg.get_double("noise.fraction");

    s.schedule.eps_start = cfg.get_double("schedule.eps_start");
    s.schedule.eps_decrement = cfg.get_double("schedule.eps_decrement");
    s.schedule.eps_floor = cfg.get_double("schedule.eps_floor");
    s.schedule.alpha_start = cfg.get_double("schedule.alpha_start");
    s.schedule.alpha_decrement = cfg.get_double("schedule.alpha_decrement");
    s.schedule.alpha_floor = cfg.get_double("schedule.alpha_floor");
    s.schedule.gamma = cfg.get_double("schedule.gamma");
    s.schedule.episodes = cfg.get_int("schedule.episodes");

    s.dryden.sigma_w = cfg.get_double("dryden.sigma_w_mps");
    s.dryden.L_w = cfg.get_double("dryden.L_w_m");
    s.dryden.u1 = cfg.get_double("dryden.u1_mps");
    s.dryden.dt = s.episode.dt;

    s.faa.edge_anchored = cfg.get_bool("faa.edge_anchored");
    s.faa.exclude_outer = cfg.get_bool("faa.exclude_outer");
    s.faa.fine_limit = cfg.get_double("faa.fine_limit_rad");
    s.faa_in_training = cfg.get_bool("faa.in_training");

    s.pid.kp = cfg.get_double("pid.kp");
    s.pid.ki = cfg.get_double("pid.ki");
    s.pid.kd = cfg.get_double("pid.kd");
    s.pid.integrator_limit = cfg.get_double("pid.integrator_limit");
    s.pid.output_limit = cfg.get_double("pid.output_limit");

    s.seed = cfg.get_u64("run.seed");
    s.variable_profile = cfg.get_string("profile.variable_points");
    return s;
}

} // namespace tbw
