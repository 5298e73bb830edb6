// tbwq: trim/modal verification, Q-learning training, controller evaluation
// and comparison for the truss-braced-wing pitch-attitude testbed.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "tbw/airframe.hpp"
#include "tbw/config.hpp"
#include "tbw/dataset.hpp"
#include "tbw/ensemble.hpp"
#include "tbw/manifest.hpp"
#include "tbw/qlearning.hpp"
#include "tbw/scenario.hpp"

namespace fs = std::filesystem;
using namespace tbw;

namespace {

// command-line misuse distinct from numerical failures (exit code 1)
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::string command_line;
};

Config load_config(const CommonArgs& c) {
    Config cfg = c.config_path.empty() ? Config::defaults() : Config::from_file(c.config_path);
    if (c.seed) cfg.set("run.seed", std::to_string(*c.seed));
    return cfg;
}

std::string join_args(int argc, char** argv) {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) os << (i ? " " : "") << argv[i];
    return os.str();
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw MissingArtifact("cannot create output directory " + dir + ": " + ec.message());
}

struct ModeReport {
    Eigen::Matrix4d A;
    std::array<std::complex<double>, 4> eigs;
};

ModeReport modal_report(const Settings& settings) {
    const AircraftModel model = make_model(settings.dataset, settings.phase);
    const TrimSolution trim = trim_solve(model, settings.trim_speed);
    ModeReport r;
    r.A = linearize_longitudinal(model, trim);
    r.eigs = eig4(r.A);
    return r;
}

void print_pair(const char* label, std::complex<double> lam, double ref_re, double ref_im) {
    const double wn = std::abs(lam);
    const double zeta = (wn > 0) ? -lam.real() / wn : 0.0;
    std::printf("  %-13s %+10.5f %+10.5fi   |lam| %8.5f  zeta %7.4f   reference %+.4f +- %.4fi\n",
                label, lam.real(), lam.imag(), wn, zeta, ref_re, ref_im);
}

int cmd_trim(const CommonArgs& common, double open_loop_duration, bool svg) {
    const Config cfg = load_config(common);
    const Settings settings = resolve_settings(cfg);
    const AircraftModel model = make_model(settings.dataset, settings.phase);
    const TrimSolution trim = trim_solve(model, settings.trim_speed);
    const ReferenceData& ref = settings.dataset.ref;

    const double thrust_lbf = trim.thrust / kNewtonPerLbf;
    std::printf("trim solution (%s, V = %.1f m/s, rho = %.3f kg/m^3)\n", settings.phase.c_str(),
                settings.trim_speed, model.rho);
    std::printf("  residual norm          %.3e\n", trim.residual);
    std::printf("  %-22s %12s %12s %12s\n", "quantity", "computed", "reference", "delta");
    std::printf("  %-22s %12.4f %12.4f %12.4f\n", "alpha (deg)", rad2deg(trim.alpha),
                ref.trim_alpha_deg, rad2deg(trim.alpha) - ref.trim_alpha_deg);
    std::printf("  %-22s %12.4f %12.4f %12.4f\n", "deltaE (deg)", rad2deg(trim.deltaE),
                ref.trim_deltaE_deg, rad2deg(trim.deltaE) - ref.trim_deltaE_deg);
    std::printf("  %-22s %12.2f %12.2f %12.2f\n", "thrust (lbf)", thrust_lbf, ref.trim_thrust_lbf,
                thrust_lbf - ref.trim_thrust_lbf);
    std::printf("  (reference values ship with the dataset; the derivative set does not\n"
                "   reproduce them, so the delta is reported instead of asserted)\n\n");

    // open-loop runs with elevator and thrust frozen: one from the exact
    // trim point (drift check) and one from a 0.5 deg pitch offset so the
    // phugoid is actually excited and its period measurable
    AircraftModel m = model;
    m.thrust = trim.thrust;
    const double dt = settings.episode.dt;
    const int steps = static_cast<int>(open_loop_duration / dt + 0.5);

    FlightState s = trim_state(trim);
    double max_drift = 0.0;
    for (int k = 1; k <= steps; ++k) {
        s = integrate_step(s, trim.deltaE, m, 0.0, dt);
        max_drift = std::max(max_drift, std::abs(s.theta - trim.alpha));
    }

    s = trim_state(trim);
    s.theta += deg2rad(0.5);
    double max_dev = 0.0, max_dev_tail = 0.0;
    int crossings = 0;
    double prev_dev = s.theta - trim.alpha, first_cross_t = -1.0, last_cross_t = -1.0;
    std::vector<std::pair<double, double>> theta_trace, alpha_trace;
    std::ostringstream csv;
    csv << "# tbwq trim-openloop v1 (0.5 deg pitch offset)\nt_s,theta_deg,alpha_deg,u_mps\n";
    for (int k = 1; k <= steps; ++k) {
        s = integrate_step(s, trim.deltaE, m, 0.0, dt);
        const double t = k * dt;
        const double dev = s.theta - trim.alpha;
        max_dev = std::max(max_dev, std::abs(dev));
        if (t > open_loop_duration * 0.9) max_dev_tail = std::max(max_dev_tail, std::abs(dev));
        if (dev * prev_dev < 0.0) {
            ++crossings;
            if (first_cross_t < 0.0) first_cross_t = t;
            last_cross_t = t;
        }
        prev_dev = dev;
        if (k % 10 == 0) {
            const double alpha = std::atan2(s.w, s.u);
            theta_trace.emplace_back(t, rad2deg(s.theta));
            alpha_trace.emplace_back(t, rad2deg(alpha));
            char row[128];
            std::snprintf(row, sizeof row, "%.2f,%.10g,%.10g,%.10g\n", t, rad2deg(s.theta),
                          rad2deg(alpha), s.u);
            csv << row;
        }
    }
    std::printf("open-loop simulation, %.0f s at dt = %.2f s\n", open_loop_duration, dt);
    std::printf("  from exact trim: max |theta - theta_trim|   %.3e deg\n", rad2deg(max_drift));
    std::printf("  from +0.5 deg offset:\n");
    std::printf("    max |theta - theta_trim|                  %.4f deg\n", rad2deg(max_dev));
    std::printf("    max deviation in final 10%%                %.4f deg\n",
                rad2deg(max_dev_tail));
    if (crossings >= 2) {
        const double period = 2.0 * (last_cross_t - first_cross_t) / (crossings - 1);
        std::printf("    phugoid period (zero crossings)           %.1f s\n", period);
    }
    std::printf("    reference phugoid period                  %.1f s (from %.4f +- %.4fi)\n",
                2.0 * kPi / settings.dataset.ref.ph_im, settings.dataset.ref.ph_re,
                settings.dataset.ref.ph_im);
    std::printf("    envelope decaying                         %s\n\n",
                max_dev_tail < max_dev ? "yes" : "no");

    ensure_out_dir(common.out_dir);
    const std::string csv_path = common.out_dir + "/trim_openloop.csv";
    {
        std::ofstream os(csv_path);
        os << csv.str();
    }
    std::vector<std::string> artifacts = {csv_path};
    if (svg) {
        const std::string svg_path = common.out_dir + "/trim_openloop.svg";
        write_svg_plot(svg_path, "open-loop trim flight", "t (s)", "angle (deg)",
                       {{"theta", theta_trace}, {"alpha", alpha_trace}});
        artifacts.push_back(svg_path);
    }
    write_manifest(common.out_dir + "/trim.manifest.txt", common.command_line, cfg,
                   dataset_checksum(settings.dataset), artifacts);
    return 0;
}

int cmd_modes(const CommonArgs& common) {
    const Config cfg = load_config(common);
    const Settings settings = resolve_settings(cfg);
    const ModeReport r = modal_report(settings);
    const ReferenceData& ref = settings.dataset.ref;

    std::printf("longitudinal Jacobian at cruise trim, states (u, w, q, theta):\n");
    for (int i = 0; i < 4; ++i) {
        std::printf("  [ %12.6e %12.6e %12.6e %12.6e ]\n", r.A(i, 0), r.A(i, 1), r.A(i, 2),
                    r.A(i, 3));
    }
    std::printf("eigenvalues (sorted by |Re| descending):\n");
    print_pair("short period", r.eigs[0], ref.sp_re, ref.sp_im);
    print_pair("", r.eigs[1], ref.sp_re, -ref.sp_im);
    print_pair("phugoid", r.eigs[2], ref.ph_re, ref.ph_im);
    print_pair("", r.eigs[3], ref.ph_re, -ref.ph_im);

    const bool all_stable = std::all_of(r.eigs.begin(), r.eigs.end(),
                                        [](const auto& z) { return z.real() < 0.0; });
    const bool sp_complex = std::abs(r.eigs[0].imag()) > 1e-12;
    const double ph_wn = std::abs(r.eigs[2]);
    const double ph_zeta = -r.eigs[2].real() / ph_wn;
    std::printf("structure: all stable %s | short period %s | phugoid zeta %.4f | "
                "|Re sp|/|Re ph| = %.1f\n",
                all_stable ? "yes" : "no", sp_complex ? "complex pair" : "overdamped (real pair)",
                ph_zeta, std::abs(r.eigs[1].real()) / std::abs(r.eigs[2].real()));
    if (!sp_complex) {
        std::printf("note: the dataset's cLa/Iyy combination overdamps the short period at any\n"
                    "      airspeed; the published complex pair is not reproducible from it.\n");
    }
    return 0;
}

int cmd_train(const CommonArgs& common, const std::string& mode_str, std::optional<int> episodes,
              int progress_every) {
    Config cfg = load_config(common);
    if (episodes) cfg.set("schedule.episodes", std::to_string(*episodes));
    const Settings settings = resolve_settings(cfg);
    const ObsMode mode = (mode_str == "pomdp") ? ObsMode::Pomdp : ObsMode::Mdp;

    const AircraftModel model = make_model(settings.dataset, settings.phase);
    const TrimSolution trim = trim_solve(model, settings.trim_speed);
    EpisodeConfig ecfg = settings.episode;
    ecfg.mode = mode;
    Environment env(model, trim, default_discretizer(), settings.reward, ecfg, settings.dryden,
                    settings.seed);

    TrainOptions opts;
    opts.faa_in_training = settings.faa_in_training;
    opts.progress_every = progress_every;

    const auto t0 = std::chrono::steady_clock::now();
    TrainResult result = train(env, settings.schedule, settings.seed, opts);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    ensure_out_dir(common.out_dir);
    std::ostringstream stem;
    stem << common.out_dir << "/qtable_" << mode_str << "_seed" << settings.seed;
    const std::string table_path = stem.str() + ".txt";
    const std::string trace_path =
        common.out_dir + "/trace_" + mode_str + "_seed" + std::to_string(settings.seed) + ".csv";
    result.table.save(table_path);
    write_trace_csv(trace_path, result.trace);
    write_manifest(stem.str() + ".manifest.txt", common.command_line, cfg,
                   dataset_checksum(settings.dataset), {table_path, trace_path});

    const int first_pos = first_positive_episode(result.trace);
    const double final_ma = moving_average(result.trace, 500);
    std::printf("trained %s for %d episodes in %.1f s (%d aborted)\n", mode_str.c_str(),
                static_cast<int>(result.trace.size()), wall, result.aborted_episodes);
    std::printf("  first positive-reward episode   %s\n",
                first_pos < 0 ? "never" : std::to_string(first_pos).c_str());
    std::printf("  final 500-episode moving avg    %.1f\n", final_ma);
    std::printf("  q-table -> %s\n  trace   -> %s\n", table_path.c_str(), trace_path.c_str());
    return 0;
}

ThetaProfile profile_from_flag(const Settings& settings, const std::string& profile_flag,
                               double theta_des_deg) {
    if (profile_flag == "constant" || profile_flag.empty()) {
        return ThetaProfile::constant(theta_des_deg);
    }
    if (profile_flag == "variable") return ThetaProfile::parse(settings.variable_profile);
    return ThetaProfile::parse(profile_flag); // inline "t:deg;..." spec
}

void print_metrics(const std::string& name, const Metrics& m) {
    std::printf("  %-18s rise %6.2f s  overshoot %6.1f %%  ss|err| %7.4f deg  "
                "TV %7.4f rad  max|dE step| %7.4f  total reward %11.1f\n",
                name.c_str(), m.rise_time_s, m.overshoot_pct, m.ss_err_deg, m.control_tv_rad,
                m.max_step_dE_rad, m.total_reward);
}

int cmd_eval(const CommonArgs& common, const std::string& controller_str,
             const std::string& qtable_path, const std::string& profile_flag, double theta_des_deg,
             bool gust, bool noise, double duration, double theta0_deg, bool svg, int ensemble_n,
             bool serial) {
    const Config cfg = load_config(common);
    const Settings settings = resolve_settings(cfg);

    Scenario sc;
    sc.name = controller_str;
    sc.controller = controller_from_string(controller_str);
    sc.profile = profile_from_flag(settings, profile_flag, theta_des_deg);
    sc.gust = gust;
    sc.noise = noise;
    sc.duration = duration;
    sc.seed = settings.seed;
    sc.theta0_deg = theta0_deg;

    QTable table;
    const QTable* table_ptr = nullptr;
    if (sc.controller == Controller::MdpGreedy || sc.controller == Controller::PomdpGreedy ||
        sc.controller == Controller::Faa) {
        if (qtable_path.empty()) {
            throw MissingArtifact("controller '" + controller_str + "' requires --qtable");
        }
        table = QTable::load(qtable_path);
        table_ptr = &table;
    }

    ensure_out_dir(common.out_dir);

    if (ensemble_n > 1) {
        const auto entries = serial
                                 ? run_ensemble_serial(settings, sc, ensemble_n, table_ptr)
                                 : run_ensemble_parallel(settings, sc, ensemble_n, table_ptr);
        const std::string csv_path = common.out_dir + "/ensemble_" + sc.name + ".csv";
        write_ensemble_csv(csv_path, entries);
        const EnsembleSummary sum = summarize(entries);
        std::printf("ensemble of %d seeds (%s)\n", ensemble_n, serial ? "serial" : "parallel");
        std::printf("  mean ss|err| %.4f deg  worst ss|err| %.4f deg  mean TV %.4f rad  "
                    "worst max|err| %.4f deg\n",
                    sum.mean_ss_err_deg, sum.worst_ss_err_deg, sum.mean_tv_rad,
                    sum.worst_max_err_deg);
        write_manifest(common.out_dir + "/ensemble_" + sc.name + ".manifest.txt",
                       common.command_line, cfg, dataset_checksum(settings.dataset), {csv_path});
        return 0;
    }

    const RunResult result = run_scenario(settings, sc, table_ptr);
    const std::string log_path = common.out_dir + "/" + sc.name + "_log.csv";
    result.log.write_csv(log_path);
    std::vector<std::string> artifacts = {log_path};
    if (svg) {
        std::vector<std::pair<double, double>> th, des, de;
        for (const LogRow& r : result.log.rows) {
            th.emplace_back(r.t, rad2deg(r.theta));
            des.emplace_back(r.t, rad2deg(r.theta_des));
            de.emplace_back(r.t, r.deltaE);
        }
        const std::string s1 = common.out_dir + "/" + sc.name + "_theta.svg";
        const std::string s2 = common.out_dir + "/" + sc.name + "_elevator.svg";
        write_svg_plot(s1, sc.name + ": pitch tracking", "t (s)", "theta (deg)",
                       {{"theta", th}, {"target", des}});
        write_svg_plot(s2, sc.name + ": elevator", "t (s)", "deltaE (rad)", {{"deltaE", de}});
        artifacts.push_back(s1);
        artifacts.push_back(s2);
    }
    write_manifest(common.out_dir + "/" + sc.name + ".manifest.txt", common.command_line, cfg,
                   dataset_checksum(settings.dataset), artifacts);
    std::printf("scenario %s (profile %s, gust %s, noise %s, %.1f s, seed %llu)\n",
                sc.name.c_str(), sc.profile.describe().c_str(), sc.gust ? "on" : "off",
                sc.noise ? "on" : "off", sc.duration,
                static_cast<unsigned long long>(sc.seed));
    print_metrics(sc.name, result.metrics);
    std::printf("  log -> %s\n", log_path.c_str());
    return 0;
}

struct CompareRun {
    std::string name;
    Scenario scenario;
};

CompareRun parse_run_spec(const std::string& spec, const Settings& settings, double theta_des_deg,
                          const Scenario& shared) {
    CompareRun out;
    out.scenario = shared;
    std::istringstream in(spec);
    std::string tok;
    bool first = true;
    while (std::getline(in, tok, ',')) {
        const auto eq = tok.find('=');
        const std::string key = (eq == std::string::npos) ? tok : tok.substr(0, eq);
        const std::string val = (eq == std::string::npos) ? "" : tok.substr(eq + 1);
        if (first && eq != std::string::npos && key == "name") {
            out.name = val;
        } else if (first) {
            // bare controller name, e.g. "faa" or "faa,gust"
            out.name = tok;
            out.scenario.controller = controller_from_string(tok);
        } else if (key == "controller") {
            out.scenario.controller = controller_from_string(val);
        } else if (key == "gust") {
            out.scenario.gust = val.empty() || val == "on" || val == "true";
        } else if (key == "noise") {
            out.scenario.noise = val.empty() || val == "on" || val == "true";
        } else if (key == "duration") {
            out.scenario.duration = std::stod(val);
        } else if (key == "profile") {
            out.scenario.profile = (val == "variable")
                                       ? ThetaProfile::parse(settings.variable_profile)
                                       : ThetaProfile::constant(theta_des_deg);
        } else if (key == "seed") {
            out.scenario.seed = std::stoull(val);
        } else {
            throw NumericalError("compare: unknown run option '" + key + "' in '" + spec + "'");
        }
        first = false;
    }
    if (out.name.empty()) throw NumericalError("compare: empty run spec");
    out.scenario.name = out.name;
    return out;
}

int cmd_compare(const CommonArgs& common, const std::vector<std::string>& run_specs,
                const std::string& qtable_path, const std::string& qtable_pomdp_path,
                const std::string& profile_flag, double theta_des_deg, bool gust, bool noise,
                double duration) {
    if (run_specs.size() < 2) throw UsageError("compare needs at least two --run scenarios");
    const Config cfg = load_config(common);
    const Settings settings = resolve_settings(cfg);

    Scenario shared;
    shared.profile = profile_from_flag(settings, profile_flag, theta_des_deg);
    shared.gust = gust;
    shared.noise = noise;
    shared.duration = duration;
    shared.seed = settings.seed;

    std::vector<CompareRun> runs;
    runs.reserve(run_specs.size());
    for (const std::string& spec : run_specs) {
        runs.push_back(parse_run_spec(spec, settings, theta_des_deg, shared));
    }
    for (const CompareRun& r : runs) {
        if (r.scenario.duration != runs.front().scenario.duration) {
            throw UsageError("compare: scenarios have incompatible durations (" +
                             std::to_string(r.scenario.duration) + " vs " +
                             std::to_string(runs.front().scenario.duration) + " s)");
        }
    }

    QTable mdp_table, pomdp_table;
    bool mdp_loaded = false, pomdp_loaded = false;
    const auto table_for = [&](Controller c) -> const QTable* {
        if (c == Controller::MdpGreedy || c == Controller::Faa) {
            if (!mdp_loaded) {
                if (qtable_path.empty()) throw MissingArtifact("compare: --qtable required");
                mdp_table = QTable::load(qtable_path);
                mdp_loaded = true;
            }
            return &mdp_table;
        }
        if (c == Controller::PomdpGreedy) {
            if (!pomdp_loaded) {
                if (qtable_pomdp_path.empty()) {
                    throw MissingArtifact("compare: --qtable-pomdp required");
                }
                pomdp_table = QTable::load(qtable_pomdp_path);
                pomdp_loaded = true;
            }
            return &pomdp_table;
        }
        return nullptr;
    };

    ensure_out_dir(common.out_dir);
    std::ofstream csv(common.out_dir + "/compare.csv");
    csv << "# tbwq compare v1\n";
    csv << "name,controller,rise_time_s,overshoot_pct,ss_err_deg,control_tv_rad,"
           "max_step_dE_rad,max_abs_err_deg,total_reward\n";
    std::printf("comparison over %.1f s, profile %s, gust %s, noise %s, seed %llu\n",
                runs.front().scenario.duration, runs.front().scenario.profile.describe().c_str(),
                gust ? "on" : "off", noise ? "on" : "off",
                static_cast<unsigned long long>(shared.seed));
    for (const CompareRun& r : runs) {
        const RunResult res = run_scenario(settings, r.scenario, table_for(r.scenario.controller));
        print_metrics(r.name, res.metrics);
        char buf[360];
        std::snprintf(buf, sizeof buf, "%s,%s,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      r.name.c_str(), to_string(r.scenario.controller).c_str(),
                      res.metrics.rise_time_s, res.metrics.overshoot_pct, res.metrics.ss_err_deg,
                      res.metrics.control_tv_rad, res.metrics.max_step_dE_rad,
                      res.metrics.max_abs_err_deg, res.metrics.total_reward);
        csv << buf;
        const std::string log_path = common.out_dir + "/" + r.name + "_log.csv";
        res.log.write_csv(log_path);
    }
    write_manifest(common.out_dir + "/compare.manifest.txt", common.command_line, cfg,
                   dataset_checksum(settings.dataset), {common.out_dir + "/compare.csv"});
    std::printf("  table -> %s\n", (common.out_dir + "/compare.csv").c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pitch-attitude Q-learning testbed for a truss-braced-wing aircraft"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonArgs common;
    common.command_line = join_args(argc, argv);
    app.add_option("--config", common.config_path, "configuration file (flat key=value sections)");
    app.add_option("--out-dir", common.out_dir, "output directory")->capture_default_str();
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "master seed (overrides config)");

    auto* trim_cmd = app.add_subcommand("trim", "solve trim, report vs dataset reference, run "
                                                "open-loop verification");
    double open_loop_duration = 1500.0;
    bool trim_svg = false;
    trim_cmd->add_option("--duration", open_loop_duration, "open-loop run length (s)")
        ->capture_default_str();
    trim_cmd->add_flag("--svg", trim_svg, "emit SVG plot");

    auto* modes_cmd = app.add_subcommand("modes", "longitudinal linearization and modal report");

    auto* train_cmd = app.add_subcommand("train", "train a Q-table");
    std::string train_mode = "mdp";
    std::optional<int> train_episodes;
    int progress_every = 0;
    train_cmd->add_option("--mode", train_mode, "mdp or pomdp")
        ->check(CLI::IsMember({"mdp", "pomdp"}))
        ->capture_default_str();
    int episodes_value = 0;
    auto* episodes_opt = train_cmd->add_option("--episodes", episodes_value,
                                               "episode count (overrides config)");
    train_cmd->add_option("--progress", progress_every, "print progress every N episodes");

    auto* eval_cmd = app.add_subcommand("eval", "run one scenario and emit the episode log");
    std::string controller = "faa";
    std::string qtable_path, qtable_pomdp_path;
    std::string profile_flag = "constant";
    double theta_des_deg = 1.0;
    bool gust = false, noise = false, eval_svg = false, serial = false;
    double duration = 5.0, theta0_deg = std::nan("");
    int ensemble_n = 1;
    eval_cmd->add_option("--controller", controller, "mdp | pomdp | faa | pid | open-loop")
        ->capture_default_str();
    eval_cmd->add_option("--qtable", qtable_path, "trained Q-table file");
    eval_cmd->add_option("--profile", profile_flag,
                         "constant | variable | inline \"t:deg;t:deg;...\"")
        ->capture_default_str();
    eval_cmd->add_option("--theta-des", theta_des_deg, "constant target (deg)")
        ->capture_default_str();
    eval_cmd->add_flag("--gust", gust, "enable Dryden vertical gust");
    eval_cmd->add_flag("--noise", noise, "enable 10% multiplicative sensor noise");
    eval_cmd->add_option("--duration", duration, "run length (s)")->capture_default_str();
    eval_cmd->add_option("--theta0", theta0_deg, "initial pitch (deg, default: trim attitude)");
    eval_cmd->add_flag("--svg", eval_svg, "emit SVG plots");
    eval_cmd->add_option("--ensemble", ensemble_n, "fan out N seeds and aggregate");
    eval_cmd->add_flag("--serial", serial, "use the serial ensemble reference path");

    auto* compare_cmd = app.add_subcommand("compare", "run several scenarios, aligned summary");
    std::vector<std::string> run_specs;
    compare_cmd->add_option("--run", run_specs,
                            "scenario spec: controller[,gust][,noise][,duration=D][,profile=P]");
    compare_cmd->add_option("--qtable", qtable_path, "trained MDP Q-table");
    compare_cmd->add_option("--qtable-pomdp", qtable_pomdp_path, "trained POMDP Q-table");
    compare_cmd->add_option("--profile", profile_flag, "shared target profile")
        ->capture_default_str();
    compare_cmd->add_option("--theta-des", theta_des_deg, "constant target (deg)");
    compare_cmd->add_flag("--gust", gust, "enable gust for all runs");
    compare_cmd->add_flag("--noise", noise, "enable noise for all runs");
    compare_cmd->add_option("--duration", duration, "shared run length (s)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage errors -> 1
    }

    if (*seed_opt) common.seed = seed_value;
    if (*episodes_opt) train_episodes = episodes_value;

    try {
        if (*trim_cmd) return cmd_trim(common, open_loop_duration, trim_svg);
        if (*modes_cmd) return cmd_modes(common);
        if (*train_cmd) return cmd_train(common, train_mode, train_episodes, progress_every);
        if (*eval_cmd) {
            return cmd_eval(common, controller, qtable_path, profile_flag, theta_des_deg, gust,
                            noise, duration, theta0_deg, eval_svg, ensemble_n, serial);
        }
        if (*compare_cmd) {
            return cmd_compare(common, run_specs, qtable_path, qtable_pomdp_path, profile_flag,
                               theta_des_deg, gust, noise, duration);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const MissingArtifact& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const SimulationFault& e) {
        std::cerr << "simulation fault: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
