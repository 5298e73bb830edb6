#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "tbw/config.hpp"
#include "tbw/ensemble.hpp"
#include "tbw/manifest.hpp"
#include "tbw/scenario.hpp"

using namespace tbw;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE(f.good());
    return std::string((std::istreambuf_iterator<char>(f)), {});
}

} // namespace

TEST_CASE("default config resolves into settings with the published constants") {
    const Settings s = resolve_settings(Config::defaults());
    CHECK(s.schedule.episodes == 20000);
    CHECK(s.schedule.gamma == 0.99);
    CHECK(s.schedule.eps_start == 0.1);
    CHECK(s.schedule.eps_floor == 0.04);
    CHECK(s.episode.dt == 0.01);
    CHECK(s.episode.duration == 5.0);
    CHECK(s.episode.theta_des == doctest::Approx(deg2rad(1.0)));
    CHECK(s.dryden.sigma_w == 10.0);
    CHECK(s.dryden.L_w == 100.0);
    CHECK(s.dryden.u1 == 160.0);
    CHECK(s.episode.noise_fraction == 0.10);
    CHECK(s.reward.jump_penalty == -10000.0);
    CHECK(s.dataset.cruise.cLa == 14.88);
    CHECK(s.trim_speed == 160.0);
}

TEST_CASE("config overlay, sections and error reporting") {
    Config c = Config::defaults();
    c.parse_overlay("[schedule]\nepisodes = 123\n# comment\n[pid]\nkp = -2.5\n", "test");
    CHECK(c.get_int("schedule.episodes") == 123);
    CHECK(c.get_double("pid.kp") == -2.5);
    CHECK_THROWS_AS(c.parse_overlay("[broken\n", "test"), NumericalError);
    CHECK_THROWS_AS(c.parse_overlay("key value no equals\n", "test"), NumericalError);
    CHECK_THROWS_AS(c.get_double("schedule.nonexistent"), NumericalError);
    CHECK_THROWS_AS(Config::from_file("/tmp/missing-config.cfg"), MissingArtifact);

    // serialize -> parse round trip preserves every key
    Config d = Config::defaults();
    Config e;
    e.parse_overlay(d.serialize(), "round-trip");
    CHECK(e.serialize() == d.serialize());
}

TEST_CASE("shipped default.cfg matches the built-in defaults") {
    const Config file = Config::from_file("data/default.cfg");
    const Settings a = resolve_settings(file);
    const Settings b = resolve_settings(Config::defaults());
    CHECK(a.schedule.episodes == b.schedule.episodes);
    CHECK(a.pid.kp == b.pid.kp);
    CHECK(a.reward.jump_threshold == b.reward.jump_threshold);
    CHECK(a.variable_profile == b.variable_profile);
    CHECK(dataset_checksum(a.dataset) == dataset_checksum(b.dataset));
}

TEST_CASE("theta profile parsing and interpolation") {
    const ThetaProfile p = ThetaProfile::parse("0:1; 5:1; 10:2");
    CHECK(p.value_deg(-1.0) == 1.0);
    CHECK(p.value_deg(2.5) == 1.0);
    CHECK(p.value_deg(7.5) == doctest::Approx(1.5));
    CHECK(p.value_deg(10.0) == 2.0);
    CHECK(p.value_deg(99.0) == 2.0);
    CHECK(p.value_rad(10.0) == doctest::Approx(deg2rad(2.0)));

    const ThetaProfile c = ThetaProfile::constant(1.0);
    CHECK(c.value_deg(3.0) == 1.0);

    CHECK_THROWS_AS(ThetaProfile::parse("0:1; 0:2"), NumericalError);
    CHECK_THROWS_AS(ThetaProfile::parse(""), NumericalError);
    CHECK_THROWS_AS(ThetaProfile::parse("nonsense"), NumericalError);
}

TEST_CASE("metrics from a synthetic log") {
    EpisodeLog log;
    const double des = deg2rad(1.0);
    // start 1 deg below target, linear rise over 2 s, then hold with a small
    // constant offset
    for (int k = 0; k <= 500; ++k) {
        LogRow r;
        r.t = 0.01 * k;
        r.theta_des = des;
        if (r.t < 2.0) {
            r.theta = des - deg2rad(1.0) * (1.0 - r.t / 2.0);
        } else {
            r.theta = des + deg2rad(0.02);
        }
        r.deltaE = (k % 2 == 0) ? 0.01 : 0.012;
        log.rows.push_back(r);
    }
    const Metrics m = compute_metrics(log, 0.01);
    CHECK(m.rise_time_s == doctest::Approx(1.8).epsilon(0.01));
    CHECK(m.ss_err_deg == doctest::Approx(0.02).epsilon(1e-6));
    // 499 alternations of 0.002 rad
    CHECK(m.control_tv_rad == doctest::Approx(0.002 * 499).epsilon(1e-9));
    CHECK(m.max_step_dE_rad == doctest::Approx(0.002).epsilon(1e-9));
    CHECK(m.overshoot_pct == doctest::Approx(2.0).epsilon(0.01));
    CHECK(max_abs_err_deg_after(log, 2.0) == doctest::Approx(0.02).epsilon(1e-6));
}

TEST_CASE("episode log csv schema") {
    EpisodeLog log;
    LogRow r;
    r.t = 0.01;
    r.theta = deg2rad(1.0);
    log.rows.push_back(r);
    const std::string path = "/tmp/tbw_log_test.csv";
    log.write_csv(path);
    const std::string text = slurp(path);
    CHECK(text.find("# tbwq episode-log v1") == 0);
    CHECK(text.find("t_s,theta_deg,q_degps,alpha_deg,u_mps,w_mps,deltaE_rad,reward,gust_mps,"
                    "theta_meas_deg,q_meas_degps,theta_des_deg") != std::string::npos);
}

TEST_CASE("open-loop scenario holds trim") {
    const Settings s = resolve_settings(Config::defaults());
    Scenario sc;
    sc.controller = Controller::OpenLoopTrim;
    sc.duration = 2.0;
    sc.profile = ThetaProfile::constant(1.0);
    const RunResult r = run_scenario(s, sc, nullptr);
    CHECK(r.log.rows.size() == 201);
    // theta never leaves the trim value
    for (const LogRow& row : r.log.rows) {
        REQUIRE(std::abs(row.theta - r.log.rows.front().theta) < 1e-10);
    }
    CHECK(r.metrics.control_tv_rad == 0.0);
}

TEST_CASE("scenario controller/table validation") {
    const Settings s = resolve_settings(Config::defaults());
    Scenario sc;
    sc.controller = Controller::Faa;
    CHECK_THROWS_AS(run_scenario(s, sc, nullptr), MissingArtifact);

    const QTable pomdp(ObsMode::Pomdp, default_discretizer(), ActionGrid{});
    sc.controller = Controller::MdpGreedy;
    CHECK_THROWS_AS(run_scenario(s, sc, &pomdp), NumericalError);
    sc.controller = Controller::Faa;
    CHECK_THROWS_AS(run_scenario(s, sc, &pomdp), NumericalError);

    CHECK(controller_from_string("faa") == Controller::Faa);
    CHECK(controller_from_string("open-loop") == Controller::OpenLoopTrim);
    CHECK_THROWS_AS(controller_from_string("bogus"), NumericalError);
}

TEST_CASE("pid scenario runs are reproducible byte for byte") {
    const Settings s = resolve_settings(Config::defaults());
    Scenario sc;
    sc.controller = Controller::Pid;
    sc.gust = true;
    sc.noise = true;
    sc.seed = 99;
    sc.duration = 3.0;
    const RunResult a = run_scenario(s, sc, nullptr);
    const RunResult b = run_scenario(s, sc, nullptr);
    a.log.write_csv("/tmp/tbw_run_a.csv");
    b.log.write_csv("/tmp/tbw_run_b.csv");
    REQUIRE(slurp("/tmp/tbw_run_a.csv") == slurp("/tmp/tbw_run_b.csv"));
}

TEST_CASE("serial and parallel ensembles are bit-identical") {
    const Settings s = resolve_settings(Config::defaults());
    Scenario sc;
    sc.controller = Controller::Pid;
    sc.gust = true;
    sc.noise = true;
    sc.duration = 2.0;
    sc.seed = 10;
    const auto serial = run_ensemble_serial(s, sc, 8, nullptr);
    const auto parallel = run_ensemble_parallel(s, sc, 8, nullptr);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        REQUIRE(serial[i].seed == parallel[i].seed);
        REQUIRE(serial[i].metrics.ss_err_deg == parallel[i].metrics.ss_err_deg);
        REQUIRE(serial[i].metrics.control_tv_rad == parallel[i].metrics.control_tv_rad);
        REQUIRE(serial[i].metrics.total_reward == parallel[i].metrics.total_reward);
        const bool rise_match =
            serial[i].metrics.rise_time_s == parallel[i].metrics.rise_time_s ||
            (std::isnan(serial[i].metrics.rise_time_s) &&
             std::isnan(parallel[i].metrics.rise_time_s));
        REQUIRE(rise_match);
    }
    write_ensemble_csv("/tmp/tbw_ensemble_test.csv", serial);
    CHECK(slurp("/tmp/tbw_ensemble_test.csv").find("seed,rise_time_s") != std::string::npos);

    const EnsembleSummary sum = summarize(serial);
    CHECK(sum.mean_ss_err_deg > 0.0);
}

TEST_CASE("manifest captures command, checksum and config") {
    const Config cfg = Config::defaults();
    write_manifest("/tmp/tbw_manifest_test.txt", "tbwq eval --controller pid", cfg, 0xabcdefULL,
                   {"out/pid_log.csv"});
    const std::string text = slurp("/tmp/tbw_manifest_test.txt");
    CHECK(text.find("# tbwq run-manifest v1") == 0);
    CHECK(text.find("command = tbwq eval --controller pid") != std::string::npos);
    CHECK(text.find("dataset_checksum = 0000000000abcdef") != std::string::npos);
    CHECK(text.find("artifact = out/pid_log.csv") != std::string::npos);
    CHECK(text.find("[schedule]") != std::string::npos);
}

TEST_CASE("svg plot emission") {
    write_svg_plot("/tmp/tbw_plot_test.svg", "test", "x", "y",
                   {{"a", {{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.5}}}});
    const std::string text = slurp("/tmp/tbw_plot_test.svg");
    CHECK(text.find("<svg") == 0);
    CHECK(text.find("polyline") != std::string::npos);
}
