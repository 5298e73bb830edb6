// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit code = number of failed
// criteria. `--criterion N` runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tbw/airframe.hpp"
#include "tbw/config.hpp"
#include "tbw/dataset.hpp"
#include "tbw/ensemble.hpp"
#include "tbw/faa.hpp"
#include "tbw/manifest.hpp"
#include "tbw/qlearning.hpp"
#include "tbw/scenario.hpp"

using namespace tbw;

namespace {

struct Clause {
    bool ok;
    std::string text;
};

struct CriterionResult {
    int id;
    std::string title;
    std::vector<Clause> clauses;
    bool passed() const {
        for (const Clause& c : clauses) {
            if (!c.ok) return false;
        }
        return true;
    }
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    return std::string((std::istreambuf_iterator<char>(f)), {});
}

// Shared lazily-computed artifacts so one invocation trains each table once.
struct Context {
    Settings settings = resolve_settings(Config::defaults());

    const TrimSolution& trim() {
        if (!trim_) {
            model_ = make_model(settings.dataset, settings.phase);
            trim_ = trim_solve(model_, settings.trim_speed);
        }
        return *trim_;
    }
    const AircraftModel& model() {
        trim();
        return model_;
    }

    Environment fresh_env(ObsMode mode, std::uint64_t seed) {
        EpisodeConfig ecfg = settings.episode;
        ecfg.mode = mode;
        return Environment(model(), trim(), default_discretizer(), settings.reward, ecfg,
                           settings.dryden, seed);
    }

    const TrainResult& mdp() {
        if (!mdp_) {
            Environment env = fresh_env(ObsMode::Mdp, settings.seed);
            mdp_ = train(env, settings.schedule, settings.seed);
        }
        return *mdp_;
    }
    const TrainResult& pomdp() {
        if (!pomdp_) {
            Environment env = fresh_env(ObsMode::Pomdp, settings.seed);
            pomdp_ = train(env, settings.schedule, settings.seed);
        }
        return *pomdp_;
    }

  private:
    AircraftModel model_;
    std::optional<TrimSolution> trim_;
    std::optional<TrainResult> mdp_;
    std::optional<TrainResult> pomdp_;
};

CriterionResult c1_trim(Context& ctx) {
    CriterionResult r{1, "trim self-consistency", {}};
    const TrimSolution& trim = ctx.trim();
    r.clauses.push_back({trim.residual < 1e-8, fmt("residual %.3e < 1e-8", trim.residual)});

    AircraftModel m = ctx.model();
    m.thrust = trim.thrust;
    FlightState s = trim_state(trim);
    double max_dev = 0.0;
    for (int k = 0; k < 1000; ++k) {
        s = integrate_step(s, trim.deltaE, m, 0.0, 0.01);
        max_dev = std::max(max_dev, std::abs(s.theta - trim.alpha));
    }
    r.clauses.push_back({rad2deg(max_dev) < 0.05,
                         fmt("10 s hold max |theta-theta_trim| = %.2e deg < 0.05",
                             rad2deg(max_dev))});
    const ReferenceData& ref = ctx.settings.dataset.ref;
    std::printf("     side-by-side: alpha %.4f deg (ref %.2f), deltaE %.4f deg (ref %.2f), "
                "thrust %.1f lbf (ref %.2f) -- reported, not asserted\n",
                rad2deg(trim.alpha), ref.trim_alpha_deg, rad2deg(trim.deltaE),
                ref.trim_deltaE_deg, trim.thrust / kNewtonPerLbf, ref.trim_thrust_lbf);
    return r;
}

CriterionResult c2_modes(Context& ctx) {
    CriterionResult r{2, "modal structure", {}};
    const auto ev = eig4(linearize_longitudinal(ctx.model(), ctx.trim()));
    std::printf("     eigenvalues: (%.5f%+.5fi) (%.5f%+.5fi) (%.5f%+.5fi) (%.5f%+.5fi)\n",
                ev[0].real(), ev[0].imag(), ev[1].real(), ev[1].imag(), ev[2].real(),
                ev[2].imag(), ev[3].real(), ev[3].imag());
    bool stable = true;
    for (const auto& lam : ev) stable &= lam.real() < 0.0;
    r.clauses.push_back({stable, "all four eigenvalues stable"});

    const bool sp_complex = std::abs(ev[0].imag()) > 1e-12 && std::abs(ev[1].imag()) > 1e-12;
    const bool ph_complex = std::abs(ev[2].imag()) > 1e-12 && std::abs(ev[3].imag()) > 1e-12;
    r.clauses.push_back(
        {sp_complex && ph_complex,
         fmt("two complex pairs (short period is %s: the dataset's cLa/Iyy overdamps it at any "
             "airspeed; not reproducible from the shipped derivatives)",
             sp_complex ? "complex" : "a real pair")});

    const double re_sp = std::abs(ev[1].real()); // least-damped fast root
    const double re_ph = std::abs(ev[2].real());
    r.clauses.push_back({re_sp >= 10.0 * re_ph,
                         fmt("|Re sp| / |Re ph| = %.1f >= 10", re_sp / re_ph)});
    const double zeta_ph = -ev[2].real() / std::abs(ev[2]);
    r.clauses.push_back({zeta_ph < 0.1, fmt("phugoid damping ratio %.4f < 0.1", zeta_ph)});

    const ReferenceData& ref = ctx.settings.dataset.ref;
    const double sp_ref = std::hypot(ref.sp_re, ref.sp_im);
    const double ph_ref = std::hypot(ref.ph_re, ref.ph_im);
    bool within3 = true;
    for (int i = 0; i < 2; ++i) {
        const double ratio = std::abs(ev[i]) / sp_ref;
        within3 &= (ratio < 3.0 && ratio > 1.0 / 3.0);
    }
    for (int i = 2; i < 4; ++i) {
        const double ratio = std::abs(ev[i]) / ph_ref;
        within3 &= (ratio < 3.0 && ratio > 1.0 / 3.0);
    }
    r.clauses.push_back({within3, fmt("pole magnitudes within factor 3 of the reference "
                                      "(%.3f %.3f vs %.3f; %.4f vs %.4f)",
                                      std::abs(ev[0]), std::abs(ev[1]), sp_ref, std::abs(ev[2]),
                                      ph_ref)});
    return r;
}

CriterionResult c3_dryden(Context& ctx) {
    CriterionResult r{3, "Dryden filter", {}};
    GustFilter f(ctx.settings.dryden);
    double dc = 0.0;
    for (int k = 0; k < 5000; ++k) dc = f.step_with_input(1.0);
    r.clauses.push_back(
        {std::abs(dc - 4.4603) <= 0.001, fmt("DC response %.5f = 4.4603 +- 0.001", dc)});

    const double expected =
        oracle::dryden_variance_quadrature(ctx.settings.dryden.sigma_w, ctx.settings.dryden.L_w,
                                           ctx.settings.dryden.u1, 5000.0, 400000);
    DrydenConfig cfg = ctx.settings.dryden;
    cfg.seed = 123;
    GustFilter g(cfg);
    for (int k = 0; k < 10000; ++k) g.step();
    const int n = 1000000;
    double s1 = 0.0, s2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double v = g.step();
        s1 += v;
        s2 += v * v;
    }
    const double var = s2 / n - (s1 / n) * (s1 / n);
    r.clauses.push_back({std::abs(var - expected) / expected < 0.05,
                         fmt("stationary variance %.3f within 5%% of quadrature oracle %.3f",
                             var, expected)});
    return r;
}

CriterionResult c4_reward(Context& ctx) {
    CriterionResult r{4, "reward unit examples", {}};
    const RewardConfig& cfg = ctx.settings.reward;
    const double r1 = reward(deg2rad(0.01), deg2rad(0.001), 0.0, 0.0, cfg);
    r.clauses.push_back({r1 == 2400.0, fmt("deep vicinity -> %.1f == 2400", r1)});
    const double r2a = reward(0.0, 0.0, 0.25, 0.0, cfg);
    const double r2b = reward(deg2rad(0.01), deg2rad(0.001), -0.25, 0.25, cfg);
    r.clauses.push_back({r2a == -10000.0 && r2b == 2400.0,
                         fmt("jump penalty pair: %.0f / no-penalty (as-printed form)", r2a)});
    const double r3 = reward(deg2rad(1.0), 0.0, 0.0, 0.0, cfg);
    const double want = -std::pow(100.0 * deg2rad(1.0), 2.0);
    r.clauses.push_back({std::abs(r3 + 3.0461741979) < 1e-6 && r3 == want,
                         fmt("1 deg error -> %.6f == -3.0462", r3)});
    const double r4 = reward(deg2rad(0.03), deg2rad(0.03), 0.0, 0.0, cfg);
    r.clauses.push_back({r4 == 700.0, fmt("partial vicinity -> %.1f == 700", r4)});
    return r;
}

CriterionResult c5_qupdate(Context&) {
    CriterionResult r{5, "q-update arithmetic", {}};
    const Discretizer d = default_discretizer();
    QTable q(ObsMode::Mdp, d, ActionGrid{});
    Observation o;
    o.err_bin = 10;
    o.rate_bin = 3;
    Observation next = o;
    next.err_bin = 11;
    q_update(q, o, 4, 700.0, next, 0.02, 0.99);
    r.clauses.push_back(
        {std::abs(q.at(o, 4) - 14.0) <= 1e-12, fmt("zero table, R=700 -> %.12f == 14", q.at(o, 4))});

    QTable q2(ObsMode::Mdp, d, ActionGrid{});
    q2.at(o, 4) = 3.25;
    q_update(q2, o, 4, 0.0, o, 0.5, 1.0);
    r.clauses.push_back({q2.at(o, 4) == 3.25, "gamma=1, R=0 self-transition is a fixed point"});

    QTable q3(ObsMode::Mdp, d, ActionGrid{});
    const double R = 700.0, target = R / (1.0 - 0.99);
    for (int k = 0; k < 400000; ++k) q_update(q3, o, 9, R, o, 0.02, 0.99);
    r.clauses.push_back({std::abs(q3.at(o, 9) - target) <= 1e-12 * target,
                         fmt("self-transition converges to R/(1-gamma) = %.1f", q3.at(o, 9))});
    return r;
}

CriterionResult c6_training(Context& ctx) {
    CriterionResult r{6, "training convergence", {}};
    const auto t0 = std::chrono::steady_clock::now();
#pragma omp parallel sections
    {
#pragma omp section
        { ctx.mdp(); }
#pragma omp section
        { ctx.pomdp(); }
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double ma_mdp = moving_average(ctx.mdp().trace, 500);
    const double ma_pomdp = moving_average(ctx.pomdp().trace, 500);
    int pomdp_positives = 0;
    for (const EpisodeStat& e : ctx.pomdp().trace) {
        if (e.total_reward > 0.0) ++pomdp_positives;
    }
    r.clauses.push_back({ma_mdp > 0.0, fmt("MDP final 500-episode MA %.1f > 0", ma_mdp)});
    r.clauses.push_back(
        {ma_mdp > ma_pomdp, fmt("MDP MA exceeds POMDP MA (%.1f > %.1f)", ma_mdp, ma_pomdp)});
    r.clauses.push_back(
        {pomdp_positives == 0,
         fmt("POMDP never posts a positive episode (found %d/20000: with this derivative set the "
             "trim elevator is 0.008 action quanta and the short period overdamped, so "
             "error-only control occasionally holds the bonus band; not reproducible as stated)",
             pomdp_positives)});
    std::printf("     both trainings: %.1f s wall (target < 10 min)\n", wall);
    return r;
}

CriterionResult c7_faa(Context& ctx) {
    CriterionResult r{7, "fuzzy action assignment on the 1 deg step", {}};
    Scenario sc;
    sc.profile = ThetaProfile::constant(1.0);
    sc.duration = 5.0;
    sc.seed = ctx.settings.seed;

    sc.controller = Controller::Faa;
    const RunResult faa = run_scenario(ctx.settings, sc, &ctx.mdp().table);
    sc.controller = Controller::MdpGreedy;
    const RunResult mdp = run_scenario(ctx.settings, sc, &ctx.mdp().table);
    sc.controller = Controller::Pid;
    const RunResult pid = run_scenario(ctx.settings, sc, nullptr);

    r.clauses.push_back({faa.metrics.ss_err_deg < 0.1,
                         fmt("steady-state |err| %.4f deg < 0.1", faa.metrics.ss_err_deg)});
    r.clauses.push_back({faa.metrics.control_tv_rad < mdp.metrics.control_tv_rad,
                         fmt("elevator TV: faa %.3f < discrete mdp %.3f",
                             faa.metrics.control_tv_rad, mdp.metrics.control_tv_rad)});
    r.clauses.push_back({faa.metrics.control_tv_rad < pid.metrics.control_tv_rad,
                         fmt("elevator TV: faa %.3f < pid %.3f", faa.metrics.control_tv_rad,
                             pid.metrics.control_tv_rad)});
    r.clauses.push_back({faa.metrics.max_step_dE_rad < 0.025,
                         fmt("max step-to-step dE %.4f < 0.025 (one quantum)",
                             faa.metrics.max_step_dE_rad)});
    return r;
}

CriterionResult c8_robustness(Context& ctx) {
    CriterionResult r{8, "robustness on the variable profile with gust + noise", {}};
    Scenario sc;
    sc.controller = Controller::Faa;
    sc.profile = ThetaProfile::parse(ctx.settings.variable_profile);
    sc.duration = sc.profile.points.back().first;
    sc.gust = true;
    sc.noise = true;
    sc.seed = ctx.settings.seed;
    const RunResult faa = run_scenario(ctx.settings, sc, &ctx.mdp().table);
    const double worst = max_abs_err_deg_after(faa.log, 2.0);
    r.clauses.push_back(
        {worst < 0.5, fmt("FAA max |err| after the 2 s transient = %.3f deg < 0.5 "
                          "(profile %s, %.0f s)",
                          worst, sc.profile.describe().c_str(), sc.duration)});
    sc.controller = Controller::MdpGreedy;
    const RunResult mdp = run_scenario(ctx.settings, sc, &ctx.mdp().table);
    std::printf("     discrete MDP on the same run: max |err| %.3f deg (not required bounded)\n",
                max_abs_err_deg_after(mdp.log, 2.0));
    return r;
}

CriterionResult c9_determinism(Context& ctx) {
    CriterionResult r{9, "determinism", {}};
    Schedule s = ctx.settings.schedule;
    s.episodes = 200;
    const auto train_once = [&](const std::string& path) {
        Environment env = ctx.fresh_env(ObsMode::Mdp, 4242);
        TrainResult t = train(env, s, 4242);
        t.table.save(path);
        return t;
    };
    const TrainResult t1 = train_once("/tmp/tbw_acc_q1.txt");
    const TrainResult t2 = train_once("/tmp/tbw_acc_q2.txt");
    r.clauses.push_back({slurp("/tmp/tbw_acc_q1.txt") == slurp("/tmp/tbw_acc_q2.txt"),
                         "identical manifests give byte-identical Q-table files"});
    r.clauses.push_back({t1.table.raw() == t2.table.raw(), "in-memory tables bit-identical"});

    Scenario sc;
    sc.controller = Controller::Faa;
    sc.gust = true;
    sc.noise = true;
    sc.seed = 7;
    sc.duration = 3.0;
    run_scenario(ctx.settings, sc, &t1.table).log.write_csv("/tmp/tbw_acc_l1.csv");
    run_scenario(ctx.settings, sc, &t2.table).log.write_csv("/tmp/tbw_acc_l2.csv");
    r.clauses.push_back({slurp("/tmp/tbw_acc_l1.csv") == slurp("/tmp/tbw_acc_l2.csv"),
                         "identical manifests give byte-identical CSV logs"});
    return r;
}

CriterionResult c10_properties(Context& ctx) {
    CriterionResult r{10, "property suites", {}};

    // longitudinal closure under elevator-only input
    {
        FlightState s;
        s.u = 158.0;
        s.w = 2.0;
        s.q = 0.03;
        s.theta = 0.08;
        Rng rng(5);
        bool closed = true;
        for (int k = 0; k < 500; ++k) {
            s = integrate_step(s, 0.05 * rng.uniform_pm1(), ctx.model(), 0.0, 0.01);
            closed &= (s.v == 0.0 && s.p == 0.0 && s.r == 0.0 && s.phi == 0.0 && s.psi == 0.0);
        }
        r.clauses.push_back({closed, "lateral states stay exactly zero over 5 s"});
    }

    // RK4 order ratio
    {
        AircraftModel m = ctx.model();
        m.thrust = ctx.trim().thrust;
        const auto run = [&](double dt) {
            FlightState s = trim_state(ctx.trim());
            s.theta += deg2rad(2.0);
            s.q = 0.02;
            const int n = static_cast<int>(5.0 / dt + 0.5);
            for (int k = 0; k < n; ++k) s = integrate_step(s, ctx.trim().deltaE + 0.05, m, 0.0, dt);
            return s.theta;
        };
        const double ref = run(0.00125);
        const double ratio = std::abs(run(0.01) - ref) / std::abs(run(0.005) - ref);
        r.clauses.push_back(
            {ratio >= 12.0 && ratio <= 20.0, fmt("RK4 halving error ratio %.2f in [12, 20]", ratio)});
    }

    // DCM orthonormality
    {
        Rng rng(11);
        double worst = 0.0;
        for (int trial = 0; trial < 500; ++trial) {
            const double phi = rng.uniform(-1.5, 1.5);
            const double theta = rng.uniform(-1.4, 1.4);
            const double psi = rng.uniform(-3.1, 3.1);
            const double sp = std::sin(phi), cp = std::cos(phi);
            const double st = std::sin(theta), ct = std::cos(theta);
            const double ss = std::sin(psi), cs = std::cos(psi);
            const double R[3][3] = {
                {cs * ct, cs * st * sp - ss * cp, cs * st * cp + ss * sp},
                {ss * ct, ss * st * sp + cs * cp, ss * st * cp - cs * sp},
                {-st, ct * sp, ct * cp},
            };
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    double dot = 0.0;
                    for (int k = 0; k < 3; ++k) dot += R[k][i] * R[k][j];
                    worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
                }
            }
        }
        r.clauses.push_back({worst <= 1e-12, fmt("DCM orthonormality residual %.2e <= 1e-12", worst)});
    }

    // reward parity and monotonicity
    {
        Rng rng(17);
        bool ok = true;
        for (int k = 0; k < 2000; ++k) {
            const double e = rng.uniform(deg2rad(0.1), 0.3);
            const double q = rng.uniform(deg2rad(0.1), 0.3);
            ok &= reward(e, q, 0.0, 0.0, ctx.settings.reward) ==
                  reward(-e, -q, 0.0, 0.0, ctx.settings.reward);
            const double e2 = rng.uniform(0.0, deg2rad(0.06));
            const double q2 = rng.uniform(0.0, deg2rad(0.06));
            const double r2 = reward(e2, q2, 0.0, 0.0, ctx.settings.reward);
            const double r1 =
                reward(e2 * rng.uniform01(), q2 * rng.uniform01(), 0.0, 0.0, ctx.settings.reward);
            if (r2 > 0.0) ok &= r1 >= r2;
        }
        r.clauses.push_back({ok, "reward parity and bonus monotonicity"});
    }

    // FAA boundedness on a worst-case random table, continuity on the
    // trained table
    {
        QTable q(ObsMode::Mdp, default_discretizer(), ActionGrid{});
        Rng rng(2025);
        for (double& v : q.raw()) v = rng.uniform_pm1();
        const MembershipGrid g(default_discretizer(), q, ActionGrid{}, ctx.settings.faa);
        bool bounded = true;
        for (int k = 0; k < 3000; ++k) {
            const double a = g.action(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
            bounded &= std::isfinite(a) && a >= -0.25 && a <= 0.25;
        }
        r.clauses.push_back({bounded, "FAA output bounded by the action grid"});

        const MembershipGrid gt(default_discretizer(), ctx.mdp().table, ActionGrid{},
                                ctx.settings.faa);
        double max_jump = 0.0;
        for (const double q_line : {0.0, 0.001, -0.001, 0.002, -0.002}) {
            double prev = gt.action(-0.023, q_line);
            for (double err = -0.023 + 1e-5; err <= 0.023; err += 1e-5) {
                const double a = gt.action(err, q_line);
                max_jump = std::max(max_jump, std::abs(a - prev));
                prev = a;
            }
        }
        r.clauses.push_back(
            {max_jump < 1e-3,
             fmt("FAA sweep continuity on the trained table: max jump %.2e < 1e-3", max_jump)});
    }
    return r;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }
    Context ctx;
    using Fn = CriterionResult (*)(Context&);
    const Fn criteria[] = {c1_trim, c2_modes, c3_dryden,      c4_reward, c5_qupdate,
                           c6_training, c7_faa, c8_robustness, c9_determinism, c10_properties};

    int failures = 0;
    for (int i = 0; i < 10; ++i) {
        if (only != 0 && only != i + 1) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult res;
        try {
            res = criteria[i](ctx);
        } catch (const std::exception& e) {
            res.id = i + 1;
            res.title = "criterion aborted";
            res.clauses.push_back({false, std::string("exception: ") + e.what()});
        }
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] C%-2d %s (%.1f s)\n", res.passed() ? "PASS" : "FAIL", res.id,
                    res.title.c_str(), dt);
        for (const Clause& c : res.clauses) {
            std::printf("       %s %s\n", c.ok ? "ok  " : "FAIL", c.text.c_str());
        }
        if (!res.passed()) ++failures;
    }
    if (only == 0) {
        std::printf("%d/10 criteria passed\n", 10 - failures);
    }
    return failures;
}
