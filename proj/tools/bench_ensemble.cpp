// Benchmark comparing the serial ensemble reference against the OpenMP
// kernel, plus the raw single-trajectory step rate.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tbw/airframe.hpp"
#include "tbw/config.hpp"
#include "tbw/dataset.hpp"
#include "tbw/ensemble.hpp"
#include "tbw/pid.hpp"
#include "tbw/scenario.hpp"

using namespace tbw;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int n = (argc > 1) ? std::atoi(argv[1]) : 64;
    const Settings settings = resolve_settings(Config::defaults());

    // raw integrator throughput
    {
        const AircraftModel model = make_model(settings.dataset, settings.phase);
        const TrimSolution trim = trim_solve(model, settings.trim_speed);
        AircraftModel m = model;
        m.thrust = trim.thrust;
        FlightState s = trim_state(trim);
        const int steps = 500000;
        const auto t0 = std::chrono::steady_clock::now();
        for (int k = 0; k < steps; ++k) s = integrate_step(s, trim.deltaE, m, 0.0, 0.01);
        const double dt = seconds_since(t0);
        std::printf("integrator: %d RK4 steps in %.3f s  (%.2f Msteps/s)\n", steps, dt,
                    steps / dt / 1e6);
    }

    // ensemble of PID scenarios (no table needed)
    Scenario sc;
    sc.controller = Controller::Pid;
    sc.duration = 5.0;
    sc.gust = true;
    sc.noise = true;

    const auto t_serial = std::chrono::steady_clock::now();
    const auto serial = run_ensemble_serial(settings, sc, n, nullptr);
    const double dt_serial = seconds_since(t_serial);

    const auto t_par = std::chrono::steady_clock::now();
    const auto parallel = run_ensemble_parallel(settings, sc, n, nullptr);
    const double dt_par = seconds_since(t_par);

    bool identical = serial.size() == parallel.size();
    for (std::size_t i = 0; identical && i < serial.size(); ++i) {
        identical = serial[i].seed == parallel[i].seed &&
                    serial[i].metrics.ss_err_deg == parallel[i].metrics.ss_err_deg &&
                    serial[i].metrics.control_tv_rad == parallel[i].metrics.control_tv_rad &&
                    serial[i].metrics.total_reward == parallel[i].metrics.total_reward;
    }

    int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
    {
#pragma omp single
        threads = omp_get_num_threads();
    }
#endif
    std::printf("ensemble (%d seeds, gust+noise PID):\n", n);
    std::printf("  serial reference  %.3f s\n", dt_serial);
    std::printf("  openmp (%2d thr)   %.3f s   speedup %.2fx\n", threads, dt_par,
                dt_serial / dt_par);
    std::printf("  results bit-identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
