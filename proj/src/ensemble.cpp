#include "tbw/ensemble.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace tbw {

namespace {

EnsembleEntry run_one(const Settings& settings, const Scenario& base, int i,
                      const QTable* table) {
    Scenario s = base;
    s.seed = base.seed + static_cast<std::uint64_t>(i);
    EnsembleEntry e;
    e.seed = s.seed;
    e.metrics = run_scenario(settings, s, table).metrics;
    return e;
}

} // namespace

std::vector<EnsembleEntry> run_ensemble_serial(const Settings& settings, const Scenario& base,
                                               int n, const QTable* table) {
    std::vector<EnsembleEntry> out(n);
    for (int i = 0; i < n; ++i) out[i] = run_one(settings, base, i, table);
    return out;
}

std::vector<EnsembleEntry> run_ensemble_parallel(const Settings& settings, const Scenario& base,
                                                 int n, const QTable* table) {
    std::vector<EnsembleEntry> out(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) out[i] = run_one(settings, base, i, table);
    return out;
}

void write_ensemble_csv(const std::string& path, const std::vector<EnsembleEntry>& entries) {
    std::ofstream os(path);
    if (!os) throw MissingArtifact("write_ensemble_csv: cannot open " + path);
    os << "# tbwq ensemble v1\n";
    os << "seed,rise_time_s,overshoot_pct,ss_err_deg,control_tv_rad,max_step_dE_rad,"
          "max_abs_err_deg,total_reward\n";
    char buf[360];
    for (const EnsembleEntry& e : entries) {
        std::snprintf(buf, sizeof buf, "%llu,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      static_cast<unsigned long long>(e.seed), e.metrics.rise_time_s,
                      e.metrics.overshoot_pct, e.metrics.ss_err_deg, e.metrics.control_tv_rad,
                      e.metrics.max_step_dE_rad, e.metrics.max_abs_err_deg,
                      e.metrics.total_reward);
        os << buf;
    }
}

EnsembleSummary summarize(const std::vector<EnsembleEntry>& entries) {
    EnsembleSummary s;
    if (entries.empty()) return s;
    for (const EnsembleEntry& e : entries) {
        s.mean_ss_err_deg += e.metrics.ss_err_deg;
        s.mean_tv_rad += e.metrics.control_tv_rad;
        s.worst_ss_err_deg = std::max(s.worst_ss_err_deg, e.metrics.ss_err_deg);
        s.worst_max_err_deg = std::max(s.worst_max_err_deg, e.metrics.max_abs_err_deg);
    }
    s.mean_ss_err_deg /= entries.size();
    s.mean_tv_rad /= entries.size();
    return s;
}

} // namespace tbw
