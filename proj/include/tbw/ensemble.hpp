#pragma once

#include <string>
#include <vector>

#include "tbw/scenario.hpp"

namespace tbw {

struct EnsembleEntry {
    std::uint64_t seed = 0;
    Metrics metrics;
};

// Runs the scenario with seeds base.seed .. base.seed + n - 1. The OpenMP
// kernel and the serial reference produce bit-identical results; the serial
// path is kept for testing and as the fallback without OpenMP.
std::vector<EnsembleEntry> run_ensemble_serial(const Settings& settings, const Scenario& base,
                                               int n, const QTable* table);
std::vector<EnsembleEntry> run_ensemble_parallel(const Settings& settings, const Scenario& base,
                                                 int n, const QTable* table);

void write_ensemble_csv(const std::string& path, const std::vector<EnsembleEntry>& entries);

struct EnsembleSummary {
    double mean_ss_err_deg = 0.0;
    double worst_ss_err_deg = 0.0;
    double mean_tv_rad = 0.0;
    double worst_max_err_deg = 0.0;
};

EnsembleSummary summarize(const std::vector<EnsembleEntry>& entries);

} // namespace tbw
