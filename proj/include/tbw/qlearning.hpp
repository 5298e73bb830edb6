#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tbw/environment.hpp"
#include "tbw/rng.hpp"

namespace tbw {

// 21 elevator deflections, -0.25 to +0.25 rad in 0.025 steps.
struct ActionGrid {
    static constexpr int kCount = 21;
    static constexpr double kMin = -0.25;
    static constexpr double kStep = 0.025;

    double value(int index) const { return kMin + kStep * index; }
    int count() const { return kCount; }
    // nearest grid index to a continuous deflection
    int nearest(double deltaE) const;
};

// Action-value table: [err_bin][rate_bin][action] (MDP) or [err_bin][action]
// (POMDP), zero-initialized. Carries the metadata needed to persist and
// reload it bit-exactly.
class QTable {
  public:
    QTable() = default;
    QTable(ObsMode mode, const Discretizer& disc, const ActionGrid& grid);

    ObsMode mode() const { return mode_; }
    int err_bins() const { return err_bins_; }
    int rate_bins() const { return rate_bins_; }
    int actions() const { return actions_; }

    double& at(int err_bin, int rate_bin, int action);
    double at(int err_bin, int rate_bin, int action) const;
    double& at(const Observation& o, int action) { return at(o.err_bin, o.rate_bin, action); }
    double at(const Observation& o, int action) const { return at(o.err_bin, o.rate_bin, action); }

    // argmax over actions; ties resolve to the lowest action index
    int argmax_action(int err_bin, int rate_bin) const;
    int argmax_action(const Observation& o) const { return argmax_action(o.err_bin, o.rate_bin); }
    double max_value(const Observation& o) const;

    const std::vector<double>& raw() const { return values_; }
    std::vector<double>& raw() { return values_; }
    bool finite() const;

    // persistence metadata
    std::vector<double> theta_edges;
    std::vector<double> rate_edges;
    std::vector<double> action_values;
    std::uint64_t seed = 0;
    int episodes_trained = 0;

    // Versioned plain-text format; round-trips bit-exactly.
    void save(const std::string& path) const;
    static QTable load(const std::string& path);

  private:
    std::size_t index(int e, int r, int a) const;

    ObsMode mode_ = ObsMode::Mdp;
    int err_bins_ = 0;
    int rate_bins_ = 0;
    int actions_ = 0;
    std::vector<double> values_;
};

struct Schedule {
    double eps_start = 0.1;
    double eps_decrement = 3e-6;
    double eps_floor = 0.04;
    double alpha_start = 0.02;
    double alpha_decrement = 9e-7;
    double alpha_floor = 0.002;
    double gamma = 0.99;
    int episodes = 20000;

    double epsilon(int episode) const;
    double alpha(int episode) const;
};

// max(start - decrement * episode, floor)
double schedule_value(double start, double decrement, double floor, int episode);

// Epsilon-greedy over the table row; greedy with probability 1 - epsilon.
int select_action(const QTable& q, const Observation& obs, double epsilon, Rng& rng);

// One-step tabular Bellman update; mutates exactly one cell.
void q_update(QTable& q, const Observation& obs, int action, double reward,
              const Observation& next_obs, double alpha, double gamma);

struct EpisodeStat {
    double total_reward = 0.0;
    double epsilon = 0.0;
    double alpha = 0.0;
    bool aborted = false;
};

struct TrainOptions {
    // Select training actions through the fuzzy layer instead of discrete
    // epsilon-greedy (evaluation-style action assignment during learning).
    bool faa_in_training = false;
    // progress line every N episodes on stderr; 0 silences
    int progress_every = 0;
};

struct TrainResult {
    QTable table;
    std::vector<EpisodeStat> trace;
    std::vector<std::uint32_t> visits; // same layout as the table
    int aborted_episodes = 0;
};

// Full training loop: schedule.episodes episodes of env's episode length.
// Deterministic given master_seed (which must match the seed the Environment
// was built with for the manifest to reproduce the run).
TrainResult train(Environment& env, const Schedule& schedule, std::uint64_t master_seed,
                  const TrainOptions& options = {});

// Trace CSV: episode, total reward, epsilon, alpha, aborted flag.
void write_trace_csv(const std::string& path, const std::vector<EpisodeStat>& trace);

double moving_average(const std::vector<EpisodeStat>& trace, int window);
int first_positive_episode(const std::vector<EpisodeStat>& trace); // -1 if none

} // namespace tbw
