#include "tbw/qlearning.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tbw/faa.hpp"

namespace tbw {

int ActionGrid::nearest(double deltaE) const {
    const int i = static_cast<int>(std::lround((deltaE - kMin) / kStep));
    return std::clamp(i, 0, kCount - 1);
}

QTable::QTable(ObsMode mode, const Discretizer& disc, const ActionGrid& grid)
    : theta_edges(disc.theta_edges),
      rate_edges(disc.rate_edges),
      mode_(mode),
      err_bins_(disc.err_bins()),
      rate_bins_(mode == ObsMode::Mdp ? disc.rate_bins() : 1),
      actions_(grid.count()) {
    action_values.resize(grid.count());
    for (int a = 0; a < grid.count(); ++a) action_values[a] = grid.value(a);
    values_.assign(static_cast<std::size_t>(err_bins_) * rate_bins_ * actions_, 0.0);
}

std::size_t QTable::index(int e, int r, int a) const {
    const int rr = (mode_ == ObsMode::Mdp) ? r : 0;
    return (static_cast<std::size_t>(e) * rate_bins_ + rr) * actions_ + a;
}

double& QTable::at(int e, int r, int a) { return values_[index(e, r, a)]; }
double QTable::at(int e, int r, int a) const { return values_[index(e, r, a)]; }

int QTable::argmax_action(int e, int r) const {
    int best = 0;
    double best_v = at(e, r, 0);
    for (int a = 1; a < actions_; ++a) {
        const double v = at(e, r, a);
        if (v > best_v) {
            best_v = v;
            best = a;
        }
    }
    return best;
}

double QTable::max_value(const Observation& o) const {
    return at(o, argmax_action(o));
}

bool QTable::finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

namespace {

void write_doubles(std::ostream& os, const std::vector<double>& v) {
    char buf[40];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", v[i]);
        os << (i ? " " : "") << buf;
    }
    os << '\n';
}

std::vector<double> read_doubles(std::istream& is, std::size_t n, const std::string& what) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(is >> v[i])) throw NumericalError("QTable::load: truncated " + what);
    }
    return v;
}

} // namespace

void QTable::save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw MissingArtifact("QTable::save: cannot open " + path);
    os << "tbwq-qtable v1\n";
    os << "mode " << (mode_ == ObsMode::Mdp ? "mdp" : "pomdp") << '\n';
    os << "seed " << seed << '\n';
    os << "episodes " << episodes_trained << '\n';
    os << "theta_edges " << theta_edges.size() << '\n';
    write_doubles(os, theta_edges);
    os << "rate_edges " << rate_edges.size() << '\n';
    write_doubles(os, rate_edges);
    os << "actions " << action_values.size() << '\n';
    write_doubles(os, action_values);
    os << "data " << err_bins_ << ' ' << rate_bins_ << ' ' << actions_ << '\n';
    char buf[40];
    for (int e = 0; e < err_bins_; ++e) {
        for (int r = 0; r < rate_bins_; ++r) {
            os << e << ' ' << r;
            for (int a = 0; a < actions_; ++a) {
                std::snprintf(buf, sizeof buf, "%.17g", at(e, r, a));
                os << ' ' << buf;
            }
            os << '\n';
        }
    }
    os << "end\n";
    if (!os) throw NumericalError("QTable::save: write failed for " + path);
}

QTable QTable::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw MissingArtifact("Q-table file not found: " + path);
    std::string magic, version;
    is >> magic >> version;
    if (magic != "tbwq-qtable" || version != "v1") {
        throw NumericalError("QTable::load: " + path + " is not a tbwq-qtable v1 file");
    }
    QTable q;
    std::string key;
    is >> key;
    std::string mode_str;
    is >> mode_str;
    q.mode_ = (mode_str == "mdp") ? ObsMode::Mdp : ObsMode::Pomdp;
    is >> key >> q.seed;
    is >> key >> q.episodes_trained;
    std::size_t n = 0;
    is >> key >> n;
    q.theta_edges = read_doubles(is, n, "theta_edges");
    is >> key >> n;
    q.rate_edges = read_doubles(is, n, "rate_edges");
    is >> key >> n;
    q.action_values = read_doubles(is, n, "actions");
    is >> key >> q.err_bins_ >> q.rate_bins_ >> q.actions_;
    if (key != "data" || q.err_bins_ <= 0 || q.rate_bins_ <= 0 || q.actions_ <= 0) {
        throw NumericalError("QTable::load: malformed data header in " + path);
    }
    q.values_.assign(static_cast<std::size_t>(q.err_bins_) * q.rate_bins_ * q.actions_, 0.0);
    for (int e = 0; e < q.err_bins_; ++e) {
        for (int r = 0; r < q.rate_bins_; ++r) {
            int ee = 0, rr = 0;
            if (!(is >> ee >> rr) || ee != e || rr != r) {
                throw NumericalError("QTable::load: row index mismatch in " + path);
            }
            for (int a = 0; a < q.actions_; ++a) {
                if (!(is >> q.values_[q.index(e, r, a)])) {
                    throw NumericalError("QTable::load: truncated data in " + path);
                }
            }
        }
    }
    is >> key;
    if (key != "end") throw NumericalError("QTable::load: missing end marker in " + path);
    return q;
}

double schedule_value(double start, double decrement, double floor, int episode) {
    return std::max(start - decrement * episode, floor);
}

double Schedule::epsilon(int episode) const {
    return schedule_value(eps_start, eps_decrement, eps_floor, episode);
}

double Schedule::alpha(int episode) const {
    return schedule_value(alpha_start, alpha_decrement, alpha_floor, episode);
}

int select_action(const QTable& q, const Observation& obs, double epsilon, Rng& rng) {
    if (rng.uniform01() < epsilon) return rng.uniform_int(q.actions());
    return q.argmax_action(obs);
}

void q_update(QTable& q, const Observation& obs, int action, double reward,
              const Observation& next_obs, double alpha, double gamma) {
    if (!std::isfinite(reward)) throw NumericalError("q_update: non-finite reward");
    double& cell = q.at(obs, action);
    cell += alpha * (reward + gamma * q.max_value(next_obs) - cell);
}

TrainResult train(Environment& env, const Schedule& schedule, std::uint64_t master_seed,
                  const TrainOptions& options) {
    if (options.faa_in_training && env.episode_config().mode != ObsMode::Mdp) {
        throw NumericalError("train: fuzzy-in-training action selection needs MDP mode");
    }
    const ActionGrid grid;
    TrainResult out;
    out.table = QTable(env.episode_config().mode, env.discretizer(), grid);
    out.table.seed = master_seed;
    out.table.episodes_trained = schedule.episodes;
    out.visits.assign(out.table.raw().size(), 0);
    out.trace.reserve(schedule.episodes);

    Rng explore(derive_seed(master_seed, Stream::Explore));
    const int steps = env.episode_config().steps();
    const FaaOptions faa_opts; // defaults; only used when faa_in_training

    for (int ep = 0; ep < schedule.episodes; ++ep) {
        const double eps = schedule.epsilon(ep);
        const double alpha = schedule.alpha(ep);
        EpisodeStat stat;
        stat.epsilon = eps;
        stat.alpha = alpha;
        Observation obs = env.reset();
        try {
            for (int k = 0; k < steps; ++k) {
                int a;
                double deltaE;
                if (options.faa_in_training) {
                    if (explore.uniform01() < eps) {
                        a = explore.uniform_int(grid.count());
                        deltaE = grid.value(a);
                    } else {
                        deltaE = faa_action_dynamic(out.table, env.discretizer(), grid, obs.err,
                                                    obs.q, faa_opts);
                        a = grid.nearest(deltaE);
                    }
                } else {
                    a = select_action(out.table, obs, eps, explore);
                    deltaE = grid.value(a);
                }
                const StepResult res = env.step(deltaE);
                q_update(out.table, obs, a, res.reward, res.obs, alpha, schedule.gamma);
                const std::size_t vi =
                    (static_cast<std::size_t>(obs.err_bin) * out.table.rate_bins() +
                     (env.episode_config().mode == ObsMode::Mdp ? obs.rate_bin : 0)) *
                        out.table.actions() +
                    a;
                ++out.visits[vi];
                stat.total_reward += res.reward;
                obs = res.obs;
            }
        } catch (const SimulationFault&) {
            stat.aborted = true;
            ++out.aborted_episodes;
        }
        out.trace.push_back(stat);
        if (options.progress_every > 0 && (ep + 1) % options.progress_every == 0) {
            std::fprintf(stderr, "episode %d/%d  reward %.1f  eps %.4f  alpha %.5f\n", ep + 1,
                         schedule.episodes, stat.total_reward, eps, alpha);
        }
    }
    if (!out.table.finite()) throw NumericalError("train: Q-table contains non-finite values");
    return out;
}

void write_trace_csv(const std::string& path, const std::vector<EpisodeStat>& trace) {
    std::ofstream os(path);
    if (!os) throw MissingArtifact("write_trace_csv: cannot open " + path);
    os << "# tbwq reward-trace v1\n";
    os << "episode,total_reward,epsilon,alpha,aborted\n";
    char buf[40];
    for (std::size_t i = 0; i < trace.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", trace[i].total_reward);
        os << i << ',' << buf << ',' << trace[i].epsilon << ',' << trace[i].alpha << ','
           << (trace[i].aborted ? 1 : 0) << '\n';
    }
}

double moving_average(const std::vector<EpisodeStat>& trace, int window) {
    if (trace.empty()) return 0.0;
    const int n = std::min<int>(window, static_cast<int>(trace.size()));
    double sum = 0.0;
    for (int i = static_cast<int>(trace.size()) - n; i < static_cast<int>(trace.size()); ++i) {
        sum += trace[i].total_reward;
    }
    return sum / n;
}

int first_positive_episode(const std::vector<EpisodeStat>& trace) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace[i].total_reward > 0.0) return static_cast<int>(i);
    }
    return -1;
}

} // namespace tbw
