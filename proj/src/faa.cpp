#include "tbw/faa.hpp"

#include <cmath>
#include <limits>

namespace tbw {

namespace {

struct Axis {
    std::vector<double> centers, sigmas, anchors;
};

Axis build_axis(const std::vector<double>& edges) {
    Axis ax;
    const int bins = static_cast<int>(edges.size()) - 1;
    ax.centers.resize(bins);
    ax.sigmas.resize(bins);
    ax.anchors.resize(bins);
    for (int i = 0; i < bins; ++i) {
        ax.centers[i] = 0.5 * (edges[i] + edges[i + 1]);
        ax.sigmas[i] = 0.5 * (edges[i + 1] - edges[i]);
        ax.anchors[i] = edges[i + 1];
    }
    return ax;
}

inline double gaussian(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z);
}

inline double log_gaussian(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return -0.5 * z * z;
}

// Weighted average of greedy deflections over cells [i0,i1) x [j0,j1).
// Weights are normalized by the largest log-weight so far-from-grid queries
// cannot underflow the sum to 0/0; the ratio is unchanged.
template <typename GreedyFn>
double weighted_action(const Axis& e, const Axis& r, const FaaOptions& opt, double err, double q,
                       int i0, int i1, int j0, int j1, GreedyFn greedy) {
    double max_lw = -std::numeric_limits<double>::infinity();
    for (int i = i0; i < i1; ++i) {
        const double le =
            log_gaussian(err, opt.edge_anchored ? e.anchors[i] : e.centers[i], e.sigmas[i]);
        for (int j = j0; j < j1; ++j) {
            const double lw =
                le + log_gaussian(q, opt.edge_anchored ? r.anchors[j] : r.centers[j], r.sigmas[j]);
            if (lw > max_lw) max_lw = lw;
        }
    }
    double num = 0.0, den = 0.0;
    for (int i = i0; i < i1; ++i) {
        const double le =
            log_gaussian(err, opt.edge_anchored ? e.anchors[i] : e.centers[i], e.sigmas[i]);
        for (int j = j0; j < j1; ++j) {
            const double lw =
                le + log_gaussian(q, opt.edge_anchored ? r.anchors[j] : r.centers[j], r.sigmas[j]);
            const double w = std::exp(lw - max_lw);
            num += w * greedy(i, j);
            den += w;
        }
    }
    return num / den;
}

} // namespace

MembershipGrid::MembershipGrid(const Discretizer& disc, const QTable& table,
                               const ActionGrid& grid, const FaaOptions& options)
    : options_(options), err_bins_(disc.err_bins()), rate_bins_(disc.rate_bins()) {
    if (table.mode() != ObsMode::Mdp) {
        throw NumericalError("MembershipGrid: fuzzy action assignment needs an MDP table");
    }
    if (table.err_bins() != err_bins_ || table.rate_bins() != rate_bins_) {
        throw NumericalError("MembershipGrid: table shape does not match discretizer");
    }
    theta_edges_ = disc.theta_edges;
    rate_edges_ = disc.rate_edges;
    Axis e = build_axis(disc.theta_edges);
    Axis r = build_axis(disc.rate_edges);
    err_centers_ = std::move(e.centers);
    err_sigmas_ = std::move(e.sigmas);
    err_anchors_ = std::move(e.anchors);
    rate_centers_ = std::move(r.centers);
    rate_sigmas_ = std::move(r.sigmas);
    rate_anchors_ = std::move(r.anchors);

    greedy_.resize(static_cast<std::size_t>(err_bins_) * rate_bins_);
    for (int i = 0; i < err_bins_; ++i) {
        for (int j = 0; j < rate_bins_; ++j) {
            greedy_[i * rate_bins_ + j] = grid.value(table.argmax_action(i, j));
        }
    }
}

double MembershipGrid::membership(double err, double q, int i, int j) const {
    const double mu_e = options_.edge_anchored ? err_anchors_[i] : err_centers_[i];
    const double mu_r = options_.edge_anchored ? rate_anchors_[j] : rate_centers_[j];
    return gaussian(err, mu_e, err_sigmas_[i]) * gaussian(q, mu_r, rate_sigmas_[j]);
}

double MembershipGrid::action(double err, double q) const {
    const Axis e{err_centers_, err_sigmas_, err_anchors_};
    const Axis r{rate_centers_, rate_sigmas_, rate_anchors_};
    const auto greedy = [&](int i, int j) { return greedy_[i * rate_bins_ + j]; };
    if (!options_.exclude_outer) {
        return weighted_action(e, r, options_, err, q, 0, err_bins_, 0, rate_bins_, greedy);
    }
    if (std::abs(err) <= options_.fine_limit) {
        return weighted_action(e, r, options_, err, q, 1, err_bins_ - 1, 1, rate_bins_ - 1,
                               greedy);
    }
    // outside the fine region: discrete greedy of the containing cell
    return greedy_[bin_index(theta_edges_, err) * rate_bins_ + bin_index(rate_edges_, q)];
}

double faa_action_dynamic(const QTable& table, const Discretizer& disc, const ActionGrid& grid,
                          double err, double q, const FaaOptions& options) {
    if (table.mode() != ObsMode::Mdp) {
        throw NumericalError("faa_action_dynamic: fuzzy action assignment needs an MDP table");
    }
    const Axis e = build_axis(disc.theta_edges);
    const Axis r = build_axis(disc.rate_edges);
    const int eb = disc.err_bins(), rb = disc.rate_bins();
    const auto greedy = [&](int i, int j) { return grid.value(table.argmax_action(i, j)); };
    if (!options.exclude_outer) {
        return weighted_action(e, r, options, err, q, 0, eb, 0, rb, greedy);
    }
    if (std::abs(err) <= options.fine_limit) {
        return weighted_action(e, r, options, err, q, 1, eb - 1, 1, rb - 1, greedy);
    }
    return greedy(bin_index(disc.theta_edges, err), bin_index(disc.rate_edges, q));
}

} // namespace tbw
