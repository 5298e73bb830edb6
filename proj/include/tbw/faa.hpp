#pragma once

#include <vector>

#include "tbw/environment.hpp"
#include "tbw/qlearning.hpp"

namespace tbw {

struct FaaOptions {
    // Evaluate each cell Gaussian at its center (the descriptive reading);
    // true anchors it at the cell's upper edge (the literal formula).
    bool edge_anchored = false;
    // Default: the +-10 rad catch-all bins never enter the weighted sum.
    // Inside the fine region the blend runs over the fine cells; outside it
    // the controller falls back to the discrete greedy action of the
    // containing cell, because blending against the catch-alls (sigma ~5 rad,
    // mostly unvisited rows voting the tie-break deflection) destabilizes
    // recovery. false = literal all-cell blend everywhere.
    bool exclude_outer = true;
    double fine_limit = 0.024; // rad
};

// Gaussian membership grid over the trained MDP table: per-cell centers,
// half-width sigmas and cached greedy deflections.
class MembershipGrid {
  public:
    MembershipGrid(const Discretizer& disc, const QTable& table, const ActionGrid& grid,
                   const FaaOptions& options = {});

    // product of the two per-axis Gaussians for cell (i, j)
    double membership(double err, double q, int i, int j) const;

    // membership-weighted average of per-cell greedy deflections, in
    // [-0.25, 0.25] by construction
    double action(double err, double q) const;

    const FaaOptions& options() const { return options_; }
    double greedy_deflection(int i, int j) const { return greedy_[i * rate_bins_ + j]; }

  private:
    FaaOptions options_;
    int err_bins_ = 0;
    int rate_bins_ = 0;
    std::vector<double> theta_edges_, rate_edges_;
    std::vector<double> err_centers_, err_sigmas_, err_anchors_;
    std::vector<double> rate_centers_, rate_sigmas_, rate_anchors_;
    std::vector<double> greedy_; // cached greedy deflection per cell
};

// FAA evaluation against a table that is still changing (training-time use);
// recomputes the per-cell argmax instead of caching it.
double faa_action_dynamic(const QTable& table, const Discretizer& disc, const ActionGrid& grid,
                          double err, double q, const FaaOptions& options = {});

} // namespace tbw
