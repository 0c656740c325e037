#ifndef INCLUSE_REACHABILITY_HPP
#define INCLUSE_REACHABILITY_HPP

#include "incluse/inclusion.hpp"
#include "incluse/region.hpp"

namespace incluse {

struct ReachConfig {
    double dt = 0.0;        // integration step for finite-horizon ops
    int max_steps = 0;      // propagation-wave budget
    int directions_m = 16;  // ball discretization
    bool stop_when_stable = true;

    void validate() const;
};

/// dt = h/(2*v_max), max_steps sized to cross the window several times.
ReachConfig default_reach_config(const SetValuedField& F, const Margin& eps,
                                 const Window& win);

struct ReachResult {
    Region region;
    bool converged = false;
    int steps_used = 0;
    bool edge_truncated = false;
};

/// Over-approximation of the set reached from x within time |t| (backward
/// when t < 0): frontier of sample points expanded by all Minkowski
/// directions per step, positions deduplicated on a quarter-cell lattice.
Region reach_tube(const SetValuedField& F, const Margin& eps, const Window& win,
                  const Vec2& x, double t, const ReachConfig& cfg);

/// Final states only: extremal selections along directions_m unit vectors,
/// each with the matching fixed perturbation, grid-snapped at time |t|.
Region reach_final_slice(const SetValuedField& F, const Margin& eps, const Window& win,
                         const Vec2& x, double t, const ReachConfig& cfg);

/// Infinite-horizon reachable set from X0 under F + eps*ball: cell
/// fixed-point where each cell marks every cell lying within an admissible
/// velocity cone (vertex/edge samples of conv F widened by eps) out to an
/// adaptive ray length.
ReachResult reach_set_infinite(const SetValuedField& F, const Margin& eps_bar,
                               const Region& X0, const ReachConfig& cfg);

/// reach_set_infinite from inflate(K, rho_o) under margin eps1.
ReachResult reach_inflate(const SetValuedField& F, const Region& K,
                          const ScalarField& rho_o, const Margin& eps1,
                          const ReachConfig& cfg);

} // namespace incluse

#endif
