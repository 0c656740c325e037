#ifndef INCLUSE_BARRIER_HPP
#define INCLUSE_BARRIER_HPP

#include <optional>

#include "incluse/inclusion.hpp"
#include "incluse/region.hpp"

namespace incluse {

/// Scalar certificate field with per-cell horizon-clip flags.
struct BarrierField {
    enum class Kind { time_to_impact, extended, shifted, smoothed };

    ScalarField values;
    std::vector<uint8_t> clip;
    Kind kind = Kind::time_to_impact;

    BarrierField() = default;
    BarrierField(const Window& w, Kind k)
        : values(w), clip(static_cast<size_t>(w.cell_count()), 0), kind(k) {}

    const Window& window() const { return values.window(); }
    double sample(const Vec2& p) const { return values.sample(p); }
    bool clipped(int idx) const { return clip[static_cast<size_t>(idx)] != 0; }
    bool any_clipped() const {
        for (uint8_t c : clip)
            if (c) return true;
        return false;
    }
};

struct ImpactQuery {
    double dt = 0.0;
    double horizon = 0.0;
    int n_random = 8;
    uint64_t seed = 0;

    void validate() const;
};

/// horizon = 4 * band_width / eps2_min — generous for slow flows.
ImpactQuery default_impact_query(double band_width, double eps2_min, double dt);

/// Smallest |t| at which the trajectory's signed distance to K changes
/// sign, located by linear interpolation between steps; negative for
/// backward trajectories; nullopt if no crossing.
std::optional<double> first_impact_time(const Trajectory& traj, const Region& K);

struct ImpactValue {
    double value = 0.0;
    bool clipped = false; // some trajectory never crossed within the horizon
};

/// Time-to-impact at x: sup of first impacts over a forward bundle outside
/// K, inf over a backward bundle inside, 0 on the boundary. Non-impacting
/// trajectories contribute +/- horizon and set the clip flag.
ImpactValue time_to_impact(const Vec2& x, const Region& K, const SetValuedField& F,
                           const Margin& eps2, const ImpactQuery& q);

/// time_to_impact evaluated at every U1 cell center (0 elsewhere),
/// deterministic per (seed, cell index).
BarrierField barrier_on_band(const Region& K, const Region& U1, const SetValuedField& F,
                             const Margin& eps2, const ImpactQuery& q);

/// Extension to the window: cells outside U1 take inf (inside K) or sup
/// (outside K) of the band values over their projection onto U1.
BarrierField extend_barrier(const BarrierField& bhat, const Region& U1, const Region& K);

/// B(x + rho2(x) v) by bilinear lookup.
BarrierField shifted_barrier(const BarrierField& BK, const ScalarField& rho2, const Vec2& v);

/// Raw shift radius 0.9 * min(eps2, rho_o) per cell (smoothed downstream).
ScalarField shift_radius(const Margin& eps2, const ScalarField& rho_o);

struct DecreaseProfile {
    // per trajectory: (t, B) samples restricted to U1
    std::vector<std::vector<std::pair<double, double>>> series;
    double worst_slack = 0.0; // max over in-band intervals of B(t') - B(t) + (t' - t)
    bool empty = true;
};

/// Rate-1 decrease audit of B along bundle trajectories inside U1.
DecreaseProfile decrease_profile(const BarrierField& B, const SolutionBundle& bundle,
                                 const Region& U1);

} // namespace incluse

#endif
