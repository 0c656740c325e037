#include "incluse/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace incluse {

void ImpactQuery::validate() const {
    if (dt <= 0.0)
        throw std::invalid_argument("ImpactQuery: dt must be positive");
    if (horizon <= 0.0)
        throw std::invalid_argument("ImpactQuery: horizon must be positive");
    if (n_random < 0)
        throw std::invalid_argument("ImpactQuery: n_random must be nonnegative");
}

ImpactQuery default_impact_query(double band_width, double eps2_min, double dt) {
    ImpactQuery q;
    q.dt = dt;
    q.horizon = 4.0 * band_width / eps2_min;
    return q;
}

std::optional<double> first_impact_time(const Trajectory& traj, const Region& K) {
    double sgn = traj.direction == Direction::forward ? 1.0 : -1.0;
    double prev = K.signed_distance(traj.states.front());
    if (prev == 0.0) return 0.0;
    for (size_t k = 1; k < traj.states.size(); ++k) {
        double cur = K.signed_distance(traj.states[k]);
        if (cur == 0.0) return sgn * traj.times[k];
        if ((prev < 0.0) != (cur < 0.0)) {
            double frac = prev / (prev - cur);
            double t = traj.times[k - 1] + frac * (traj.times[k] - traj.times[k - 1]);
            return sgn * t;
        }
        prev = cur;
    }
    return std::nullopt;
}

namespace {

// Impact bundles use eight compass perturbation directions: the sup/inf
// over first-impact times is sensitive to the extreme perturbations, and
// four axes alone bias it by a few percent.
std::vector<Trajectory> impact_bundle(const SetValuedField& F, const Margin& eps,
                                      const Window& win, const Vec2& x,
                                      const ImpactQuery& q, Direction dir) {
    std::vector<Trajectory> out;
    size_t nv = eval_F(F, x).size();
    for (size_t i = 0; i < nv; ++i) {
        out.push_back(integrate(F, eps, win, x, SelectionStrategy::vertex(static_cast<int>(i)),
                                q.dt, q.horizon, dir));
        for (int j = 0; j < 8; ++j) {
            Vec2 d = unit_dir(2.0 * M_PI * j / 8.0);
            out.push_back(integrate(
                F, eps, win, x,
                SelectionStrategy::vertex(static_cast<int>(i), SelectionStrategy::Perturb::fixed, d),
                q.dt, q.horizon, dir));
        }
    }
    for (int r = 0; r < q.n_random; ++r)
        out.push_back(integrate(F, eps, win, x,
                                SelectionStrategy::random(stream_seed(q.seed, static_cast<uint64_t>(r))),
                                q.dt, q.horizon, dir));
    return out;
}

} // namespace

ImpactValue time_to_impact(const Vec2& x, const Region& K, const SetValuedField& F,
                           const Margin& eps2, const ImpactQuery& q) {
    q.validate();
    const Window& win = K.window();
    double s = K.signed_distance(x);
    if (s == 0.0) return {0.0, false};

    bool exterior = s > 0.0;
    Direction dir = exterior ? Direction::forward : Direction::backward;
    auto trajs = impact_bundle(F, eps2, win, x, q, dir);
    if (trajs.empty())
        throw std::runtime_error("time_to_impact: empty bundle");

    ImpactValue out;
    out.value = exterior ? -1e300 : 1e300;
    for (const Trajectory& tr : trajs) {
        std::optional<double> t = first_impact_time(tr, K);
        double v;
        if (t) {
            v = *t;
        } else {
            v = exterior ? q.horizon : -q.horizon;
            out.clipped = true;
        }
        out.value = exterior ? std::max(out.value, v) : std::min(out.value, v);
    }
    return out;
}

BarrierField barrier_on_band(const Region& K, const Region& U1, const SetValuedField& F,
                             const Margin& eps2, const ImpactQuery& q) {
    const Window& win = K.window();
    if (!U1.window().same_grid(win))
        throw std::invalid_argument("barrier_on_band: grid mismatch");
    BarrierField b(win, BarrierField::Kind::time_to_impact);
    for (int c = 0; c < win.cell_count(); ++c) {
        if (!U1.occupied(c)) continue;
        ImpactQuery qc = q;
        qc.seed = stream_seed(q.seed, static_cast<uint64_t>(c));
        ImpactValue v = time_to_impact(win.center(c), K, F, eps2, qc);
        b.values[c] = v.value;
        b.clip[static_cast<size_t>(c)] = v.clipped ? 1 : 0;
    }
    return b;
}

BarrierField extend_barrier(const BarrierField& bhat, const Region& U1, const Region& K) {
    const Window& win = bhat.window();
    if (!U1.window().same_grid(win) || !K.window().same_grid(win))
        throw std::invalid_argument("extend_barrier: grid mismatch");
    BarrierField out(win, BarrierField::Kind::extended);
    out.values = bhat.values;
    out.clip = bhat.clip;
    for (int c = 0; c < win.cell_count(); ++c) {
        if (U1.occupied(c)) continue;
        Vec2 p = win.center(c);
        if (std::abs(K.sdist_field()[c]) <= 0.5 * win.h) {
            out.values[c] = 0.0;
            continue;
        }
        auto pr = U1.project(p);
        if (pr.empty())
            throw std::runtime_error("extend_barrier: projection failed");
        bool inside = K.occupied(c);
        double v = inside ? 1e300 : -1e300;
        bool clipped = false;
        for (const Vec2& y : pr) {
            // y sits on the band interface where bilinear interpolation would
            // blend in the zeros stored outside U1; use the nearest band cell.
            int yi, yj;
            win.cell_coords(y, yi, yj);
            int best = -1;
            double bd = 1e300;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    int i = yi + di, j = yj + dj;
                    if (i < 0 || i >= win.nx || j < 0 || j >= win.ny) continue;
                    int cc = win.index(i, j);
                    if (!U1.occupied(cc)) continue;
                    double d = (win.center(cc) - y).norm2();
                    if (d < bd) {
                        bd = d;
                        best = cc;
                    }
                }
            if (best < 0) continue;
            double by = bhat.values[best];
            v = inside ? std::min(v, by) : std::max(v, by);
            if (bhat.clipped(best)) clipped = true;
        }
        if (std::abs(v) == 1e300)
            throw std::runtime_error("extend_barrier: projection misses the band");
        out.values[c] = v;
        out.clip[static_cast<size_t>(c)] = clipped ? 1 : 0;
    }
    return out;
}

BarrierField shifted_barrier(const BarrierField& BK, const ScalarField& rho2, const Vec2& v) {
    const Window& win = BK.window();
    if (!rho2.window().same_grid(win))
        throw std::invalid_argument("shifted_barrier: grid mismatch");
    BarrierField out(win, BarrierField::Kind::shifted);
    for (int c = 0; c < win.cell_count(); ++c) {
        Vec2 p = win.center(c) + rho2[c] * v;
        bool off = !win.contains(p);
        out.values[c] = BK.sample(p); // sample clamps to the window
        out.clip[static_cast<size_t>(c)] =
            (off || BK.clipped(win.cell_of(p)) || BK.clipped(c)) ? 1 : 0;
    }
    return out;
}

ScalarField shift_radius(const Margin& eps2, const ScalarField& rho_o) {
    const Window& win = rho_o.window();
    ScalarField out(win);
    for (int c = 0; c < win.cell_count(); ++c)
        out[c] = 0.9 * std::min(eps2.eval(win.center(c)), rho_o[c]);
    return out;
}

DecreaseProfile decrease_profile(const BarrierField& B, const SolutionBundle& bundle,
                                 const Region& U1) {
    DecreaseProfile prof;
    const Window& win = B.window();
    // Sampled values are trustworthy only where the whole bilinear stencil
    // lies inside the band; edge samples blend in extension values.
    auto in_band = [&](const Vec2& p) {
        if (!U1.contains(p)) return false;
        int i0 = static_cast<int>(std::floor((p.x - win.lo.x) / win.h - 0.5));
        int j0 = static_cast<int>(std::floor((p.y - win.lo.y) / win.h - 0.5));
        for (int dj = 0; dj <= 1; ++dj)
            for (int di = 0; di <= 1; ++di) {
                int i = std::clamp(i0 + di, 0, win.nx - 1);
                int j = std::clamp(j0 + dj, 0, win.ny - 1);
                if (!U1.occupied(i, j)) return false;
            }
        return true;
    };
    for (const Trajectory& tr : bundle.trajectories) {
        std::vector<std::pair<double, double>> s;
        double run = 0.0; // Kadane over per-interval slacks within one in-band run
        double prev_t = 0.0, prev_b = 0.0;
        bool in_run = false;
        for (size_t k = 0; k < tr.states.size(); ++k) {
            if (!in_band(tr.states[k])) {
                in_run = false;
                continue;
            }
            double t = tr.times[k];
            double b = B.sample(tr.states[k]);
            s.emplace_back(t, b);
            if (in_run) {
                double slack = (b - prev_b) + (t - prev_t);
                run = std::max(run + slack, slack);
                prof.worst_slack = std::max(prof.worst_slack, run);
                prof.empty = false;
            } else {
                run = 0.0;
            }
            prev_t = t;
            prev_b = b;
            in_run = true;
        }
        prof.series.push_back(std::move(s));
    }
    return prof;
}

} // namespace incluse
