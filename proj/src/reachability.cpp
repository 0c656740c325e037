#include "incluse/reachability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace incluse {

void ReachConfig::validate() const {
    if (dt <= 0.0)
        throw std::invalid_argument("ReachConfig: dt must be positive");
    if (max_steps < 1)
        throw std::invalid_argument("ReachConfig: max_steps must be at least 1");
    if (directions_m < 8)
        throw std::invalid_argument("ReachConfig: need at least 8 ball directions");
}

ReachConfig default_reach_config(const SetValuedField& F, const Margin& eps,
                                 const Window& win) {
    ReachConfig cfg;
    double vmax = max_speed(F, eps, win);
    cfg.dt = vmax > 0.0 ? win.h / (2.0 * vmax) : 1.0;
    cfg.max_steps = 4 * (win.nx + win.ny);
    return cfg;
}

namespace {

double angdiff(double a, double b) {
    double d = std::fmod(a - b + M_PI, 2.0 * M_PI);
    if (d < 0) d += 2.0 * M_PI;
    return std::abs(d - M_PI);
}

// Velocity samples covering conv(F(p)): vertices plus interior points of
// each vertex pair, so cones between vertices are not missed.
std::vector<Vec2> velocity_samples(const SetValuedField& F, const Vec2& p) {
    std::vector<Vec2> verts = eval_F(F, p);
    std::vector<Vec2> out = verts;
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j)
            for (double a : {0.25, 0.5, 0.75})
                out.push_back(verts[i] * (1.0 - a) + verts[j] * a);
    return out;
}

} // namespace

Region reach_tube(const SetValuedField& F, const Margin& eps, const Window& win,
                  const Vec2& x, double t, const ReachConfig& cfg) {
    cfg.validate();
    if (!win.contains(x))
        throw std::invalid_argument("reach_tube: x outside window");
    bool backward = t < 0.0;
    double T = std::abs(t);
    int n = static_cast<int>(std::ceil(T / cfg.dt - 1e-12));
    n = std::min(n, cfg.max_steps);

    double q = win.h / 4.0;
    auto key = [&](const Vec2& p) {
        int64_t kx = static_cast<int64_t>(std::llround((p.x - win.lo.x) / q));
        int64_t ky = static_cast<int64_t>(std::llround((p.y - win.lo.y) / q));
        return (kx << 32) ^ ky;
    };

    std::vector<uint8_t> occ(static_cast<size_t>(win.cell_count()), 0);
    std::unordered_set<int64_t> seen;
    std::vector<Vec2> frontier{x}, next;
    seen.insert(key(x));
    occ[static_cast<size_t>(win.cell_of(x))] = 1;

    for (int step = 0; step < n && !frontier.empty(); ++step) {
        next.clear();
        for (const Vec2& p : frontier) {
            bool continued = false;
            for (Vec2 u : minkowski_vertices(F, eps, p, cfg.directions_m)) {
                if (backward) u = -u;
                Vec2 np = p + cfg.dt * u;
                if (!win.contains(np)) continue;
                int64_t k = key(np);
                if (seen.insert(k).second) {
                    occ[static_cast<size_t>(win.cell_of(np))] = 1;
                    next.push_back(np);
                } else if (!continued && k == key(p) && (np - p).norm2() > 0.0) {
                    // step smaller than the dedup lattice: keep creeping
                    next.push_back(np);
                    continued = true;
                }
            }
        }
        frontier.swap(next);
    }
    return Region::from_occupancy(win, std::move(occ));
}

Region reach_final_slice(const SetValuedField& F, const Margin& eps, const Window& win,
                         const Vec2& x, double t, const ReachConfig& cfg) {
    cfg.validate();
    if (!win.contains(x))
        throw std::invalid_argument("reach_final_slice: x outside window");
    Direction dir = t >= 0.0 ? Direction::forward : Direction::backward;
    double T = std::abs(t);

    std::vector<uint8_t> occ(static_cast<size_t>(win.cell_count()), 0);
    if (T < cfg.dt) {
        occ[static_cast<size_t>(win.cell_of(x))] = 1;
        return Region::from_occupancy(win, std::move(occ));
    }
    for (int j = 0; j < cfg.directions_m; ++j) {
        Vec2 d = unit_dir(2.0 * M_PI * j / cfg.directions_m);
        auto tr = integrate(F, eps, win, x, SelectionStrategy::extremal(d), cfg.dt, T, dir);
        occ[static_cast<size_t>(win.cell_of(tr.back()))] = 1;
    }
    return Region::from_occupancy(win, std::move(occ));
}

ReachResult reach_set_infinite(const SetValuedField& F, const Margin& eps_bar,
                               const Region& X0, const ReachConfig& cfg) {
    cfg.validate();
    if (X0.empty())
        throw std::invalid_argument("reach_set_infinite: X0 is empty");
    const Window& win = X0.window();
    double h = win.h;
    double Lmax = 8.0 * h;

    std::vector<uint8_t> occ(X0.occupancy());
    std::vector<int> wave, next_wave;
    for (int c = 0; c < win.cell_count(); ++c)
        if (occ[static_cast<size_t>(c)]) wave.push_back(c);

    auto try_mark = [&](int i, int j) -> bool {
        int idx = win.index(i, j);
        if (occ[static_cast<size_t>(idx)]) return false;
        occ[static_cast<size_t>(idx)] = 1;
        next_wave.push_back(idx);
        return true;
    };

    int steps = 0;
    bool converged = false;
    while (steps < cfg.max_steps) {
        if (wave.empty()) { converged = true; break; }
        next_wave.clear();
        for (int c : wave) {
            int ci = c % win.nx, cj = c / win.nx;
            Vec2 p = win.center(ci, cj);
            double e = eps_bar.eval(p);
            for (const Vec2& w : velocity_samples(F, p)) {
                double s = w.norm();
                bool flood = s <= e;
                double alpha = 0.0, theta = 0.0, L = 1.5 * h;
                if (!flood) {
                    alpha = std::asin(std::min(1.0, e / s));
                    theta = std::atan2(w.y, w.x);
                    double ta = std::tan(alpha);
                    // narrow cones need longer rays to beat angular quantization
                    L = ta > 0.0 ? std::clamp(h / ta, 1.5 * h, Lmax) : Lmax;
                }
                int rc = static_cast<int>(std::ceil(L / h)) + 1;
                for (int dj = -rc; dj <= rc; ++dj)
                    for (int di = -rc; di <= rc; ++di) {
                        if (di == 0 && dj == 0) continue;
                        int ii = ci + di, jj = cj + dj;
                        if (ii < 0 || ii >= win.nx || jj < 0 || jj >= win.ny) continue;
                        Vec2 off = win.center(ii, jj) - p;
                        double dist = off.norm();
                        if (dist > L) continue;
                        if (!flood) {
                            double tol = std::asin(std::min(1.0, 0.71 * h / dist));
                            if (angdiff(std::atan2(off.y, off.x), theta) > alpha + tol)
                                continue;
                        }
                        try_mark(ii, jj);
                    }
            }
        }
        wave.swap(next_wave);
        ++steps;
        if (wave.empty()) { converged = true; break; }
        if (!cfg.stop_when_stable && steps >= cfg.max_steps) break;
    }

    ReachResult res;
    res.region = Region::from_occupancy(win, std::move(occ));
    res.converged = converged;
    res.steps_used = steps;
    res.edge_truncated = res.region.edge_flag();
    return res;
}

ReachResult reach_inflate(const SetValuedField& F, const Region& K,
                          const ScalarField& rho_o, const Margin& eps1,
                          const ReachConfig& cfg) {
    return reach_set_infinite(F, eps1, inflate(K, rho_o), cfg);
}

} // namespace incluse
