#include "incluse/inclusion.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace incluse {

uint64_t stream_seed(uint64_t seed, uint64_t index) {
    // splitmix64 over the pair
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<Vec2> eval_F(const SetValuedField& F, const Vec2& x) {
    std::vector<Vec2> v = F.eval(x);
    if (v.empty())
        throw std::runtime_error("eval_F: empty vertex list");
    return v;
}

namespace {

Vec2 pick_velocity(const std::vector<Vec2>& verts, const SelectionStrategy& s,
                   std::mt19937_64& rng) {
    switch (s.kind) {
    case SelectionStrategy::Kind::fixed_vertex:
        return verts[static_cast<size_t>(s.vertex_index) % verts.size()];
    case SelectionStrategy::Kind::extremal_direction: {
        Vec2 best = verts[0];
        double bd = best.dot(s.direction);
        for (const Vec2& v : verts) {
            double d = v.dot(s.direction);
            if (d > bd) { bd = d; best = v; }
        }
        return best;
    }
    case SelectionStrategy::Kind::random_convex: {
        // symmetric Dirichlet(1) convex weights via normalized Exp(1) draws
        std::exponential_distribution<double> ex(1.0);
        std::vector<double> w(verts.size());
        double sum = 0.0;
        for (double& wi : w) { wi = ex(rng); sum += wi; }
        Vec2 v{0, 0};
        for (size_t i = 0; i < verts.size(); ++i) v += verts[i] * (w[i] / sum);
        return v;
    }
    }
    return verts[0];
}

Vec2 pick_perturbation(const SelectionStrategy& s, std::mt19937_64& rng) {
    switch (s.perturb) {
    case SelectionStrategy::Perturb::none:
        return {0, 0};
    case SelectionStrategy::Perturb::fixed:
        return s.perturb_dir;
    case SelectionStrategy::Perturb::random: {
        // uniform sample of the unit ball
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double theta = 2.0 * M_PI * u(rng);
        double r = std::sqrt(u(rng));
        return r * unit_dir(theta);
    }
    }
    return {0, 0};
}

} // namespace

Trajectory integrate(const SetValuedField& F, const Margin& eps, const Window& win,
                     const Vec2& x0, const SelectionStrategy& strat, double dt,
                     double horizon, Direction dir) {
    if (dt <= 0.0)
        throw std::invalid_argument("integrate: dt must be positive");
    if (horizon < dt)
        throw std::invalid_argument("integrate: horizon shorter than one step");
    if (!win.contains(x0))
        throw std::invalid_argument("integrate: x0 outside window");

    std::mt19937_64 rng(strat.seed);
    int n = static_cast<int>(std::ceil(horizon / dt - 1e-12));
    Trajectory tr;
    tr.direction = dir;
    tr.times.reserve(static_cast<size_t>(n) + 1);
    tr.states.reserve(static_cast<size_t>(n) + 1);
    tr.times.push_back(0.0);
    tr.states.push_back(x0);

    Vec2 x = x0;
    double sgn = dir == Direction::forward ? 1.0 : -1.0;
    for (int k = 0; k < n; ++k) {
        std::vector<Vec2> verts = eval_F(F, x);
        Vec2 v = pick_velocity(verts, strat, rng) * sgn;
        v += eps.eval(x) * pick_perturbation(strat, rng);
        Vec2 nx = x + dt * v;
        if (!win.contains(nx)) {
            tr.truncated = true;
            break;
        }
        x = nx;
        tr.times.push_back(tr.times.back() + dt);
        tr.states.push_back(x);
    }
    return tr;
}

SolutionBundle bundle(const SetValuedField& F, const Margin& eps, const Window& win,
                      const Vec2& x0, int n_random, double dt, double horizon,
                      Direction dir, uint64_t seed) {
    if (n_random < 0)
        throw std::invalid_argument("bundle: n_random must be nonnegative");
    SolutionBundle b;
    b.origin = x0;
    b.horizon = horizon;
    b.dt = dt;

    size_t nv = eval_F(F, x0).size();
    const Vec2 axes[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (size_t i = 0; i < nv; ++i) {
        b.trajectories.push_back(integrate(
            F, eps, win, x0, SelectionStrategy::vertex(static_cast<int>(i)), dt, horizon, dir));
        for (const Vec2& a : axes)
            b.trajectories.push_back(integrate(
                F, eps, win, x0,
                SelectionStrategy::vertex(static_cast<int>(i), SelectionStrategy::Perturb::fixed, a),
                dt, horizon, dir));
    }
    for (int r = 0; r < n_random; ++r)
        b.trajectories.push_back(integrate(
            F, eps, win, x0,
            SelectionStrategy::random(stream_seed(seed, static_cast<uint64_t>(r))),
            dt, horizon, dir));
    return b;
}

std::vector<Vec2> minkowski_vertices(const SetValuedField& F, const Margin& eps,
                                     const Vec2& x, int m) {
    if (m < 8)
        throw std::invalid_argument("minkowski_vertices: need at least 8 ball directions");
    std::vector<Vec2> verts = eval_F(F, x);
    double e = eps.eval(x);
    std::vector<Vec2> out;
    out.reserve(verts.size() * static_cast<size_t>(m));
    if (e == 0.0) return verts;
    for (const Vec2& v : verts)
        for (int j = 0; j < m; ++j)
            out.push_back(v + e * unit_dir(2.0 * M_PI * j / m));
    return out;
}

double max_speed(const SetValuedField& F, const Margin& eps, const Window& win) {
    double vmax = 0.0;
    for (int c = 0; c < win.cell_count(); ++c) {
        Vec2 p = win.center(c);
        double e = eps.eval(p);
        for (const Vec2& v : eval_F(F, p))
            vmax = std::max(vmax, v.norm() + e);
    }
    return vmax;
}

SetValuedField field_example1() {
    return {[](const Vec2& x) -> std::vector<Vec2> {
                if (x.y < 0.0) return {{0, 1}};
                return {{0, 1}, {-1, 0}};
            },
            std::nullopt};
}

SetValuedField field_linear() {
    return {[](const Vec2& x) -> std::vector<Vec2> { return {-x}; }, 1.0};
}

SetValuedField field_constant(Vec2 v) {
    return {[v](const Vec2&) -> std::vector<Vec2> { return {v}; }, 0.0};
}

SetValuedField field_polytope(std::vector<Vec2> verts) {
    if (verts.empty())
        throw std::invalid_argument("field_polytope: empty vertex list");
    return {[verts](const Vec2&) { return verts; }, 0.0};
}

} // namespace incluse
