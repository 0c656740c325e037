#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "incluse/reachability.hpp"

using namespace incluse;

namespace {

Window win2(int n = 128) { return Window({-2, -2}, {2, 2}, n, n); }

Region disk(const Window& w, double radius, Vec2 c = {0, 0}) {
    return Region::from_sdf(w, [=](const Vec2& p) { return (p - c).norm() - radius; });
}

double seg_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double t = std::clamp((p - a).dot(ab) / ab.norm2(), 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

} // namespace

TEST_CASE("config validation") {
    ReachConfig cfg;
    CHECK_THROWS(cfg.validate());
    cfg.dt = 0.01;
    cfg.max_steps = 10;
    cfg.directions_m = 4;
    CHECK_THROWS(cfg.validate());
    cfg.directions_m = 16;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("tube of a constant flow is a segment") {
    Window w = win2();
    auto F = field_constant({1, 0});
    auto cfg = default_reach_config(F, Margin::constant(1e-9), w);
    Region tube = reach_tube(F, Margin::constant(1e-9), w, {0, 0}, 1.0, cfg);
    for (int c = 0; c < w.cell_count(); ++c)
        if (tube.occupied(c))
            CHECK(seg_dist(w.center(c), {0, 0}, {1, 0}) <= 2.0 * w.h);
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0})
        CHECK(tube.contains({s, 0}));
}

TEST_CASE("tube of a pure perturbation ball is a disk") {
    Window w = win2();
    auto F = field_constant({0, 0});
    Margin eps = Margin::constant(0.5);
    auto cfg = default_reach_config(F, eps, w);
    Region tube = reach_tube(F, eps, w, {0, 0}, 1.0, cfg);
    for (int c = 0; c < w.cell_count(); ++c) {
        double r = w.center(c).norm();
        if (tube.occupied(c)) CHECK(r <= 0.5 + 2.0 * w.h);
        if (r <= 0.5 - 2.5 * w.h) CHECK(tube.occupied(c));
    }
}

TEST_CASE("tube of the contracting linear flow is a radial segment") {
    Window w = win2();
    auto F = field_linear();
    auto cfg = default_reach_config(F, Margin::constant(1e-9), w);
    Region tube = reach_tube(F, Margin::constant(1e-9), w, {1, 0}, 1.0, cfg);
    double e1 = std::exp(-1.0);
    for (int c = 0; c < w.cell_count(); ++c)
        if (tube.occupied(c))
            CHECK(seg_dist(w.center(c), {e1, 0}, {1, 0}) <= 2.0 * w.h + 2.0 * cfg.dt);
    CHECK(tube.contains({1, 0}));
    CHECK(tube.contains({e1 + 2 * w.h, 0}));
}

TEST_CASE("tube is monotone in horizon") {
    Window w = win2(64);
    auto F = field_constant({0.3, 0.2});
    Margin eps = Margin::constant(0.1);
    auto cfg = default_reach_config(F, eps, w);
    Region a = reach_tube(F, eps, w, {0, 0}, 0.5, cfg);
    Region b = reach_tube(F, eps, w, {0, 0}, 1.0, cfg);
    CHECK(subset_of(a, b));
}

TEST_CASE("final slice keeps only the last states") {
    Window w = win2();
    auto Fc = field_constant({1, 0});
    auto cfg = default_reach_config(Fc, Margin::constant(1e-9), w);
    Region s = reach_final_slice(Fc, Margin::constant(1e-9), w, {0, 0}, 1.0, cfg);
    for (int c = 0; c < w.cell_count(); ++c)
        if (s.occupied(c)) CHECK((w.center(c) - Vec2{1, 0}).norm() <= 1.5 * w.h);
    CHECK(s.cell_count() >= 1);

    auto F0 = field_constant({0, 0});
    Margin eps = Margin::constant(0.5);
    auto cfg0 = default_reach_config(F0, eps, w);
    Region ring = reach_final_slice(F0, eps, w, {0, 0}, 1.0, cfg0);
    CHECK(!ring.contains({0, 0})); // annulus, not disk
    for (int c = 0; c < w.cell_count(); ++c)
        if (ring.occupied(c))
            CHECK(std::abs(w.center(c).norm() - 0.5) <= 1.5 * w.h);

    Region self = reach_final_slice(F0, eps, w, {0.4, -0.3}, 0.0, cfg0);
    CHECK(self.cell_count() == 1);
    CHECK(self.contains({0.4, -0.3}));
}

TEST_CASE("final slice is contained in the tube") {
    Window w = win2(64);
    auto F = field_constant({0, 0});
    Margin eps = Margin::constant(0.5);
    auto cfg = default_reach_config(F, eps, w);
    Region tube = reach_tube(F, eps, w, {0, 0}, 1.0, cfg);
    Region slice = reach_final_slice(F, eps, w, {0, 0}, 1.0, cfg);
    for (int j = 0; j < w.ny; ++j)
        for (int i = 0; i < w.nx; ++i) {
            if (!slice.occupied(i, j)) continue;
            bool near = false;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    int ii = i + di, jj = j + dj;
                    if (ii >= 0 && ii < w.nx && jj >= 0 && jj < w.ny && tube.occupied(ii, jj))
                        near = true;
                }
            CHECK(near);
        }
}

TEST_CASE("infinite-horizon reach of a one-way strip hits the window edge") {
    Window w({-1, -1}, {1, 1}, 64, 64);
    auto F = field_constant({1, 0});
    Margin eps = Margin::constant(0.25);
    Region x0 = Region::from_sdf(w, [](const Vec2& p) {
        return std::max({-p.x, p.x - 0.1, std::abs(p.y) - 0.05});
    });
    auto cfg = default_reach_config(F, eps, w);
    auto res = reach_set_infinite(F, eps, x0, cfg);
    CHECK(res.converged);
    CHECK(res.edge_truncated);
    for (double s = 0.0; s < 1.0; s += 0.05)
        CHECK(res.region.contains({s, 0}));
    double max_x = -2, min_x = 2;
    for (int c = 0; c < w.cell_count(); ++c)
        if (res.region.occupied(c)) {
            max_x = std::max(max_x, res.region.window().center(c).x);
            min_x = std::min(min_x, res.region.window().center(c).x);
        }
    CHECK(max_x >= 1.0 - 1.5 * w.h);
    CHECK(min_x >= -2.5 * w.h); // never flows backward
}

TEST_CASE("contracting field pins the reachable set to its seed") {
    Window w = win2();
    auto F = field_linear();
    Margin eps = Margin::constant(0.1);
    Region x0 = disk(w, 0.5);
    auto cfg = default_reach_config(F, eps, w);
    auto res = reach_set_infinite(F, eps, x0, cfg);
    CHECK(res.converged);
    CHECK(!res.edge_truncated);
    CHECK(subset_of(x0, res.region));
    for (int c = 0; c < w.cell_count(); ++c) {
        double r = w.center(c).norm();
        if (res.region.occupied(c)) CHECK(r <= 0.5 + 2.0 * w.h);
    }
}

TEST_CASE("pure perturbation floods the window") {
    Window w({-1, -1}, {1, 1}, 64, 64);
    auto F = field_constant({0, 0});
    Margin eps = Margin::constant(0.3);
    auto cfg = default_reach_config(F, eps, w);
    auto res = reach_set_infinite(F, eps, disk(w, 0.1), cfg);
    CHECK(res.converged);
    CHECK(res.edge_truncated);
    CHECK(res.region.cell_count() == w.cell_count());
}

TEST_CASE("reach is monotone in the margin") {
    Window w = win2();
    auto F = field_linear();
    Region x0 = disk(w, 0.5);
    auto cfg = default_reach_config(F, Margin::constant(0.1), w);
    auto small = reach_set_infinite(F, Margin::constant(0.05), x0, cfg);
    auto large = reach_set_infinite(F, Margin::constant(0.1), x0, cfg);
    CHECK(subset_of(small.region, large.region));
}

TEST_CASE("reach result is a fixed point") {
    Window w = win2();
    auto F = field_linear();
    Margin eps = Margin::constant(0.1);
    auto cfg = default_reach_config(F, eps, w);
    auto res = reach_set_infinite(F, eps, disk(w, 0.5), cfg);
    auto again = reach_set_infinite(F, eps, res.region, cfg);
    CHECK(cells_added(res.region, again.region) == 0);
}

TEST_CASE("bundle trajectories stay inside the reachable set") {
    Window w = win2();
    auto F = field_linear();
    Margin eps = Margin::constant(0.1);
    auto cfg = default_reach_config(F, eps, w);
    auto res = reach_set_infinite(F, eps, disk(w, 0.5), cfg);
    for (Vec2 x0 : {Vec2{0.45, 0}, Vec2{0, -0.3}, Vec2{-0.3, 0.3}}) {
        auto b = bundle(F, eps, w, x0, 16, cfg.dt, 3.0, Direction::forward, 5);
        for (const auto& tr : b.trajectories)
            for (const Vec2& p : tr.states)
                CHECK(res.region.signed_distance(p) <= 1.5 * w.h);
    }
}

TEST_CASE("reach of an inflated set under a small margin stays close") {
    Window w = win2();
    auto F = field_linear();
    Region k = disk(w, 0.5);
    auto cfg = default_reach_config(F, Margin::constant(0.01), w);
    auto res = reach_inflate(F, k, ScalarField(w, w.h), Margin::constant(0.01), cfg);
    CHECK(subset_of(inflate(k, ScalarField(w, w.h)), res.region));
    for (int c = 0; c < w.cell_count(); ++c)
        if (res.region.occupied(c)) CHECK(w.center(c).norm() <= 0.5 + 3.0 * w.h);
    // nested-run check: a small inflation reach sits inside a coarse offset
    CHECK(subset_of(res.region, inflate(k, 5.0 * w.h)));
}
