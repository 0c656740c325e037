#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "incluse/region.hpp"

using namespace incluse;

namespace {

Window win4() { return Window({-2, -2}, {2, 2}, 256, 256); }
Window win8() { return Window({-4, -4}, {4, 4}, 512, 512); }

Region disk(const Window& w, double radius, Vec2 c = {0, 0}) {
    return Region::from_sdf(w, [=](const Vec2& p) { return (p - c).norm() - radius; });
}

Region upper_half_plane(const Window& w) {
    return Region::from_sdf(w, [](const Vec2& p) { return -p.y; });
}

} // namespace

TEST_CASE("window validates geometry") {
    CHECK_THROWS(Window({1, 0}, {0, 1}, 4, 4));
    CHECK_THROWS(Window({0, 0}, {1, 1}, 0, 4));
    CHECK_THROWS(Window({0, 0}, {2, 1}, 4, 4)); // non-uniform cell edge
    Window w({0, 0}, {2, 1}, 8, 4);
    CHECK(w.h == doctest::Approx(0.25));
    Vec2 c = w.center(0, 0);
    CHECK(c.x == doctest::Approx(0.125));
    CHECK(c.y == doctest::Approx(0.125));
}

TEST_CASE("signed distance matches analytic values") {
    Window w = win4();
    Region d = disk(w, 1.0);
    CHECK(d.signed_distance({1.99, 0}) == doctest::Approx(0.99).epsilon(0.02));
    CHECK(d.signed_distance({0, 0}) == doctest::Approx(-1.0).epsilon(0.02));

    Window w8 = win8();
    Region hp = upper_half_plane(w8);
    CHECK(hp.signed_distance({3, -0.5}) == doctest::Approx(0.5).epsilon(0.02));
    CHECK_THROWS(hp.signed_distance({5, 0}));
}

TEST_CASE("signed distance of occupancy-built region tracks the interface") {
    Window w = win4();
    Region exact = disk(w, 1.0);
    Region rebuilt = Region::from_occupancy(w, exact.occupancy());
    double h = w.h;
    for (Vec2 p : {Vec2{1.5, 0}, Vec2{0, -1.7}, Vec2{0.3, 0.2}, Vec2{-0.9, 0.9}}) {
        double got = rebuilt.signed_distance(p);
        double want = p.norm() - 1.0;
        CHECK(std::abs(got - want) <= 1.5 * h);
    }
    // sign/occupancy consistency away from the interface
    for (int c = 0; c < w.cell_count(); ++c) {
        double s = rebuilt.sdist_field()[c];
        if (std::abs(s) > h)
            CHECK((s <= 0.0) == rebuilt.occupied(c));
    }
}

TEST_CASE("projection returns nearest boundary points") {
    Window w = win8();
    Region hp = upper_half_plane(w);
    double h = w.h;

    auto pr = hp.project({3, -0.5});
    CHECK(!pr.empty());
    bool has_foot = false;
    for (const Vec2& y : pr) {
        CHECK(std::abs(y.y) <= h);
        CHECK(std::abs(y.x - 3.0) <= 0.25);
        if (std::abs(y.x - 3.0) <= h) has_foot = true;
    }
    CHECK(has_foot);

    auto inside = hp.project({0.2, 0.3});
    REQUIRE(inside.size() == 1);
    CHECK(inside[0] == Vec2{0.2, 0.3});

    CHECK_THROWS(Region::from_sdf(w, [](const Vec2&) { return 1.0; }).project({0, 0}));
}

TEST_CASE("projection onto annulus complement finds both sides") {
    Window w = win4();
    Region r = Region::from_sdf(w, [](const Vec2& p) {
        double rad = p.norm();
        double to_inner = rad - 0.5, to_outer = 1.5 - rad;
        if (to_inner > 0 && to_outer > 0) return std::min(to_inner, to_outer);
        return -std::min(std::abs(to_inner), std::abs(to_outer));
    });
    auto pr = r.project({1, 0});
    bool inner = false, outer = false;
    for (const Vec2& y : pr) {
        if (y.norm() < 0.7) inner = true;
        if (y.norm() > 1.3) outer = true;
    }
    CHECK(inner);
    CHECK(outer);
}

TEST_CASE("projection optimality against brute force") {
    Window w = win4();
    Region d = disk(w, 1.0);
    double tau = 1.5 * w.h;
    for (Vec2 x : {Vec2{1.7, 0.3}, Vec2{-1.2, -1.2}, Vec2{0.1, 1.9}}) {
        double dist = d.distance_to_boundary(x);
        for (const Vec2& y : d.project(x))
            CHECK((x - y).norm() <= dist + tau);
        // analytic distance to the unit circle
        CHECK(std::abs(dist - std::abs(x.norm() - 1.0)) <= w.h);
    }
}

TEST_CASE("projection map is closed at grid scale") {
    Window w = win4();
    Region d = disk(w, 1.0);
    Vec2 x{1.6, 0.0};
    auto limit = d.project(x);
    for (int i = 1; i <= 4; ++i) {
        Vec2 xi = x + Vec2{0.0, 0.3 / (i * i)};
        for (const Vec2& y : d.project(xi, 0.25 * w.h)) {
            double best = 1e300;
            for (const Vec2& z : limit) best = std::min(best, (y - z).norm());
            if (i == 4) CHECK(best <= 3.0 * w.h);
        }
    }
}

TEST_CASE("inflation reproduces Minkowski sums") {
    Window w = win4();
    Region d = disk(w, 1.0);
    double h = w.h;

    Region big = inflate(d, 0.5);
    for (int c = 0; c < w.cell_count(); ++c) {
        double r = w.center(c).norm();
        if (r <= 1.5 - 1.5 * h) CHECK(big.occupied(c));
        if (r >= 1.5 + 1.5 * h) CHECK(!big.occupied(c));
    }

    Region tiny = inflate(d, 0.5 * h);
    CHECK(subset_of(d, tiny));
    // sub-cell inflation grows at most one cell ring
    for (int j = 0; j < w.ny; ++j)
        for (int i = 0; i < w.nx; ++i) {
            if (!tiny.occupied(i, j) || d.occupied(i, j)) continue;
            bool adjacent = false;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    int ii = i + di, jj = j + dj;
                    if (ii >= 0 && ii < w.nx && jj >= 0 && jj < w.ny && d.occupied(ii, jj))
                        adjacent = true;
                }
            CHECK(adjacent);
        }

    Window w8 = win8();
    Region hp = upper_half_plane(w8);
    Region off = inflate(hp, 0.25);
    for (Vec2 p : {Vec2{1, -0.2}, Vec2{-2, -0.24}})
        CHECK(off.contains(p));
    CHECK(!off.contains({0, -0.3}));

    CHECK_THROWS(inflate(d, ScalarField(w, 0.0)));
}

TEST_CASE("inflation is monotone in the radius field") {
    Window w = win4();
    Region d = disk(w, 0.6);
    ScalarField d1(w, 0.1), d2(w, 0.1);
    for (int c = 0; c < w.cell_count(); ++c)
        d2[c] += 0.1 * std::abs(std::sin(0.37 * c));
    CHECK(subset_of(inflate(d, d1), inflate(d, d2)));
}

TEST_CASE("boundary bands") {
    Window w = win4();
    Region d = disk(w, 1.0);
    double h = w.h;
    Region band = boundary_band(d, 0.2);
    for (int c = 0; c < w.cell_count(); ++c) {
        double r = w.center(c).norm();
        bool in_annulus = r >= 0.8 && r <= 1.2;
        if (std::abs(r - 0.8) > 1.5 * h && std::abs(r - 1.2) > 1.5 * h)
            CHECK(band.occupied(c) == in_annulus);
    }
    CHECK_THROWS(boundary_band(d, h));
    CHECK_THROWS(boundary_band(Region::from_sdf(w, [](const Vec2&) { return -1.0; }), 0.2));

    Window w8 = win8();
    Region hp = upper_half_plane(w8);
    Region slab = boundary_band(hp, 0.3);
    CHECK(slab.contains({2, 0.25}));
    CHECK(slab.contains({-1, -0.25}));
    CHECK(!slab.contains({0, 0.5}));
}

TEST_CASE("interior margin field") {
    Window w = win4();
    Region k = disk(w, 1.0);
    Region u = disk(w, 2.0 - w.h); // keep off the window edge
    ScalarField delta = margin_inside(k, u);
    int ci, cj;
    w.cell_coords({0, 0}, ci, cj);
    CHECK(delta.at(ci, cj) == doctest::Approx(0.5 * (2.0 - w.h)).epsilon(0.05));
    w.cell_coords({0.99, 0}, ci, cj); // near the K boundary: half of the 1.0 gap
    CHECK(delta.at(ci, cj) == doctest::Approx(0.5).epsilon(0.05));
    CHECK(subset_of(inflate(k, delta), u));

    // clip floor: shallow nesting yields delta == h
    Region u2 = upper_half_plane(win8());
    Region k2 = Region::from_sdf(win8(), [&](const Vec2& p) { return -(p.y - 1.5 * win8().h); });
    ScalarField d2 = margin_inside(k2, u2);
    int floor_cells = 0;
    for (int c = 0; c < win8().cell_count(); ++c)
        if (k2.occupied(c) && win8().center(c).y <= 2.0 * win8().h) {
            CHECK(d2[c] == doctest::Approx(win8().h));
            ++floor_cells;
        }
    CHECK(floor_cells > 0);

    CHECK_THROWS(margin_inside(disk(w, 1.999), u)); // touches the boundary
}

TEST_CASE("half-space tangent cone") {
    HalfSpace h({0, 1}, 0.0);
    auto cone = h.tangent_cone({3, 0}, 1e-9);
    CHECK(cone({0, 1}));
    CHECK(cone({-1, 0}));
    CHECK(!cone({0, -0.1}));
    CHECK_THROWS(h.tangent_cone({3, 1}, 1e-9));
    CHECK_THROWS(HalfSpace({0, 0}, 1.0));
}

TEST_CASE("edge flag marks window truncation") {
    Window w = win4();
    CHECK(!disk(w, 1.0).edge_flag());
    CHECK(disk(w, 3.0).edge_flag());
}
