#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "incluse/certify.hpp"

using namespace incluse;

namespace {

Window win64() { return Window({-2, -2}, {2, 2}, 64, 64); }

Region disk(const Window& w, Vec2 c, double r) {
    return Region::from_sdf(w, [c, r](const Vec2& p) { return (p - c).norm() - r; });
}

} // namespace

TEST_CASE("boundary samples of a disk sit on the circle with radial normals") {
    Window w({-2, -2}, {2, 2}, 256, 256);
    Region K = disk(w, {0.1, -0.2}, 0.7);
    BoundarySampleSet bs = BoundarySampleSet::from_region(K);
    CHECK(bs.points.size() > 100);
    REQUIRE(bs.points.size() == bs.normals.size());
    for (size_t k = 0; k < bs.points.size(); ++k) {
        Vec2 d = bs.points[k] - Vec2{0.1, -0.2};
        CHECK(std::abs(d.norm() - 0.7) <= 0.25 * w.h); // sub-cell
        CHECK(d.normalized().dot(bs.normals[k]) > 0.99);
    }
    BoundarySampleSet sub = BoundarySampleSet::from_region(K, 50);
    CHECK(sub.points.size() == 50);
}

TEST_CASE("candidate check on a closed-form ball barrier") {
    Window w = win64();
    ScalarField B(w);
    for (int c = 0; c < w.cell_count(); ++c) B[c] = w.center(c).norm2() - 1.0;
    Region X0 = disk(w, {0, 0}, 0.5);
    Region Xu = Region::from_sdf(w, [](const Vec2& p) { return 1.5 - p.norm(); });
    CandidateVerdict cv = check_candidate(B, X0, Xu);
    CHECK(cv.v.pass);
    CHECK(cv.max_B_X0 < 0.0);
    CHECK(cv.max_B_X0 == doctest::Approx(-0.75).epsilon(0.2));
    CHECK(cv.min_B_Xu > 0.0);
    CHECK(cv.min_B_Xu == doctest::Approx(1.25).epsilon(0.2));
}

TEST_CASE("identically zero field is not a candidate") {
    Window w = win64();
    ScalarField B(w, 0.0);
    Region X0 = disk(w, {0, 0}, 0.5);
    Region Xu = disk(w, {1.5, 1.5}, 0.3);
    CandidateVerdict cv = check_candidate(B, X0, Xu);
    CHECK_FALSE(cv.v.pass);
}

TEST_CASE("boundary rate on a linear barrier matches the closed form") {
    Window w({-2, -2}, {2, 2}, 256, 256);
    Mollifier M = Mollifier::gauss_legendre();
    Vec2 a{1.5, -0.5};
    BarrierField lin(w, BarrierField::Kind::extended);
    for (int c = 0; c < w.cell_count(); ++c) lin.values[c] = a.dot(w.center(c));
    SmoothBarrier B = smooth_barrier(lin, ScalarField(w, 0.05), M);

    Region K = disk(w, {0, 0}, 0.8);
    BoundarySampleSet bs = BoundarySampleSet::from_region(K, 100);
    Vec2 v{-0.4, 0.6};
    SetValuedField F = field_constant(v);
    Verdict strict = check_C3(B, F, bs, C3Mode::strict_negative, 0.1);
    CHECK(strict.value == doctest::Approx(a.dot(v)).epsilon(1e-5));
    CHECK(strict.pass == (a.dot(v) <= -0.1));

    Margin eps = Margin::constant(0.2);
    Verdict withmargin = check_C3(B, F, bs, C3Mode::strict_negative, 0.1, &eps);
    CHECK(withmargin.value == doctest::Approx(a.dot(v) + 0.2 * a.norm()).epsilon(1e-5));
}

TEST_CASE("rate-one mode needs slope at least one") {
    Window w({-2, -2}, {2, 2}, 256, 256);
    Mollifier M = Mollifier::gauss_legendre();
    SetValuedField F = field_constant({1.0, 0.0});
    Region K = Region::from_sdf(w, [](const Vec2& p) { return p.x; }); // left half
    BoundarySampleSet bs = BoundarySampleSet::from_region(K, 100);
    for (double slope : {0.5, 1.5}) {
        BarrierField bf(w, BarrierField::Kind::extended);
        for (int c = 0; c < w.cell_count(); ++c) bf.values[c] = -slope * w.center(c).x;
        SmoothBarrier B = smooth_barrier(bf, ScalarField(w, 0.05), M);
        Verdict v = check_C3(B, F, bs, C3Mode::rate_one, 0.1);
        CHECK(v.value == doctest::Approx(-slope).epsilon(1e-5));
        CHECK(v.pass == (slope >= 0.9));
    }
}

TEST_CASE("decrease audit accepts a unit-rate ramp and rejects a constant") {
    Window w = win64();
    Region U1 = Region::from_sdf(w, [](const Vec2& p) {
        return std::max(std::abs(p.x) - 1.5, std::abs(p.y) - 0.5);
    });
    SetValuedField F = field_constant({1.0, 0.0});
    Margin eps = Margin::constant(1e-3);

    BarrierField ramp(w, BarrierField::Kind::extended);
    for (int c = 0; c < w.cell_count(); ++c) ramp.values[c] = -w.center(c).x;
    C2Verdict ok = check_C2(ramp, F, eps, U1, 20, 0.01, 1.0, 0.05, 3);
    CHECK(ok.v.pass);
    CHECK(ok.v.value <= 0.05);
    CHECK(ok.starts_used == 20);

    BarrierField flat(w, BarrierField::Kind::extended);
    C2Verdict bad = check_C2(flat, F, eps, U1, 20, 0.01, 1.0, 0.05, 3);
    CHECK_FALSE(bad.v.pass);
    CHECK(bad.v.value > 0.5); // slack accrues at rate one
}

TEST_CASE("half-plane invariance margins match the velocity geometry") {
    Window w({-3, -1.5}, {1, 2.5}, 128, 128);
    HalfSpace upper({0, 1}, 0.0);
    SetValuedField F = field_example1();

    Verdict good = check_invariance_tangent(upper, F, Margin::constant(0.5), w, 200, 1024, 9);
    CHECK(good.pass);
    CHECK(good.value == doctest::Approx(0.5).epsilon(1e-9));

    Verdict bad = check_invariance_tangent(upper, F, Margin::constant(1.5), w, 200, 1024, 9);
    CHECK_FALSE(bad.pass);
    CHECK(bad.value == doctest::Approx(-0.5).epsilon(1e-9));

    // drifting field cannot hold the line
    Verdict drift =
        check_invariance_tangent(upper, field_constant({1, 0}), Margin::constant(0.1), w, 50, 64, 0);
    CHECK_FALSE(drift.pass);
    CHECK(drift.value == doctest::Approx(-0.1).epsilon(1e-9));
}

TEST_CASE("separation verdict bands") {
    Window w({-2, -2}, {2, 2}, 128, 128);
    double h = w.h;
    Region K = disk(w, {0, 0}, 0.5);
    Verdict far = check_separation(K, disk(w, {1.5, 0}, 0.3));
    CHECK(far.pass);
    CHECK(far.value == doctest::Approx(0.7).epsilon(0.1));

    Verdict touching = check_separation(K, disk(w, {0.9, 0}, 0.5));
    CHECK_FALSE(touching.pass);
    CHECK_FALSE(touching.unresolved);

    Verdict close = check_separation(K, disk(w, {0.5 + 0.3 + 1.2 * h, 0}, 0.3));
    CHECK(close.unresolved);
    CHECK_FALSE(close.pass);
}

TEST_CASE("simulated safety tracks the closest approach") {
    Window w = win64();
    SetValuedField F = field_linear(); // contracts to the origin
    Margin eps = Margin::constant(0.05);
    Region X0 = disk(w, {0, 0}, 0.4);
    Region far = Region::from_sdf(w, [](const Vec2& p) { return 1.6 - p.norm(); });
    SafetyVerdict safe = simulate_safety(F, eps, X0, far, 50, 3.0, 0.01, 11);
    CHECK(safe.v.pass);
    CHECK(safe.closest_approach == doctest::Approx(1.2).epsilon(0.1));

    Region overlapping = disk(w, {0.1, 0}, 0.2);
    SafetyVerdict unsafe = simulate_safety(F, eps, X0, overlapping, 50, 3.0, 0.01, 11);
    CHECK_FALSE(unsafe.v.pass);
    CHECK(unsafe.closest_approach <= 0.0);
}

static const char* kSmall = R"(
[window]
lo = [-2.0, -2.0]
hi = [2.0, 2.0]
cells = 64

[field]
name = "linear"

[margins]
eps_bar = 0.1
eps1 = 0.06
eps2 = 0.05

[sets]
x0 = { shape = "disk", center = [0.0, 0.0], radius = 0.3 }
xu = { shape = "outside_disk", center = [0.0, 0.0], radius = 1.8 }

[numerics]
seed = 5
band_cells = 4
uhat_cells = 2
c2_starts = 20
boundary_samples = 60
safety_solutions = 20
safety_horizon = 2.0
)";

TEST_CASE("pipeline on a coarse contracting scenario") {
    Scenario sc = parse_scenario_text(kSmall, "small");
    PipelineResult pr = certify_pipeline(sc);
    const CertificateReport& r = pr.report;

    // geometry: reach set stays close to the initial disk
    CHECK(subset_of(sc.X0, pr.K_bar));
    CHECK(subset_of(pr.K_bar, pr.K_delta));
    CHECK(subset_of(pr.K_bar, pr.K_prime));
    CHECK(subset_of(pr.Uhat1, pr.U1));
    CHECK_FALSE(pr.K_bar.contains({0.8, 0.0}));

    CHECK(r.candidate.v.pass);
    CHECK(r.separation.pass);
    CHECK(r.separation.value == doctest::Approx(1.5).epsilon(0.05));
    CHECK(r.safety.v.pass);
    CHECK(r.consistency.pass);
    CHECK_FALSE(r.invariance_applicable);
    CHECK(r.scenario_hash_value == scenario_hash(sc));
}

TEST_CASE("pipeline is deterministic for a fixed scenario and seed") {
    Scenario sc = parse_scenario_text(kSmall, "small");
    PipelineResult a = certify_pipeline(sc);
    PipelineResult b = certify_pipeline(sc);
    CHECK(a.BK.values.data() == b.BK.values.data());
    CHECK(a.B.field.values.data() == b.B.field.values.data());
    CHECK(a.B.gx.data() == b.B.gx.data());
    CHECK(a.report.candidate.v.value == b.report.candidate.v.value);
    CHECK(a.report.c2.v.value == b.report.c2.v.value);
    CHECK(a.report.c3.value == b.report.c3.value);
    CHECK(a.report.separation.value == b.report.separation.value);
    CHECK(a.report.safety.closest_approach == b.report.safety.closest_approach);
}
