#include "incluse/certify.hpp"

#include <algorithm>
#include <cmath>

#include "incluse/barrier.hpp"

namespace incluse {

namespace {

bool fails(const Verdict& v) { return !v.pass && !v.unresolved && !v.untested; }

// Evenly strided selection of k indices out of n (all of them when k >= n).
std::vector<int> strided(int n, int k) {
    std::vector<int> out;
    if (n <= 0 || k <= 0) return out;
    if (k >= n) {
        for (int i = 0; i < n; ++i) out.push_back(i);
        return out;
    }
    for (int i = 0; i < k; ++i)
        out.push_back(static_cast<int>((static_cast<int64_t>(i) * n) / k));
    return out;
}

} // namespace

BoundarySampleSet BoundarySampleSet::from_region(const Region& K, int max_samples) {
    BoundarySampleSet out;
    const Window& w = K.window();
    const ScalarField& sd = K.sdist_field();
    auto add_crossing = [&](const Vec2& a, const Vec2& b, double fa, double fb) {
        double t = fa / (fa - fb);
        Vec2 p = a + t * (b - a);
        Vec2 g = sd.sample_gradient(p);
        if (g.norm() < 1e-12) g = (fb - fa) * (b - a).normalized();
        out.points.push_back(p);
        out.normals.push_back(g.normalized());
    };
    for (int j = 0; j < w.ny; ++j)
        for (int i = 0; i < w.nx; ++i) {
            double f0 = sd.at(i, j);
            if (i + 1 < w.nx) {
                double f1 = sd.at(i + 1, j);
                if (f0 * f1 < 0.0)
                    add_crossing(w.center(i, j), w.center(i + 1, j), f0, f1);
            }
            if (j + 1 < w.ny) {
                double f1 = sd.at(i, j + 1);
                if (f0 * f1 < 0.0)
                    add_crossing(w.center(i, j), w.center(i, j + 1), f0, f1);
            }
        }
    if (max_samples > 0 && static_cast<int>(out.points.size()) > max_samples) {
        BoundarySampleSet sub;
        for (int k : strided(static_cast<int>(out.points.size()), max_samples)) {
            sub.points.push_back(out.points[static_cast<size_t>(k)]);
            sub.normals.push_back(out.normals[static_cast<size_t>(k)]);
        }
        out = sub;
    }
    return out;
}

CandidateVerdict check_candidate(const ScalarField& B, const Region& X0, const Region& Xu) {
    CandidateVerdict cv;
    const Window& w = B.window();
    double mx = -1e300, mn = 1e300;
    for (int c = 0; c < w.cell_count(); ++c) {
        if (X0.occupied(c)) mx = std::max(mx, B[c]);
        if (Xu.occupied(c)) mn = std::min(mn, B[c]);
    }
    cv.max_B_X0 = mx;
    cv.min_B_Xu = mn;
    cv.v.value = std::max(mx, -mn);
    cv.v.pass = cv.v.value < 0.0;
    cv.v.note = "negative on the initial set, positive on the unsafe set";
    return cv;
}

Verdict check_C3(const SmoothBarrier& B, const SetValuedField& F,
                 const BoundarySampleSet& samples, C3Mode mode, double tol_c3,
                 const Margin* eps) {
    Verdict v;
    v.tol = tol_c3;
    if (samples.points.empty()) {
        v.untested = true;
        v.note = "no boundary samples";
        return v;
    }
    double worst = -1e300;
    for (size_t k = 0; k < samples.points.size(); ++k) {
        const Vec2& y = samples.points[k];
        Vec2 g = B.sample_gradient(y);
        double best = -1e300;
        for (const Vec2& vel : eval_F(F, y)) best = std::max(best, g.dot(vel));
        if (eps) best += eps->eval(y) * g.norm();
        worst = std::max(worst, best);
    }
    v.value = worst;
    double bound = mode == C3Mode::rate_one ? -1.0 + tol_c3 : -tol_c3;
    v.pass = worst <= bound;
    v.note = mode == C3Mode::rate_one ? "worst boundary rate vs -1" : "worst boundary rate vs 0";
    return v;
}

C2Verdict check_C2(const BarrierField& B, const SetValuedField& F, const Margin& eps,
                   const Region& U1, int n_start, double dt, double horizon, double tol,
                   uint64_t seed) {
    C2Verdict cv;
    cv.v.tol = tol;
    const Window& w = B.window();
    std::vector<int> band_cells;
    for (int c = 0; c < w.cell_count(); ++c) {
        if (U1.occupied(c)) {
            band_cells.push_back(c);
            if (B.clipped(c)) ++cv.clipped_cells;
        }
    }
    if (band_cells.empty() || n_start <= 0) {
        cv.v.untested = true;
        cv.v.note = "no band cells to start from";
        return cv;
    }
    double worst = -1e300;
    bool any = false;
    for (int k : strided(static_cast<int>(band_cells.size()), n_start)) {
        int c = band_cells[static_cast<size_t>(k)];
        SolutionBundle bnd = bundle(F, eps, w, w.center(c), 4, dt, horizon,
                                    Direction::forward, stream_seed(seed, static_cast<uint64_t>(c)));
        DecreaseProfile prof = decrease_profile(B, bnd, U1);
        ++cv.starts_used;
        if (!prof.empty) {
            any = true;
            worst = std::max(worst, prof.worst_slack);
        }
    }
    if (!any) {
        cv.v.unresolved = true;
        cv.v.note = "no trajectory segment stayed inside the band";
        return cv;
    }
    cv.v.value = worst;
    cv.v.pass = worst <= tol;
    cv.v.note = "worst in-band slack of B(t') - B(t) + (t' - t)";
    return cv;
}

Verdict check_invariance_tangent(const HalfSpace& H, const SetValuedField& F,
                                 const Margin& eps, const Window& win, int n_samples,
                                 int m_directions, uint64_t seed) {
    Verdict v;
    if (n_samples <= 0) {
        v.untested = true;
        return v;
    }
    // Segment of the boundary line <n, x> = offset inside the window.
    Vec2 n = H.normal;
    Vec2 t{-n.y, n.x};
    Vec2 p0 = H.offset * n;
    double smin = -1e300, smax = 1e300;
    auto clip = [&](double a, double b, double lo, double hi) {
        // a + s*b in [lo, hi]
        if (std::abs(b) < 1e-15) {
            if (a < lo || a > hi) smin = 1e300; // line misses the window
            return;
        }
        double s0 = (lo - a) / b, s1 = (hi - a) / b;
        if (s0 > s1) std::swap(s0, s1);
        smin = std::max(smin, s0);
        smax = std::min(smax, s1);
    };
    clip(p0.x, t.x, win.lo.x, win.hi.x);
    clip(p0.y, t.y, win.lo.y, win.hi.y);
    if (smin >= smax) {
        v.untested = true;
        v.note = "boundary line does not meet the window";
        return v;
    }
    double pad = 1e-2 * (smax - smin);
    smin += pad;
    smax -= pad;

    (void)seed;
    int m = std::max(8, m_directions);
    // Anchor the fan at -n so the adversarial direction is hit exactly.
    double phase = std::atan2(-n.y, -n.x);
    double worst = 1e300;
    for (int k = 0; k < n_samples; ++k) {
        double s = n_samples == 1 ? 0.5 * (smin + smax)
                                  : smin + (smax - smin) * k / (n_samples - 1.0);
        Vec2 y = p0 + s * t;
        double e = eps.eval(y);
        double best_vertex = -1e300;
        for (const Vec2& vel : eval_F(F, y)) best_vertex = std::max(best_vertex, n.dot(vel));
        // Adversarial perturbation direction, best selection per direction.
        double margin = 1e300;
        for (int d = 0; d < m; ++d) {
            double a = phase + 2.0 * M_PI * d / m;
            Vec2 b{std::cos(a), std::sin(a)};
            margin = std::min(margin, best_vertex + e * n.dot(b));
        }
        worst = std::min(worst, margin);
    }
    v.value = worst;
    v.pass = worst >= 0.0;
    v.note = "min over boundary samples of the inward velocity margin";
    return v;
}

Verdict check_separation(const Region& K, const Region& Xu) {
    Verdict v;
    const Window& w = K.window();
    double h = w.h;
    double mn = 1e300;
    const ScalarField& sd = Xu.sdist_field();
    for (int c = 0; c < w.cell_count(); ++c)
        if (K.occupied(c)) mn = std::min(mn, sd[c]);
    v.value = mn;
    v.tol = 2.0 * h;
    if (mn > 2.0 * h) {
        v.pass = true;
    } else if (mn > 0.0) {
        v.unresolved = true;
        v.note = "gap below grid resolution";
    } else {
        v.note = "reachable set touches the unsafe set";
    }
    return v;
}

SafetyVerdict simulate_safety(const SetValuedField& F, const Margin& eps, const Region& X0,
                              const Region& Xu, int n_solutions, double horizon, double dt,
                              uint64_t seed) {
    SafetyVerdict sv;
    const Window& w = X0.window();
    std::vector<int> starts;
    for (int c = 0; c < w.cell_count(); ++c)
        if (X0.occupied(c)) starts.push_back(c);
    if (starts.empty() || n_solutions <= 0) {
        sv.v.untested = true;
        return sv;
    }
    const ScalarField& sd = Xu.sdist_field();
    double closest = 1e300;
    uint64_t i = 0;
    for (int k : strided(static_cast<int>(starts.size()), n_solutions)) {
        Vec2 x0 = w.center(starts[static_cast<size_t>(k)]);
        Trajectory traj = integrate(F, eps, w, x0, SelectionStrategy::random(stream_seed(seed, i++)),
                                    dt, horizon, Direction::forward);
        for (const Vec2& s : traj.states)
            if (w.contains(s)) closest = std::min(closest, sd.sample(s));
    }
    sv.closest_approach = closest;
    sv.v.value = closest;
    sv.v.pass = closest > 0.0;
    sv.v.note = "closest signed distance of sampled solutions to the unsafe set";
    return sv;
}

bool CertificateReport::all_pass() const {
    return !fails(candidate.v) && !candidate.v.unresolved && !fails(c2.v) && !c2.v.unresolved &&
           !fails(c3) && !c3.unresolved &&
           (!invariance_applicable || (!fails(invariance) && !invariance.unresolved)) &&
           !fails(separation) && !separation.unresolved &&
           (!safety_applicable || (!fails(safety.v) && !safety.v.unresolved)) &&
           !fails(consistency) && !consistency.unresolved;
}

bool CertificateReport::any_unresolved() const {
    return candidate.v.unresolved || c2.v.unresolved || c3.unresolved ||
           (invariance_applicable && invariance.unresolved) || separation.unresolved ||
           (safety_applicable && safety.v.unresolved) || consistency.unresolved;
}

PipelineResult certify_pipeline(const Scenario& sc, PipelineStage upto) {
    sc.validate();
    const Window& win = sc.window;
    double h = win.h;
    Margin eps_bar = Margin::constant(sc.eps_bar);
    Margin eps1 = Margin::constant(sc.eps1);
    Margin eps2 = Margin::constant(sc.eps2);

    ReachConfig cfg = default_reach_config(sc.field, eps_bar, win);
    cfg.directions_m = sc.num.directions_m;
    if (sc.num.dt > 0.0) cfg.dt = sc.num.dt;
    cfg.validate();

    PipelineResult pr;
    pr.dt = cfg.dt;
    pr.report.candidate.v.untested = true;
    pr.report.c2.v.untested = true;
    pr.report.c3.untested = true;
    pr.report.invariance.untested = true;
    pr.report.separation.untested = true;
    pr.report.safety.v.untested = true;
    pr.report.consistency.untested = true;

    ReachResult rbar = reach_set_infinite(sc.field, eps_bar, sc.X0, cfg);
    pr.K_bar = rbar.region;
    pr.reach_converged = rbar.converged;
    pr.reach_steps = rbar.steps_used;
    pr.reach_edge_truncated = rbar.edge_truncated;
    pr.K_delta = inflate(pr.K_bar, sc.num.delta_cells * h);

    ScalarField rho_o(win, sc.num.rho_o_cells * h);
    ReachResult rprime = reach_inflate(sc.field, pr.K_bar, rho_o, eps1, cfg);
    pr.K_prime = rprime.region;

    pr.report.seed = sc.num.seed;
    pr.report.scenario_hash_value = scenario_hash(sc);
    pr.report.edge_caveat = rbar.edge_truncated || rprime.edge_truncated || pr.K_bar.edge_flag();
    if (upto == PipelineStage::reach) return pr;

    pr.band_width = sc.num.band_cells * h;
    pr.U1 = boundary_band(pr.K_prime, pr.band_width);
    pr.Uhat1 = boundary_band(pr.K_prime, sc.num.uhat_cells * h);

    ImpactQuery q = default_impact_query(pr.band_width, sc.eps2, cfg.dt);
    if (sc.num.impact_horizon > 0.0) q.horizon = sc.num.impact_horizon;
    q.n_random = sc.num.n_random;
    q.seed = sc.num.seed;
    q.validate();

    pr.bhat = barrier_on_band(pr.K_prime, pr.U1, sc.field, eps2, q);
    for (int attempt = 0; attempt < 2 && pr.bhat.any_clipped(); ++attempt) {
        q.horizon *= 2.0;
        pr.bhat = barrier_on_band(pr.K_prime, pr.U1, sc.field, eps2, q);
    }
    pr.horizon = q.horizon;

    pr.BK = extend_barrier(pr.bhat, pr.U1, pr.K_prime);
    pr.report.edge_caveat = pr.report.edge_caveat || pr.bhat.any_clipped();
    if (upto == PipelineStage::barrier) return pr;

    ScalarField rho2 = gaussian_smooth(shift_radius(eps2, rho_o), 2.0 * h);
    Mollifier M = Mollifier::gauss_legendre(sc.num.quad_order);
    pr.B = smooth_barrier(pr.BK, rho2, M);
    if (upto == PipelineStage::smooth) return pr;

    CertificateReport& rep = pr.report;
    if (sc.check_enabled("candidate"))
        rep.candidate = check_candidate(pr.B.field.values, sc.X0, sc.Xu);
    else
        rep.candidate.v.untested = true;

    if (sc.check_enabled("c2"))
        rep.c2 = check_C2(pr.BK, sc.field, eps2, pr.U1, sc.num.c2_starts, cfg.dt,
                          q.horizon, sc.num.c2_tol, stream_seed(sc.num.seed, 0xC2));
    else
        rep.c2.v.untested = true;

    if (sc.check_enabled("c3")) {
        BoundarySampleSet bs = BoundarySampleSet::from_region(pr.K_prime, sc.num.boundary_samples);
        rep.c3 = check_C3(pr.B, sc.field, bs, C3Mode::rate_one, sc.num.c3_tol, &eps2);
    } else {
        rep.c3.untested = true;
    }

    rep.invariance_applicable = sc.invariance.enabled && sc.check_enabled("invariance");
    if (rep.invariance_applicable)
        rep.invariance = check_invariance_tangent(
            HalfSpace(sc.invariance.normal, sc.invariance.offset), sc.field, eps_bar, win,
            sc.invariance.n_samples, sc.invariance.m_directions, stream_seed(sc.num.seed, 0x1A));
    else
        rep.invariance.untested = true;

    if (sc.check_enabled("separation"))
        rep.separation = check_separation(pr.K_bar, sc.Xu);
    else
        rep.separation.untested = true;

    rep.safety_applicable = sc.check_enabled("safety");
    if (rep.safety_applicable)
        rep.safety = simulate_safety(sc.field, eps_bar, sc.X0, sc.Xu, sc.num.safety_solutions,
                                     sc.num.safety_horizon, cfg.dt,
                                     stream_seed(sc.num.seed, 0x5A));
    else
        rep.safety.v.untested = true;

    if (sc.check_enabled("consistency")) {
        rep.consistency = Verdict{};
        double mx_in = -1e300, mn_out = 1e300;
        for (int c = 0; c < win.cell_count(); ++c) {
            if (pr.K_bar.occupied(c)) mx_in = std::max(mx_in, pr.B.field.values[c]);
            if (!pr.K_delta.occupied(c)) mn_out = std::min(mn_out, pr.B.field.values[c]);
        }
        rep.consistency.value = std::max(mx_in, -mn_out);
        rep.consistency.pass = rep.consistency.value < 0.0;
        rep.consistency.note = "B negative on the reach set, positive outside its inflation";
    } else {
        rep.consistency.untested = true;
    }

    return pr;
}

} // namespace incluse
