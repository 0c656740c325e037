#ifndef INCLUSE_CERTIFY_HPP
#define INCLUSE_CERTIFY_HPP

#include "incluse/reachability.hpp"
#include "incluse/scenario.hpp"
#include "incluse/smoothing.hpp"

namespace incluse {

struct Verdict {
    bool pass = false;
    bool unresolved = false; // below grid resolution: neither pass nor fail
    bool untested = false;   // vacuous (no samples requested)
    double value = 0.0;      // margin / slack the verdict was judged on
    double tol = 0.0;        // tolerance it was judged against
    std::string note;
};

/// Sub-cell boundary points of a region with outward normals, from sign
/// changes of the signed distance between adjacent cell centers.
struct BoundarySampleSet {
    std::vector<Vec2> points;
    std::vector<Vec2> normals;

    static BoundarySampleSet from_region(const Region& K, int max_samples = 0);
};

struct CandidateVerdict {
    Verdict v;
    double max_B_X0 = 0.0;
    double min_B_Xu = 0.0;
};

CandidateVerdict check_candidate(const ScalarField& B, const Region& X0, const Region& Xu);

enum class C3Mode { strict_negative, rate_one };

/// Worst max_eta<grad B, eta> over boundary samples (vertex scan; optional
/// eps margin adds eps*|grad B| in closed form).
Verdict check_C3(const SmoothBarrier& B, const SetValuedField& F,
                 const BoundarySampleSet& samples, C3Mode mode, double tol_c3 = 0.1,
                 const Margin* eps = nullptr);

struct C2Verdict {
    Verdict v;
    int clipped_cells = 0;
    int starts_used = 0;
};

C2Verdict check_C2(const BarrierField& B, const SetValuedField& F, const Margin& eps,
                   const Region& U1, int n_start, double dt, double horizon, double tol,
                   uint64_t seed);

Verdict check_invariance_tangent(const HalfSpace& H, const SetValuedField& F,
                                 const Margin& eps, const Window& win, int n_samples,
                                 int m_directions, uint64_t seed);

Verdict check_separation(const Region& K, const Region& Xu);

struct SafetyVerdict {
    Verdict v;
    double closest_approach = 0.0; // min signed distance to Xu over all states
};

SafetyVerdict simulate_safety(const SetValuedField& F, const Margin& eps, const Region& X0,
                              const Region& Xu, int n_solutions, double horizon, double dt,
                              uint64_t seed);

struct CertificateReport {
    CandidateVerdict candidate;
    C2Verdict c2;
    Verdict c3;
    Verdict invariance;
    bool invariance_applicable = false;
    Verdict separation;
    SafetyVerdict safety;
    bool safety_applicable = false;
    Verdict consistency; // smoothed B <= 0 on K_eps_bar, > 0 outside the delta inflation
    bool edge_caveat = false;
    uint64_t scenario_hash_value = 0;
    uint64_t seed = 0;

    bool all_pass() const;
    bool any_unresolved() const;
};

struct PipelineResult {
    CertificateReport report;
    Region K_bar;     // infinite-horizon reach of X0 under eps_bar
    Region K_delta;   // outer consistency inflation of K_bar
    Region K_prime;   // reach-inflation: barrier target set
    Region U1;        // impact band around K_prime's boundary
    Region Uhat1;     // inner band for boundary sampling
    BarrierField bhat;
    BarrierField BK;
    SmoothBarrier B;
    double band_width = 0.0;
    double dt = 0.0;
    double horizon = 0.0;
    bool reach_converged = false;
    int reach_steps = 0;
    bool reach_edge_truncated = false;
};

/// How far to run: reach builds the reachable sets, barrier adds the
/// time-to-impact fields, smooth adds the mollified barrier, certify runs
/// every enabled check.
enum class PipelineStage { reach, barrier, smooth, certify };

PipelineResult certify_pipeline(const Scenario& sc,
                                PipelineStage upto = PipelineStage::certify);

} // namespace incluse

#endif
