#ifndef INCLUSE_INCLUSION_HPP
#define INCLUSE_INCLUSION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "incluse/grid.hpp"
#include "incluse/vec2.hpp"

namespace incluse {

/// Set-valued right-hand side: x maps to the vertex list of a convex
/// polytope of admissible velocities.
struct SetValuedField {
    std::function<std::vector<Vec2>(const Vec2&)> eval;
    std::optional<double> continuity_modulus; // Lipschitz-like bound, diagnostics only
};

/// Positive perturbation radius eps(x).
struct Margin {
    std::function<double(const Vec2&)> eval;

    static Margin constant(double v) {
        return {[v](const Vec2&) { return v; }};
    }
};

enum class Direction { forward, backward };

struct SelectionStrategy {
    enum class Kind { fixed_vertex, random_convex, extremal_direction };
    enum class Perturb { none, fixed, random };

    Kind kind = Kind::fixed_vertex;
    int vertex_index = 0;       // fixed_vertex
    uint64_t seed = 0;          // random_convex / random perturbation
    Vec2 direction{1, 0};       // extremal_direction
    Perturb perturb = Perturb::none;
    Vec2 perturb_dir{1, 0};     // fixed perturbation (unit vector)

    static SelectionStrategy vertex(int i, Perturb p = Perturb::none, Vec2 pdir = {1, 0}) {
        SelectionStrategy s;
        s.kind = Kind::fixed_vertex;
        s.vertex_index = i;
        s.perturb = p;
        s.perturb_dir = pdir;
        return s;
    }
    static SelectionStrategy random(uint64_t seed) {
        SelectionStrategy s;
        s.kind = Kind::random_convex;
        s.seed = seed;
        s.perturb = Perturb::random;
        return s;
    }
    static SelectionStrategy extremal(Vec2 d, Perturb p = Perturb::fixed) {
        SelectionStrategy s;
        s.kind = Kind::extremal_direction;
        s.direction = d.normalized();
        s.perturb = p;
        s.perturb_dir = s.direction;
        return s;
    }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec2> states;
    Direction direction = Direction::forward;
    bool truncated = false; // exited the window before the horizon

    const Vec2& front() const { return states.front(); }
    const Vec2& back() const { return states.back(); }
};

struct SolutionBundle {
    Vec2 origin;
    std::vector<Trajectory> trajectories;
    double horizon = 0.0;
    double dt = 0.0;
};

std::vector<Vec2> eval_F(const SetValuedField& F, const Vec2& x);

/// Explicit-Euler integration of one selection of F + eps*ball. Backward
/// integration uses -F. Truncates (with flag) on window exit.
Trajectory integrate(const SetValuedField& F, const Margin& eps, const Window& win,
                     const Vec2& x0, const SelectionStrategy& strat, double dt,
                     double horizon, Direction dir);

/// Finite stand-in for the solution set from x0: every vertex selection
/// crossed with {no perturbation, +/- each axis}, plus n_random
/// random-convex selections with per-trajectory RNG streams.
SolutionBundle bundle(const SetValuedField& F, const Margin& eps, const Window& win,
                      const Vec2& x0, int n_random, double dt, double horizon,
                      Direction dir, uint64_t seed = 0);

/// Vertices of F(x) + eps(x) * {m unit directions}; m >= 8 required.
std::vector<Vec2> minkowski_vertices(const SetValuedField& F, const Margin& eps,
                                     const Vec2& x, int m);

/// Largest vertex speed of F + eps over the window cells.
double max_speed(const SetValuedField& F, const Margin& eps, const Window& win);

/// Named built-in fields.
SetValuedField field_example1();               // {(0,1)} below the axis, co{(0,1),(-1,0)} above
SetValuedField field_linear();                 // {-x}
SetValuedField field_constant(Vec2 v);         // {v}
SetValuedField field_polytope(std::vector<Vec2> verts); // state-independent polytope

/// Deterministic per-trajectory stream id.
uint64_t stream_seed(uint64_t seed, uint64_t index);

} // namespace incluse

#endif
