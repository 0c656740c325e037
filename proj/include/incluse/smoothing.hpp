#ifndef INCLUSE_SMOOTHING_HPP
#define INCLUSE_SMOOTHING_HPP

#include "incluse/barrier.hpp"

namespace incluse {

/// Bump mollifier c*exp(-1/(1-|v|^2)) on the unit ball with a fixed
/// tensor Gauss-Legendre quadrature (nodes outside the ball dropped).
/// Self-normalizing: the quadrature of Psi is exactly 1.
struct Mollifier {
    std::vector<Vec2> nodes;      // |v_q| < 1
    std::vector<double> gl_w;     // raw tensor GL weights A_q
    std::vector<double> psi;      // Psi(v_q), normalization baked in
    std::vector<Vec2> grad_psi;   // grad Psi(v_q)
    std::vector<double> weights;  // A_q * Psi(v_q), sum = 1
    double c = 0.0;               // normalization constant
    double m0 = 0.0;              // residual of the vanishing moment sum A(2Psi + v.grad Psi)
    double kappa = 0.0;           // discrete -sum A v_x dPsi/dx (continuum value 1)

    static Mollifier gauss_legendre(int n = 17);

    double eval(const Vec2& v) const;
};

double mollifier_eval(const Mollifier& M, const Vec2& v);

struct SmoothBarrier {
    BarrierField field; // kind = smoothed
    ScalarField gx, gy; // analytic gradient components, cell samples
    ScalarField rho2;

    const Window& window() const { return field.window(); }
    double sample(const Vec2& p) const { return field.sample(p); }
    Vec2 grad(int c) const { return {gx[c], gy[c]}; }
    Vec2 sample_gradient(const Vec2& p) const { return {gx.sample(p), gy.sample(p)}; }
};

/// One separable Gaussian pass over cell samples (edge-renormalized).
ScalarField gaussian_smooth(const ScalarField& f, double sigma);

/// B(x) = sum_q w_q BK(x + rho2(x) v_q); gradient by differentiating the
/// quadrature integrand through Psi and rho2 (never by differencing BK),
/// with discrete moment corrections so constants and linear fields are
/// reproduced exactly.
SmoothBarrier smooth_barrier(const BarrierField& BK, const ScalarField& rho2,
                             const Mollifier& M);

/// Same integral realized by averaging shifted copies of BK per node.
SmoothBarrier averaged_shift_barrier(const BarrierField& BK, const ScalarField& rho2,
                                     const Mollifier& M);

} // namespace incluse

#endif
